//! Finite abelian groups presented by invariant factors.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::{IntegerMatrix, RationalMatrix};
use super::snf::smith_normal_form;
use crate::{Error, Result};

/// A finite abelian group `ℤ/d₁ × … × ℤ/d_k` with `d₁ | d₂ | … | d_k`, each
/// `d_i > 1`, together with the presentation it came from.
///
/// Elements are exponent vectors in invariant coordinates, reduced into
/// `[0, d_i)`. The original generators keep their labels; `projection` maps
/// an exponent vector over them to invariant coordinates and `lift` maps back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<i64>,
    generators: Vec<String>,
    #[serde(skip)]
    projection: Vec<Vec<i64>>,
    #[serde(skip)]
    lift: Vec<Vec<i64>>,
}

pub type GroupElement = Vec<i64>;

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("group data exceeds i64")
}

fn inverse_unimodular(v: &IntegerMatrix) -> IntegerMatrix {
    let n = v.rows();
    let mut aug = RationalMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = BigRational::from_integer(v[(i, j)].clone());
        }
        aug[(i, n + i)] = BigRational::one();
    }
    let (r, _) = aug.rref();
    let mut inv = IntegerMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = &r[(i, n + j)];
            assert!(x.is_integer(), "matrix is not unimodular");
            inv[(i, j)] = x.to_integer();
        }
    }
    inv
}

/// The cokernel `ℤⁿ / rowspace(relations)` where `n = relations.cols()`.
///
/// Fails with [`Error::InfiniteQuotient`] when the cokernel has a free part.
pub fn quotient_group(relations: &IntegerMatrix, labels: Option<Vec<String>>) -> Result<FiniteAbelianGroup> {
    let n = relations.cols();
    let generators = labels.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
    if generators.len() != n {
        return Err(Error::validation(format!(
            "{} labels for {} generators",
            generators.len(),
            n
        )));
    }
    let f = smith_normal_form(relations);
    let diag = f.diagonal();
    let mut factors = Vec::new();
    let mut kept = Vec::new();
    for i in 0..n {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            return Err(Error::InfiniteQuotient(format!(
                "relation matrix of rank {} on {} generators",
                diag.iter().filter(|x| !x.is_zero()).count(),
                n
            )));
        }
        if !d.is_one() {
            factors.push(to_i64(&d));
            kept.push(i);
        }
    }
    let v_inv = inverse_unimodular(&f.v);
    let projection = (0..n)
        .map(|i| {
            kept.iter()
                .zip(&factors)
                .map(|(&c, &d)| to_i64(&f.v[(i, c)].mod_floor(&BigInt::from(d))))
                .collect()
        })
        .collect();
    let lift = kept.iter().map(|&c| (0..n).map(|j| to_i64(&v_inv[(c, j)])).collect()).collect();
    Ok(FiniteAbelianGroup {
        invariant_factors: factors,
        generators,
        projection,
        lift,
    })
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: vec![],
            generators: vec![],
            projection: vec![],
            lift: vec![],
        }
    }

    /// The group `⊕ ℤ/d_i` for arbitrary positive `d_i` (normalised by SNF).
    pub fn from_orders(orders: &[i64]) -> Result<Self> {
        if orders.iter().any(|&d| d <= 0) {
            return Err(Error::validation("cyclic factor orders must be positive"));
        }
        let big: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
        quotient_group(&IntegerMatrix::diagonal(&big), None)
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().map(|&d| d as u64).product()
    }

    pub fn exponent(&self) -> i64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.rank()]
    }

    pub fn normalize(&self, x: &[i64]) -> GroupElement {
        assert_eq!(x.len(), self.rank(), "element has the wrong rank");
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &d)| a.rem_euclid(d))
            .collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> GroupElement {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.normalize(&s)
    }

    pub fn neg(&self, x: &[i64]) -> GroupElement {
        let s: Vec<i64> = x.iter().map(|a| -a).collect();
        self.normalize(&s)
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> GroupElement {
        let s: Vec<i64> = x
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &d)| ((a as i128 * k as i128).rem_euclid(d as i128)) as i64)
            .collect();
        s
    }

    pub fn element_order(&self, x: &[i64]) -> i64 {
        x.iter()
            .zip(&self.invariant_factors)
            .fold(1i64, |acc, (&a, &d)| acc.lcm(&(d / a.gcd(&d))))
    }

    /// Invariant coordinates of an exponent vector over the original generators.
    pub fn from_original(&self, exponents: &[i64]) -> GroupElement {
        assert_eq!(exponents.len(), self.generators.len(), "wrong number of exponents");
        let mut out = vec![0i128; self.rank()];
        for (e, row) in exponents.iter().zip(&self.projection) {
            for (o, p) in out.iter_mut().zip(row) {
                *o += *e as i128 * *p as i128;
            }
        }
        out.iter()
            .zip(&self.invariant_factors)
            .map(|(a, &d)| a.rem_euclid(d as i128) as i64)
            .collect()
    }

    /// An exponent vector over the original generators representing `x`.
    pub fn to_original(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.generators.len()];
        for (a, row) in x.iter().zip(&self.lift) {
            for (o, l) in out.iter_mut().zip(row) {
                *o += a * l;
            }
        }
        out
    }

    /// All elements in mixed-radix order (last coordinate fastest).
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (i, &d) in self.invariant_factors.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..d).map(move |k| {
                        let mut e = e.clone();
                        e[i] = k;
                        e
                    })
                })
                .collect();
        }
        out
    }

    /// Same abstract group.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.invariant_factors == other.invariant_factors
    }
}

/// A homomorphism between finite abelian groups, stored as the images of the
/// source's invariant generators in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteAbelianGroup,
    pub target: FiniteAbelianGroup,
    images: Vec<GroupElement>,
}

impl GroupHom {
    /// Builds the map from the images of the source's *original* generators.
    pub fn from_original_images(
        source: &FiniteAbelianGroup,
        target: &FiniteAbelianGroup,
        original_images: &[GroupElement],
    ) -> Result<Self> {
        if original_images.len() != source.generators.len() {
            return Err(Error::validation("one image per original generator required"));
        }
        let images = source
            .lift
            .iter()
            .map(|row| {
                let mut acc = target.identity();
                for (&k, img) in row.iter().zip(original_images) {
                    acc = target.add(&acc, &target.scale(k, img));
                }
                acc
            })
            .collect();
        let hom = GroupHom {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        if !hom.is_well_defined() {
            return Err(Error::validation("images do not satisfy the source relations"));
        }
        Ok(hom)
    }

    /// Builds the map from the images of the source's invariant generators.
    pub fn from_images(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::validation("one image per invariant generator required"));
        }
        let hom = GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: images.iter().map(|x| target.normalize(x)).collect(),
        };
        if !hom.is_well_defined() {
            return Err(Error::validation("images do not satisfy the source relations"));
        }
        Ok(hom)
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        let images = (0..group.rank())
            .map(|i| {
                let mut e = group.identity();
                e[i] = 1;
                group.normalize(&e)
            })
            .collect();
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            images,
        }
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &[i64]) -> GroupElement {
        let mut acc = self.target.identity();
        for (&k, img) in x.iter().zip(&self.images) {
            acc = self.target.add(&acc, &self.target.scale(k, img));
        }
        acc
    }

    /// `d_i · image_i = 0` for every invariant factor `d_i` of the source.
    pub fn is_well_defined(&self) -> bool {
        self.images
            .iter()
            .zip(self.source.invariant_factors())
            .all(|(img, &d)| self.target.scale(d, img) == self.target.identity())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !self.target.is_isomorphic(&other.source) {
            return Err(Error::validation("homomorphisms are not composable"));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|x| other.apply(x)).collect(),
        })
    }

    /// Order of the image subgroup.
    pub fn image_order(&self) -> u64 {
        let k = self.target.rank();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, &d) in self.target.invariant_factors().iter().enumerate() {
            let mut r = vec![BigInt::zero(); k];
            r[i] = BigInt::from(d);
            rows.push(r);
        }
        for img in &self.images {
            rows.push(img.iter().map(|&x| BigInt::from(x)).collect());
        }
        if k == 0 {
            return 1;
        }
        // coker(diag(d) ; images) = target / image
        let coker = quotient_group(&IntegerMatrix::from_rows(rows), None)
            .expect("finite target has finite quotients");
        self.target.order() / coker.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == self.target.order()
    }

    pub fn is_injective(&self) -> bool {
        self.image_order() == self.source.order()
    }
}

/// A finite abelian group discovered from an explicit element set and a
/// multiplication oracle.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup<T> {
    /// Elements chosen as generators, in discovery order.
    pub generators: Vec<T>,
    /// Relative orders: `k_i` is the least `k > 0` with `g_i^k` in the span
    /// of the earlier generators.
    pub relative_orders: Vec<i64>,
    /// Triangular relation matrix over the generators.
    pub relations: IntegerMatrix,
    /// Exponent vector of every element over `generators`.
    pub dlog: HashMap<T, Vec<i64>>,
    pub group: FiniteAbelianGroup,
}

impl<T: Clone + Eq + Hash> EnumeratedGroup<T> {
    pub fn order(&self) -> usize {
        self.dlog.len()
    }

    /// Invariant coordinates of an element.
    pub fn coordinates(&self, x: &T) -> Option<GroupElement> {
        self.dlog.get(x).map(|v| self.group.from_original(v))
    }
}

/// Discovers the structure of the finite abelian group generated by
/// `candidates` under `op` with neutral element `identity`.
///
/// Candidates are scanned in order and a candidate becomes a generator when it
/// is not yet in the span of the previous ones. `labels` names generators.
pub fn enumerate_abelian_group<T, F, L>(
    candidates: impl IntoIterator<Item = T>,
    identity: T,
    op: F,
    label: L,
) -> EnumeratedGroup<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
    L: Fn(&T) -> String,
{
    let mut span: Vec<(T, Vec<i64>)> = vec![(identity.clone(), vec![])];
    let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
    let mut generators = Vec::new();
    let mut rel_orders = Vec::new();
    let mut rel_rows: Vec<Vec<i64>> = Vec::new();

    for c in candidates {
        if index.contains_key(&c) {
            continue;
        }
        let gi = generators.len();
        let mut power = c.clone();
        let mut k = 1i64;
        while !index.contains_key(&power) {
            power = op(&power, &c);
            k += 1;
        }
        let mut row = span[index[&power]].1.clone();
        row.iter_mut().for_each(|x| *x = -*x);
        row.push(k);
        rel_rows.push(row);

        for (_, v) in span.iter_mut() {
            v.push(0);
        }
        let mut layer: Vec<(T, Vec<i64>)> = span.clone();
        for j in 1..k {
            layer = layer
                .into_iter()
                .map(|(e, mut v)| {
                    v[gi] = j;
                    (op(&e, &c), v)
                })
                .collect();
            for (e, v) in &layer {
                index.insert(e.clone(), span.len());
                span.push((e.clone(), v.clone()));
            }
        }
        generators.push(c);
        rel_orders.push(k);
    }

    let n = generators.len();
    let mut rel = IntegerMatrix::zeros(n, n);
    for (i, row) in rel_rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            rel[(i, j)] = BigInt::from(x);
        }
    }
    let labels = generators.iter().map(&label).collect();
    let group = quotient_group(&rel, Some(labels)).expect("enumerated groups are finite");
    let dlog = span
        .into_iter()
        .map(|(e, mut v)| {
            v.resize(n, 0);
            (e, v)
        })
        .collect();
    EnumeratedGroup {
        generators,
        relative_orders: rel_orders,
        relations: rel,
        dlog,
        group,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[i64]) -> IntegerMatrix {
        IntegerMatrix::diagonal(&d.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn quotients_from_examples() {
        assert!(quotient_group(&diag(&[1, 1]), None).unwrap().is_trivial());
        assert_eq!(quotient_group(&diag(&[2, 3]), None).unwrap().invariant_factors(), &[6]);
        assert_eq!(quotient_group(&diag(&[2, 2]), None).unwrap().invariant_factors(), &[2, 2]);
        assert!(matches!(
            quotient_group(&diag(&[0]), None),
            Err(Error::InfiniteQuotient(_))
        ));
        let short = IntegerMatrix::from_i64_rows(&[vec![2, 0]]);
        assert!(matches!(quotient_group(&short, None), Err(Error::InfiniteQuotient(_))));
    }

    #[test]
    fn projection_respects_relations() {
        let rel = IntegerMatrix::from_i64_rows(&[vec![4, 2], vec![2, 4], vec![0, 6]]);
        let g = quotient_group(&rel, None).unwrap();
        assert_eq!(g.order(), 12);
        for r in rel.to_rows() {
            let v: Vec<i64> = r.iter().map(to_i64).collect();
            assert_eq!(g.from_original(&v), g.identity());
        }
        for x in g.elements() {
            assert_eq!(g.from_original(&g.to_original(&x)), x);
        }
    }

    #[test]
    fn enumerate_units_mod_15() {
        let units: Vec<u32> = (1..15).filter(|x| x.gcd(&15) == 1).collect();
        let eg = enumerate_abelian_group(units, 1u32, |a, b| a * b % 15, |x| x.to_string());
        assert_eq!(eg.order(), 8);
        assert_eq!(eg.group.invariant_factors(), &[2, 4]);
        for (a, va) in &eg.dlog {
            for (b, vb) in &eg.dlog {
                let c = a * b % 15;
                let sum: Vec<i64> = va.iter().zip(vb).map(|(x, y)| x + y).collect();
                assert_eq!(eg.group.from_original(&sum), eg.coordinates(&c).unwrap());
            }
        }
    }

    #[test]
    fn hom_surjectivity() {
        let z4 = FiniteAbelianGroup::from_orders(&[4]).unwrap();
        let z2 = FiniteAbelianGroup::from_orders(&[2]).unwrap();
        let h = GroupHom::from_original_images(&z4, &z2, &[vec![1]]).unwrap();
        assert!(h.is_surjective());
        assert!(!h.is_injective());
        let bad = GroupHom::from_original_images(&z2, &z4, &[vec![1]]);
        assert!(bad.is_err());
        let id = GroupHom::identity(&z4);
        assert_eq!(h.then(&GroupHom::identity(&z2)).unwrap(), h);
        assert_eq!(id.then(&h).unwrap(), h);
    }
}
