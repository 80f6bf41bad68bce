use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::residue::{Residue, ResidueUnitGroup};
use crate::corearith::group::GroupElement;
use crate::corearith::{quotient_group, FiniteAbelianGroup, GroupHom, IntegerMatrix};
use crate::quadforms::{fundamental_unit, Discriminant, FundamentalUnit, Ideal, IdealClassGroup, QuadElement, TrackedIdeal};
use crate::{Error, Result};

/// A principal level: the modulus `N` and which real places carry a sign
/// condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelStructure {
    pub n: u64,
    pub infinite_signs: [bool; 2],
}

impl LevelStructure {
    pub fn new(n: u64, infinite_signs: [bool; 2]) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("level N must be at least 1"));
        }
        Ok(LevelStructure { n, infinite_signs })
    }

    /// Level `N` with both sign conditions (the narrow ray class group).
    pub fn narrow(n: u64) -> Self {
        LevelStructure { n, infinite_signs: [true, true] }
    }

    pub fn sign_count(&self) -> usize {
        self.infinite_signs.iter().filter(|&&s| s).count()
    }

    pub fn places(&self) -> Vec<usize> {
        (0..2).filter(|&i| self.infinite_signs[i]).collect()
    }

    /// Whether `self` is coarser than (divides) `fine`.
    pub fn divides(&self, fine: &LevelStructure) -> bool {
        fine.n % self.n == 0 && (0..2).all(|i| !self.infinite_signs[i] || fine.infinite_signs[i])
    }
}

impl fmt::Display for LevelStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |b: bool| if b { "+" } else { "·" };
        write!(f, "N={} ∞=({},{})", self.n, s(self.infinite_signs[0]), s(self.infinite_signs[1]))
    }
}

/// The ray class group `Cl(D, N·∞-signs)` of the maximal order.
///
/// Original generators, in order: the local generators of `(O/N)^×`, one
/// sign generator per imposed real place, and lifts of the generators of the
/// wide class group by ideals coprime to `N`.
#[derive(Clone, Debug)]
pub struct RayClassGroup {
    d: Discriminant,
    level: LevelStructure,
    residues: ResidueUnitGroup,
    class_group: IdealClassGroup,
    class_lifts: Vec<Ideal>,
    unit: FundamentalUnit,
    unit_image: u64,
    relations: IntegerMatrix,
    group: FiniteAbelianGroup,
}

/// An element of a specific ray class group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RayClass {
    pub d: i64,
    pub level: LevelStructure,
    pub coords: GroupElement,
}

fn gcd_u(a: i64, n: u64) -> u64 {
    (a.unsigned_abs()).gcd(&n)
}

impl RayClassGroup {
    pub fn new(d: i64, level: LevelStructure) -> Result<Self> {
        let d = Discriminant::fundamental(d)?;
        let level = LevelStructure::new(level.n, level.infinite_signs)?;
        let residues = ResidueUnitGroup::new(d, level.n)?;
        let class_group = IdealClassGroup::new(d);
        let unit = fundamental_unit(d)?;

        // A lift coprime to N for every class.
        let h = class_group.order();
        let mut lift_of_class: Vec<Option<Ideal>> = vec![None; h];
        let mut found = 0;
        let mut a = 1i64;
        while found < h {
            if gcd_u(a, level.n) == 1 {
                for i in Ideal::all_of_norm(d, a) {
                    let c = class_group.class_of(&i);
                    if lift_of_class[c].is_none() {
                        lift_of_class[c] = Some(i);
                        found += 1;
                    }
                }
            }
            a += 1;
            if a > 1 << 24 {
                return Err(Error::ResourceLimit("no ideal coprime to N found in some class".into()));
            }
        }
        let class_lifts: Vec<Ideal> = class_group
            .enumeration
            .generators
            .iter()
            .map(|&c| lift_of_class[c].expect("every class lifted"))
            .collect();

        let mut g = RayClassGroup {
            d,
            level,
            residues,
            class_group,
            class_lifts,
            unit,
            unit_image: 0,
            relations: IntegerMatrix::zeros(0, 0),
            group: FiniteAbelianGroup::trivial(),
        };
        g.unit_image = g.compute_unit_image()?;
        g.relations = g.build_relations()?;
        let labels = g.original_labels();
        g.group = if g.relations.cols() == 0 {
            FiniteAbelianGroup::trivial()
        } else {
            quotient_group(&g.relations, Some(labels))?
        };
        Ok(g)
    }

    pub fn discriminant(&self) -> i64 {
        self.d.value()
    }

    pub fn level(&self) -> LevelStructure {
        self.level
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn residue_units(&self) -> &ResidueUnitGroup {
        &self.residues
    }

    pub fn class_group(&self) -> &IdealClassGroup {
        &self.class_group
    }

    pub fn fundamental_unit(&self) -> &FundamentalUnit {
        &self.unit
    }

    /// Size of the image of `O^×` in `(O/N)^× × {±1}^signs`, found by
    /// iterating powers of `±ε`.
    pub fn unit_image_order(&self) -> u64 {
        self.unit_image
    }

    /// Relation matrix over the original generators.
    pub fn relations(&self) -> &IntegerMatrix {
        &self.relations
    }

    pub fn element(&self, coords: GroupElement) -> RayClass {
        RayClass {
            d: self.d.value(),
            level: self.level,
            coords: self.group.normalize(&coords),
        }
    }

    pub fn identity(&self) -> RayClass {
        self.element(self.group.identity())
    }

    pub fn elements(&self) -> Vec<RayClass> {
        self.group.elements().into_iter().map(|c| self.element(c)).collect()
    }

    fn r(&self) -> usize {
        self.residues.generator_count()
    }

    fn s(&self) -> usize {
        self.level.sign_count()
    }

    fn t(&self) -> usize {
        self.class_lifts.len()
    }

    fn original_labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = (0..self.r())
            .map(|i| {
                let (x, y) = self.residues.generator_residue(i);
                format!("({x}+{y}ω) mod {}", self.level.n)
            })
            .collect();
        labels.extend(self.level.places().into_iter().map(|p| format!("sign@{}", p + 1)));
        labels.extend(self.class_lifts.iter().map(|i| format!("[{}, ({}+√{})/2]", i.a, i.b, self.d.value())));
        labels
    }

    fn ring_residue(&self, alpha: &QuadElement) -> Result<Residue> {
        self.residues.ring.residue_of(alpha)
    }

    fn sign_bits(&self, signs: [i32; 2]) -> Vec<i64> {
        self.level.places().into_iter().map(|p| i64::from(signs[p] < 0)).collect()
    }

    /// Original coordinates of the class of `(α)`, `α ∈ O` prime to `N`.
    fn iota(&self, alpha: &QuadElement) -> Result<Vec<i64>> {
        let res = self.ring_residue(alpha)?;
        let mut v = self
            .residues
            .log(res)
            .ok_or_else(|| Error::validation("element is not prime to N"))?;
        v.extend(self.sign_bits([alpha.sign_first(), alpha.sign_second()]));
        v.resize(self.r() + self.s() + self.t(), 0);
        Ok(v)
    }

    fn iota_integer(&self, k: i64) -> Result<Vec<i64>> {
        self.iota(&QuadElement::from_integer(self.d.value(), k))
    }

    fn compute_unit_image(&self) -> Result<u64> {
        let ring = &self.residues.ring;
        let eps = ring.residue_of(&self.unit.element())?;
        let mut seen: HashSet<(Residue, Vec<i64>)> = HashSet::new();
        let mut power = ring.reduce((1, 0));
        let mut sec = 1i32;
        loop {
            let minus = ring.reduce((-power.0, -power.1));
            let a = (power, self.sign_bits([1, sec]));
            if !seen.insert(a) {
                break;
            }
            seen.insert((minus, self.sign_bits([-1, -sec])));
            power = ring.mul(power, eps);
            sec *= self.unit.norm;
        }
        Ok(seen.len() as u64)
    }

    fn build_relations(&self) -> Result<IntegerMatrix> {
        let (r, s, t) = (self.r(), self.s(), self.t());
        let n = r + s + t;
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for mut row in self.residues.relation_rows() {
            row.resize(n, 0);
            rows.push(row);
        }
        for i in 0..s {
            let mut row = vec![0; n];
            row[r + i] = 2;
            rows.push(row);
        }
        let dv = self.d.value();
        rows.push(self.iota(&QuadElement::from_integer(dv, -1))?);
        rows.push(self.iota(&self.unit.element())?);

        // Class relations: Σ rⱼ Eⱼ = ι(γ) with ∏ Iⱼ^rⱼ = (γ), exponents
        // made non-negative modulo h so that γ is integral.
        let h = self.class_group.order() as i64;
        let mut exps: Vec<Vec<i64>> = Vec::new();
        let cl = &self.class_group.enumeration.relations;
        for i in 0..cl.rows() {
            exps.push((0..t).map(|j| num_traits::ToPrimitive::to_i64(&cl[(i, j)]).unwrap().rem_euclid(h)).collect());
        }
        for j in 0..t {
            let mut e = vec![0; t];
            e[j] = h;
            exps.push(e);
        }
        for e in exps {
            let prod = self.lift_product(&e);
            let gamma = prod
                .principal_generator()
                .ok_or_else(|| Error::validation("class relation is not principal"))?;
            let mut row = self.iota(&gamma)?;
            for x in row.iter_mut() {
                *x = -*x;
            }
            for j in 0..t {
                row[r + s + j] += e[j];
            }
            rows.push(row);
        }
        let mut m = IntegerMatrix::zeros(rows.len(), n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        Ok(m)
    }

    fn lift_product(&self, exps: &[i64]) -> TrackedIdeal {
        let mut acc = TrackedIdeal::from_ideal(Ideal::unit(self.d));
        for (i, &e) in self.class_lifts.iter().zip(exps) {
            acc = acc.mul(&TrackedIdeal::from_ideal(*i).pow(e));
        }
        acc
    }

    /// Original coordinates of the class of `k·I`.
    fn original_class(&self, ideal: &Ideal, k: i64) -> Result<Vec<i64>> {
        if ideal.discriminant() != self.d {
            return Err(Error::validation("ideal of a different order"));
        }
        if gcd_u(ideal.a, self.level.n) != 1 || gcd_u(k, self.level.n) != 1 || k <= 0 {
            return Err(Error::validation(format!("ideal is not prime to N = {}", self.level.n)));
        }
        let x = self.class_group.dlog(ideal);
        // J·P̄ = (γ) and P·P̄ = (N(P)) for P = ∏ Eⱼ^xⱼ, so [J] = Σ xⱼEⱼ + ι(γ) − ι(N(P)).
        let p = self.lift_product(&x);
        // Only N(P) mod N matters; keep a positive representative.
        let n = self.level.n as i128;
        let norm_p = self
            .class_lifts
            .iter()
            .zip(&x)
            .fold(1i128, |acc, (i, &e)| (0..e).fold(acc, |a, _| a * i.a as i128 % n));
        let norm_p = (norm_p + n) as i64;
        let gamma = TrackedIdeal::from_ideal(*ideal)
            .mul(&p.conj())
            .principal_generator()
            .expect("ideal classes agree");
        let mut v = self.iota(&gamma)?;
        let vn = self.iota_integer(norm_p)?;
        let vk = self.iota_integer(k)?;
        for idx in 0..v.len() {
            v[idx] += vk[idx] - vn[idx];
        }
        let (r, s) = (self.r(), self.s());
        for (j, &e) in x.iter().enumerate() {
            v[r + s + j] += e;
        }
        Ok(v)
    }

    /// The ray class of an integral ideal prime to `N`.
    pub fn class_of(&self, ideal: &Ideal) -> Result<RayClass> {
        self.class_of_scaled(ideal, 1)
    }

    /// The ray class of `k·I`.
    pub fn class_of_scaled(&self, ideal: &Ideal, k: i64) -> Result<RayClass> {
        let v = self.original_class(ideal, k)?;
        Ok(self.element(self.group.from_original(&v)))
    }

    /// The ray class of the principal ideal `(α)`, `α ∈ O` prime to `N`.
    pub fn class_of_principal(&self, alpha: &QuadElement) -> Result<RayClass> {
        let v = self.iota(alpha)?;
        Ok(self.element(self.group.from_original(&v)))
    }

    pub fn add(&self, x: &RayClass, y: &RayClass) -> Result<RayClass> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(self.group.add(&x.coords, &y.coords)))
    }

    pub fn neg(&self, x: &RayClass) -> Result<RayClass> {
        self.check(x)?;
        Ok(self.element(self.group.neg(&x.coords)))
    }

    pub fn check(&self, x: &RayClass) -> Result<()> {
        if x.d != self.d.value() || x.level != self.level || x.coords.len() != self.group.rank() {
            return Err(Error::validation(format!(
                "element of Cl(D={}, {}) used with Cl(D={}, {})",
                x.d, x.level, self.d.value(), self.level
            )));
        }
        Ok(())
    }

    /// The canonical surjection onto a coarser level.
    pub fn transition_to(&self, coarse: &RayClassGroup) -> Result<GroupHom> {
        if coarse.d != self.d {
            return Err(Error::validation("transition between different discriminants"));
        }
        if !coarse.level.divides(&self.level) {
            return Err(Error::validation(format!("{} is not coarser than {}", coarse.level, self.level)));
        }
        let mut images: Vec<GroupElement> = Vec::new();
        let coarse_ring = &coarse.residues.ring;
        for i in 0..self.r() {
            let res = coarse_ring.reduce(self.residues.generator_residue(i));
            let mut v = coarse.residues.log(res).expect("units reduce to units");
            v.resize(coarse.r() + coarse.s() + coarse.t(), 0);
            images.push(coarse.group.from_original(&v));
        }
        for p in self.level.places() {
            let mut signs = [1, 1];
            signs[p] = -1;
            let mut v = vec![0; coarse.r()];
            v.extend(coarse.sign_bits(signs));
            v.resize(coarse.r() + coarse.s() + coarse.t(), 0);
            images.push(coarse.group.from_original(&v));
        }
        for i in &self.class_lifts {
            images.push(coarse.class_of(i)?.coords);
        }
        GroupHom::from_original_images(&self.group, &coarse.group, &images)
    }
}

/// The ray class group of `D` at `level`.
pub fn ray_class_group(d: i64, level: LevelStructure) -> Result<RayClassGroup> {
    RayClassGroup::new(d, level)
}

/// The transition map `Cl(D, fine) → Cl(D, coarse)`.
pub fn transition(d: i64, coarse: LevelStructure, fine: LevelStructure) -> Result<GroupHom> {
    if !coarse.divides(&fine) {
        return Err(Error::validation(format!("{coarse} is not coarser than {fine}")));
    }
    let fine_group = RayClassGroup::new(d, fine)?;
    let coarse_group = RayClassGroup::new(d, coarse)?;
    fine_group.transition_to(&coarse_group)
}
