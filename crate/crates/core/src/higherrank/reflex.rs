use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::corearith::intmath::{fundamental_discriminant_of, is_square, squarefree_part};
use crate::corearith::RationalMatrix;
use crate::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// An element of `L = ℚ(θ, i)`, `θ⁴ = m`, by its coordinates on `θʲiᵏ`
/// (index `j + 4k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureElement {
    m: i64,
    c: Vec<BigRational>,
}

impl ClosureElement {
    fn basis(m: i64, j: usize, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); 8];
        c[j + 4 * k] = BigRational::one();
        ClosureElement { m, c }
    }

    pub fn one(m: i64) -> Self {
        Self::basis(m, 0, 0)
    }

    pub fn theta(m: i64) -> Self {
        Self::basis(m, 1, 0)
    }

    pub fn i(m: i64) -> Self {
        Self::basis(m, 0, 1)
    }

    pub fn coordinates(&self) -> &[BigRational] {
        &self.c
    }

    pub fn add(&self, o: &Self) -> Self {
        ClosureElement {
            m: self.m,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut c = vec![BigRational::zero(); 8];
        for (p, a) in self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (q, b) in o.c.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let (mut j, mut k) = (p % 4 + q % 4, p / 4 + q / 4);
                let mut f = a * b;
                if j >= 4 {
                    j -= 4;
                    f *= rat(self.m);
                }
                if k >= 2 {
                    k -= 2;
                    f = -f;
                }
                c[j + 4 * k] += f;
            }
        }
        ClosureElement { m: self.m, c }
    }

    pub fn apply(&self, s: &Automorphism) -> Self {
        // σ(θʲiᵏ) = sᵏ i^{rj+k} θʲ
        let mut c = vec![BigRational::zero(); 8];
        for (p, a) in self.c.iter().enumerate() {
            let (j, k) = (p % 4, p / 4);
            let e = (s.r as usize * j + k) % 4;
            let mut f = a.clone();
            if s.conj && k % 2 == 1 {
                f = -f;
            }
            if e >= 2 {
                f = -f;
            }
            c[j + 4 * (e % 2)] += f;
        }
        ClosureElement { m: self.m, c }
    }
}

impl fmt::Display for ClosureElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (p, a) in self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let (j, k) = (p % 4, p / 4);
            let mono = match (j, k) {
                (0, 0) => String::new(),
                (0, 1) => "i".into(),
                (1, 0) => "θ".into(),
                (1, 1) => "iθ".into(),
                (j, 0) => format!("θ^{j}"),
                (j, _) => format!("iθ^{j}"),
            };
            let coef = if a.is_one() && !mono.is_empty() { String::new() } else { a.to_string() };
            terms.push(format!("{coef}{mono}"));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `θ ↦ i^r θ`, `i ↦ ±i` (`conj` for `−i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Automorphism {
    pub r: u8,
    pub conj: bool,
}

impl Automorphism {
    pub fn all() -> Vec<Self> {
        (0..4)
            .flat_map(|r| [false, true].map(|conj| Automorphism { r, conj }))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.r == 0 && !self.conj
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let rt = if self.conj { (4 - other.r) % 4 } else { other.r };
        Automorphism {
            r: (self.r + rt) % 4,
            conj: self.conj != other.conj,
        }
    }

    /// Action on the embeddings `θ ↦ iᵃθ` of `ℚ(θ)`: `a ↦ ±a + r`.
    pub fn on_embedding(&self, a: u8) -> u8 {
        let sa = if self.conj { (4 - a) % 4 } else { a };
        (sa + self.r) % 4
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let img = ["θ", "iθ", "−θ", "−iθ"][self.r as usize];
        write!(f, "θ↦{img}, i↦{}", if self.conj { "−i" } else { "i" })
    }
}

/// Tag of each embedding `θ ↦ iᵃθ` of `F' = ℚ(θ)`: the real pair goes to the
/// `h₁` factor with Hodge weights `x` and `1`, the complex pair to `h₀` as
/// `z` and `z̄`.
pub const HODGE_TAGS: [&str; 4] = ["h1:x", "h0:z", "h1:1", "h0:zbar"];

fn fixed_dimension(m: i64, group: &[Automorphism]) -> usize {
    // Stack the matrices of σ − id and take the kernel dimension.
    let mut rows = Vec::new();
    for s in group {
        let images: Vec<ClosureElement> = (0..8).map(|p| ClosureElement::basis(m, p % 4, p / 4).apply(s)).collect();
        for q in 0..8 {
            rows.push(
                (0..8)
                    .map(|p| {
                        let v = images[p].c[q].clone();
                        if p == q {
                            v - BigRational::one()
                        } else {
                            v
                        }
                    })
                    .collect(),
            );
        }
    }
    8 - RationalMatrix::from_rows(rows).rank()
}

/// Dimension of the ℚ-subalgebra generated by `gens`.
fn subalgebra_dimension(m: i64, gens: &[ClosureElement]) -> usize {
    let mut span = vec![ClosureElement::one(m)];
    let mut rank = 1;
    loop {
        let mut next = span.clone();
        for b in &span {
            for g in gens {
                next.push(b.mul(g));
            }
        }
        let r = RationalMatrix::from_rows(next.iter().map(|e| e.c.clone()).collect()).rank();
        if r == rank {
            return rank;
        }
        // keep an independent subset
        let (_, pivots) = RationalMatrix::from_rows(next.iter().map(|e| e.c.clone()).collect())
            .transpose()
            .rref();
        span = pivots.iter().map(|&p| next[p].clone()).collect();
        rank = r;
    }
}

/// Minimal polynomial over ℚ (monic, constant term first).
pub fn minimal_polynomial(x: &ClosureElement) -> Vec<BigRational> {
    let mut powers = vec![ClosureElement::one(x.m)];
    loop {
        let next = powers.last().unwrap().mul(x);
        // solve Σ cₖ xᵏ = x^{deg}
        let deg = powers.len();
        let mut rows: Vec<Vec<BigRational>> = (0..8)
            .map(|p| powers.iter().map(|e| e.c[p].clone()).chain([next.c[p].clone()]).collect())
            .collect();
        let mat = RationalMatrix::from_rows(std::mem::take(&mut rows));
        let kernel = mat.kernel();
        if let Some(v) = kernel.first() {
            let lead = v[deg].clone();
            return v.iter().map(|c| c / &lead).collect();
        }
        powers.push(next);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflexGenerator {
    /// Polynomial in `θ = m^{1/4}` and `i`.
    pub expression: String,
    pub minimal_polynomial: Vec<String>,
    /// The generator is fixed by every element of the stabilizer.
    pub fixed_by_stabilizer: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupRecord {
    pub elements: Vec<String>,
    pub fixed_field_degree: usize,
    pub fixes_tagging: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflexField {
    pub m: i64,
    /// `m` with fourth powers removed; `ℚ(m^{1/4})` only depends on it.
    pub reduced_m: i64,
    pub squarefree_core: i64,
    /// Discriminant of `E = ℚ(√m)`.
    pub quadratic_subfield_discriminant: i64,
    pub closure_degree: usize,
    pub tags: Vec<(String, String)>,
    pub stabilizer: Vec<String>,
    pub degree: usize,
    pub generators: Vec<ReflexGenerator>,
    pub equals_galois_closure: bool,
    pub subgroups: Vec<SubgroupRecord>,
    /// Galois correspondence `|H| · [L^H : ℚ] = 8` held on every subgroup and
    /// the stabilizer is the largest subgroup fixing the tagging.
    pub lattice_certified: bool,
}

fn fourth_power_free(mut m: i64) -> i64 {
    let mut p = 2;
    while p * p * p * p <= m {
        while m % (p * p * p * p) == 0 {
            m /= p * p * p * p;
        }
        p += 1;
    }
    m
}

fn is_subgroup(set: &[Automorphism]) -> bool {
    set.iter().any(|s| s.is_identity()) && set.iter().all(|a| set.iter().all(|b| set.contains(&a.compose(b))))
}

/// Field of definition of the Hodge cocharacter for `F' = ℚ(m^{1/4})` over
/// `E = ℚ(√m)`, shore type `(1, 1)`.
pub fn reflex_field_pure_quartic(m: i64) -> Result<ReflexField> {
    if m < 2 {
        return Err(Error::validation("m must be at least 2 for x⁴ − m to have signature (2,1)"));
    }
    if is_square(m) {
        return Err(Error::validation(format!("x⁴ − {m} is reducible: {m} is a square")));
    }
    let reduced = fourth_power_free(m);
    let all = Automorphism::all();
    let fixes = |s: &Automorphism| (0..4).all(|a| HODGE_TAGS[s.on_embedding(a) as usize] == HODGE_TAGS[a as usize]);
    let stabilizer: Vec<Automorphism> = all.iter().copied().filter(|s| fixes(s)).collect();
    let degree = fixed_dimension(m, &stabilizer);

    let th = ClosureElement::theta(m);
    let i = ClosureElement::i(m);
    let candidates = [
        th.clone(),
        i.mul(&th),
        i.clone(),
        th.mul(&th),
        i.mul(&th).mul(&th),
        th.add(&i.mul(&th)),
    ];
    let mut gens: Vec<ClosureElement> = Vec::new();
    let mut dim = 1;
    for c in candidates {
        if dim == degree {
            break;
        }
        if !stabilizer.iter().all(|s| c.apply(s) == c) {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(c.clone());
        let d = subalgebra_dimension(m, &trial);
        if d > dim {
            gens = trial;
            dim = d;
        }
    }
    if dim != degree {
        return Err(Error::Unsupported("no generating set among the candidate elements".into()));
    }

    let mut subgroups = Vec::new();
    let mut lattice_ok = true;
    let mut best = 0;
    for mask in 1u32..256 {
        let set: Vec<Automorphism> = (0..8).filter(|b| mask >> b & 1 == 1).map(|b| all[b]).collect();
        if !is_subgroup(&set) {
            continue;
        }
        let fd = fixed_dimension(m, &set);
        lattice_ok &= fd * set.len() == 8;
        let ft = set.iter().all(fixes);
        if ft {
            best = best.max(set.len());
        }
        subgroups.push(SubgroupRecord {
            elements: set.iter().map(ToString::to_string).collect(),
            fixed_field_degree: fd,
            fixes_tagging: ft,
        });
    }
    lattice_ok &= best == stabilizer.len();

    let generators = gens
        .iter()
        .map(|g| ReflexGenerator {
            expression: g.to_string(),
            minimal_polynomial: minimal_polynomial(g).iter().map(ToString::to_string).collect(),
            fixed_by_stabilizer: stabilizer.iter().all(|s| &g.apply(s) == g),
        })
        .collect();
    let core = squarefree_part(m);
    Ok(ReflexField {
        m,
        reduced_m: reduced,
        squarefree_core: core,
        quadratic_subfield_discriminant: fundamental_discriminant_of(core),
        closure_degree: fixed_dimension(m, &[Automorphism { r: 0, conj: false }]),
        tags: ["θ", "iθ", "−θ", "−iθ"]
            .iter()
            .zip(HODGE_TAGS)
            .map(|(e, t)| (e.to_string(), t.to_string()))
            .collect(),
        stabilizer: stabilizer.iter().map(ToString::to_string).collect(),
        degree,
        generators,
        equals_galois_closure: degree == 8,
        subgroups,
        lattice_certified: lattice_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphisms_are_field_maps() {
        let m = 3;
        let x = ClosureElement::theta(m).add(&ClosureElement::i(m));
        let y = ClosureElement::theta(m).mul(&ClosureElement::theta(m)).add(&ClosureElement::one(m));
        for s in Automorphism::all() {
            assert_eq!(x.mul(&y).apply(&s), x.apply(&s).mul(&y.apply(&s)));
            for t in Automorphism::all() {
                assert_eq!(x.apply(&t).apply(&s), x.apply(&s.compose(&t)));
            }
        }
    }

    #[test]
    fn minimal_polynomials() {
        let m = 2;
        let th = ClosureElement::theta(m);
        let mp = minimal_polynomial(&th);
        assert_eq!(mp, vec![rat(-2), rat(0), rat(0), rat(0), rat(1)]);
        let i = ClosureElement::i(m);
        assert_eq!(minimal_polynomial(&i), vec![rat(1), rat(0), rat(1)]);
    }
}
