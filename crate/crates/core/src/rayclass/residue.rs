use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::corearith::group::{enumerate_abelian_group, EnumeratedGroup};
use crate::corearith::intmath::{factorize, mod_inverse};
use crate::corearith::{quotient_group, FiniteAbelianGroup, IntegerMatrix};
use crate::quadforms::{Discriminant, QuadElement};
use crate::{Error, Result};

/// A residue `x + yω` of `ℤ[ω]/q`.
pub type Residue = (i64, i64);

/// Arithmetic in `O/q` for `O = ℤ[ω]`, `ω = (δ + √D)/2`.
#[derive(Clone, Copy, Debug)]
pub struct ResidueRing {
    pub q: i64,
    delta: i64,
    /// `ω² = δω + t`.
    t: i64,
}

impl ResidueRing {
    pub fn new(d: Discriminant, q: i64) -> Self {
        let delta = d.parity();
        ResidueRing {
            q,
            delta,
            t: ((d.value() - delta) / 4).rem_euclid(q),
        }
    }

    pub fn reduce(&self, (x, y): Residue) -> Residue {
        (x.rem_euclid(self.q), y.rem_euclid(self.q))
    }

    pub fn mul(&self, (x1, y1): Residue, (x2, y2): Residue) -> Residue {
        let q = self.q as i128;
        let (x1, y1, x2, y2) = (x1 as i128, y1 as i128, x2 as i128, y2 as i128);
        let yy = y1 * y2 % q;
        let x = (x1 * x2 + yy * self.t as i128).rem_euclid(q);
        let y = (x1 * y2 + x2 * y1 + yy * self.delta as i128).rem_euclid(q);
        (x as i64, y as i64)
    }

    /// `N(x + yω) = x² + δxy − ty² (mod q)`.
    pub fn norm(&self, (x, y): Residue) -> i64 {
        let q = self.q as i128;
        let (x, y) = (x as i128, y as i128);
        (x * x + self.delta as i128 * x * y - self.t as i128 * y * y).rem_euclid(q) as i64
    }

    pub fn is_unit(&self, r: Residue) -> bool {
        self.norm(r).gcd(&self.q) == 1
    }

    pub fn pow(&self, r: Residue, mut k: u64) -> Residue {
        let mut acc = self.reduce((1, 0));
        let mut base = self.reduce(r);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Residue of an integral element of `ℚ(√D)`.
    pub fn residue_of(&self, alpha: &QuadElement) -> Result<Residue> {
        let (u, v) = alpha.omega_coordinates();
        if !u.is_integer() || !v.is_integer() {
            return Err(Error::validation("element is not integral"));
        }
        let q = BigInt::from(self.q);
        let r = |z: &BigInt| z.mod_floor(&q).to_i64().expect("residue fits");
        Ok((r(u.numer()), r(v.numer())))
    }
}

/// `(O/p^k)^×`, found by enumerating residues.
#[derive(Clone, Debug)]
pub struct LocalUnitGroup {
    pub p: u64,
    pub k: u32,
    pub ring: ResidueRing,
    pub enumeration: EnumeratedGroup<Residue>,
}

impl LocalUnitGroup {
    pub fn new(d: Discriminant, p: u64, k: u32) -> Self {
        let q = p.pow(k) as i64;
        let ring = ResidueRing::new(d, q);
        let units: Vec<Residue> = (0..q)
            .flat_map(|x| (0..q).map(move |y| (x, y)))
            .filter(|&r| ring.is_unit(r))
            .collect();
        let enumeration = enumerate_abelian_group(
            units,
            ring.reduce((1, 0)),
            |&a, &b| ring.mul(a, b),
            |&(x, y)| format!("{x}+{y}ω mod {q}"),
        );
        LocalUnitGroup { p, k, ring, enumeration }
    }

    pub fn order(&self) -> usize {
        self.enumeration.order()
    }
}

/// `(O/N)^×` as a product of local factors over the prime powers of `N`.
#[derive(Clone, Debug)]
pub struct ResidueUnitGroup {
    pub n: u64,
    pub ring: ResidueRing,
    pub factors: Vec<LocalUnitGroup>,
    /// Presentation over the concatenated local generators.
    pub group: FiniteAbelianGroup,
}

impl ResidueUnitGroup {
    pub fn new(d: Discriminant, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("modulus must be positive"));
        }
        if n > 1 << 20 {
            return Err(Error::ResourceLimit(format!("modulus {n} is too large to enumerate")));
        }
        let factors: Vec<LocalUnitGroup> = factorize(n)
            .into_iter()
            .map(|(p, k)| LocalUnitGroup::new(d, p, k))
            .collect();
        let r: usize = factors.iter().map(|f| f.enumeration.generators.len()).sum();
        let mut rel = IntegerMatrix::zeros(r, r);
        let mut labels = Vec::with_capacity(r);
        let mut off = 0;
        for f in &factors {
            let m = &f.enumeration.relations;
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    rel[(off + i, off + j)] = m[(i, j)].clone();
                }
            }
            labels.extend(f.enumeration.generators.iter().map(|&(x, y)| format!("{x}+{y}ω mod {}", f.ring.q)));
            off += m.rows();
        }
        let group = if r == 0 {
            FiniteAbelianGroup::trivial()
        } else {
            quotient_group(&rel, Some(labels))?
        };
        Ok(ResidueUnitGroup {
            n,
            ring: ResidueRing::new(d, n as i64),
            factors,
            group,
        })
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|f| f.order() as u64).product()
    }

    pub fn generator_count(&self) -> usize {
        self.factors.iter().map(|f| f.enumeration.generators.len()).sum()
    }

    /// The relation matrix over the local generators (block diagonal).
    pub fn relation_rows(&self) -> Vec<Vec<i64>> {
        let r = self.generator_count();
        let mut rows = Vec::new();
        let mut off = 0;
        for f in &self.factors {
            let m = &f.enumeration.relations;
            for i in 0..m.rows() {
                let mut row = vec![0; r];
                for j in 0..m.cols() {
                    row[off + j] = m[(i, j)].to_i64().expect("small relation");
                }
                rows.push(row);
            }
            off += m.cols();
        }
        rows
    }

    /// Exponents over the local generators of a residue mod `N`, or `None`
    /// when it is not a unit.
    pub fn log(&self, r: Residue) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.generator_count());
        for f in &self.factors {
            let local = f.ring.reduce(r);
            out.extend(f.enumeration.dlog.get(&local)?.iter().copied());
        }
        Some(out)
    }

    /// The `i`-th local generator as a residue mod `N` (trivial at the other
    /// prime powers).
    pub fn generator_residue(&self, i: usize) -> Residue {
        let n = self.n as i128;
        let mut out = (0i128, 0i128);
        let mut off = 0;
        for f in &self.factors {
            let q = f.ring.q;
            let gens = &f.enumeration.generators;
            let target = if (off..off + gens.len()).contains(&i) { gens[i - off] } else { (1, 0) };
            off += gens.len();
            // CRT idempotent: ≡ 1 mod q, ≡ 0 mod N/q.
            let rest = self.n as i64 / q;
            let e = rest as i128 * mod_inverse(rest.rem_euclid(q), q).expect("coprime") as i128;
            out.0 = (out.0 + e * target.0 as i128) % n;
            out.1 = (out.1 + e * target.1 as i128) % n;
        }
        self.ring.reduce((out.0 as i64, out.1 as i64))
    }
}

/// Structure of `(O_E/N)^×` for a fundamental discriminant `D`.
pub fn residue_unit_group(d: i64, n: u64) -> Result<FiniteAbelianGroup> {
    let d = Discriminant::fundamental(d)?;
    Ok(ResidueUnitGroup::new(d, n)?.group)
}
