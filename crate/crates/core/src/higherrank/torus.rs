use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// A point of `𝔻_k` or `𝕋_k` with exact coordinates: pairs `(xᵢ, yᵢ)` and,
/// for `𝕋_k`, `z = a + ib` stored as `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusPoint {
    pub z: Option<(BigRational, BigRational)>,
    pub entries: Vec<(BigRational, BigRational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    /// In `𝕋_k` (and hence its image in `𝔻_k`).
    Torus,
    Diagonal,
    Neither,
}

impl TorusPoint {
    pub fn new(z: Option<(BigRational, BigRational)>, entries: Vec<(BigRational, BigRational)>) -> Self {
        TorusPoint { z, entries }
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    /// `w(t)`: every coordinate equal to `t`.
    pub fn weight(t: BigRational, k: usize) -> Self {
        TorusPoint {
            z: Some((t.clone(), BigRational::zero())),
            entries: vec![(t.clone(), t); k],
        }
    }

    /// `μ(x) = ((x, 1), …, (x, 1))` on the `𝔾_m²` factors.
    pub fn hodge(x: BigRational, k: usize) -> Self {
        TorusPoint {
            z: None,
            entries: vec![(x, BigRational::one()); k],
        }
    }

    pub fn z_norm(&self) -> Option<BigRational> {
        self.z.as_ref().map(|(a, b)| a * a + b * b)
    }

    /// The common value of `xᵢyᵢ` when the point lies in `𝔻_k`.
    pub fn multiplier(&self) -> Option<BigRational> {
        let mut it = self.entries.iter().map(|(x, y)| x * y);
        let first = match it.next() {
            Some(v) => v,
            None => return self.z_norm().filter(|n| !n.is_zero()),
        };
        (it.all(|v| v == first) && !first.is_zero()).then_some(first)
    }

    /// Projection `π_j`: keep the first `j` pairs.
    pub fn project(&self, j: usize) -> Self {
        TorusPoint {
            z: self.z.clone(),
            entries: self.entries[..j.min(self.k())].to_vec(),
        }
    }
}

/// Exact membership in `𝔻_k` and `𝕋_k`.
pub fn torus_membership(p: &TorusPoint) -> Membership {
    if p.entries.iter().any(|(x, y)| x.is_zero() || y.is_zero()) {
        return Membership::Neither;
    }
    let Some(m) = p.multiplier() else {
        return Membership::Neither;
    };
    match p.z_norm() {
        Some(n) if n == m => Membership::Torus,
        _ if p.entries.is_empty() => Membership::Neither,
        _ => Membership::Diagonal,
    }
}
