use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::gsp::f_n;
use super::torus::{torus_membership, Membership, TorusPoint};
use crate::corearith::RationalMatrix;
use crate::{Error, Result};

/// An entry of the symbolic base point: `z = a + ib` feeds the `h₀` blocks
/// and `(xᵢ, yᵢ)` the `h₁` blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolicEntry {
    Zero,
    A,
    B,
    NegB,
    X(usize),
    Y(usize),
}

impl fmt::Display for SymbolicEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicEntry::Zero => write!(f, "0"),
            SymbolicEntry::A => write!(f, "a"),
            SymbolicEntry::B => write!(f, "b"),
            SymbolicEntry::NegB => write!(f, "-b"),
            SymbolicEntry::X(i) => write!(f, "x{}", i + 1),
            SymbolicEntry::Y(i) => write!(f, "y{}", i + 1),
        }
    }
}

impl Serialize for SymbolicEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A shore datum of type `(k₀, k₁)` of the Siegel datum in rank `n = k₀ + k₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ShoreDatum {
    pub n: usize,
    pub k0: usize,
    pub k1: usize,
}

impl ShoreDatum {
    pub fn new(k0: usize, k1: usize) -> Result<Self> {
        if k0 + k1 == 0 {
            return Err(Error::validation("the partition must have positive total n = k0 + k1"));
        }
        Ok(ShoreDatum { n: k0 + k1, k0, k1 })
    }

    /// `k₁ = 0`: the Siegel datum itself.
    pub fn is_siegel(&self) -> bool {
        self.k1 == 0
    }

    /// `f_n ∘ h_{k₀,k₁}` on symbolic coordinates, as a `2n × 2n` array.
    pub fn base_point(&self) -> Vec<Vec<SymbolicEntry>> {
        use SymbolicEntry::*;
        let n = self.n;
        let mut m = vec![vec![Zero; 2 * n]; 2 * n];
        for i in 0..n {
            // block entries (a_i, b_i; c_i, d_i) of the i-th factor
            let [[p, q], [r, s]] = if i < self.k0 {
                [[A, B], [NegB, A]]
            } else {
                let j = i - self.k0;
                [[X(j), Zero], [Zero, Y(j)]]
            };
            m[i][i] = p;
            m[i][n + i] = q;
            m[n + i][i] = r;
            m[n + i][n + i] = s;
        }
        m
    }

    /// `h_{S,k₀,k₁}(t) = f_n(h_{k₀,k₁}(π_{k₁}(t)))`.
    pub fn h_eval(&self, point: &TorusPoint) -> Result<RationalMatrix> {
        if point.k() < self.k1 {
            return Err(Error::validation(format!(
                "point has {} pairs but the datum needs k1 = {}",
                point.k(),
                self.k1
            )));
        }
        let p = point.project(self.k1);
        match torus_membership(&p) {
            Membership::Neither => {
                return Err(Error::validation("point is not in 𝔻_k: the products xᵢyᵢ differ or vanish"));
            }
            Membership::Diagonal if self.k0 > 0 => {
                return Err(Error::validation("z·z̄ must equal xᵢyᵢ: point is not in 𝕋_k"));
            }
            _ => {}
        }
        let zero = BigRational::zero();
        let (a, b) = p.z.clone().unwrap_or((zero.clone(), zero.clone()));
        let value = |e: SymbolicEntry| match e {
            SymbolicEntry::Zero => zero.clone(),
            SymbolicEntry::A => a.clone(),
            SymbolicEntry::B => b.clone(),
            SymbolicEntry::NegB => -b.clone(),
            SymbolicEntry::X(i) => p.entries[i].0.clone(),
            SymbolicEntry::Y(i) => p.entries[i].1.clone(),
        };
        let bp = self.base_point();
        let n = self.n;
        let blocks: Vec<RationalMatrix> = (0..n)
            .map(|i| {
                RationalMatrix::from_rows(vec![
                    vec![value(bp[i][i]), value(bp[i][n + i])],
                    vec![value(bp[n + i][i]), value(bp[n + i][n + i])],
                ])
            })
            .collect();
        f_n(&blocks)
    }
}

/// Shorthand for [`ShoreDatum::h_eval`].
pub fn h_eval(datum: &ShoreDatum, point: &TorusPoint) -> Result<RationalMatrix> {
    datum.h_eval(point)
}
