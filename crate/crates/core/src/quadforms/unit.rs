use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::element::QuadElement;
use super::form::Discriminant;
use crate::corearith::{cf_expansion, QuadraticIrrational};
use crate::Result;

/// The fundamental unit `ε = (x + y√D)/2 > 1` of the order of discriminant `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalUnit {
    pub d: i64,
    pub x: BigInt,
    pub y: BigInt,
    /// `N(ε) = (x² − Dy²)/4 = ±1`.
    pub norm: i32,
    /// Period length of the expansion of `(P + √D)/2`.
    pub period_length: usize,
}

impl FundamentalUnit {
    pub fn element(&self) -> QuadElement {
        QuadElement::from_ratio(self.d, self.x.clone(), self.y.clone(), 2)
    }
}

/// Computes the fundamental unit from the purely periodic continued fraction
/// of `ξ = (P + √D)/2`, `P` the largest integer below `√D` with `P ≡ D (mod 2)`.
///
/// With `[[p, p'], [q, q']]` the product of `[[aᵢ, 1], [1, 0]]` over one
/// period, `ε = qξ + q'`.
pub fn fundamental_unit(d: Discriminant) -> Result<FundamentalUnit> {
    let dv = d.value();
    let s = d.isqrt();
    let p = if (s - dv).rem_euclid(2) == 0 { s } else { s - 1 };
    let xi = QuadraticIrrational::new(p, 2, dv)?;
    let budget = 64 + 8 * (dv as f64).sqrt() as usize * ((dv as f64).ln() as usize + 2);
    let cf = cf_expansion(&xi, budget)?;
    debug_assert!(cf.preperiod.is_empty());
    let mut m = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    for a in &cf.period {
        let r0 = [&m[0][0] * a + &m[0][1], m[0][0].clone()];
        let r1 = [&m[1][0] * a + &m[1][1], m[1][0].clone()];
        m = [r0, r1];
    }
    let [_, [q, q_prime]] = m;
    let x = &q * BigInt::from(p) + BigInt::from(2) * &q_prime;
    let y = q;
    let ell = cf.period.len();
    let norm = if ell % 2 == 0 { 1 } else { -1 };
    debug_assert_eq!(&x * &x - BigInt::from(dv) * &y * &y, BigInt::from(4 * norm));
    Ok(FundamentalUnit {
        d: dv,
        x,
        y,
        norm,
        period_length: ell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Smallest `y > 0` with `Dy² ± 4` a square.
    fn brute_force(d: i64) -> Option<(i64, i64, i32)> {
        for y in 1i64..20_000 {
            let t = d * y * y;
            for (n, v) in [(-1, t - 4), (1, t + 4)] {
                let x = (v as f64).sqrt().round() as i64;
                if v >= 0 && x * x == v {
                    return Some((x, y, n));
                }
            }
        }
        None
    }

    #[test]
    fn small_units() {
        for (d, x, y, n) in [(5, 1, 1, -1), (8, 2, 1, -1), (12, 4, 1, 1), (13, 3, 1, -1)] {
            let u = fundamental_unit(Discriminant::new(d).unwrap()).unwrap();
            assert_eq!((u.x.clone(), u.y.clone(), u.norm), (BigInt::from(x), BigInt::from(y), n), "D = {d}");
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        for d in 5..400 {
            let Ok(disc) = Discriminant::new(d) else { continue };
            let Some((x, y, n)) = brute_force(d) else { continue };
            let u = fundamental_unit(disc).unwrap();
            assert_eq!((u.x, u.y, u.norm), (BigInt::from(x), BigInt::from(y), n), "D = {d}");
        }
    }
}
