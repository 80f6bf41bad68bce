//! Quadratic irrationals `(P + √D)/Q` and their continued fractions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::intmath::big_is_square;
use crate::{Error, Result};

/// The real number `(P + √D)/Q` with `D > 0` not a square.
///
/// Construction normalises so that `Q | D − P²`, rescaling all three
/// coefficients when needed; the represented value never changes.
#[derive(Clone, Debug, Eq)]
pub struct QuadraticIrrational {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl QuadraticIrrational {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (mut p, mut q, mut d) = (p.into(), q.into(), d.into());
        if q.is_zero() {
            return Err(Error::validation("denominator Q must be nonzero"));
        }
        if !d.is_positive() || big_is_square(&d) {
            return Err(Error::validation(format!("D = {d} must be a positive non-square")));
        }
        if !(&d - &p * &p).is_multiple_of(&q) {
            let aq = q.abs();
            p *= &aq;
            d *= &aq * &aq;
            q *= &aq;
        }
        Ok(QuadraticIrrational { p, q, d })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// The Galois conjugate `(P − √D)/Q`.
    pub fn conjugate(&self) -> Self {
        QuadraticIrrational {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
        }
    }

    /// Rational part `P/Q` and the square `D/Q²` of the irrational part's
    /// coefficient times `√D`; together they determine the value.
    fn canonical(&self) -> (BigRational, BigRational, i32) {
        let r = BigRational::new(self.p.clone(), self.q.clone());
        let s = BigRational::new(self.d.clone(), &self.q * &self.q);
        (r, s, if self.q.is_positive() { 1 } else { -1 })
    }

    /// Exact comparison with a rational number.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        // sign((P − rQ) + √D) · sign(Q)
        let t = BigRational::from_integer(self.p.clone()) - r * BigRational::from_integer(self.q.clone());
        let d = BigRational::from_integer(self.d.clone());
        let numerator_sign = if !t.is_negative() || &t * &t < d {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        if self.q.is_positive() {
            numerator_sign
        } else {
            numerator_sign.reverse()
        }
    }

    /// `⌊x⌋`, computed from `⌊√D⌋` without any rounding error.
    pub fn floor(&self) -> BigInt {
        let s = self.d.sqrt();
        if self.q.is_positive() {
            (&self.p + &s).div_floor(&self.q)
        } else {
            let aq = -&self.q;
            -((&self.p + &s).div_floor(&aq) + BigInt::one())
        }
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (p + d.sqrt()) / q
    }

    /// Purely periodic continued fraction: `x > 1` and `−1 < x̄ < 0`.
    pub fn is_reduced(&self) -> bool {
        let one = BigRational::one();
        let conj = self.conjugate();
        self.cmp_rational(&one) == Ordering::Greater
            && conj.cmp_rational(&BigRational::zero()) == Ordering::Less
            && conj.cmp_rational(&(-one)) == Ordering::Greater
    }
}

impl PartialEq for QuadraticIrrational {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + √{})/{}", self.p, self.d, self.q)
    }
}

/// An eventually periodic simple continued fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

/// Continued fraction expansion by the exact `(P, Q)` recurrence.
///
/// The period is found when a state `(P, Q)` repeats; `max_steps` bounds the
/// number of partial quotients computed.
pub fn cf_expansion(x: &QuadraticIrrational, max_steps: usize) -> Result<ContinuedFraction> {
    if max_steps == 0 {
        return Err(Error::validation("max_steps must be positive"));
    }
    let d = x.d.clone();
    let s = d.sqrt();
    let (mut p, mut q) = (x.p.clone(), x.q.clone());
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut quotients = Vec::new();
    for step in 0..max_steps {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = quotients.split_off(start);
            return Ok(ContinuedFraction {
                preperiod: quotients,
                period,
            });
        }
        seen.insert((p.clone(), q.clone()), step);
        let a = if q.is_positive() {
            (&p + &s).div_floor(&q)
        } else {
            -((&p + &s).div_floor(&-&q) + BigInt::one())
        };
        let p_next = &a * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        quotients.push(a);
        p = p_next;
        q = q_next;
    }
    Err(Error::ResourceLimit(format!(
        "no period found within {max_steps} partial quotients"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn sqrt2_golden_sqrt3() {
        let cf = cf_expansion(&QuadraticIrrational::new(0, 1, 2).unwrap(), 100).unwrap();
        assert_eq!((cf.preperiod, cf.period), (ints(&[1]), ints(&[2])));
        let cf = cf_expansion(&QuadraticIrrational::new(1, 2, 5).unwrap(), 100).unwrap();
        assert_eq!((cf.preperiod, cf.period), (ints(&[]), ints(&[1])));
        let cf = cf_expansion(&QuadraticIrrational::new(0, 1, 3).unwrap(), 100).unwrap();
        assert_eq!((cf.preperiod, cf.period), (ints(&[1]), ints(&[1, 2])));
    }

    #[test]
    fn normalisation_keeps_value() {
        // (1 + √7)/4: 4 ∤ 6, so rescale to (4 + √112)/16.
        let x = QuadraticIrrational::new(1, 4, 7).unwrap();
        assert_eq!(x.p(), &BigInt::from(4));
        assert_eq!(x.q(), &BigInt::from(16));
        assert_eq!(x.d(), &BigInt::from(112));
        assert_eq!(x, QuadraticIrrational::new(2, 8, 28).unwrap());
        let y = QuadraticIrrational::new(-1, -3, 7).unwrap();
        assert_eq!(x.conjugate().q(), &BigInt::from(-16));
        assert_ne!(x, y);
        assert_eq!(x.floor(), BigInt::from(0));
        assert_eq!(y.floor(), BigInt::from(-1));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(QuadraticIrrational::new(0, 0, 2).is_err());
        assert!(QuadraticIrrational::new(0, 1, 4).is_err());
        assert!(QuadraticIrrational::new(0, 1, -3).is_err());
    }

    #[test]
    fn budget_exhaustion() {
        let x = QuadraticIrrational::new(0, 1, 94).unwrap();
        assert!(matches!(cf_expansion(&x, 3), Err(Error::ResourceLimit(_))));
        assert!(cf_expansion(&x, 100).is_ok());
    }

    #[test]
    fn exact_comparison() {
        let x = QuadraticIrrational::new(0, 1, 2).unwrap();
        assert_eq!(x.cmp_rational(&BigRational::new(141.into(), 100.into())), Ordering::Greater);
        assert_eq!(x.cmp_rational(&BigRational::new(142.into(), 100.into())), Ordering::Less);
        assert_eq!(x.conjugate().cmp_rational(&BigRational::new((-141).into(), 100.into())), Ordering::Less);
        assert!(QuadraticIrrational::new(1, 1, 2).unwrap().is_reduced());
        assert!(!x.is_reduced());
    }
}
