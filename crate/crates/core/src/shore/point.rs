use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::corearith::intmath::{square_factor, squarefree_part};
use crate::corearith::QuadraticIrrational;
use crate::quadforms::QuadElement;
use crate::{Error, Result};

/// A point of `ℙ¹(ℝ)` known exactly: `∞`, a rational, a real quadratic
/// irrational, or a real root of an integer polynomial of higher degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedReal {
    Infinity,
    Rational(BigRational),
    /// `x + y√d` with `d > 1` squarefree and `y ≠ 0`.
    Quadratic(QuadElement),
    /// The unique root in `[lo, hi]` of a polynomial with no rational roots
    /// (coefficients from the constant term up), degree at least 3.
    Algebraic {
        coefficients: Vec<i64>,
        lo: BigRational,
        hi: BigRational,
    },
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn eval_poly(c: &[i64], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, &k| acc * x + rat(k))
}

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|k| n % k == 0).collect()
}

impl ExtendedReal {
    pub fn integer(n: i64) -> Self {
        ExtendedReal::Rational(rat(n))
    }

    pub fn rational(r: BigRational) -> Self {
        ExtendedReal::Rational(r)
    }

    /// `x + y√d`, normalised to a squarefree radicand.
    pub fn quadratic(x: BigRational, y: BigRational, d: i64) -> Result<Self> {
        if d < 0 {
            return Err(Error::validation("radicand must be non-negative for a real point"));
        }
        if y.is_zero() || d == 0 {
            return Ok(ExtendedReal::Rational(x));
        }
        let core = squarefree_part(d);
        let f = square_factor(d);
        let y = y * rat(f);
        if core == 1 {
            return Ok(ExtendedReal::Rational(x + y));
        }
        Ok(ExtendedReal::Quadratic(QuadElement::new(core, x, y)))
    }

    pub fn from_element(e: &QuadElement) -> Self {
        Self::quadratic(e.x.clone(), e.y.clone(), e.radicand()).expect("real quadratic field")
    }

    /// `(P + √D)/Q`.
    pub fn from_quadratic_irrational(q: &QuadraticIrrational) -> Result<Self> {
        let d = q.d().to_i64().ok_or_else(|| Error::Unsupported("radicand too large".into()))?;
        let den = q.q().clone();
        Self::quadratic(
            BigRational::new(q.p().clone(), den.clone()),
            BigRational::new(BigInt::one(), den),
            d,
        )
    }

    /// A root of an integer polynomial of degree ≥ 3 with no rational
    /// roots, isolated by a sign change on `[lo, hi]`.
    pub fn algebraic(coefficients: Vec<i64>, lo: BigRational, hi: BigRational) -> Result<Self> {
        let mut c = coefficients;
        while c.last() == Some(&0) {
            c.pop();
        }
        if c.len() < 4 {
            return Err(Error::validation("use the rational or quadratic constructors for degree ≤ 2"));
        }
        if c[0] == 0 {
            return Err(Error::validation("polynomial has the rational root 0"));
        }
        let lead = *c.last().unwrap();
        for p in divisors(c[0]) {
            for q in divisors(lead) {
                for s in [1, -1] {
                    if eval_poly(&c, &BigRational::new(BigInt::from(s * p), BigInt::from(q))).is_zero() {
                        return Err(Error::validation(format!("polynomial has the rational root {}", s * p / q)));
                    }
                }
            }
        }
        let (flo, fhi) = (eval_poly(&c, &lo), eval_poly(&c, &hi));
        if lo >= hi || flo.signum() == fhi.signum() {
            return Err(Error::validation("interval does not isolate a sign change"));
        }
        Ok(ExtendedReal::Algebraic { coefficients: c, lo, hi })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedReal::Infinity)
    }

    /// Rational or `∞`.
    pub fn is_rational(&self) -> bool {
        matches!(self, ExtendedReal::Infinity | ExtendedReal::Rational(_))
    }

    /// Degree over `ℚ` (`∞` counts as rational).
    pub fn degree(&self) -> usize {
        match self {
            ExtendedReal::Infinity | ExtendedReal::Rational(_) => 1,
            ExtendedReal::Quadratic(_) => 2,
            ExtendedReal::Algebraic { coefficients, .. } => coefficients.len() - 1,
        }
    }

    /// The squarefree radicand of the quadratic field, if quadratic.
    pub fn radicand(&self) -> Option<i64> {
        match self {
            ExtendedReal::Quadratic(e) => Some(e.radicand()),
            _ => None,
        }
    }

    /// The Galois conjugate of a quadratic point; rational points are fixed.
    pub fn conjugate(&self) -> Option<Self> {
        match self {
            ExtendedReal::Quadratic(e) => Some(ExtendedReal::Quadratic(e.conj())),
            ExtendedReal::Infinity | ExtendedReal::Rational(_) => Some(self.clone()),
            ExtendedReal::Algebraic { .. } => None,
        }
    }

    pub fn as_element(&self, d: i64) -> Option<QuadElement> {
        match self {
            ExtendedReal::Rational(r) => Some(QuadElement::new(d, r.clone(), BigRational::zero())),
            ExtendedReal::Quadratic(e) if e.radicand() == d => Some(e.clone()),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedReal::Infinity => f64::INFINITY,
            ExtendedReal::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            ExtendedReal::Quadratic(e) => e.to_f64(),
            ExtendedReal::Algebraic { coefficients, lo, hi } => {
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                let two = rat(2);
                let slo = eval_poly(coefficients, &lo).signum();
                for _ in 0..64 {
                    let mid = (&lo + &hi) / &two;
                    if eval_poly(coefficients, &mid).signum() == slo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo.to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    /// Exact comparison on the affine line; `∞` is treated as the largest
    /// point and higher-degree points compare numerically.
    pub fn compare(&self, other: &Self) -> Ordering {
        use ExtendedReal::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, _) => Ordering::Greater,
            (_, Infinity) => Ordering::Less,
            (Rational(a), Rational(b)) => a.cmp(b),
            (Algebraic { .. }, _) | (_, Algebraic { .. }) => {
                self.to_f64().partial_cmp(&other.to_f64()).unwrap_or(Ordering::Equal)
            }
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                // Exact when both lie in the same quadratic field.
                let d = self.radicand().or(other.radicand()).unwrap();
                match (self.as_element(d), other.as_element(d)) {
                    (Some(x), Some(y)) => match (&x - &y).sign_first() {
                        1 => Ordering::Greater,
                        -1 => Ordering::Less,
                        _ => Ordering::Equal,
                    },
                    _ => a.partial_cmp(&b).unwrap_or(Ordering::Equal),
                }
            }
        }
    }

    /// Möbius action `x ↦ (αx + β)/(γx + δ)` of an invertible rational matrix.
    pub fn mobius(&self, m: &[[BigRational; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = m;
        if (a * d - b * c).is_zero() {
            return Err(Error::validation("matrix is singular"));
        }
        match self {
            ExtendedReal::Infinity => Ok(if c.is_zero() {
                ExtendedReal::Infinity
            } else {
                ExtendedReal::Rational(a / c)
            }),
            ExtendedReal::Rational(x) => {
                let den = c * x + d;
                Ok(if den.is_zero() {
                    ExtendedReal::Infinity
                } else {
                    ExtendedReal::Rational((a * x + b) / den)
                })
            }
            ExtendedReal::Quadratic(e) => {
                let k = e.radicand();
                let lift = |r: &BigRational| QuadElement::new(k, r.clone(), BigRational::zero());
                let num = &(&lift(a) * e) + &lift(b);
                let den = &(&lift(c) * e) + &lift(d);
                Ok(ExtendedReal::from_element(&(&num * &den.inv())))
            }
            ExtendedReal::Algebraic { .. } => Err(Error::Unsupported(
                "Möbius action on points of degree > 2 is not implemented".into(),
            )),
        }
    }

    /// Integers `(P, R, Q)` with `self = (P + R√d)/Q`, `Q > 0`.
    pub fn integral_parts(&self) -> Option<(BigInt, BigInt, BigInt, i64)> {
        match self {
            ExtendedReal::Rational(r) => Some((r.numer().clone(), BigInt::zero(), r.denom().clone(), 1)),
            ExtendedReal::Quadratic(e) => {
                let q = e.x.denom().lcm(e.y.denom());
                let p = (&e.x * BigRational::from_integer(q.clone())).to_integer();
                let r = (&e.y * BigRational::from_integer(q.clone())).to_integer();
                Some((p, r, q, e.radicand()))
            }
            _ => None,
        }
    }
}

fn minus(n: &BigInt) -> String {
    if n.is_negative() {
        format!("−{}", -n)
    } else {
        n.to_string()
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Infinity => write!(f, "∞"),
            ExtendedReal::Algebraic { coefficients, .. } => {
                write!(f, "root of {:?} ≈ {:.6}", coefficients, self.to_f64())
            }
            _ => {
                let (p, r, q, d) = self.integral_parts().unwrap();
                if r.is_zero() {
                    return if q.is_one() {
                        write!(f, "{}", minus(&p))
                    } else {
                        write!(f, "{}/{}", minus(&p), q)
                    };
                }
                let surd = if r.abs().is_one() {
                    format!("√{d}")
                } else {
                    format!("{}√{d}", r.abs())
                };
                let body = match (p.is_zero(), r.is_negative()) {
                    (true, false) => surd,
                    (true, true) => format!("−{surd}"),
                    (false, false) => format!("{}+{surd}", minus(&p)),
                    (false, true) => format!("{}−{surd}", minus(&p)),
                };
                if q.is_one() {
                    write!(f, "{body}")
                } else if p.is_zero() {
                    write!(f, "{body}/{q}")
                } else {
                    write!(f, "({body})/{q}")
                }
            }
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation_and_labels() {
        let r8 = ExtendedReal::quadratic(rat(0), BigRational::new(1.into(), 2.into()), 8).unwrap();
        assert_eq!(r8, ExtendedReal::quadratic(rat(0), rat(1), 2).unwrap());
        assert_eq!(r8.to_string(), "√2");
        assert_eq!(r8.conjugate().unwrap().to_string(), "−√2");
        let g = ExtendedReal::quadratic(BigRational::new((-1).into(), 2.into()), BigRational::new((-1).into(), 2.into()), 5).unwrap();
        assert_eq!(g.to_string(), "(−1−√5)/2");
        assert_eq!(ExtendedReal::quadratic(rat(3), rat(2), 9).unwrap(), ExtendedReal::integer(9));
    }

    #[test]
    fn ordering_and_mobius() {
        let s2 = ExtendedReal::quadratic(rat(0), rat(1), 2).unwrap();
        assert_eq!(s2.compare(&ExtendedReal::integer(1)), Ordering::Greater);
        assert_eq!(s2.compare(&ExtendedReal::integer(2)), Ordering::Less);
        let inv = [[rat(0), rat(1)], [rat(1), rat(0)]];
        let x = s2.mobius(&inv).unwrap();
        assert_eq!(x, ExtendedReal::quadratic(rat(0), BigRational::new(1.into(), 2.into()), 2).unwrap());
        assert_eq!(ExtendedReal::integer(0).mobius(&inv).unwrap(), ExtendedReal::Infinity);
    }

    #[test]
    fn higher_degree_points() {
        let c = ExtendedReal::algebraic(vec![-2, 0, 0, 1], rat(1), rat(2)).unwrap();
        assert_eq!(c.degree(), 3);
        assert!((c.to_f64() - 2f64.cbrt()).abs() < 1e-12);
        assert!(ExtendedReal::algebraic(vec![-8, 0, 0, 1], rat(1), rat(3)).is_err());
    }
}
