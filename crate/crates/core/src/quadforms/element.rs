use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The element `x + y√D` of `ℚ(√D)`, with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    d: i64,
    pub x: BigRational,
    pub y: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadElement {
    pub fn new(d: i64, x: BigRational, y: BigRational) -> Self {
        QuadElement { d, x, y }
    }

    pub fn from_integer(d: i64, n: i64) -> Self {
        QuadElement::new(d, rat(n), BigRational::zero())
    }

    pub fn one(d: i64) -> Self {
        Self::from_integer(d, 1)
    }

    /// `(X + Y√D)/Z` for integers.
    pub fn from_ratio(d: i64, x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        let z = z.into();
        QuadElement::new(d, BigRational::new(x.into(), z.clone()), BigRational::new(y.into(), z))
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElement::new(self.d, self.x.clone(), -self.y.clone())
    }

    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - &self.y * &self.y * rat(self.d)
    }

    pub fn trace(&self) -> BigRational {
        &self.x + &self.x
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        QuadElement::new(self.d, &self.x / &n, -&self.y / &n)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadElement::new(self.d, &self.x * r, &self.y * r)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.d), |acc, _| &acc * self)
    }

    /// Sign of `x + y√D` under the real embedding `√D ↦ +√D`.
    pub fn sign_first(&self) -> i32 {
        sign_of(&self.x, &self.y, self.d)
    }

    /// Sign under the embedding `√D ↦ −√D`.
    pub fn sign_second(&self) -> i32 {
        sign_of(&self.x, &-self.y.clone(), self.d)
    }

    /// Coordinates `(u, v)` with `self = u + vω`, `ω = (δ + √D)/2`.
    pub fn omega_coordinates(&self) -> (BigRational, BigRational) {
        let delta = self.d.rem_euclid(2);
        (&self.x - &self.y * rat(delta), &self.y * rat(2))
    }

    /// Membership in the order `ℤ[ω]` of discriminant `D`.
    pub fn is_integral(&self) -> bool {
        let (u, v) = self.omega_coordinates();
        u.is_integer() && v.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.x.to_f64().unwrap_or(f64::NAN) + self.y.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

fn sign_of(x: &BigRational, y: &BigRational, d: i64) -> i32 {
    let sx = if x.is_zero() { 0 } else if x.is_positive() { 1 } else { -1 };
    let sy = if y.is_zero() { 0 } else if y.is_positive() { 1 } else { -1 };
    if sy == 0 {
        return sx;
    }
    if sx == 0 || sx == sy {
        return sy;
    }
    // opposite signs: compare x² with D y²
    let lhs = x * x;
    let rhs = y * y * rat(d);
    if lhs > rhs {
        sx
    } else {
        sy
    }
}

impl Mul for &QuadElement {
    type Output = QuadElement;
    fn mul(self, rhs: &QuadElement) -> QuadElement {
        assert_eq!(self.d, rhs.d, "elements of different fields");
        let d = rat(self.d);
        QuadElement::new(
            self.d,
            &self.x * &rhs.x + &self.y * &rhs.y * d,
            &self.x * &rhs.y + &self.y * &rhs.x,
        )
    }
}

impl Mul for QuadElement {
    type Output = QuadElement;
    fn mul(self, rhs: QuadElement) -> QuadElement {
        &self * &rhs
    }
}

impl Add for &QuadElement {
    type Output = QuadElement;
    fn add(self, rhs: &QuadElement) -> QuadElement {
        assert_eq!(self.d, rhs.d, "elements of different fields");
        QuadElement::new(self.d, &self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &QuadElement {
    type Output = QuadElement;
    fn sub(self, rhs: &QuadElement) -> QuadElement {
        assert_eq!(self.d, rhs.d, "elements of different fields");
        QuadElement::new(self.d, &self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &QuadElement {
    type Output = QuadElement;
    fn neg(self) -> QuadElement {
        QuadElement::new(self.d, -self.x.clone(), -self.y.clone())
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            write!(f, "{}", self.x)
        } else if self.x.is_zero() {
            write!(f, "{}·√{}", self.y, self.d)
        } else {
            write!(f, "{} + {}·√{}", self.x, self.y, self.d)
        }
    }
}

impl QuadElement {
    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_and_norms() {
        let eps = QuadElement::from_ratio(8, 2, 1, 2); // 1 + √2
        assert_eq!(eps.norm(), rat(-1));
        assert_eq!((eps.sign_first(), eps.sign_second()), (1, -1));
        let u = QuadElement::from_ratio(12, 4, 1, 2); // 2 + √3
        assert_eq!(u.norm(), rat(1));
        assert_eq!((u.sign_first(), u.sign_second()), (1, 1));
        assert!((&eps * &eps.inv()).is_one());
        assert!(eps.is_integral());
        assert!(!QuadElement::from_ratio(8, 1, 1, 2).is_integral());
        assert!(QuadElement::from_ratio(5, 1, 1, 2).is_integral());
    }
}
