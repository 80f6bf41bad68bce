use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::point::ExtendedReal;
use crate::quadforms::BinaryQuadraticForm;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_i32(s: i32) -> Self {
        if s < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "−",
        })
    }
}

/// Component signs at the two real places.
pub type Signs = [Sign; 2];

pub const PLUS_PLUS: Signs = [Sign::Plus, Sign::Plus];

/// An oriented geodesic of the upper half-plane, from `repelling` to
/// `attracting`, together with its component signs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrientedGeodesic {
    repelling: ExtendedReal,
    attracting: ExtendedReal,
    signs: Signs,
}

impl OrientedGeodesic {
    pub fn new(repelling: ExtendedReal, attracting: ExtendedReal, signs: Signs) -> Result<Self> {
        if repelling == attracting {
            return Err(Error::validation("geodesic endpoints must be distinct"));
        }
        Ok(OrientedGeodesic {
            repelling,
            attracting,
            signs,
        })
    }

    pub fn repelling(&self) -> &ExtendedReal {
        &self.repelling
    }

    pub fn attracting(&self) -> &ExtendedReal {
        &self.attracting
    }

    pub fn signs(&self) -> Signs {
        self.signs
    }

    /// The unordered pair of endpoints, smaller first.
    pub fn endpoint_set(&self) -> [ExtendedReal; 2] {
        let (a, b) = (self.repelling.clone(), self.attracting.clone());
        if a.compare(&b) == Ordering::Greater {
            [b, a]
        } else {
            [a, b]
        }
    }

    /// The same geodesic with the opposite orientation.
    pub fn reversed(&self) -> Self {
        OrientedGeodesic {
            repelling: self.attracting.clone(),
            attracting: self.repelling.clone(),
            signs: self.signs,
        }
    }

    /// Flips the first sign, which reverses the orientation.
    pub fn flip_first_sign(&self) -> Self {
        let mut g = self.reversed();
        g.signs[0] = self.signs[0].flip();
        g
    }

    /// Flips the second sign; the oriented geodesic itself is unchanged.
    pub fn flip_second_sign(&self) -> Self {
        let mut g = self.clone();
        g.signs[1] = self.signs[1].flip();
        g
    }

    /// Image under a rational invertible matrix acting by Möbius maps.
    pub fn transform(&self, m: &[[BigRational; 2]; 2]) -> Result<Self> {
        OrientedGeodesic::new(self.repelling.mobius(m)?, self.attracting.mobius(m)?, self.signs)
    }

    /// Endpoint order before the first sign is applied.
    fn base_orientation(&self) -> (&ExtendedReal, &ExtendedReal) {
        match self.signs[0] {
            Sign::Plus => (&self.repelling, &self.attracting),
            Sign::Minus => (&self.attracting, &self.repelling),
        }
    }
}

impl fmt::Display for OrientedGeodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} → {} ({},{})",
            self.repelling, self.attracting, self.signs[0], self.signs[1]
        )
    }
}

/// The pair of lines `F ⊕ F̃` of `ℝ²` (given by their points of `ℙ¹`) with a
/// chosen half-line on each.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lilas {
    pub lines: [ExtendedReal; 2],
    pub orientation: Signs,
}

impl Lilas {
    pub fn new(first: ExtendedReal, second: ExtendedReal, orientation: Signs) -> Result<Self> {
        if first == second {
            return Err(Error::validation("the two lines of a lilas must be distinct"));
        }
        Ok(Lilas {
            lines: [first, second],
            orientation,
        })
    }

    pub fn geodesic(&self) -> OrientedGeodesic {
        OrientedGeodesic {
            repelling: self.lines[0].clone(),
            attracting: self.lines[1].clone(),
            signs: self.orientation,
        }
    }

    pub fn from_geodesic(g: &OrientedGeodesic) -> Self {
        Lilas {
            lines: [g.repelling.clone(), g.attracting.clone()],
            orientation: g.signs,
        }
    }
}

/// The geodesic joining the roots `(−b ± √D)/(2a)` of `f(x, 1)`, oriented
/// towards `(−b + √D)/(2a)`; a minus first sign reverses it.
pub fn geodesic_of_form(f: &BinaryQuadraticForm, signs: Signs) -> Result<OrientedGeodesic> {
    if f.a == 0 {
        return Err(Error::validation("a = 0: one endpoint is ∞ and the geodesic is not special"));
    }
    let d = f.discriminant().value();
    let two_a = BigInt::from(2 * f.a);
    let x = BigRational::new(BigInt::from(-f.b), two_a.clone());
    let y = BigRational::new(BigInt::from(1), two_a);
    let attracting = ExtendedReal::quadratic(x.clone(), y.clone(), d)?;
    let repelling = ExtendedReal::quadratic(x, -y, d)?;
    let g = OrientedGeodesic::new(repelling, attracting, [Sign::Plus, signs[1]])?;
    Ok(if signs[0] == Sign::Minus { g.flip_first_sign() } else { g })
}

/// The primitive form whose oriented geodesic is `g` (with its signs); fails
/// unless the endpoints are conjugate real quadratic irrationals.
pub fn form_of_geodesic(g: &OrientedGeodesic) -> Result<BinaryQuadraticForm> {
    let (r, t) = g.base_orientation();
    let (ExtendedReal::Quadratic(re), ExtendedReal::Quadratic(te)) = (r, t) else {
        return Err(Error::validation("endpoints are not quadratic irrationals"));
    };
    if &re.conj() != te {
        return Err(Error::validation("endpoints are not Galois conjugate"));
    }
    // f(x, 1) ∝ x² − (r + t)x + rt.
    let sum = (re + te).x;
    let prod = (re * te).x;
    let l = sum.denom().lcm(prod.denom());
    let lr = BigRational::from_integer(l.clone());
    let (mut a, mut b, mut c) = (l, -(&sum * &lr).to_integer(), (&prod * &lr).to_integer());
    let g0 = a.gcd(&b).gcd(&c);
    a /= &g0;
    b /= &g0;
    c /= &g0;
    // Orientation fixes the sign: t − r = √D/a.
    let increasing = t.compare(r) == Ordering::Greater;
    if increasing != a.is_positive() {
        a = -a;
        b = -b;
        c = -c;
    }
    let to = |z: &BigInt| z.to_i64().ok_or_else(|| Error::Unsupported("form coefficients exceed 64 bits".into()));
    let f = BinaryQuadraticForm::new(to(&a)?, to(&b)?, to(&c)?)?;
    debug_assert!(!f.discriminant().value().is_zero());
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c).unwrap()
    }

    #[test]
    fn sqrt2_geodesic() {
        let g = geodesic_of_form(&form(1, 0, -2), PLUS_PLUS).unwrap();
        assert_eq!(g.repelling().to_string(), "−√2");
        assert_eq!(g.attracting().to_string(), "√2");
        let flipped = geodesic_of_form(&form(1, 0, -2), [Sign::Minus, Sign::Plus]).unwrap();
        assert_eq!(flipped.repelling(), g.attracting());
        assert_eq!(flipped.endpoint_set(), g.endpoint_set());
        for s in [PLUS_PLUS, [Sign::Minus, Sign::Plus], [Sign::Minus, Sign::Minus]] {
            let h = geodesic_of_form(&form(-1, 2, 1), s).unwrap();
            assert_eq!(form_of_geodesic(&h).unwrap(), form(-1, 2, 1));
        }
    }

    #[test]
    fn golden_geodesic() {
        let g = geodesic_of_form(&form(1, 1, -1), PLUS_PLUS).unwrap();
        assert_eq!(g.repelling().to_string(), "(−1−√5)/2");
        assert_eq!(g.attracting().to_string(), "(−1+√5)/2");
    }
}
