//! Positive definite binary quadratic forms and imaginary quadratic class
//! groups.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::corearith::group::{enumerate_abelian_group, EnumeratedGroup, FiniteAbelianGroup, GroupElement};
use crate::quadforms::form::dirichlet;
use crate::{Error, Result};

/// Checks `D < 0`, `D ≡ 0, 1 (mod 4)`.
pub fn check_negative_discriminant(d: i64) -> Result<()> {
    if d >= 0 {
        return Err(Error::validation(format!("discriminant {d} is not negative")));
    }
    if !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::validation(format!("discriminant {d} is not 0 or 1 mod 4")));
    }
    Ok(())
}

/// A primitive positive definite form `ax² + bxy + cy²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DefiniteForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl DefiniteForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 {
            return Err(Error::validation(format!("leading coefficient {a} is not positive")));
        }
        let d = b as i128 * b as i128 - 4 * a as i128 * c as i128;
        if d >= 0 {
            return Err(Error::validation(format!("form ({a},{b},{c}) is not positive definite")));
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(Error::validation(format!("form ({a},{b},{c}) is not primitive")));
        }
        Ok(DefiniteForm { a, b, c })
    }

    /// The principal form of discriminant `d`.
    pub fn principal(d: i64) -> Result<Self> {
        check_negative_discriminant(d)?;
        let delta = d & 1;
        Ok(DefiniteForm {
            a: 1,
            b: delta,
            c: (delta - d) / 4,
        })
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a && self.a <= self.c && (self.b >= 0 || (-self.b != self.a && self.a != self.c))
    }

    /// The unique reduced form properly equivalent to `self`.
    pub fn reduce(&self) -> Self {
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            if b > a || b <= -a {
                // translate b into (−a, a]
                let k = (a - b).div_euclid(2 * a);
                let nb = b + 2 * a * k;
                c += k * (b + a * k);
                b = nb;
            }
            if a > c {
                (a, b, c) = (c, -b, a);
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        DefiniteForm {
            a: a as i64,
            b: b as i64,
            c: c as i64,
        }
    }

    /// `(a, −b, c)`, the inverse class.
    pub fn inverse(&self) -> Self {
        DefiniteForm {
            a: self.a,
            b: -self.b,
            c: self.c,
        }
        .reduce()
    }

    /// Gauss composition through Dirichlet's united forms, reduced.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let d = self.discriminant();
        if d != other.discriminant() {
            return Err(Error::validation(format!(
                "discriminant mismatch: {d} vs {}",
                other.discriminant()
            )));
        }
        let (_, a3, b3) = dirichlet(self.a, self.b, other.a, other.b, d);
        let c3 = (b3 as i128 * b3 as i128 - d as i128) / (4 * a3 as i128);
        let c3 = i64::try_from(c3).map_err(|_| Error::ResourceLimit("composition overflow".into()))?;
        Ok(DefiniteForm { a: a3, b: b3, c: c3 }.reduce())
    }

    /// The image under `τ ↦ τ + 1`, i.e. `(a, b − 2a, a − b + c)`.
    pub fn translate(&self) -> Self {
        DefiniteForm {
            a: self.a,
            b: self.b - 2 * self.a,
            c: self.a - self.b + self.c,
        }
    }

    /// The image under `τ ↦ −1/τ`, i.e. `(c, −b, a)`.
    pub fn invert_tau(&self) -> Self {
        DefiniteForm {
            a: self.c,
            b: -self.b,
            c: self.a,
        }
    }
}

impl fmt::Display for DefiniteForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// All reduced primitive forms of discriminant `d < 0`, sorted by `(a, b)`.
pub fn reduced_definite_forms(d: i64) -> Result<Vec<DefiniteForm>> {
    check_negative_discriminant(d)?;
    let mut out = Vec::new();
    let mut a = 1i64;
    // 3a² ≤ |D| for reduced forms
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = DefiniteForm { a, b, c };
            if c >= a && f.is_reduced() && a.gcd(&b).gcd(&c) == 1 {
                out.push(f);
            }
        }
        a += 1;
    }
    Ok(out)
}

/// The form class group of discriminant `d < 0`.
#[derive(Clone, Debug)]
pub struct DefiniteClassGroup {
    pub d: i64,
    pub forms: Vec<DefiniteForm>,
    pub enumeration: EnumeratedGroup<DefiniteForm>,
}

impl DefiniteClassGroup {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.enumeration.group
    }

    pub fn order(&self) -> usize {
        self.enumeration.order()
    }

    pub fn coordinates(&self, f: &DefiniteForm) -> Option<GroupElement> {
        self.enumeration.coordinates(&f.reduce())
    }
}

/// Reduced representatives of discriminant `d < 0` and their group under
/// Gauss composition.
pub fn definite_class_group(d: i64) -> Result<DefiniteClassGroup> {
    let forms = reduced_definite_forms(d)?;
    let identity = DefiniteForm::principal(d)?;
    let enumeration = enumerate_abelian_group(
        forms.clone(),
        identity,
        |f, g| f.compose(g).expect("same discriminant"),
        |f| f.to_string(),
    );
    if enumeration.order() != forms.len() {
        return Err(Error::validation(format!(
            "composition closure has {} classes but {} reduced forms exist for {d}",
            enumeration.order(),
            forms.len()
        )));
    }
    Ok(DefiniteClassGroup { d, forms, enumeration })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let g = definite_class_group(-4).unwrap();
        assert_eq!(g.forms, vec![DefiniteForm::new(1, 0, 1).unwrap()]);
        assert!(g.group().is_trivial());
        assert_eq!(definite_class_group(-3).unwrap().order(), 1);
        let g = definite_class_group(-23).unwrap();
        assert_eq!(g.group().invariant_factors(), &[3]);
        assert_eq!(definite_class_group(-20).unwrap().group().invariant_factors(), &[2]);
        assert!(definite_class_group(-5).is_err());
        assert!(definite_class_group(8).is_err());
    }

    #[test]
    fn reduction_is_idempotent_and_invariant() {
        let f = DefiniteForm::new(2, 1, 3).unwrap();
        assert_eq!(f.reduce(), f);
        assert_eq!(f.translate().reduce(), f);
        assert_eq!(f.invert_tau().reduce(), f);
        assert_eq!(DefiniteForm::new(13, 17, 6).unwrap().reduce().discriminant(), 17 * 17 - 4 * 78);
    }
}
