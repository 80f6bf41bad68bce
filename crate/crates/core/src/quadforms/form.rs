use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::corearith::intmath::{ext_gcd3, gt_sqrt, is_fundamental_discriminant, is_square, isqrt, lt_sqrt};
use crate::{Error, Result};

/// A positive non-square discriminant `D ≡ 0, 1 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d <= 0 {
            return Err(Error::validation(format!("discriminant {d} is not positive")));
        }
        if is_square(d) {
            return Err(Error::validation(format!("discriminant {d} is a square")));
        }
        if !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(Error::validation(format!("discriminant {d} is not 0 or 1 mod 4")));
        }
        Ok(Discriminant(d))
    }

    /// Like [`Discriminant::new`] but additionally requires `D` fundamental.
    pub fn fundamental(d: i64) -> Result<Self> {
        let disc = Self::new(d)?;
        if !disc.is_fundamental() {
            return Err(Error::validation(format!("discriminant {d} is not fundamental")));
        }
        Ok(disc)
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_fundamental(self) -> bool {
        is_fundamental_discriminant(self.0)
    }

    /// `D mod 2`, the parity every middle coefficient must share.
    pub fn parity(self) -> i64 {
        self.0 & 1
    }

    pub fn isqrt(self) -> i64 {
        isqrt(self.0)
    }

    /// The principal form `x² + δxy + ((δ − D)/4)y²`.
    pub fn principal_form(self) -> BinaryQuadraticForm {
        let delta = self.parity();
        BinaryQuadraticForm::from_parts(1, delta, (delta - self.0) / 4, self)
    }

    /// The form `−x² + δxy + ((D − δ)/4)y²`, in the principal narrow class
    /// exactly when the fundamental unit has norm −1.
    pub fn negative_principal_form(self) -> BinaryQuadraticForm {
        let delta = self.parity();
        BinaryQuadraticForm::from_parts(-1, delta, (self.0 - delta) / 4, self)
    }
}

/// A primitive form `ax² + bxy + cy²` of positive non-square discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    #[serde(skip)]
    d: Discriminant,
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Normalised middle coefficient of the neighbour of a form with outer
/// coefficient `c`: `b' ≡ −b (mod 2|c|)`, in `(√D − 2|c|, √D)` when `|c| < √D`
/// and in `(−|c|, |c|]` otherwise.
pub(crate) fn rho_b(b: i64, c: i64, d: i64) -> i64 {
    let ac = c.abs();
    let m = 2 * ac;
    let r = (-b).rem_euclid(m);
    if lt_sqrt(ac, d) {
        let s = isqrt(d);
        s - (s - r).rem_euclid(m)
    } else if r > ac {
        r - m
    } else {
        r
    }
}

/// `|√D − 2|a|| < b < √D`.
pub(crate) fn is_reduced_pair(a: i64, b: i64, d: i64) -> bool {
    let a2 = 2 * a.abs();
    b > 0 && lt_sqrt(b, d) && gt_sqrt(a2 + b, d) && lt_sqrt(a2 - b, d)
}

impl BinaryQuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let disc = b as i128 * b as i128 - 4 * a as i128 * c as i128;
        let disc = i64::try_from(disc).map_err(|_| Error::validation("discriminant overflows i64"))?;
        let d = Discriminant::new(disc)?;
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(Error::validation(format!("form ({a}, {b}, {c}) is not primitive")));
        }
        Ok(BinaryQuadraticForm { a, b, c, d })
    }

    pub(crate) fn from_parts(a: i64, b: i64, c: i64, d: Discriminant) -> Self {
        debug_assert_eq!(b as i128 * b as i128 - 4 * a as i128 * c as i128, d.value() as i128);
        BinaryQuadraticForm { a, b, c, d }
    }

    pub fn discriminant(&self) -> Discriminant {
        self.d
    }

    /// Value at `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    /// `0 < b < √D` and `√D − b < 2|a| < √D + b`.
    pub fn is_reduced(&self) -> bool {
        is_reduced_pair(self.a, self.b, self.d.value())
    }

    /// The neighbour `ρ(a, b, c) = (c, b', (b'² − D)/4c)`, properly equivalent
    /// via `[[0, −1], [1, t]]` with `b' = −b + 2ct`.
    pub fn rho(&self) -> Self {
        let d = self.d.value();
        let b2 = rho_b(self.b, self.c, d);
        let c2 = (b2 as i128 * b2 as i128 - d as i128) / (4 * self.c as i128);
        BinaryQuadraticForm::from_parts(self.c, b2, c2 as i64, self.d)
    }

    /// A reduced form properly equivalent to `self`.
    pub fn reduce(&self) -> Self {
        let mut f = *self;
        while !f.is_reduced() {
            f = f.rho();
        }
        f
    }

    /// The cycle of reduced forms under `ρ`, starting at `self.reduce()`.
    pub fn reduction_cycle(&self) -> Vec<Self> {
        let start = self.reduce();
        let mut cycle = vec![start];
        let mut f = start.rho();
        while f != start {
            cycle.push(f);
            f = f.rho();
        }
        cycle
    }

    /// Least form of the reduction cycle; equal keys ⟺ properly equivalent.
    pub fn cycle_key(&self) -> Self {
        *self.reduction_cycle().iter().min().expect("cycles are nonempty")
    }

    /// Proper equivalence by rotating the cycle of `other` onto `self`.
    pub fn is_equivalent(&self, other: &Self) -> bool {
        if self.d != other.d {
            return false;
        }
        let a = self.reduce();
        other.reduction_cycle().contains(&a)
    }

    /// `(a, −b, c)`, the inverse class.
    pub fn inverse(&self) -> Self {
        BinaryQuadraticForm::from_parts(self.a, -self.b, self.c, self.d)
    }

    /// `(−a, b, −c)`: the twisted image `−f(x, −y)`.
    pub fn negated(&self) -> Self {
        BinaryQuadraticForm::from_parts(-self.a, self.b, -self.c, self.d)
    }

    /// `f ∘ g` for an integral matrix `g = [[p, q], [r, s]]`, i.e.
    /// `f(px + qy, rx + sy)`.
    pub fn transform(&self, g: [[i64; 2]; 2]) -> Self {
        let [[p, q], [r, s]] = g;
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (p, q, r, s) = (p as i128, q as i128, r as i128, s as i128);
        let a2 = a * p * p + b * p * r + c * r * r;
        let b2 = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
        let c2 = a * q * q + b * q * s + c * s * s;
        let det = p * s - q * r;
        assert!(det == 1 || det == -1, "transform must be unimodular");
        BinaryQuadraticForm::from_parts(a2 as i64, b2 as i64, c2 as i64, self.d)
    }

    /// Dirichlet composition of concordant forms followed by reduction.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(self.compose_unreduced(other)?.reduce())
    }

    /// Dirichlet composition without the final reduction.
    pub fn compose_unreduced(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::validation(format!(
                "discriminant mismatch: {} vs {}",
                self.d.value(),
                other.d.value()
            )));
        }
        let (f, g) = (
            if self.a == 0 { self.reduce() } else { *self },
            if other.a == 0 { other.reduce() } else { *other },
        );
        let (_, a3, b3) = dirichlet(f.a, f.b, g.a, g.b, self.d.value());
        let c3 = (b3 as i128 * b3 as i128 - self.d.value() as i128) / (4 * a3 as i128);
        Ok(BinaryQuadraticForm::from_parts(a3, b3, c3 as i64, self.d))
    }
}

/// Dirichlet's united-form composition on outer and middle coefficients:
/// returns `(e, a₃, B)` with `e = gcd(a₁, a₂, (b₁ + b₂)/2)`, `a₃ = a₁a₂/e²`,
/// `B ≡ b₁ (mod 2a₁/e)`, `B ≡ b₂ (mod 2a₂/e)`, `B² ≡ D (mod 4a₃)`.
pub(crate) fn dirichlet(a1: i64, b1: i64, a2: i64, b2: i64, d: i64) -> (i64, i64, i64) {
    let (a1, b1, a2, b2, d) = (a1 as i128, b1 as i128, a2 as i128, b2 as i128, d as i128);
    let s = (b1 + b2) / 2;
    let (e, mu, nu, omega) = ext_gcd3(a1, a2, s);
    let a3 = a1 * a2 / (e * e);
    let num = mu * a1 * b2 + nu * a2 * b1 + omega * (b1 * b2 + d) / 2;
    debug_assert_eq!(num % e, 0);
    let modulus = 2 * a3.abs();
    let b3 = (num / e).rem_euclid(modulus);
    debug_assert_eq!((b3 * b3 - d) % (4 * a3), 0, "composition congruence failed");
    (e as i64, a3 as i64, b3 as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(form(1, 2, -1).reduce(), form(1, 2, -1));
        assert_eq!(form(1, 0, -2).reduce(), form(1, 2, -1));
        assert_eq!(form(-1, 2, 1).reduce(), form(-1, 2, 1));
    }

    #[test]
    fn cycles_of_principal_forms() {
        let d8 = Discriminant::new(8).unwrap();
        assert_eq!(d8.principal_form().reduction_cycle(), vec![form(1, 2, -1), form(-1, 2, 1)]);
        let d5 = Discriminant::new(5).unwrap();
        assert_eq!(d5.principal_form().reduction_cycle(), vec![form(1, 1, -1), form(-1, 1, 1)]);
    }

    /// Breadth-first search over words in `S = [[0,-1],[1,0]]`, `T^{±1}` of
    /// length at most 6, as an independent equivalence oracle.
    fn reachable_by_words(f: BinaryQuadraticForm, len: usize) -> Vec<BinaryQuadraticForm> {
        let gens = [[[0, -1], [1, 0]], [[1, 1], [0, 1]], [[1, -1], [0, 1]]];
        let mut frontier = vec![f];
        let mut seen = vec![f];
        for _ in 0..len {
            let mut next = Vec::new();
            for g in &frontier {
                for m in gens {
                    let h = g.transform(m);
                    if !seen.contains(&h) {
                        seen.push(h);
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    #[test]
    fn reduction_agrees_with_word_search() {
        let reached = reachable_by_words(form(1, 0, -2), 6);
        assert!(reached.contains(&form(1, 2, -1)));
        let reduced: Vec<_> = reached.iter().filter(|f| f.is_reduced()).collect();
        assert!(reduced.iter().all(|f| f.is_equivalent(&form(1, 0, -2))));
    }

    #[test]
    fn rejects_invalid_forms() {
        assert!(BinaryQuadraticForm::new(2, 4, -2).is_err());
        assert!(BinaryQuadraticForm::new(1, 2, 1).is_err());
        assert!(BinaryQuadraticForm::new(1, 0, 1).is_err());
        assert!(Discriminant::fundamental(20).is_err());
        assert!(Discriminant::fundamental(8).is_ok());
    }

    #[test]
    fn composition_and_mismatch() {
        let f = form(1, 2, -1);
        let g = form(1, 1, -1);
        assert!(f.compose(&g).is_err());
        // D = 40: 3 splits but x² − 10y² = ±3 has no solution, so (3, 2, −3) is not principal.
        let h = form(3, 2, -3);
        assert_eq!(h.discriminant().value(), 40);
        let sq = h.compose(&h).unwrap();
        assert!(sq.is_equivalent(&Discriminant::new(40).unwrap().principal_form()));
        assert!(!h.is_equivalent(&Discriminant::new(40).unwrap().principal_form()));
        let inv = h.compose(&h.inverse()).unwrap();
        assert!(inv.is_equivalent(&Discriminant::new(40).unwrap().principal_form()));
    }

    #[test]
    fn rho_is_proper_equivalence() {
        for f in [form(1, 0, -2), form(3, 5, -7), form(-2, 7, 3), form(5, 1, -1)] {
            let g = f.rho();
            assert_eq!(g.discriminant(), f.discriminant());
            let t = (g.b + f.b) / (2 * f.c);
            assert_eq!(f.transform([[0, -1], [1, t]]), g);
        }
    }
}
