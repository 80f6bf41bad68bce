use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::element::QuadElement;
use super::form::{dirichlet, is_reduced_pair, rho_b, BinaryQuadraticForm, Discriminant};
use super::classgroup::reduced_forms;
use crate::corearith::group::{enumerate_abelian_group, EnumeratedGroup, FiniteAbelianGroup, GroupElement};
use crate::corearith::intmath::isqrt;
use crate::{Error, Result};

/// The primitive ideal `aℤ + ((b + √D)/2)ℤ` of the order of discriminant `D`,
/// with `a > 0`, `4a | b² − D` and `b` normalised into `(−a, a]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ideal {
    pub a: i64,
    pub b: i64,
    #[serde(skip)]
    d: Discriminant,
}

impl Ideal {
    pub fn new(d: Discriminant, a: i64, b: i64) -> Result<Self> {
        if a <= 0 {
            return Err(Error::validation("ideal norm must be positive"));
        }
        if (b as i128 * b as i128 - d.value() as i128).rem_euclid(4 * a as i128) != 0 {
            return Err(Error::validation(format!("4·{a} does not divide {b}² − {}", d.value())));
        }
        Ok(Self::from_parts(d, a, b))
    }

    pub(crate) fn from_parts(d: Discriminant, a: i64, b: i64) -> Self {
        let m = 2 * a;
        let mut r = b.rem_euclid(m);
        if r > a {
            r -= m;
        }
        Ideal { a, b: r, d }
    }

    /// The unit ideal `ℤ[ω]`.
    pub fn unit(d: Discriminant) -> Self {
        Self::from_parts(d, 1, d.parity())
    }

    /// The ideal attached to a form with `a > 0`: `[a, (b + √D)/2]`.
    pub fn from_form(f: &BinaryQuadraticForm) -> Result<Self> {
        if f.a <= 0 {
            return Err(Error::validation("only forms with a > 0 correspond to ideals directly"));
        }
        Self::new(f.discriminant(), f.a, f.b)
    }

    /// All primitive ideals of norm `a`.
    pub fn all_of_norm(d: Discriminant, a: i64) -> Vec<Self> {
        let dv = d.value() as i128;
        (-a + 1..=a)
            .filter(|&b| (b as i128 * b as i128 - dv).rem_euclid(4 * a as i128) == 0)
            .map(|b| Self::from_parts(d, a, b))
            .collect()
    }

    pub fn discriminant(&self) -> Discriminant {
        self.d
    }

    pub fn norm(&self) -> i64 {
        self.a
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1
    }

    /// The representative of `b (mod 2a)` in `(0, √D)` closest to `√D`.
    fn top_b(&self) -> i64 {
        let s = isqrt(self.d.value());
        s - (s - self.b).rem_euclid(2 * self.a)
    }

    pub fn is_reduced(&self) -> bool {
        is_reduced_pair(self.a, self.top_b(), self.d.value())
    }

    /// Middle coefficient used for forms: the reduced-range one when reduced.
    fn working_b(&self) -> i64 {
        if self.is_reduced() {
            self.top_b()
        } else {
            self.b
        }
    }

    /// The norm form `N(ax + θy)/a = (a, b, c)` with `θ = (b + √D)/2`.
    pub fn form(&self) -> BinaryQuadraticForm {
        let b = self.working_b();
        let c = (b as i128 * b as i128 - self.d.value() as i128) / (4 * self.a as i128);
        BinaryQuadraticForm::from_parts(self.a, b, c as i64, self.d)
    }

    /// Neighbour step: returns `(J, λ)` with `λ · self = J`, where
    /// `λ = (b − √D)/(2a)` and `J = [|c|, (b' + √D)/2]`.
    pub fn rho(&self) -> (Ideal, QuadElement) {
        let dv = self.d.value();
        let b = self.working_b();
        let c = ((b as i128 * b as i128 - dv as i128) / (4 * self.a as i128)) as i64;
        let b2 = rho_b(b, c, dv);
        let lambda = QuadElement::from_ratio(dv, b, -1, 2 * self.a);
        (Self::from_parts(self.d, c.abs(), b2), lambda)
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.d, self.a, -self.b)
    }

    /// `self · other = e · J`; returns `(e, J)`.
    pub fn mul(&self, other: &Ideal) -> (i64, Ideal) {
        assert_eq!(self.d, other.d, "ideals of different orders");
        let (e, a3, b3) = dirichlet(self.a, self.b, other.a, other.b, self.d.value());
        (e, Self::from_parts(self.d, a3, b3))
    }

    /// The cycle of reduced ideals through the reduction of `self`.
    pub fn reduced_cycle(&self) -> Vec<Ideal> {
        let start = TrackedIdeal::from_ideal(*self).reduce().ideal;
        let mut cycle = vec![start];
        let mut j = start.rho().0;
        while j != start {
            cycle.push(j);
            j = j.rho().0;
        }
        cycle
    }
}

/// The fractional ideal `factor · ideal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedIdeal {
    pub factor: QuadElement,
    pub ideal: Ideal,
}

impl TrackedIdeal {
    pub fn from_ideal(ideal: Ideal) -> Self {
        TrackedIdeal {
            factor: QuadElement::one(ideal.d.value()),
            ideal,
        }
    }

    pub fn new(factor: QuadElement, ideal: Ideal) -> Self {
        assert_eq!(factor.radicand(), ideal.d.value());
        TrackedIdeal { factor, ideal }
    }

    /// The principal ideal `(α)`.
    pub fn principal(alpha: QuadElement) -> Self {
        let d = Discriminant::new(alpha.radicand()).expect("element of a real quadratic field");
        TrackedIdeal::new(alpha, Ideal::unit(d))
    }

    pub fn mul(&self, other: &TrackedIdeal) -> TrackedIdeal {
        let (e, j) = self.ideal.mul(&other.ideal);
        let dv = self.ideal.d.value();
        let factor = &(&self.factor * &other.factor) * &QuadElement::from_integer(dv, e);
        TrackedIdeal { factor, ideal: j }.reduce()
    }

    /// Same fractional ideal with a reduced primitive part.
    pub fn reduce(self) -> TrackedIdeal {
        let TrackedIdeal { mut factor, mut ideal } = self;
        let mut acc = QuadElement::one(ideal.d.value());
        while !ideal.is_reduced() {
            let (j, lambda) = ideal.rho();
            acc = &acc * &lambda;
            ideal = j;
        }
        if !acc.is_one() {
            factor = &factor * &acc.inv();
        }
        TrackedIdeal { factor, ideal }
    }

    pub fn conj(&self) -> TrackedIdeal {
        TrackedIdeal {
            factor: self.factor.conj(),
            ideal: self.ideal.conj(),
        }
    }

    /// `(factor · I)⁻¹ = factor⁻¹ · a⁻¹ · Ī`.
    pub fn inverse(&self) -> TrackedIdeal {
        let norm_inv = BigRational::new(BigInt::from(1), BigInt::from(self.ideal.a));
        TrackedIdeal {
            factor: self.factor.inv().scale(&norm_inv),
            ideal: self.ideal.conj(),
        }
    }

    pub fn pow(&self, k: i64) -> TrackedIdeal {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = TrackedIdeal::from_ideal(Ideal::unit(self.ideal.d));
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// A generator when the ideal is principal, found by walking the cycle of
    /// reduced ideals until the unit ideal appears.
    pub fn principal_generator(&self) -> Option<QuadElement> {
        let reduced = self.clone().reduce();
        let start = reduced.ideal;
        let mut ideal = start;
        let mut acc = QuadElement::one(start.d.value());
        loop {
            if ideal.is_unit() {
                return Some(&reduced.factor * &acc.inv());
            }
            let (j, lambda) = ideal.rho();
            acc = &acc * &lambda;
            ideal = j;
            if ideal == start {
                return None;
            }
        }
    }
}

/// The (wide) ideal class group of an order, from cycles of reduced ideals.
#[derive(Clone, Debug)]
pub struct IdealClassGroup {
    pub d: Discriminant,
    pub cycles: Vec<Vec<Ideal>>,
    index: HashMap<Ideal, usize>,
    pub enumeration: EnumeratedGroup<usize>,
}

impl IdealClassGroup {
    pub fn new(d: Discriminant) -> Self {
        let mut index = HashMap::new();
        let mut cycles: Vec<Vec<Ideal>> = Vec::new();
        for f in reduced_forms(d).into_iter().filter(|f| f.a > 0) {
            let i = Ideal::from_parts(d, f.a, f.b);
            if index.contains_key(&i) {
                continue;
            }
            let cycle = i.reduced_cycle();
            for j in &cycle {
                index.insert(*j, cycles.len());
            }
            cycles.push(cycle);
        }
        let unit = index[&TrackedIdeal::from_ideal(Ideal::unit(d)).reduce().ideal];
        let n = cycles.len();
        let enumeration = {
            let (cycles, index) = (&cycles, &index);
            let class_of = |i: &Ideal| index[&TrackedIdeal::from_ideal(*i).reduce().ideal];
            enumerate_abelian_group(
                0..n,
                unit,
                |&x, &y| class_of(&cycles[x][0].mul(&cycles[y][0]).1),
                |&x| format!("[{}, {}]", cycles[x][0].a, cycles[x][0].b),
            )
        };
        IdealClassGroup {
            d,
            cycles,
            index,
            enumeration,
        }
    }

    pub fn order(&self) -> usize {
        self.cycles.len()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.enumeration.group
    }

    pub fn class_of(&self, i: &Ideal) -> usize {
        self.index[&TrackedIdeal::from_ideal(*i).reduce().ideal]
    }

    pub fn coordinates(&self, i: &Ideal) -> GroupElement {
        self.enumeration.coordinates(&self.class_of(i)).expect("class is enumerated")
    }

    /// Exponents of `i` over the enumeration generators.
    pub fn dlog(&self, i: &Ideal) -> Vec<i64> {
        self.enumeration.dlog[&self.class_of(i)].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn rho_multiplier_is_exact() {
        let d = disc(12);
        let i = Ideal::new(d, 3, 0).unwrap(); // (√3)
        let (j, lambda) = i.rho();
        // λ·I = J, so N(λ)·N(I) = ±N(J)
        assert_eq!(lambda.norm().abs() * BigRational::from_integer(3.into()), BigRational::from_integer(j.a.into()));
    }

    #[test]
    fn principal_generators() {
        let d = disc(12);
        let root3 = TrackedIdeal::from_ideal(Ideal::new(d, 3, 0).unwrap());
        let g = root3.principal_generator().expect("(√3) is principal");
        assert_eq!(g.norm().abs(), BigRational::from_integer(3.into()));
        // 40: the prime above 3 is not principal.
        let d40 = disc(40);
        let p3 = Ideal::all_of_norm(d40, 3)[0];
        assert!(TrackedIdeal::from_ideal(p3).principal_generator().is_none());
        let sq = TrackedIdeal::from_ideal(p3).pow(2);
        let g = sq.principal_generator().expect("class number 2");
        assert_eq!(g.norm().abs(), BigRational::from_integer(9.into()));
        assert!(g.is_integral());
    }

    #[test]
    fn wide_class_numbers() {
        assert_eq!(IdealClassGroup::new(disc(12)).order(), 1);
        assert_eq!(IdealClassGroup::new(disc(40)).order(), 2);
        assert_eq!(IdealClassGroup::new(disc(316)).order(), 3);
        assert_eq!(IdealClassGroup::new(disc(105)).order(), 2);
    }

    #[test]
    fn inverse_and_products() {
        let d = disc(316);
        let cg = IdealClassGroup::new(d);
        let p = Ideal::all_of_norm(d, 3)[0];
        let t = TrackedIdeal::from_ideal(p);
        let prod = t.mul(&t.inverse());
        let g = prod.principal_generator().unwrap();
        assert_eq!(g.norm().abs(), BigRational::from_integer(1.into()));
        let cube = t.pow(3);
        assert!(cube.principal_generator().is_some() || cg.order() != 3);
    }
}
