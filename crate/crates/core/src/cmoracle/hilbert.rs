//! Hilbert class polynomials as rounded products over reduced forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::dform::{check_negative_discriminant, reduced_definite_forms};
use super::j::{j_invariant, log10_abs_q};
use super::numeric::{max_digits, round_to_bigint, Complex, Ctx};
use crate::{Error, Result};

/// Largest `|D|` accepted.
pub const DESK_LIMIT: i64 = 10_000;

/// Coefficients must lie this close to integers before rounding.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassPolynomial {
    pub d: i64,
    /// Coefficients from the constant term upwards; the last one is 1.
    #[serde(serialize_with = "serialize_coefficients")]
    pub coefficients: Vec<BigInt>,
    pub degree: usize,
    /// Digits of the `j` evaluations that produced the accepted rounding.
    pub precision_used: usize,
    /// Largest distance of an unrounded coefficient to its integer.
    pub residual: f64,
}

fn serialize_coefficients<S: serde::Serializer>(c: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|x| x.to_string()))
}

impl fmt::Display for ClassPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() && !(k == 0 && first) {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.magnitude().clone());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let unit = mag == One::one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "X")?,
                1 => write!(f, "{mag}X")?,
                _ if unit => write!(f, "X^{k}")?,
                _ => write!(f, "{mag}X^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Decimal digits needed to carry the largest coefficient, estimated from
/// `|j(τ)| ≤ |q|⁻¹ + 2100`.
pub fn coefficient_digits(d: i64) -> Result<usize> {
    let forms = reduced_definite_forms(d)?;
    let total: f64 = forms
        .iter()
        .map(|f| (10f64.powf(-log10_abs_q(f)) + 2100.0).log10())
        .sum();
    Ok(total.ceil() as usize)
}

/// Product of `X − j(τ_f)` at `digits` digits: rounded coefficients and the
/// rounding residual.
pub fn hilbert_at_digits(d: i64, digits: usize) -> Result<(Vec<BigInt>, f64)> {
    let forms = reduced_definite_forms(d)?;
    let ctx = Ctx::new(digits + 10)?;
    let zero = Complex::real(ctx.int(0), &ctx);
    let mut poly = vec![Complex::real(ctx.int(1), &ctx)];
    for f in &forms {
        let j = j_invariant(f, digits)?.value;
        let mut next = vec![zero.clone(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c, &ctx);
            next[k] = next[k].sub(&c.mul(&j, &ctx), &ctx);
        }
        poly = next;
    }
    let mut residual = 0f64;
    let mut coeffs = Vec::with_capacity(poly.len());
    for c in &poly {
        let r = round_to_bigint(&c.re).ok_or_else(|| Error::Precision("coefficient is not finite".into()))?;
        let err = ctx.sub(&c.re, &ctx_from_bigint(&r, &ctx));
        residual = residual.max(super::numeric::to_f64(&err).abs()).max(c.im_f64().abs());
        coeffs.push(r);
    }
    Ok((coeffs, residual))
}

fn ctx_from_bigint(n: &BigInt, ctx: &Ctx) -> astro_float::BigFloat {
    let base = ctx.int(1 << 62);
    let (sign, digits) = n.to_u64_digits();
    let mut acc = ctx.int(0);
    for w in digits.iter().rev() {
        let hi = ctx.int((w >> 31) as i64);
        let lo = ctx.int((w & 0x7fff_ffff) as i64);
        // w = hi·2³¹ + lo; acc·2⁶⁴ = acc·2⁶²·4
        acc = ctx.mul(&ctx.mul(&acc, &base), &ctx.int(4));
        acc = ctx.add(&acc, &ctx.add(&ctx.mul(&hi, &ctx.int(1 << 31)), &lo));
    }
    if sign == num_bigint::Sign::Minus {
        acc.neg()
    } else {
        acc
    }
}

/// The Hilbert class polynomial of the order of discriminant `d`.
///
/// The precision starts from the coefficient size estimate plus a guard and
/// doubles until the residual is below [`RESIDUAL_TOLERANCE`]. The ceiling is
/// `RIVAGE_PRECISION_MAX` digits.
pub fn hilbert_class_polynomial(d: i64) -> Result<ClassPolynomial> {
    check_negative_discriminant(d)?;
    if -d > DESK_LIMIT {
        return Err(Error::validation(format!("|D| = {} exceeds the limit {DESK_LIMIT}", -d)));
    }
    let mut digits = coefficient_digits(d)? + 20;
    loop {
        if digits + 10 > max_digits() {
            return Err(Error::Precision(format!(
                "class polynomial of {d} not integral below {} digits",
                max_digits()
            )));
        }
        let (coefficients, residual) = hilbert_at_digits(d, digits)?;
        if residual < RESIDUAL_TOLERANCE {
            return Ok(ClassPolynomial {
                d,
                degree: coefficients.len() - 1,
                coefficients,
                precision_used: digits,
                residual,
            });
        }
        digits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_roundtrip() {
        let ctx = Ctx::new(60).unwrap();
        for s in ["0", "-1", "12345678901234567890123456789", "-884736000", "18446744073709551617"] {
            let n: BigInt = s.parse().unwrap();
            assert_eq!(round_to_bigint(&ctx_from_bigint(&n, &ctx)), Some(n));
        }
    }
}
