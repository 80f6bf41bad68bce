//! Complex arithmetic on top of `astro-float` at a fixed working precision.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as BigSign};

use crate::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Upper bound on working precision in decimal digits, overridable through
/// `RIVAGE_PRECISION_MAX`.
pub fn max_digits() -> usize {
    std::env::var("RIVAGE_PRECISION_MAX")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(4000)
}

pub fn digits_to_bits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

pub struct Ctx {
    pub p: usize,
    pub digits: usize,
    cc: Consts,
}

impl Ctx {
    pub fn new(digits: usize) -> Result<Self> {
        if digits > max_digits() {
            return Err(Error::Precision(format!(
                "{digits} digits requested, above the cap of {} (RIVAGE_PRECISION_MAX)",
                max_digits()
            )));
        }
        let cc = Consts::new().map_err(|e| Error::ResourceLimit(format!("constant cache: {e:?}")))?;
        Ok(Ctx {
            p: digits_to_bits(digits),
            digits,
            cc,
        })
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.p, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.p, RM, &mut self.cc)
    }

    pub fn format(&mut self, a: &BigFloat) -> String {
        a.format(Radix::Dec, RM, &mut self.cc).unwrap_or_else(|_| "NaN".into())
    }
}

/// Nearest integer.
pub fn round_to_bigint(x: &BigFloat) -> Option<BigInt> {
    let r = x.round(0, RM);
    if r.is_zero() {
        return Some(BigInt::from(0));
    }
    let (words, _, sign, e, _) = r.as_raw_parts()?;
    let mut m = BigInt::from(0);
    for w in words.iter().rev() {
        m = (m << 64) + BigInt::from(*w);
    }
    let shift = e as i64 - 64 * words.len() as i64;
    let m = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
    Some(if sign == Sign::Neg { BigInt::from_biguint(BigSign::Minus, m.magnitude().clone()) } else { m })
}

pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().unwrap_or(&0) as f64 / 2f64.powi(64);
    let v = top * 2f64.powi(e as i32);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// A complex number `re + i·im`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn real(re: BigFloat, ctx: &Ctx) -> Self {
        Complex { re, im: ctx.int(0) }
    }

    pub fn add(&self, o: &Self, ctx: &Ctx) -> Self {
        Complex {
            re: ctx.add(&self.re, &o.re),
            im: ctx.add(&self.im, &o.im),
        }
    }

    pub fn sub(&self, o: &Self, ctx: &Ctx) -> Self {
        Complex {
            re: ctx.sub(&self.re, &o.re),
            im: ctx.sub(&self.im, &o.im),
        }
    }

    pub fn mul(&self, o: &Self, ctx: &Ctx) -> Self {
        Complex {
            re: ctx.sub(&ctx.mul(&self.re, &o.re), &ctx.mul(&self.im, &o.im)),
            im: ctx.add(&ctx.mul(&self.re, &o.im), &ctx.mul(&self.im, &o.re)),
        }
    }

    pub fn scale(&self, k: &BigFloat, ctx: &Ctx) -> Self {
        Complex {
            re: ctx.mul(&self.re, k),
            im: ctx.mul(&self.im, k),
        }
    }

    pub fn norm_sqr(&self, ctx: &Ctx) -> BigFloat {
        ctx.add(&ctx.mul(&self.re, &self.re), &ctx.mul(&self.im, &self.im))
    }

    pub fn div(&self, o: &Self, ctx: &Ctx) -> Self {
        let n = o.norm_sqr(ctx);
        let conj = Complex {
            re: o.re.clone(),
            im: o.im.neg(),
        };
        let num = self.mul(&conj, ctx);
        Complex {
            re: ctx.div(&num.re, &n),
            im: ctx.div(&num.im, &n),
        }
    }

    pub fn inv(&self, ctx: &Ctx) -> Self {
        Complex::real(ctx.int(1), ctx).div(self, ctx)
    }

    /// `exp(2πi·self)`.
    pub fn exp_2pi_i(&self, ctx: &mut Ctx) -> Self {
        let pi = ctx.pi();
        let two_pi = ctx.mul(&ctx.int(2), &pi);
        let log_modulus = ctx.mul(&two_pi, &self.im).neg();
        let modulus = ctx.exp(&log_modulus);
        let angle = ctx.mul(&two_pi, &self.re);
        let (c, s) = (ctx.cos(&angle), ctx.sin(&angle));
        Complex {
            re: ctx.mul(&modulus, &c),
            im: ctx.mul(&modulus, &s),
        }
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }

    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_conversion() {
        let ctx = Ctx::new(40).unwrap();
        for v in [0i64, 1, -5, 1728, 1 << 40, -(3 << 50) + 7] {
            assert_eq!(round_to_bigint(&ctx.int(v)), Some(BigInt::from(v)));
        }
        let x = ctx.div(&ctx.int(7), &ctx.int(2));
        assert_eq!(to_f64(&x), 3.5);
        let big = (0..5).fold(ctx.int(1), |acc, _| ctx.mul(&acc, &ctx.int(1_000_000_007)));
        assert_eq!(round_to_bigint(&big), Some(BigInt::from(1_000_000_007u64).pow(5)));
    }
}
