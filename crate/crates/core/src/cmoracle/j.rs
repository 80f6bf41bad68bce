//! The modular invariant `j` through `q`-expansions.
//!
//! The main route is `j = E₄³/Δ` with `E₄ = 1 + 240 Σ σ₃(n) qⁿ` and
//! `Δ = q·(Σ_k (−1)^k q^{k(3k−1)/2})²⁴` (Euler's pentagonal series for the
//! eta product). The oracle route uses Lambert series for `E₄` and `E₆` and
//! `j = 1728·E₄³/(E₄³ − E₆²)`.
//!
//! Error budget. Write `r = |q| = exp(−2π·Im τ)` and `L = −log₁₀ r`. For a
//! requested accuracy of `d` digits the truncation points are chosen so that
//! the dropped tails of both series are at most `10^{−(d + 2L + 10)}`.
//! Since `|Δ| ≥ r·(1 − 2r)²⁴` and `|E₄| ≤ 1 + 300 r/(1 − r)⁴`, the induced
//! error on `j` is below `10^{−d}·max(1, |j|)` for every `τ` with
//! `Im τ ≥ 1/2`. Arithmetic runs with `d + 2L + 20` digits.

use astro_float::BigFloat;

use super::dform::DefiniteForm;
use super::numeric::{Complex, Ctx};
use crate::{Error, Result};

const MAX_TERMS: usize = 200_000;

/// Result of one evaluation.
#[derive(Clone, Debug)]
pub struct JValue {
    pub value: Complex,
    pub digits: usize,
    /// Number of `q`-powers used.
    pub terms: usize,
    /// `log₁₀` of the truncation tail bound.
    pub tail_log10: f64,
}

/// `log₁₀ |q|` for `τ` attached to a form.
pub fn log10_abs_q(f: &DefiniteForm) -> f64 {
    let im = ((-f.discriminant()) as f64).sqrt() / (2.0 * f.a as f64);
    -2.0 * std::f64::consts::PI * im / std::f64::consts::LN_10
}

/// `τ = (−b + √D)/(2a)` in the upper half plane.
pub fn tau_of_form(f: &DefiniteForm, ctx: &Ctx) -> Complex {
    let two_a = ctx.int(2 * f.a);
    Complex {
        re: ctx.div(&ctx.int(-f.b), &two_a),
        im: ctx.div(&ctx.sqrt(&ctx.int(-f.discriminant())), &two_a),
    }
}

/// Smallest `N` such that the terms of `Σ C nᵏ rⁿ` beyond `N` sum to at most
/// `10^{target}` (as `log₁₀`), using a geometric bound once the term ratio is
/// below 1/2.
fn truncation(log10_r: f64, power: i32, log10_c: f64, target: f64) -> Option<usize> {
    for n in 1..MAX_TERMS {
        let m = (n + 1) as f64;
        let ratio = ((m + 1.0) / m).powi(power) * 10f64.powf(log10_r);
        if ratio > 0.5 {
            continue;
        }
        let next = log10_c + power as f64 * m.log10() + m * log10_r + 2f64.log10();
        if next <= target {
            return Some(n);
        }
    }
    None
}

fn sigma_table(n: usize, k: u32) -> Vec<i64> {
    let mut s = vec![0i64; n + 1];
    for d in 1..=n {
        let dk = (d as i64).pow(k);
        for m in (d..=n).step_by(d) {
            s[m] += dk;
        }
    }
    s
}

/// Evaluates `j(τ)` for the point attached to `f`, without reducing `f`.
pub fn j_invariant(f: &DefiniteForm, digits: usize) -> Result<JValue> {
    if digits < 20 {
        return Err(Error::ResourceLimit(format!("{digits} digits requested, at least 20 are required")));
    }
    let l = -log10_abs_q(f);
    if l < std::f64::consts::PI / std::f64::consts::LN_10 - 1e-9 {
        return Err(Error::validation(format!("Im τ < 1/2 for {f}; reduce the form first")));
    }
    let guard = (2.0 * l).ceil() as usize;
    let mut ctx = Ctx::new(digits + guard + 20)?;
    let target = -((digits + guard + 10) as f64);
    let log10_r = -l;
    let n_e4 = truncation(log10_r, 3, (240.0f64 * 1.21).log10(), target)
        .ok_or_else(|| Error::ResourceLimit("E4 series needs too many terms".into()))?;
    let k_max = (1..)
        .find(|&k: &usize| {
            let e = ((k + 1) * (3 * k + 2) / 2) as f64;
            e * log10_r + 4f64.log10() <= target
        })
        .unwrap();
    let n_pent = k_max * (3 * k_max + 1) / 2;
    let n = n_e4.max(n_pent);
    if n > MAX_TERMS {
        return Err(Error::ResourceLimit("q-expansion needs too many terms".into()));
    }

    let tau = tau_of_form(f, &ctx);
    let q = tau.exp_2pi_i(&mut ctx);
    let sigma3 = sigma_table(n_e4, 3);
    let mut pent = vec![0i8; n + 1];
    for k in 1..=k_max {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for e in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if e <= n {
                pent[e] = sign;
            }
        }
    }

    let one = Complex::real(ctx.int(1), &ctx);
    let mut e4_sum = Complex::real(ctx.int(0), &ctx);
    let mut p = one.clone();
    let mut qn = one.clone();
    for m in 1..=n {
        qn = qn.mul(&q, &ctx);
        if m <= n_e4 {
            e4_sum = e4_sum.add(&qn.scale(&ctx.int(sigma3[m]), &ctx), &ctx);
        }
        match pent[m] {
            1 => p = p.add(&qn, &ctx),
            -1 => p = p.sub(&qn, &ctx),
            _ => {}
        }
    }
    let e4 = one.add(&e4_sum.scale(&ctx.int(240), &ctx), &ctx);
    let p2 = p.mul(&p, &ctx);
    let p4 = p2.mul(&p2, &ctx);
    let p8 = p4.mul(&p4, &ctx);
    let p24 = p8.mul(&p8, &ctx).mul(&p8, &ctx);
    let delta = q.mul(&p24, &ctx);
    let e4_3 = e4.mul(&e4, &ctx).mul(&e4, &ctx);
    Ok(JValue {
        value: e4_3.div(&delta, &ctx),
        digits,
        terms: n,
        tail_log10: target,
    })
}

/// Oracle: `j = 1728·E₄³/(E₄³ − E₆²)` with both Eisenstein series summed as
/// Lambert series `Σ nᵏ qⁿ/(1 − qⁿ)` with a fixed generous term count.
pub fn j_invariant_eisenstein(f: &DefiniteForm, digits: usize) -> Result<Complex> {
    let l = -log10_abs_q(f);
    let guard = (2.0 * l).ceil() as usize;
    let ctx_digits = digits + guard + 20;
    let mut ctx = Ctx::new(ctx_digits)?;
    let terms = ((ctx_digits as f64 + 20.0) / l).ceil() as usize + 10;
    if terms > 6000 {
        return Err(Error::ResourceLimit("Lambert series oracle limited to 6000 terms".into()));
    }
    let tau = tau_of_form(f, &ctx);
    let q = tau.exp_2pi_i(&mut ctx);
    let one = Complex::real(ctx.int(1), &ctx);
    let (mut s3, mut s5) = (Complex::real(ctx.int(0), &ctx), Complex::real(ctx.int(0), &ctx));
    let mut qn = one.clone();
    for n in 1..=terms {
        qn = qn.mul(&q, &ctx);
        let lam = qn.div(&one.sub(&qn, &ctx), &ctx);
        let n = n as i64;
        s3 = s3.add(&lam.scale(&ctx.int(n.pow(3)), &ctx), &ctx);
        s5 = s5.add(&lam.scale(&ctx.int(n.pow(5)), &ctx), &ctx);
    }
    let e4 = one.add(&s3.scale(&ctx.int(240), &ctx), &ctx);
    let e6 = one.sub(&s5.scale(&ctx.int(504), &ctx), &ctx);
    let e4_3 = e4.mul(&e4, &ctx).mul(&e4, &ctx);
    let denom = e4_3.sub(&e6.mul(&e6, &ctx), &ctx);
    Ok(e4_3.scale(&ctx.int(1728), &ctx).div(&denom, &ctx))
}

/// `|x − y|` in `f64`, for tolerance checks.
pub fn distance(x: &Complex, y: &Complex) -> f64 {
    let ctx = Ctx::new(20).expect("small precision");
    x.sub(y, &ctx).abs_f64()
}

/// Decimal rendering of `x` with `frac` digits after the point.
pub fn to_fixed(x: &BigFloat, frac: usize, ctx: &Ctx) -> String {
    let scale = (0..frac).fold(ctx.int(1), |acc, _| ctx.mul(&acc, &ctx.int(10)));
    let n = super::numeric::round_to_bigint(&ctx.mul(x, &scale)).unwrap_or_default();
    let neg = n < num_bigint::BigInt::from(0);
    let mut s = n.magnitude().to_string();
    if frac > 0 {
        if s.len() <= frac {
            s = "0".repeat(frac + 1 - s.len()) + &s;
        }
        s.insert(s.len() - frac, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}
