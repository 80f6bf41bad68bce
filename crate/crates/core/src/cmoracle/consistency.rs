//! Splitting of primes in the Hilbert class field, read off from the class
//! polynomial modulo `p`.
//!
//! A prime `p ∤ D` represented by a form of discriminant `D` splits in the
//! imaginary quadratic field. It splits further in the Hilbert class field
//! iff its class is trivial; in general the class polynomial factors mod `p`
//! into distinct irreducibles of degree equal to the order of the class.

use serde::Serialize;

use super::dform::{definite_class_group, reduced_definite_forms, DefiniteForm};
use super::hilbert::{hilbert_class_polynomial, ClassPolynomial};
use super::modp;
use crate::corearith::intmath::{is_prime, isqrt};
use crate::Result;

/// Primes are factored by exhaustive root search, so they stay below this.
pub const PRIME_LIMIT: u64 = 1_000_000;

/// Whether `f(x, y) = n` has an integer solution, by bounded search over `y`.
pub fn represented_by(f: &DefiniteForm, n: u64) -> bool {
    let (a, b, c) = (f.a as i128, f.b as i128, f.c as i128);
    let n = n as i128;
    let disc = -(f.discriminant() as i128);
    // 4a·f(x, y) = (2ax + by)² + |D|y²
    let y_max = isqrt(((4 * a * n) / disc) as i64) as i128;
    for y in -y_max..=y_max {
        let rest = 4 * a * n - disc * y * y;
        if rest < 0 {
            continue;
        }
        let s = isqrt(rest as i64) as i128;
        if s * s != rest {
            continue;
        }
        for t in [s, -s] {
            let num = t - b * y;
            if num % (2 * a) == 0 {
                let x = num / (2 * a);
                if a * x * x + b * x * y + c * y * y == n {
                    return true;
                }
            }
        }
    }
    false
}

/// The first `count` primes coprime to `d` represented by some reduced form
/// of discriminant `d`, in increasing order.
pub fn search_primes(d: i64, count: usize) -> Result<Vec<u64>> {
    let forms = reduced_definite_forms(d)?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while out.len() < count && p < PRIME_LIMIT {
        if is_prime(p) && d.unsigned_abs() % p != 0 && forms.iter().any(|f| represented_by(f, p)) {
            out.push(p);
        }
        p += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeRecord {
    pub p: u64,
    /// A reduced form representing `p`, if any.
    pub form: Option<DefiniteForm>,
    pub principal: bool,
    /// Order of the class of `p` in the form class group.
    pub class_order: Option<i64>,
    pub roots: usize,
    pub squarefree: bool,
    /// Distinct-degree factorization as `(degree, count)` pairs.
    pub factor_degrees: Vec<(usize, usize)>,
    /// `"split"` or `"not split"`.
    pub expected: String,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub d: i64,
    pub polynomial: ClassPolynomial,
    pub class_number: usize,
    pub records: Vec<PrimeRecord>,
    pub passed: bool,
}

/// Tabulates the splitting of `H_D mod p` for each prime.
///
/// Primes represented by the principal form must give `h` distinct roots.
/// Other representable primes must not split completely, and the factor
/// degrees must all equal the order of the class of `p`. Primes violating
/// the preconditions are recorded as failures.
pub fn main_theorem_consistency(d: i64, primes: &[u64]) -> Result<ConsistencyReport> {
    let group = definite_class_group(d)?;
    let polynomial = hilbert_class_polynomial(d)?;
    let h = group.order();
    let principal = DefiniteForm::principal(d)?;
    let mut records = Vec::new();
    for &p in primes {
        let mut rec = PrimeRecord {
            p,
            form: None,
            principal: false,
            class_order: None,
            roots: 0,
            squarefree: false,
            factor_degrees: vec![],
            expected: String::new(),
            passed: false,
            note: None,
        };
        if !is_prime(p) || p >= PRIME_LIMIT || d.unsigned_abs() % p == 0 {
            rec.note = Some("not a prime below the limit coprime to D".into());
            records.push(rec);
            continue;
        }
        let Some(form) = group.forms.iter().copied().find(|f| represented_by(f, p)) else {
            rec.note = Some("not represented by any form of discriminant D".into());
            records.push(rec);
            continue;
        };
        let order = group.group().element_order(&group.coordinates(&form).expect("reduced form"));
        rec.form = Some(form);
        rec.principal = represented_by(&principal, p);
        rec.class_order = Some(order);
        let f = modp::reduce(&polynomial.coefficients, p);
        rec.roots = modp::roots_exhaustive(&f, p).len();
        rec.squarefree = modp::is_squarefree(&f, p);
        if rec.squarefree {
            rec.factor_degrees = modp::distinct_degree_pattern(&f, p);
        }
        let uniform = rec.factor_degrees == vec![(order as usize, h / order as usize)];
        if rec.principal {
            rec.expected = "split".into();
            rec.passed = rec.roots == h && rec.squarefree && order == 1 && uniform;
        } else {
            rec.expected = "not split".into();
            rec.passed = rec.roots < h && rec.squarefree && order > 1 && uniform;
        }
        records.push(rec);
    }
    let passed = records.iter().all(|r| r.passed);
    Ok(ConsistencyReport {
        d,
        polynomial,
        class_number: h,
        records,
        passed,
    })
}
