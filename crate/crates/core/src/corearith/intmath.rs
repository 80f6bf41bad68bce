//! Small integer helpers used throughout the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: i64) -> i64 {
    assert!(n >= 0, "isqrt of negative number");
    (n as u64).isqrt() as i64
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let s = isqrt(n);
        s * s == n
    }
}

/// `x < √d` for a positive non-square `d`.
pub fn lt_sqrt(x: i64, d: i64) -> bool {
    x < 0 || (x as i128) * (x as i128) < d as i128
}

/// `x > √d` for a positive non-square `d`.
pub fn gt_sqrt(x: i64, d: i64) -> bool {
    x > 0 && (x as i128) * (x as i128) > d as i128
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Extended gcd: `(g, u, v)` with `u·a + v·b = g ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Extended gcd of three integers: `(g, u, v, w)` with `u·a + v·b + w·c = g`.
pub fn ext_gcd3(a: i128, b: i128, c: i128) -> (i128, i128, i128, i128) {
    let (g1, u1, v1) = ext_gcd(a, b);
    let (g, u2, w) = ext_gcd(g1, c);
    (g, u2 * u1, u2 * v1, w)
}

/// Inverse of `a` modulo `m > 1`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (g, u, _) = ext_gcd(a.rem_euclid(m) as i128, m as i128);
    (g == 1).then(|| u.rem_euclid(m as i128) as i64)
}

/// Prime factorisation by trial division, as `(p, k)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0);
    let sign = n.signum();
    factorize(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, k)| k % 2 == 1)
        .fold(sign, |acc, (p, _)| acc * p as i64)
}

/// Largest `k` with `k² | n`.
pub fn square_factor(n: i64) -> i64 {
    factorize(n.unsigned_abs())
        .into_iter()
        .fold(1, |acc, (p, k)| acc * (p as i64).pow(k / 2))
}

/// Fundamental discriminant of `ℚ(√n)` for a non-square `n`.
pub fn fundamental_discriminant_of(n: i64) -> i64 {
    let d = squarefree_part(n);
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Whether `d` is a fundamental discriminant (of either sign).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 || is_square(d) {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree_part(d) == d,
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree_part(m) == m
        }
        _ => false,
    }
}

/// Kronecker symbol `(d / p)` for an odd prime `p`, or `p = 2`.
pub fn kronecker(d: i64, p: u64) -> i32 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let p = p as i64;
    let r = d.rem_euclid(p);
    if r == 0 {
        return 0;
    }
    let e = ((p - 1) / 2) as u64;
    let mut base = r as u128;
    let mut acc = 1u128;
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        k >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

pub fn big_is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

pub fn big_sign(n: &BigInt) -> i32 {
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_discriminants() {
        let small: Vec<i64> = (2..60).filter(|&d| is_fundamental_discriminant(d)).collect();
        assert_eq!(
            small,
            vec![5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 53, 56, 57]
        );
        assert!(is_fundamental_discriminant(-4));
        assert!(is_fundamental_discriminant(-3));
        assert!(!is_fundamental_discriminant(-12));
        assert!(!is_fundamental_discriminant(-16));
        assert_eq!(fundamental_discriminant_of(2), 8);
        assert_eq!(fundamental_discriminant_of(3), 12);
        assert_eq!(fundamental_discriminant_of(45), 5);
        assert_eq!(fundamental_discriminant_of(-1), -4);
    }

    #[test]
    fn ext_gcd3_identity() {
        for (a, b, c) in [(12, 18, 27), (-5, 7, 0), (0, 0, 4), (6, -10, 15)] {
            let (g, u, v, w) = ext_gcd3(a, b, c);
            assert_eq!(u * a + v * b + w * c, g);
            assert_eq!(g, (a as i64).gcd(&(b as i64)).gcd(&(c as i64)) as i128);
        }
    }

    #[test]
    fn kronecker_matches_euler() {
        assert_eq!(kronecker(-23, 59), 1);
        assert_eq!(kronecker(-23, 5), -1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(5, 2), -1);
    }

    #[test]
    fn sqrt_comparisons() {
        assert!(lt_sqrt(2, 8));
        assert!(!lt_sqrt(3, 8));
        assert!(gt_sqrt(3, 8));
        assert!(lt_sqrt(-100, 8));
    }
}
