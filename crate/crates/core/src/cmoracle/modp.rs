//! Dense polynomials over `𝔽_p` for `p < 2³¹`, coefficients from the constant
//! term upwards.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Reduction of integer coefficients modulo `p`.
pub fn reduce(coeffs: &[BigInt], p: u64) -> Poly {
    let m = BigInt::from(p);
    trim(
        coeffs
            .iter()
            .map(|c| ((c % &m + &m) % &m).to_u64().expect("residue below p"))
            .collect(),
    )
}

pub fn degree(f: &Poly) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn eval(f: &Poly, x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

/// All roots in `𝔽_p`, by evaluating at every residue.
pub fn roots_exhaustive(f: &Poly, p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval(f, x, p) == 0).collect()
}

pub fn sub(f: &Poly, g: &Poly, p: u64) -> Poly {
    let n = f.len().max(g.len());
    trim(
        (0..n)
            .map(|i| (f.get(i).copied().unwrap_or(0) + p - g.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(f: &Poly, g: &Poly, p: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
        }
    }
    trim(out)
}

/// `(quotient, remainder)` of `f` by a nonzero `g`.
pub fn div_rem(f: &Poly, g: &Poly, p: u64) -> (Poly, Poly) {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = inv(g[dg], p);
    let mut r = trim(f.clone());
    if r.len() <= dg {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - dg];
    while r.len() > dg {
        let k = r.len() - 1 - dg;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        q[k] = c;
        for (i, &gi) in g.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mulmod(c, gi, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &Poly, g: &Poly, p: u64) -> Poly {
    div_rem(f, g, p).1
}

/// Monic gcd.
pub fn gcd(f: &Poly, g: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (trim(f.clone()), trim(g.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn monic(f: &Poly, p: u64) -> Poly {
    match f.last() {
        None => vec![],
        Some(&l) => {
            let li = inv(l, p);
            f.iter().map(|&c| mulmod(c, li, p)).collect()
        }
    }
}

pub fn derivative(f: &Poly, p: u64) -> Poly {
    trim(f.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

pub fn is_squarefree(f: &Poly, p: u64) -> bool {
    let d = derivative(f, p);
    !d.is_empty() && degree(&gcd(f, &d, p)) == Some(0)
}

/// `base^e mod m`.
pub fn pow_mod_poly(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut result = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Distinct-degree factorization of a squarefree `f`: pairs `(d, k)` meaning
/// `f` has exactly `k` irreducible factors of degree `d`.
pub fn distinct_degree_pattern(f: &Poly, p: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut g = monic(f, p);
    let x = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while degree(&g).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > degree(&g).unwrap() {
            out.push((degree(&g).unwrap(), 1));
            break;
        }
        h = pow_mod_poly(&h, p, &g, p);
        let common = gcd(&g, &sub(&h, &x, p), p);
        let dc = degree(&common).unwrap_or(0);
        if dc > 0 {
            out.push((d, dc / d));
            g = div_rem(&g, &common, p).0;
            h = rem(&h, &g, p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_patterns() {
        // (x − 1)(x − 2)(x² + 1) over 𝔽₇: x² + 1 is irreducible since 7 ≡ 3 mod 4
        let f = mul(&mul(&vec![6, 1], &vec![5, 1], 7), &vec![1, 0, 1], 7);
        assert_eq!(roots_exhaustive(&f, 7), vec![1, 2]);
        assert!(is_squarefree(&f, 7));
        assert_eq!(distinct_degree_pattern(&f, 7), vec![(1, 2), (2, 1)]);
        let sq = mul(&vec![6, 1], &vec![6, 1], 7);
        assert!(!is_squarefree(&sq, 7));
        // x³ − 2 is irreducible over 𝔽₇ (2 is not a cube)
        assert_eq!(distinct_degree_pattern(&vec![5, 0, 0, 1], 7), vec![(3, 1)]);
    }
}
