use num_bigint::BigInt;
use rivage::cmoracle::*;
use rivage::corearith::intmath::is_fundamental_discriminant;

fn valid(d: i64) -> bool {
    matches!(d.rem_euclid(4), 0 | 1)
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
fn jacobi(mut a: i64, mut n: i64) -> i64 {
    a = a.rem_euclid(n);
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(d / n)` for `n > 0`.
fn kronecker(d: i64, mut n: i64) -> i64 {
    let mut k = 1;
    while n % 2 == 0 {
        n /= 2;
        k *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    k * jacobi(d, n)
}

/// Dirichlet's class number formula for fundamental `d < −4`.
fn analytic_class_number(d: i64) -> i64 {
    let s: i64 = (1..-d).map(|n| kronecker(d, n) * n).sum();
    -s / -d
}

#[test]
fn class_group_examples() {
    let g = definite_class_group(-4).unwrap();
    assert!(g.group().is_trivial());
    assert_eq!(g.forms, vec![DefiniteForm::new(1, 0, 1).unwrap()]);
    assert!(definite_class_group(-3).unwrap().group().is_trivial());
    assert_eq!(definite_class_group(-23).unwrap().order(), 3);
    assert_eq!(definite_class_group(-56).unwrap().group().invariant_factors(), &[4]);
    assert_eq!(definite_class_group(-84).unwrap().group().invariant_factors(), &[2, 2]);
    for bad in [-1, -2, -6, 0, 5] {
        assert!(definite_class_group(bad).unwrap_err().is_validation());
    }
}

#[test]
fn class_numbers_match_analytic_formula() {
    for d in (-10_000..0).filter(|&d| valid(d)) {
        let g = definite_class_group(d).unwrap();
        assert_eq!(g.order(), g.forms.len(), "D = {d}");
        if d < -4 && is_fundamental_discriminant(d) {
            assert_eq!(g.order() as i64, analytic_class_number(d), "D = {d}");
        }
    }
}

#[test]
fn j_special_values() {
    let i = j_invariant(&DefiniteForm::new(1, 0, 1).unwrap(), 40).unwrap();
    assert!((i.value.re_f64() - 1728.0).abs() < 1e-30 && i.value.im_f64().abs() < 1e-30);
    let rho = j_invariant(&DefiniteForm::new(1, 1, 1).unwrap(), 40).unwrap();
    assert!(rho.value.abs_f64() < 1e-30);
    // j(i√2) = 8000
    let v = j_invariant(&DefiniteForm::new(1, 0, 2).unwrap(), 30).unwrap();
    assert!((v.value.re_f64() - 8000.0).abs() < 1e-20);
    assert!(j_invariant(&DefiniteForm::new(1, 0, 1).unwrap(), 10).is_err());
}

#[test]
fn j_agrees_with_eisenstein_route() {
    for d in [-3, -4, -7, -15, -23, -47, -71, -104, -191] {
        for f in reduced_definite_forms(d).unwrap() {
            let a = j_invariant(&f, 50).unwrap().value;
            let b = j_invariant_eisenstein(&f, 50).unwrap();
            let scale = a.abs_f64().max(1.0);
            assert!(distance(&a, &b) / scale < 1e-40, "{f}");
        }
    }
}

#[test]
fn j_modular_invariance() {
    for d in [-7, -15, -23, -39, -56] {
        for f in reduced_definite_forms(d).unwrap() {
            let j = j_invariant(&f, 40).unwrap().value;
            let t = j_invariant(&f.translate(), 40).unwrap().value;
            assert!(distance(&j, &t) < 1e-10, "τ+1 at {f}");
            let s = f.invert_tau();
            if log10_abs_q(&s) <= -std::f64::consts::PI / std::f64::consts::LN_10 {
                let s = j_invariant(&s, 40).unwrap().value;
                assert!(distance(&j, &s) < 1e-10, "−1/τ at {f}");
            }
        }
    }
}

#[test]
fn class_polynomial_examples() {
    let h = hilbert_class_polynomial(-4).unwrap();
    assert_eq!(h.coefficients, vec![BigInt::from(-1728), BigInt::from(1)]);
    assert_eq!(h.to_string(), "X - 1728");
    let h = hilbert_class_polynomial(-3).unwrap();
    assert_eq!(h.coefficients, vec![BigInt::from(0), BigInt::from(1)]);
    assert_eq!(h.to_string(), "X");
    let h = hilbert_class_polynomial(-23).unwrap();
    assert_eq!(h.degree, 3);
    assert!(h.residual < RESIDUAL_TOLERANCE);
    assert_eq!(h.coefficients[3], BigInt::from(1));
    assert_eq!(h.coefficients[0], "12771880859375".parse::<BigInt>().unwrap());
    assert!(hilbert_class_polynomial(-10_003).unwrap_err().is_validation());
}

#[test]
fn class_polynomial_degree_and_stability() {
    let sample = (-10_000..0)
        .filter(|&d| valid(d))
        .filter(|&d| d > -600 || d % 97 == 0 || d == -9_971);
    for d in sample {
        let g = definite_class_group(d).unwrap();
        let h = hilbert_class_polynomial(d).unwrap();
        assert_eq!(h.degree, g.order(), "D = {d}");
        assert!(h.residual < RESIDUAL_TOLERANCE);
        if d > -300 {
            let (again, residual) = hilbert_at_digits(d, 2 * h.precision_used).unwrap();
            assert_eq!(again, h.coefficients, "D = {d}");
            assert!(residual < h.residual.max(1e-30));
        }
    }
}

/// Composing with a fixed class permutes the `j`-values, and the inverse
/// class gives complex conjugates.
#[test]
fn class_action_on_j_values() {
    for d in [-23, -47, -56, -71, -84, -95, -119] {
        let forms = reduced_definite_forms(d).unwrap();
        let js: Vec<_> = forms.iter().map(|f| j_invariant(f, 60).unwrap().value).collect();
        for g in &forms {
            let mut used = vec![false; forms.len()];
            for f in &forms {
                let moved = j_invariant(&g.compose(f).unwrap(), 60).unwrap().value;
                let hit = (0..forms.len()).find(|&k| !used[k] && distance(&moved, &js[k]) < 1e-8);
                used[hit.expect("image j-value present")] = true;
            }
        }
        for (f, j) in forms.iter().zip(&js) {
            let inv = j_invariant(&f.inverse(), 60).unwrap().value;
            let ctx = Ctx::new(60).unwrap();
            let conj = Complex {
                re: j.re.clone(),
                im: j.im.neg(),
            };
            assert!(inv.sub(&conj, &ctx).abs_f64() < 1e-8);
        }
    }
}

#[test]
fn splitting_examples() {
    let r = main_theorem_consistency(-4, &[5]).unwrap();
    assert!(r.passed);
    assert!(r.records[0].principal && r.records[0].roots == 1);

    let primes = search_primes(-23, 20).unwrap();
    let first_principal = primes
        .iter()
        .copied()
        .find(|&p| represented_by(&DefiniteForm::principal(-23).unwrap(), p));
    assert_eq!(first_principal, Some(59));
    let r = main_theorem_consistency(-23, &primes).unwrap();
    assert!(r.passed);
    let p59 = r.records.iter().find(|x| x.p == 59).unwrap();
    assert_eq!((p59.roots, p59.expected.as_str()), (3, "split"));
    let p2 = r.records.iter().find(|x| x.p == 2).unwrap();
    assert_eq!(p2.factor_degrees, vec![(3, 1)]);

    // preconditions violated: inert, ramified, composite
    let r = main_theorem_consistency(-23, &[5, 23, 15]).unwrap();
    assert!(r.records.iter().all(|x| !x.passed));
}

#[test]
fn splitting_for_larger_groups() {
    for d in [-56, -84, -71, -119, -260, -420] {
        let primes = search_primes(d, 30).unwrap();
        let r = main_theorem_consistency(d, &primes).unwrap();
        assert!(r.passed, "D = {d}: {:?}", r.records.iter().find(|x| !x.passed));
        assert!(r.records.iter().any(|x| x.principal));
    }
}
