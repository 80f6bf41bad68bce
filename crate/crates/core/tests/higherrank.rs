use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rivage::corearith::RationalMatrix;
use rivage::higherrank::*;
use rivage::rayclass::{ray_class_group, LevelStructure};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn m2(a: i64, b: i64, c: i64, d: i64) -> RationalMatrix {
    RationalMatrix::from_i64_rows(&[vec![a, b], vec![c, d]])
}

#[test]
fn f_n_examples() {
    let g = m2(1, 2, 3, 4);
    assert_eq!(f_n(&[g.clone()]).unwrap(), g);
    let id = f_n(&[m2(1, 0, 0, 1), m2(1, 0, 0, 1)]).unwrap();
    assert_eq!(id, RationalMatrix::identity(4));
    assert_eq!(similitude_factor(&id), Some(rat(1)));

    let m = f_n(&[m2(2, 0, 0, 3), m2(1, 2, 2, 10)]).unwrap();
    let expected = RationalMatrix::from_i64_rows(&[
        vec![2, 0, 0, 0],
        vec![0, 1, 0, 2],
        vec![0, 0, 3, 0],
        vec![0, 2, 0, 10],
    ]);
    assert_eq!(m, expected);
    // MᵀJM = 6J by hand.
    let j = symplectic_form(2);
    assert_eq!(&(&m.transpose() * &j) * &m, j.scale(&rat(6)));
    assert_eq!(similitude_factor(&m), Some(rat(6)));

    assert!(f_n(&[m2(1, 0, 0, 1), m2(2, 0, 0, 1)]).unwrap_err().is_validation());
}

#[test]
fn h_eval_examples() {
    let point = |z: Option<(i64, i64)>, e: &[(i64, i64)]| {
        TorusPoint::new(z.map(|(a, b)| (rat(a), rat(b))), e.iter().map(|&(x, y)| (rat(x), rat(y))).collect())
    };
    let d01 = ShoreDatum::new(0, 1).unwrap();
    let h = d01.h_eval(&point(None, &[(2, 3)])).unwrap();
    assert_eq!(h, RationalMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]));
    assert_eq!(similitude_factor(&h), Some(rat(6)));

    let d10 = ShoreDatum::new(1, 0).unwrap();
    let h = d10.h_eval(&point(Some((1, 1)), &[])).unwrap();
    assert_eq!(h, m2(1, 1, -1, 1));
    assert_eq!(similitude_factor(&h), Some(rat(2)));

    let d11 = ShoreDatum::new(1, 1).unwrap();
    assert!(d11.h_eval(&point(Some((1, 1)), &[(2, 3)])).unwrap_err().is_validation());
    assert!(d11.h_eval(&point(Some((1, 1)), &[(2, 1)])).is_ok());

    assert_eq!(torus_membership(&point(None, &[(2, 3), (6, 1)])), Membership::Diagonal);
    assert_eq!(torus_membership(&point(None, &[(2, 3), (4, 1)])), Membership::Neither);
    assert_eq!(torus_membership(&point(Some((1, 1)), &[(2, 1)])), Membership::Torus);
}

#[test]
fn weight_and_degenerations() {
    use SymbolicEntry::*;
    for n in 1..=4 {
        let t = BigRational::new(BigInt::from(5), BigInt::from(3));
        for k0 in 0..=n {
            let d = ShoreDatum::new(k0, n - k0).unwrap();
            let h = d.h_eval(&TorusPoint::weight(t.clone(), n)).unwrap();
            assert_eq!(h, scalar(n, &t));
        }
        let siegel = ShoreDatum::new(n, 0).unwrap().base_point();
        let diag = ShoreDatum::new(0, n).unwrap().base_point();
        for i in 0..2 * n {
            for j in 0..2 * n {
                let (p, q) = (i % n, j % n);
                let expect = if p != q {
                    Zero
                } else {
                    [[A, B], [NegB, A]][i / n][j / n]
                };
                assert_eq!(siegel[i][j], expect);
                let expect = if i == j { if i < n { X(i) } else { Y(i - n) } } else { Zero };
                assert_eq!(diag[i][j], expect);
            }
        }
    }
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn gn_point(n: usize) -> impl Strategy<Value = Vec<RationalMatrix>> {
    (
        prop::collection::vec(prop::collection::vec(small_rational(), 4), n),
        small_rational().prop_filter("nonzero", |x| x != &rat(0)),
    )
        .prop_filter_map("invertible", |(entries, nu)| {
            let mut gs = Vec::new();
            for e in entries {
                let det = &e[0] * &e[3] - &e[1] * &e[2];
                if det == rat(0) {
                    return None;
                }
                let f = &nu / &det;
                gs.push(RationalMatrix::from_rows(vec![
                    vec![&e[0] * &f, &e[1] * &f],
                    vec![e[2].clone(), e[3].clone()],
                ]));
            }
            Some(gs)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, .. ProptestConfig::default() })]
    #[test]
    fn f_n_is_a_homomorphism_into_gsp(
        (g, h) in (1usize..=4).prop_flat_map(|n| (gn_point(n), gn_point(n)))
    ) {
        let prod: Vec<RationalMatrix> = g.iter().zip(&h).map(|(a, b)| a * b).collect();
        let (fg, fh) = (f_n(&g).unwrap(), f_n(&h).unwrap());
        prop_assert_eq!(f_n(&prod).unwrap(), &fg * &fh);
        let (ng, nh) = (similitude_factor(&fg).unwrap(), similitude_factor(&fh).unwrap());
        prop_assert_eq!(similitude_factor(&(&fg * &fh)).unwrap(), ng * nh);
    }
}

#[test]
fn reflex_pure_quartic() {
    let r = reflex_field_pure_quartic(2).unwrap();
    assert_eq!(r.degree, 8);
    assert!(r.equals_galois_closure && r.lattice_certified);
    let exprs: Vec<&str> = r.generators.iter().map(|g| g.expression.as_str()).collect();
    assert_eq!(exprs, vec!["θ", "iθ"]);
    for g in &r.generators {
        assert_eq!(g.minimal_polynomial, vec!["-2", "0", "0", "0", "1"]);
    }
    assert_eq!(r.subgroups.len(), 10); // subgroups of the dihedral group of order 8
    for m in [3, 5, 6, 7, 8, 12] {
        let r = reflex_field_pure_quartic(m).unwrap();
        assert_eq!(r.degree, 8, "m={m}");
        assert!(r.lattice_certified);
    }
    assert_eq!(reflex_field_pure_quartic(32).unwrap().reduced_m, 2);
    assert_eq!(reflex_field_pure_quartic(12).unwrap().squarefree_core, 3);
    for bad in [-3, 0, 1, 4, 9, 16] {
        assert!(reflex_field_pure_quartic(bad).unwrap_err().is_validation(), "m={bad}");
    }
}

#[test]
fn rank_one_reflex_norm() {
    for (d, n) in [(8, 1), (12, 1), (40, 3), (5, 4)] {
        let level = LevelStructure::narrow(n);
        let nr = reciprocity_norm_rank1(d, level).unwrap();
        let g = ray_class_group(d, level).unwrap();
        for x in g.group().elements() {
            assert_eq!(nr.apply(&x), x);
            assert_eq!(nr.apply(&nr.apply(&x)), nr.then(&nr).unwrap().apply(&x));
        }
    }
    assert_eq!(ray_class_group(12, LevelStructure::narrow(1)).unwrap().group().invariant_factors(), &[2]);
    let siegel = ShoreDatum::new(1, 1).unwrap();
    assert!(matches!(
        reciprocity_norm(&siegel, 8, LevelStructure::narrow(1)),
        Err(rivage::Error::Unsupported(_))
    ));
}
