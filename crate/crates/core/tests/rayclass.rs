use num_bigint::BigInt;
use num_integer::Integer;
use rivage::corearith::intmath::is_fundamental_discriminant;
use rivage::quadforms::{fundamental_unit, narrow_class_group, wide_class_number, Discriminant};
use rivage::rayclass::*;

fn narrow(n: u64) -> LevelStructure {
    LevelStructure::narrow(n)
}

/// Units of `ℤ[ω]/N` by searching for an explicit inverse, with ω written as
/// `(δ + √D)/2` and products expanded by hand.
fn brute_units(d: i64, n: i64) -> Vec<(i64, i64)> {
    let delta = d.rem_euclid(2);
    let t = (d - delta) / 4;
    let mul = |(a, b): (i64, i64), (c, e): (i64, i64)| {
        ((a * c + b * e * t).rem_euclid(n), (a * e + b * c + b * e * delta).rem_euclid(n))
    };
    let all: Vec<_> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    all.iter()
        .copied()
        .filter(|&u| all.iter().any(|&v| mul(u, v) == (1 % n, 0)))
        .collect()
}

fn brute_max_order(d: i64, n: i64) -> usize {
    let delta = d.rem_euclid(2);
    let t = (d - delta) / 4;
    let mul = |(a, b): (i64, i64), (c, e): (i64, i64)| {
        ((a * c + b * e * t).rem_euclid(n), (a * e + b * c + b * e * delta).rem_euclid(n))
    };
    brute_units(d, n)
        .into_iter()
        .map(|u| {
            let mut p = u;
            let mut k = 1;
            while p != (1, 0) {
                p = mul(p, u);
                k += 1;
            }
            k
        })
        .max()
        .unwrap()
}

#[test]
fn residue_unit_groups() {
    assert!(residue_unit_group(8, 1).unwrap().is_trivial());
    let g = residue_unit_group(8, 3).unwrap();
    assert_eq!(g.invariant_factors(), &[8]);
    assert_eq!(brute_max_order(8, 3), 8);
    let g = residue_unit_group(5, 4).unwrap();
    assert_eq!(g.order() as usize, brute_units(5, 4).len());
    for d in [5, 8, 12, 13, 21, 24, 28, 33, 40] {
        for n in 2..=12 {
            let g = residue_unit_group(d, n).unwrap();
            assert_eq!(g.order() as usize, brute_units(d, n as i64).len(), "D={d} N={n}");
            assert_eq!(g.exponent() as usize, brute_max_order(d, n as i64), "D={d} N={n}");
        }
    }
    assert!(residue_unit_group(32, 3).unwrap_err().is_validation());
}

#[test]
fn level_one_matches_narrow_class_group() {
    for d in (5..300).filter(|&d| is_fundamental_discriminant(d)) {
        let ray = ray_class_group(d, narrow(1)).unwrap();
        let cl = narrow_class_group(d).unwrap();
        assert!(ray.group().is_isomorphic(cl.group()), "D={d}");
        let wide = ray_class_group(d, LevelStructure::new(1, [false, false]).unwrap()).unwrap();
        assert_eq!(wide.order() as usize, wide_class_number(d).unwrap(), "D={d}");
    }
    assert!(ray_class_group(8, narrow(1)).unwrap().group().is_trivial());
    assert_eq!(ray_class_group(12, narrow(1)).unwrap().group().invariant_factors(), &[2]);
}

/// Image of `±ε^k` in `(O/N)^× × {±1}²`, by exact big-integer powers.
fn brute_unit_image(d: i64, n: i64) -> usize {
    let u = fundamental_unit(Discriminant::new(d).unwrap()).unwrap();
    let delta = d.rem_euclid(2);
    let (x0, y0) = (u.x.clone(), u.y.clone());
    let (mut x, mut y) = (BigInt::from(2), BigInt::from(0));
    let mut seen = std::collections::HashSet::new();
    let nb = BigInt::from(n);
    for k in 0..10_000 {
        // ε^k = (x + y√D)/2 = (x − δy)/2 + yω
        let res = |s: i64| {
            let half: BigInt = (&x - BigInt::from(delta) * &y) / 2;
            let u: BigInt = (half * s).mod_floor(&nb);
            let v: BigInt = (&y * BigInt::from(s)).mod_floor(&nb);
            (u, v)
        };
        let second = if u.norm == -1 && k % 2 == 1 { -1 } else { 1 };
        if k > 0 && second == 1 && res(1) == (BigInt::from(1).mod_floor(&nb), BigInt::from(0)) {
            break;
        }
        seen.insert((res(1), 1, second));
        seen.insert((res(-1), -1, -second));
        let nx = (&x * &x0 + BigInt::from(d) * &y * &y0) / 2;
        let ny = (&x * &y0 + &y * &x0) / 2;
        x = nx;
        y = ny;
    }
    seen.len()
}

#[test]
fn d8_level3() {
    let g = ray_class_group(8, narrow(3)).unwrap();
    assert!(32 % g.order() == 0);
    let img = brute_unit_image(8, 3);
    assert_eq!(g.unit_image_order() as usize, img);
    assert_eq!(g.order() as usize, 32 / img);
    assert_eq!(transition(8, narrow(1), narrow(3)).unwrap().image_order(), 1);
}

#[test]
fn order_formula_small() {
    for d in (5..60).filter(|&d| is_fundamental_discriminant(d)) {
        let h = wide_class_number(d).unwrap() as u64;
        for n in 1..=6 {
            for signs in [[false, false], [true, false], [true, true]] {
                let g = ray_class_group(d, LevelStructure::new(n, signs).unwrap()).unwrap();
                if signs == [true, true] {
                    assert_eq!(g.unit_image_order() as usize, brute_unit_image(d, n as i64), "D={d} N={n}");
                }
                let lhs = g.order() * g.unit_image_order();
                let rhs = h * g.residue_units().order() * (1 << g.level().sign_count());
                assert_eq!(lhs, rhs, "D={d} N={n} signs={signs:?}");
            }
        }
    }
}

#[test]
fn transitions() {
    let fine = ray_class_group(12, narrow(4)).unwrap();
    let coarse = ray_class_group(12, narrow(1)).unwrap();
    let t = fine.transition_to(&coarse).unwrap();
    assert_eq!(coarse.group().invariant_factors(), &[2]);
    assert!(t.is_surjective());

    let same = fine.transition_to(&fine).unwrap();
    for x in fine.group().elements() {
        assert_eq!(same.apply(&x), x);
    }
    assert!(transition(12, narrow(3), narrow(4)).unwrap_err().is_validation());
    assert!(transition(12, narrow(2), LevelStructure::new(4, [true, false]).unwrap())
        .unwrap_err()
        .is_validation());
}

#[test]
fn transitions_compose_and_respect_classes() {
    for d in [5, 12, 40, 60, 105] {
        let g12 = ray_class_group(d, narrow(12)).unwrap();
        let g6 = ray_class_group(d, narrow(6)).unwrap();
        let g3 = ray_class_group(d, LevelStructure::new(3, [true, false]).unwrap()).unwrap();
        let a = g12.transition_to(&g6).unwrap();
        let b = g6.transition_to(&g3).unwrap();
        let direct = g12.transition_to(&g3).unwrap();
        assert_eq!(a.then(&b).unwrap(), direct, "D={d}");
        assert!(a.is_surjective() && b.is_surjective());
        // Compatible with class_of on ideals prime to 12.
        let dd = Discriminant::new(d).unwrap();
        for norm in (1..40).filter(|m: &i64| m.gcd(&6) == 1) {
            for i in rivage::quadforms::Ideal::all_of_norm(dd, norm) {
                let fine = g12.class_of(&i).unwrap();
                let coarse = g3.class_of(&i).unwrap();
                assert_eq!(direct.apply(&fine.coords), coarse.coords, "D={d} I={i:?}");
            }
        }
    }
}

#[test]
fn torsor_action() {
    let mut reg = TorsorRegistry::new();
    let t = reg.register(12, narrow(1)).unwrap();
    assert_eq!(t.len(), 2);
    let pts = t.points();
    let g = t.group.elements().into_iter().find(|g| g.coords != vec![0]).unwrap();
    let id = t.group.identity();
    let swapped = reg.rec_action(&g, &pts[0]).unwrap();
    assert_eq!(swapped, pts[1]);
    assert_eq!(reg.rec_action(&id, &pts[1]).unwrap(), pts[1]);

    // Action axiom and inverses, exhaustively.
    for d in [5, 13, 40, 60, 85] {
        for n in [1, 3, 4] {
            let level = narrow(n);
            reg.register(d, level).unwrap();
            let t = reg.get(d, level).unwrap();
            let elems = t.group.elements();
            for x in t.points() {
                for g in &elems {
                    let gx = reg.rec_action(g, &x).unwrap();
                    assert_eq!(reg.rec_action(&t.group.neg(g).unwrap(), &gx).unwrap(), x);
                    for h in &elems {
                        let lhs = reg.rec_action(h, &gx).unwrap();
                        let rhs = reg.rec_action(&t.group.add(h, g).unwrap(), &x).unwrap();
                        assert_eq!(lhs, rhs, "D={d} N={n}");
                    }
                }
            }
        }
    }

    // Mismatched group and point.
    let other = ray_class_group(12, narrow(2)).unwrap();
    let pts = reg.get(12, narrow(1)).unwrap().points();
    assert!(reg.rec_action(&other.identity(), &pts[0]).unwrap_err().is_validation());
}
