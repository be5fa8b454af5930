use gl2_tempered::padic::{rat, FiniteCharacter, UnitGroup};
use gl2_tempered::rationality::*;
use gl2_tempered::spectrum::{CentralCharacter, LocalSpectrum, TemperedOrbit};

#[test]
fn cyclotomic_degrees() {
    assert_eq!(cyclotomic_degree(1), 1);
    assert_eq!(cyclotomic_degree(7), 6);
    assert_eq!(cyclotomic_degree(12), 4);
}

#[test]
fn bound_examples() {
    let g = UnitGroup::base(7, 2);
    let order7 = FiniteCharacter::all(&g).into_iter().find(|c| c.order() == 7).unwrap();
    let st = TemperedOrbit::steinberg(order7.clone()).unwrap();
    assert_eq!(st.conductor(), 4);
    assert_eq!(orbit_rationality_bound(&st).lower_bound, 6);
    let t2 = TemperedOrbit::type2(FiniteCharacter::trivial(g.clone()), order7).unwrap();
    assert_eq!(orbit_rationality_bound(&t2).lower_bound, 3);
    let t1 = TemperedOrbit::type1(FiniteCharacter::trivial(g)).unwrap();
    assert_eq!(orbit_rationality_bound(&t1).lower_bound, 1);
}

#[test]
fn rationality_gate() {
    assert!(verify_rationality_gate(7, 2).unwrap());
    assert!(verify_rationality_gate(11, 4).unwrap());
    assert!(verify_rationality_gate(5, 2).is_err());
}

#[test]
fn high_conductor_bounds_reach_half_p_minus_one() {
    for p in [7u64, 11] {
        let s = LocalSpectrum::new(p, 4).unwrap();
        for o in s.orbits().iter().filter(|o| o.conductor() >= 3) {
            assert!(orbit_rationality_bound(o).lower_bound >= (p - 1) / 2, "{o}");
        }
    }
}

#[test]
fn weil_examples() {
    let w = weil_q_integers(3, 1, 2).unwrap();
    assert_eq!(w.len(), 7);
    let traces: Vec<i64> = w.iter().map(|x| x.trace()).collect();
    let mut sorted = traces.clone();
    sorted.sort();
    assert_eq!(sorted, (-3..=3).collect::<Vec<_>>());
    assert!(w.iter().all(|x| x.min_poly[2] == 3));

    let w = weil_q_integers(3, 2, 1).unwrap();
    let polys: Vec<_> = w.iter().map(|x| x.min_poly.clone()).collect();
    assert_eq!(polys, vec![vec![1, -3], vec![1, 3]]);

    assert!(weil_q_integers(5, 1, 1).unwrap().is_empty());
}

#[test]
fn weil_roots_and_completeness() {
    for (q, w, d) in [(3u64, 1u32, 4u32), (2, 1, 4), (5, 1, 2), (3, 2, 3)] {
        let list = weil_q_integers(q, w, d).unwrap();
        let target = (q as f64).powi(w as i32);
        for x in &list {
            assert!(is_irreducible(&x.min_poly));
            for (re, im) in x.roots() {
                assert!((re * re + im * im - target).abs() < 1e-9, "{:?}", x.min_poly);
            }
        }
        assert_eq!(weil_q_integers_with_margin(q, w, d, 1).unwrap(), list);
    }
}

#[test]
fn irreducibility() {
    assert!(!is_irreducible(&[1, 0, -4]));
    assert!(is_irreducible(&[1, 0, 3]));
    assert!(!is_irreducible(&[1, 0, 0, 0, 4])); // (x^2 + 2x + 2)(x^2 - 2x + 2)
    assert!(is_irreducible(&[1, 0, 0, 0, 2]));
}

#[test]
fn small_rationality_points() {
    let s = unramified_small_rationality_points(3, 1, 1).unwrap();
    assert_eq!(s.iter().copied().collect::<Vec<_>>(), (-3..=3).collect::<Vec<_>>());
    assert!(unramified_small_rationality_points(3, 1, 0).unwrap().is_empty());
    for (q, w) in [(3u64, 2u32), (5, 1), (5, 2)] {
        let s = unramified_small_rationality_points(q, w, 1).unwrap();
        let edge = 2.0 * (q as f64).powf(w as f64 / 2.0) + 1.0;
        for &x in &s {
            assert!(s.contains(&-x));
            assert!((x as f64).abs() <= edge);
        }
    }
}

#[test]
fn ratio_values() {
    let r13 = small_rationality_ratio(13, 1, &CentralCharacter::trivial(13)).unwrap();
    assert_eq!(r13, rat(50, 91));
    let r23 = small_rationality_ratio(23, 1, &CentralCharacter::trivial(23)).unwrap();
    assert_eq!(r23, rat(52, 69));
    assert!(r23 > r13 && r23 <= rat(1, 1));
    assert!(small_rationality_ratio(3, 1, &CentralCharacter::trivial(3)).is_err());
    assert_eq!(rationality_cutoff(1), 6);
}

#[test]
fn oldform_bounds() {
    for (b_big, b, lhs, rhs) in [(3, 0, 4, 6), (5, 2, 4, 4), (10, 1, 10, 18)] {
        let o = oldform_bound_check(b_big, b).unwrap();
        assert_eq!((o.lhs, o.rhs, o.holds), (lhs, rhs, true));
    }
    assert!(oldform_bound_check(2, 0).is_err());
    assert_eq!(oldform_decay_factor(3, 5), rat(2, 5));
    for b_big in 3..40 {
        for b in 0..=2 {
            assert!(oldform_bound_check(b_big, b).unwrap().holds);
        }
    }
}
