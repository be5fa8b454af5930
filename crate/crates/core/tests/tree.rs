use gl2_tempered::padic::{int, p_power, rat, vp, Rational};
use gl2_tempered::tree::*;

fn diag_with_valuation(p: u64, v: u32) -> RationalMatrix {
    let t2 = if v == 0 { int(2) } else { int(1) + p_power(p, v as i64) };
    RationalMatrix::diag(int(1), t2).unwrap()
}

#[test]
fn neighbors_of_origin_at_three() {
    let ctx = TreeContext::new(3, 2).unwrap();
    let mut got = neighbors(&TreeVertex::origin(), &ctx).unwrap();
    got.sort();
    let mut want = vec![
        TreeVertex::on_apartment(1),
        TreeVertex::on_apartment(-1),
        TreeVertex::new(rat(1, 3), -1, 3),
        TreeVertex::new(rat(2, 3), -1, 3),
    ];
    want.sort();
    assert_eq!(got, want);
    // the integers 1, 2 give the same vertex as 0
    assert_eq!(TreeVertex::new(int(1), 1, 3), TreeVertex::on_apartment(1));
}

#[test]
fn ball_is_a_regular_tree() {
    for p in [3u64, 5] {
        let ctx = TreeContext::new(p, 4).unwrap();
        let ball = ctx.ball();
        let inner: Vec<_> = ball.iter().filter(|w| ctx.depth(w) < 3).collect();
        let edges: usize = inner.iter().map(|w| neighbors(w, &ctx).unwrap().len()).sum();
        for w in &inner {
            let ns = neighbors(w, &ctx).unwrap();
            assert_eq!(ns.len() as u64, p + 1);
            for u in &ns {
                assert_eq!(w.distance(u, p), 1);
                assert!(neighbors(u, &ctx).unwrap().contains(w));
            }
        }
        assert!(edges > 0);
        // a tree: |V| = 1 + (p+1)(p^R - 1)/(p - 1)
        let r = 4u32;
        assert_eq!(ball.len() as u64, 1 + (p + 1) * (p.pow(r) - 1) / (p - 1));
    }
}

#[test]
fn apartment_distance() {
    let w = TreeVertex::new(rat(1, 9), 0, 3);
    let (d, proj) = dist_to_standard_apartment(&w, 3);
    assert_eq!(d, 2);
    assert_eq!(proj, TreeVertex::on_apartment(2));
    assert_eq!(w.distance(&proj, 3), 2);
    let on = TreeVertex::new(rat(5, 2), 4, 3);
    assert_eq!(dist_to_standard_apartment(&on, 3), (0, on.clone()));
}

#[test]
fn from_basis_roundtrip() {
    let p = 5;
    let ctx = TreeContext::new(p, 3).unwrap();
    for w in ctx.ball() {
        assert_eq!(TreeVertex::from_basis(&w.basis(p), p), w);
        let g = RationalMatrix::from_ints(2, 1, 5, 3).unwrap();
        let gw = w.apply(&g, p);
        assert_eq!(gw.apply(&g.inverse(), p), w);
    }
}

#[test]
fn diagonal_fixed_sets_follow_apartment_distance() {
    for p in [3u64, 5] {
        let ctx = TreeContext::new(p, 4).unwrap();
        let ball = ctx.ball();
        for v in 0..=2u32 {
            let t = diag_with_valuation(p, v);
            for w in &ball {
                let (d, _) = w.dist_to_standard_apartment(p);
                assert_eq!(fixes_vertex(&t, w, p), d <= v, "p={p} v={v} w={w}");
            }
        }
    }
}

#[test]
fn central_fixes_everything() {
    let z = RationalMatrix::diag(int(7), int(7)).unwrap();
    let ctx = TreeContext::new(3, 3).unwrap();
    assert!(ctx.ball().iter().all(|w| fixes_vertex(&z, w, 3)));
    assert_eq!(anchored_fixed_segment_count(&z, 2, &TreeVertex::origin(), &ctx).unwrap(), 12);
}

#[test]
fn anchored_count_near_apartment() {
    let p = 3;
    let ctx = TreeContext::new(p, 4).unwrap();
    let t = RationalMatrix::diag(int(1), int(1 + 9)).unwrap();
    assert_eq!(anchored_fixed_segment_count(&t, 1, &TreeVertex::origin(), &ctx).unwrap(), p + 1);
}

fn ramified_elliptic(p: u64, x: i64, y: i64) -> RationalMatrix {
    RationalMatrix::from_ints(x, y, p as i64 * y, x).unwrap()
}

fn unramified_elliptic(p: u64, x: i64, y: i64) -> RationalMatrix {
    let n = gl2_tempered::arith::smallest_nonresidue(p) as i64;
    RationalMatrix::from_ints(x, y, n * y, x).unwrap()
}

#[test]
fn elliptic_fixed_sets() {
    for p in [3u64, 5, 7] {
        let ctx = TreeContext::new(p, 4).unwrap();
        let u = unramified_elliptic(p, 0, 1);
        assert!(u.is_elliptic(p));
        assert_eq!(fixed_set(&u, &ctx).unwrap(), vec![TreeVertex::origin()]);
        let r = ramified_elliptic(p, 1, 1);
        assert!(r.is_elliptic(p));
        let mut want = vec![TreeVertex::origin(), TreeVertex::on_apartment(1)];
        want.sort();
        assert_eq!(fixed_set(&r, &ctx).unwrap(), want);
        // v(y) = 1: radius-one neighborhood of S_1
        let r1 = ramified_elliptic(p, 1, p as i64);
        assert_eq!(fixed_set(&r1, &ctx).unwrap().len() as u64, 2 + 2 * p);
    }
}

#[test]
fn orbital_integral_examples() {
    let ctx = TreeContext::new(3, 5).unwrap();
    let t = diag_with_valuation(3, 1);
    assert_eq!(orbital_integral_gamma0(&t, 0, &ctx).unwrap(), int(3));
    assert_eq!(orbital_integral_gamma0(&unramified_elliptic(3, 0, 1), 0, &ctx).unwrap(), int(1));
    assert_eq!(orbital_integral_gamma0(&ramified_elliptic(3, 1, 1), 0, &ctx).unwrap(), int(2));
    // oriented segments: both orientations of S_1, vol(Gamma0(3)) = 1/4
    assert_eq!(fixed_segment_count(&ramified_elliptic(3, 1, 1), 1, &ctx).unwrap(), 2);
    assert_eq!(orbital_integral_gamma0(&ramified_elliptic(3, 1, 1), 1, &ctx).unwrap(), rat(1, 2));
    // odd determinant valuation fixes nothing
    assert_eq!(orbital_integral_gamma0(&ramified_elliptic(3, 0, 1), 0, &ctx).unwrap(), int(0));
}

#[test]
fn rejects_bad_inputs() {
    let ctx = TreeContext::new(3, 3).unwrap();
    let z = RationalMatrix::diag(int(2), int(2)).unwrap();
    assert_eq!(orbital_integral_gamma0(&z, 1, &ctx).unwrap_err(), gl2_tempered::Error::Central);
    let n = RationalMatrix::from_ints(1, 1, 0, 1).unwrap();
    assert_eq!(orbital_integral_gamma0(&n, 1, &ctx).unwrap_err(), gl2_tempered::Error::NotSemisimple);
    assert!(RationalMatrix::from_ints(1, 2, 2, 4).is_err());
    let small = TreeContext::new(3, 1).unwrap();
    assert!(matches!(
        orbital_integral_gamma0(&ramified_elliptic(3, 1, 3), 1, &small),
        Err(gl2_tempered::Error::RadiusInsufficient { .. })
    ));
}

#[test]
fn central_constant_term() {
    assert_eq!(constant_term_central(3, 2), rat(1, 3));
    assert_eq!(constant_term_central(3, 3), rat(1, 6));
    assert_eq!(constant_term_central(7, 0), int(1));
    for p in [3u64, 5, 7] {
        for r in 0..=6 {
            assert_eq!(constant_term_central_shell(p, r), constant_term_central(p, r), "p={p} r={r}");
        }
    }
    // the shell exponent floor(j/2) does not reproduce the closed form
    assert_eq!(constant_term_central_shell_as_printed(3, 2), rat(5, 27));
}

/// The shell weights q^{floor((r+j)/2)} are the anchored segment counts in X^n.
#[test]
fn unipotent_anchored_counts() {
    for p in [3u64, 5] {
        for r in 1..=3u32 {
            for j in 0..r {
                let n = RationalMatrix::new(int(1), p_power(p, j as i64), int(0), int(1)).unwrap();
                let ctx = TreeContext::new(p, r + 2).unwrap();
                let count = anchored_fixed_segment_count(&n, r, &TreeVertex::origin(), &ctx).unwrap();
                assert_eq!(count, p.pow((r + j) / 2), "p={p} r={r} j={j}");
            }
        }
    }
}

#[test]
fn diagonal_two_methods() {
    for p in [3u64, 5] {
        for v in 0..=2u32 {
            let t = diag_with_valuation(p, v);
            for r in 0..=2u32 {
                let ct = constant_term_diagonal(&t, r, p).unwrap();
                assert!(ct.within_bound, "p={p} v={v} r={r}: {} > {}", ct.value, ct.bound);
                let ctx = TreeContext::new(p, v + r + 1).unwrap();
                let seg = diagonal_orbital_integral_by_segments(&t, r, &ctx).unwrap();
                let vd = p_power(p, vp(&(&t.a - &t.d), p).finite().unwrap()) * &ct.value;
                assert_eq!(vd, seg, "p={p} v={v} r={r}");
            }
        }
    }
}

#[test]
fn diagonal_r0_is_full_measure() {
    let t = diag_with_valuation(5, 1);
    assert_eq!(constant_term_diagonal(&t, 0, 5).unwrap().value, Rational::from_integer(1.into()));
    let t = diag_with_valuation(3, 0);
    let ct = constant_term_diagonal(&t, 1, 3).unwrap();
    assert_eq!(ct.bound, rat(1, 2));
    assert!(ct.value <= rat(1, 2));
}
