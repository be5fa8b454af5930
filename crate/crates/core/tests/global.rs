use gl2_tempered::global::*;
use gl2_tempered::padic::{int, rat, RootOfUnity};

#[test]
fn indices_and_traces() {
    assert_eq!(gamma0_index(3, 1), 4);
    assert_eq!(gamma0_index(3, 2), 12);
    assert_eq!(gamma0_index(101, 0), 1);
    assert_eq!(oldvector_trace(0, 2), 3);
    assert_eq!(oldvector_trace(2, 2), 1);
    assert_eq!(oldvector_trace(3, 2), 0);
}

/// Gamma0(p^r) cosets in GL2(Z/p^r) counted directly.
#[test]
fn index_by_coset_count() {
    for (p, r) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let m = p.pow(r);
        let mut gl2 = 0u64;
        let mut gamma0 = 0u64;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        if (a * d + m * m - b * c % m) % p != 0 {
                            gl2 += 1;
                            if c == 0 {
                                gamma0 += 1;
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(gl2 / gamma0, gamma0_index(p, r));
    }
}

#[test]
fn newform_sieve() {
    assert_eq!(newform_trace(2, 2, 0).unwrap(), 1);
    assert_eq!(newform_trace(0, 2, 0).unwrap(), 0);
    assert_eq!(newform_trace(3, 2, 0).unwrap(), 0);
    for c in 0..=6 {
        for r in 0..=4 {
            for f in 0..=c.min(r) {
                assert_eq!(newform_trace(c, r, f).unwrap(), (c == r) as i64, "c={c} r={r} f={f}");
            }
        }
    }
    assert!(newform_trace(0, 1, 2).is_err());
}

#[test]
fn main_terms() {
    assert_eq!(dim_main_term(&LevelData::new(11, 2).unwrap()), int(1));
    assert_eq!(dim_main_term(&LevelData::new(1, 12).unwrap()), rat(11, 12));
    assert_eq!(dim_main_term(&LevelData::new(2, 4).unwrap()), rat(3, 4));
    assert!(LevelData::new(5, 3).is_err());
    // a real quadratic field with zeta_F(-1) = 1/30 (Q(sqrt 5))
    assert_eq!(main_term_general(2, &rat(1, 30), &int(1), 1), rat(1, 60));
}

#[test]
fn oracle_values() {
    let dim = |n, k| classical_dim_oracle(&LevelData::new(n, k).unwrap()).unwrap();
    assert_eq!(dim(11, 2), 1);
    assert_eq!(dim(1, 12), 1);
    assert_eq!(dim(1, 2), 0);
    // known values
    assert_eq!(dim(1, 24), 2);
    assert_eq!(dim(23, 2), 2);
    assert_eq!(dim(37, 2), 2);
    assert_eq!(dim(2, 8), 1);
    assert_eq!(dim(4, 6), 1);
    assert_eq!(dim(11, 4), 2);
    assert_eq!(dim(9, 4), 1);
    assert_eq!(dim(64, 2), 3);
}

#[test]
fn newform_decompositions() {
    let d = atkin_lehner_consistency(11, 2).unwrap();
    assert_eq!(d.new_dims, vec![(1, 0), (11, 1)]);
    assert!(d.consistent);
    assert!(atkin_lehner_consistency(1, 12).unwrap().consistent);
    assert!(atkin_lehner_consistency(22, 2).unwrap().consistent);
    for n in 1..=120 {
        for k in [2, 4, 6, 12] {
            assert!(atkin_lehner_consistency(n, k).unwrap().consistent, "N={n} k={k}");
        }
    }
}

#[test]
fn fejer_identities() {
    assert!(fejer_hat(5, FejerMode::RamifiedTwist).unwrap().is_zero());
    assert_eq!(fejer_hat(5, FejerMode::Unramified(RootOfUnity::one())).unwrap().as_rational(), Some(int(1)));
    assert!(fejer_hat(4, FejerMode::Unramified(RootOfUnity::new(1, 4))).unwrap().is_zero());
    for m in 2..=12u64 {
        for k in 1..m {
            let z = RootOfUnity::new(k as i64, m);
            assert!(fejer_hat(m, FejerMode::Unramified(z)).unwrap().is_zero(), "M={m} k={k}");
        }
    }
    let z = RootOfUnity::new(1, 3);
    let small = fejer_hat(8, FejerMode::Unramified(z)).unwrap().magnitude();
    let large = fejer_hat(64, FejerMode::Unramified(z)).unwrap().magnitude();
    assert!(large + 1e-12 < small);
    assert_eq!(fejer_hat(64, FejerMode::Unramified(z)).unwrap().as_rational(), Some(rat(1, 4096)));
    // an irrational value stays exact
    let z5 = RootOfUnity::new(1, 5);
    let v = fejer_hat(3, FejerMode::Unramified(z5)).unwrap();
    assert!(v.as_rational().is_none());
    assert!(v.magnitude() <= 1.0);
}
