use gl2_tempered::padic::{int, rat, Extension, FiniteCharacter, RamifiedClass, RootOfUnity, UnitGroup};
use gl2_tempered::spectrum::*;

fn masses_by_type(slices: &[OrbitSlice]) -> Vec<(String, u32, String)> {
    let mut v: Vec<_> = slices
        .iter()
        .map(|s| (s.orbit.type_tag().to_string(), s.conductor(), s.total_mass().to_string()))
        .collect();
    v.sort();
    v
}

#[test]
fn conductor_zero_and_one_at_three() {
    let chi = CentralCharacter::trivial(3);
    let s0 = enumerate_slices(3, &chi, 0).unwrap();
    assert_eq!(s0.len(), 1);
    assert_eq!(s0[0].orbit.type_tag(), "type1");
    assert_eq!(s0[0].shape, SliceShape::Circle { total_mass: int(1) });

    let s1 = enumerate_slices(3, &chi, 1).unwrap();
    assert_eq!(s1.len(), 2);
    let st = s1.iter().find(|s| s.orbit.type_tag() == "steinberg").unwrap();
    assert_eq!(st.shape, SliceShape::DiscretePoints { count: 2, mass_per_point: int(1) });
    assert_eq!(st.total_mass(), int(2));
}

#[test]
fn type2_pairs_at_five() {
    let chi = CentralCharacter::trivial(5);
    let slices = enumerate_slices(5, &chi, 2).unwrap();
    let t2: Vec<_> = slices.iter().filter(|s| s.orbit.type_tag() == "type2").collect();
    assert_eq!(t2.len(), 1);
    assert_eq!(t2[0].total_mass(), int(6));
}

#[test]
fn unramified_supercuspidal_at_three() {
    let chi = CentralCharacter::trivial(3);
    let slices = enumerate_slices(3, &chi, 2).unwrap();
    let sc: Vec<_> = slices.iter().filter(|s| s.orbit.type_tag() == "supercuspidal-unramified").collect();
    assert_eq!(sc.len(), 1);
    assert_eq!(sc[0].shape, SliceShape::DiscretePoints { count: 1, mass_per_point: int(2) });
}

#[test]
fn steinberg_of_unramified_square_at_five() {
    let g = UnitGroup::base(5, 1);
    let o = TemperedOrbit::steinberg(FiniteCharacter::trivial(g)).unwrap();
    let chi = central_character(5, 1, 0, RootOfUnity::new(1, 3)).unwrap();
    let s = slice_mass(&o, &chi).unwrap();
    assert_eq!(s.shape, SliceShape::DiscretePoints { count: 2, mass_per_point: int(2) });
}

#[test]
fn mismatched_central_character_is_an_empty_slice() {
    let g = UnitGroup::base(5, 1);
    let o = TemperedOrbit::type1(FiniteCharacter::trivial(g)).unwrap();
    let chi = central_character(5, 1, 1, RootOfUnity::one()).unwrap();
    assert_eq!(slice_mass(&o, &chi).unwrap_err(), gl2_tempered::Error::EmptySlice);
}

#[test]
fn conductor_examples() {
    let g = UnitGroup::base(7, 2);
    let chars = FiniteCharacter::all(&g);
    let c1 = chars.iter().find(|c| c.conductor().unwrap() == 1).unwrap().clone();
    let triv = FiniteCharacter::trivial(g.clone());
    assert_eq!(TemperedOrbit::type2(c1, triv.clone()).unwrap().conductor(), 1);
    assert_eq!(TemperedOrbit::steinberg(triv).unwrap().conductor(), 1);
    let u = UnitGroup::unramified(7, 1);
    let eta = FiniteCharacter::all(&u).into_iter().find(|e| *e != e.galois_conjugate().unwrap()).unwrap();
    let base = UnitGroup::base(7, 1);
    assert_eq!(TemperedOrbit::supercuspidal(eta, &base).unwrap().conductor(), 2);
}

#[test]
fn alpha_examples() {
    for p in [3u64, 5, 7] {
        let u = UnitGroup::unramified(p, 1);
        for eta in FiniteCharacter::all(&u) {
            if eta == eta.galois_conjugate().unwrap() {
                continue;
            }
            assert_eq!(supercuspidal_alpha(&eta).unwrap(), 1);
        }
        for class in [RamifiedClass::SqrtP, RamifiedClass::SqrtNP] {
            // conductor-one characters of a ramified extension are Galois-invariant
            let r1 = UnitGroup::ramified(p, class, 1);
            assert!(FiniteCharacter::all(&r1).iter().all(|e| *e == e.galois_conjugate().unwrap()));
            let r3 = UnitGroup::ramified(p, class, 3);
            for eta in FiniteCharacter::all(&r3) {
                if eta == eta.galois_conjugate().unwrap() {
                    continue;
                }
                let c = eta.conductor().unwrap();
                let alpha = supercuspidal_alpha(&eta).unwrap();
                assert_eq!(alpha % 2, 0, "ramified alpha is even");
                assert!(alpha <= c && alpha >= 2);
            }
        }
    }
}

#[test]
fn mass_identity_examples() {
    let m = mass_identity_check(3, 1, &CentralCharacter::trivial(3)).unwrap();
    assert_eq!((m.lhs.clone(), m.rhs.clone(), m.equal), (int(4), int(4), true));
    let m = mass_identity_check(3, 2, &CentralCharacter::trivial(3)).unwrap();
    assert_eq!((m.lhs, m.rhs), (int(12), int(12)));
    for p in [3u64, 5, 7, 11] {
        let m = mass_identity_check(p, 0, &CentralCharacter::trivial(p)).unwrap();
        assert!(m.equal && m.lhs == int(1));
    }
}

#[test]
fn mass_identity_all_central_characters_small_primes() {
    for p in [3u64, 5, 7] {
        let spectrum = LocalSpectrum::new(p, 4).unwrap();
        for chi in spectrum.central_characters() {
            let slices = spectrum.slices(&chi).unwrap();
            for r in chi.conductor().unwrap()..=4 {
                let below: Vec<_> = slices.iter().filter(|s| s.conductor() <= r).cloned().collect();
                let m = mass_identity_from_slices(p, r, &below);
                assert!(m.equal, "p={p} r={r} chi={chi}: {} != {}  {:?}", m.lhs, m.rhs, masses_by_type(&below));
            }
        }
    }
}

#[test]
fn conductor_two_supercuspidal_mass() {
    for p in [3u64, 5, 7, 11] {
        let q = p as i64;
        let slices = enumerate_slices(p, &CentralCharacter::trivial(p), 2).unwrap();
        let sc = slices
            .iter()
            .filter(|s| s.conductor() == 2 && s.orbit.type_tag().starts_with("supercuspidal"))
            .fold(int(0), |acc, s| acc + s.total_mass());
        assert_eq!(sc, rat((q - 1) * (q - 1), 2));
    }
}

#[test]
fn slices_are_well_formed() {
    for p in [3u64, 5] {
        let spectrum = LocalSpectrum::new(p, 4).unwrap();
        for chi in spectrum.central_characters() {
            for s in spectrum.slices(&chi).unwrap() {
                assert!(s.total_mass() > int(0));
                match &s.shape {
                    SliceShape::DiscretePoints { count, .. } => {
                        assert!(s.orbit.is_discrete_series());
                        if s.orbit.type_tag() == "steinberg" {
                            assert_eq!(*count, 2);
                        }
                    }
                    SliceShape::Circle { .. } => assert!(!s.orbit.is_discrete_series()),
                }
            }
        }
    }
}

/// Conductor recomputed by evaluating on every element of each filtration step.
fn brute_conductor(chi: &FiniteCharacter) -> u32 {
    let g = chi.group();
    (0..=g.level())
        .find(|&c| g.elements().iter().filter(|&&x| g.ring().in_filtration(x, c)).all(|&x| chi.eval(x).unwrap().is_one()))
        .unwrap()
}

#[test]
fn orbit_conductors_match_raw_characters() {
    for p in [3u64, 5] {
        let spectrum = LocalSpectrum::new(p, 4).unwrap();
        for o in spectrum.orbits() {
            let expected = match o.kind() {
                OrbitKind::Type1(c) => 2 * brute_conductor(c),
                OrbitKind::Type2(a, b) => brute_conductor(a) + brute_conductor(b),
                OrbitKind::Steinberg(c) => match brute_conductor(c) {
                    0 => 1,
                    k => 2 * k,
                },
                OrbitKind::Supercuspidal { extension, eta, .. } => {
                    let c = brute_conductor(eta);
                    if *extension == Extension::Unramified { 2 * c } else { c + 1 }
                }
            };
            assert_eq!(o.conductor(), expected, "{o}");
        }
    }
}

#[test]
fn enumeration_is_duplicate_free() {
    use std::collections::HashSet;
    let spectrum = LocalSpectrum::new(5, 4).unwrap();
    let keys: HashSet<String> = spectrum.orbits().iter().map(|o| format!("{} {}", o.type_tag(), o.parameters())).collect();
    assert_eq!(keys.len(), spectrum.orbits().len());
}

#[test]
fn conductor_cap() {
    assert_eq!(LocalSpectrum::new(3, 5).unwrap_err(), gl2_tempered::Error::ConductorCap(5));
}
