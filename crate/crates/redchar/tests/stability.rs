use proptest::prelude::*;
use redchar::classes::So4;
use redchar::dl::{g_sgn, green, TorusType, UnipotentProfile};
use redchar::stability::{
    fuse, fuse_with, is_stable, locus_classes, packet_scan_2x2, stability_report, unstable_irreducibles,
    GeneratorSet, Locus,
};

fn gamma_partner(g: &So4) -> String {
    format!("c2(1)xc2(1,{})", g.field.signed(g.field.nonsquare()))
}

#[test]
fn fusion_examples() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let p = fuse(&g, Locus::Unipotent);
        assert!(p.fused("c2(1)xc2(1,1)", &gamma_partner(&g)));
        assert!(!p.fused("c1(1)xc2(1)", "c2(1)xc1(1)"));
        let id = p.orbit_of(g.identity_class()).unwrap();
        assert_eq!(p.orbit_labels(id), vec!["c1(1)xc1(1)".to_string()]);
    }
}

#[test]
fn orbits_partition_the_locus() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        for l in [Locus::Unipotent, Locus::STimesUnipotent] {
            let p = fuse(&g, l);
            assert_eq!(p.classes, locus_classes(&g, l));
            let mut seen: Vec<usize> = p.orbits.iter().flatten().copied().collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..p.classes.len()).collect::<Vec<_>>());
            assert!(p.orbits.windows(2).all(|w| w[0][0] < w[1][0]));
        }
    }
}

#[test]
fn fusion_does_not_depend_on_generators() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        for l in [Locus::Unipotent, Locus::STimesUnipotent] {
            assert_eq!(fuse_with(&g, l, GeneratorSet::Standard), fuse_with(&g, l, GeneratorSet::Alternate));
        }
    }
}

#[test]
fn locus_names_round_trip() {
    for l in [Locus::Unipotent, Locus::STimesUnipotent] {
        assert_eq!(Locus::parse(l.as_str()), Some(l));
    }
    assert_eq!(Locus::parse("semisimple"), None);
}

#[test]
fn zero_profile_is_stable() {
    let g = So4::new(5).unwrap();
    let p = fuse(&g, Locus::Unipotent);
    let mut zero = g_sgn(&g);
    for v in zero.values.iter_mut() {
        *v = redchar::cyclo::Cyc::zero(1);
    }
    assert!(is_stable(&zero, &p).stable);
}

#[test]
fn g_sgn_is_unstable_on_the_gamma_pair() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let p = fuse(&g, Locus::Unipotent);
        let s = is_stable(&g_sgn(&g), &p);
        assert!(!s.stable);
        let w = s.witness.unwrap();
        assert!(w.orbit.contains(&"c2(1)xc2(1,1)".to_string()));
        assert!(w.orbit.contains(&gamma_partner(&g)));
        assert_ne!(w.first.1, w.second.1);
    }
}

#[test]
fn greens_are_stable() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let p = fuse(&g, Locus::Unipotent);
        for w in TorusType::ALL {
            let s = is_stable(&green(&g, w), &p);
            assert!(s.stable, "{w:?} at q = {q}");
            assert!(s.witness.is_none());
        }
    }
}

fn stable_pairs(g: &So4, l: Locus) -> Vec<(i8, i8)> {
    let scan = packet_scan_2x2(g, l).unwrap();
    assert!(scan.passed, "{l:?} at q = {}", g.q());
    assert_eq!(scan.stable_count, 2);
    assert_eq!(scan.candidates.len(), 4);
    scan.candidates.iter().filter(|c| c.stable).map(|c| (c.s_princ, c.s_cusp)).collect()
}

#[test]
fn packet_scan_on_unipotent_locus() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        assert_eq!(stable_pairs(&g, Locus::Unipotent), vec![(1, -1), (-1, 1)]);
        let scan = packet_scan_2x2(&g, Locus::Unipotent).unwrap();
        let qs = if q % 4 == 1 { q as i64 } else { -(q as i64) };
        for c in &scan.candidates {
            assert_eq!(c.matches_green_expansion, Some(true));
            assert_eq!(c.stable, c.g_sgn_coefficient == 0);
            assert_eq!(c.g_sgn_coefficient, (c.s_princ as i64 + c.s_cusp as i64) / 2 * qs);
        }
    }
}

#[test]
fn packet_scan_on_su_locus() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        assert_eq!(stable_pairs(&g, Locus::STimesUnipotent), vec![(1, 1), (-1, -1)]);
        let scan = packet_scan_2x2(&g, Locus::STimesUnipotent).unwrap();
        assert!(scan.candidates.iter().all(|c| c.matches_green_expansion.is_none()));
    }
}

#[test]
fn unstable_irreducibles_are_the_split_families() {
    for q in [3u32, 5] {
        let g = So4::new(q).unwrap();
        let names: Vec<String> =
            unstable_irreducibles(&g, Locus::Unipotent).unwrap().iter().map(|i| i.name()).collect();
        assert!(!names.is_empty());
        assert!(names.iter().all(|n| n.contains('+') || n.contains('-')), "{names:?}");
    }
}

#[test]
fn report_passes() {
    for q in [3u32, 5] {
        let g = So4::new(q).unwrap();
        let r = stability_report(&g).unwrap();
        assert!(r.passed());
        assert!(r.g_sgn_witness_is_gamma_pair);
        assert_eq!(r.greens_stable.len(), 4);
    }
}

fn combine(profiles: &[UnipotentProfile], coeffs: &[i64]) -> UnipotentProfile {
    let mut out = profiles[0].clone();
    for (i, v) in out.values.iter_mut().enumerate() {
        *v = profiles.iter().zip(coeffs).fold(redchar::cyclo::Cyc::zero(1), |acc, (p, &c)| {
            &acc + &p.values[i].scale_int(c)
        });
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn green_combinations_are_stable_and_g_sgn_breaks_them(
        q in prop::sample::select(vec![3u32, 5, 7]),
        a in -4i64..5, b in -4i64..5, c in -4i64..5, d in -4i64..5, k in -3i64..4,
    ) {
        let g = So4::new(q).unwrap();
        let p = fuse(&g, Locus::Unipotent);
        let mut profiles: Vec<UnipotentProfile> = TorusType::ALL.iter().map(|w| green(&g, *w)).collect();
        profiles.push(g_sgn(&g));
        let stable = combine(&profiles, &[a, b, c, d, 0]);
        prop_assert!(is_stable(&stable, &p).stable);
        let mixed = combine(&profiles, &[a, b, c, d, k]);
        prop_assert_eq!(is_stable(&mixed, &p).stable, k == 0);
    }
}
