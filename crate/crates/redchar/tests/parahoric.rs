use proptest::prelude::*;
use redchar::chartab::{named, CharTable, Family};
use redchar::classes::So4;
use redchar::cyclo::Cyc;
use redchar::parahoric::{
    character, component_pin, decompose, default_reps, expected_n_invariants, ind_p, ind_p_zeta_self_product,
    mackey_report, n_invariants_report, parahoric_report, zeta_exponent, NamedRep,
};

fn int(v: i64) -> Cyc {
    Cyc::from_int(1, v)
}

#[test]
fn named_reps_parse() {
    assert_eq!(NamedRep::parse("pi_eta2_beta", 5).unwrap(), NamedRep::PiEta2Beta { sign: 1 });
    assert_eq!(NamedRep::parse("pi_eta2_beta-", 5).unwrap(), NamedRep::PiEta2Beta { sign: -1 });
    assert_eq!(NamedRep::parse("ind_borel_eps", 5).unwrap(), NamedRep::IndBorel { tuple: [2, 0, 2, 0] });
    assert_eq!(NamedRep::parse("ind_p_zeta", 7).unwrap(), NamedRep::IndP { alpha: 2, beta: -2, chi: 0 });
    assert_eq!(NamedRep::parse("ind_borel:1, 2, 3, 0", 5).unwrap(), NamedRep::IndBorel { tuple: [1, 2, 3, 0] });
    assert_eq!(NamedRep::parse("ind_p:0,0,2", 5).unwrap(), NamedRep::IndP { alpha: 0, beta: 0, chi: 2 });
    for r in default_reps(7) {
        assert_eq!(NamedRep::parse(&r.name(), 7).unwrap(), r);
    }
}

#[test]
fn named_rep_parse_errors() {
    assert!(NamedRep::parse("ind_p_zeta", 5).is_err());
    assert!(NamedRep::parse("ind_borel:1,2,3", 5).is_err());
    assert!(NamedRep::parse("ind_p:a,0,0", 5).is_err());
    assert!(NamedRep::parse("nonsense", 5).is_err());
    assert!(zeta_exponent(11).is_err());
}

#[test]
fn ind_p_rejects_characters_nontrivial_on_scalars() {
    let g = So4::new(5).unwrap();
    assert!(ind_p(&g, 1, 0, 0).is_err());
    assert!(ind_p(&g, 1, 1, 1).is_ok());
}

#[test]
fn pi_eta2_beta_is_eps_steinberg_plus_omega() {
    for q in [3u32, 5] {
        let g = So4::new(q).unwrap();
        let t = CharTable::new(&g).unwrap();
        for sign in [1i8, -1] {
            let d = decompose(&g, &t, &NamedRep::PiEta2Beta { sign }).unwrap();
            let est = named(&g, Family::SteinbergZeta, None).unwrap().name();
            let w = named(&g, Family::OmegaPrincPm, Some(sign)).unwrap().name();
            let mut got = d.constituents.clone();
            got.sort();
            let mut want = vec![(est, 1), (w, 1)];
            want.sort();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn mackey_sum() {
    for q in [3u32, 5] {
        let g = So4::new(q).unwrap();
        let t = CharTable::new(&g).unwrap();
        let m = mackey_report(&g, &t).unwrap();
        assert!(m.passed);
        let q = q as i64;
        assert_eq!(m.decomposition.degree, int(3 * (q + 1) * (q + 1)));
        assert_eq!(m.eps_steinberg_multiplicity, 1);
        assert_eq!(m.omega_princ_multiplicities, (1, 1));
        assert_eq!(m.omega_princ_total, (2, 2));
        assert!(m.contains_pi_eta2_beta);
    }
}

#[test]
fn default_decompositions_are_characters() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let t = CharTable::new(&g).unwrap();
        for r in default_reps(q) {
            let d = decompose(&g, &t, &r).unwrap();
            assert!(d.nonnegative_integral, "{} at q = {q}: {:?}", d.rep, d.constituents);
            let total: Cyc = d.constituents.iter().fold(int(0), |acc, (n, k)| {
                let irr = t.irrs.iter().position(|i| i.name() == *n).unwrap();
                &acc + &t.chars[irr].degree(&g).scale_int(*k)
            });
            assert_eq!(total, d.degree);
        }
    }
}

#[test]
fn n_invariants_of_named_reps() {
    let g = So4::new(7).unwrap();
    let cases = [("pi_eta2_beta", 3), ("ind_p_zeta", 2), ("ind_borel_zeta", 4), ("ind_borel_eps", 4)];
    for (name, dim) in cases {
        let rep = NamedRep::parse(name, 7).unwrap();
        let r = n_invariants_report(&g, &rep).unwrap();
        assert_eq!(r.dimension, dim, "{name}");
        assert_eq!(r.matches_expected, Some(true), "{name}: {:?} vs {:?}", r.characters, r.expected);
    }
    let e = 3;
    let pi = n_invariants_report(&g, &NamedRep::PiEta2Beta { sign: 1 }).unwrap();
    assert_eq!(pi.characters, vec![((0, e), 1), ((e, 0), 1), ((e, e), 1)]);
}

#[test]
fn ind_p_zeta_is_irreducible_at_7() {
    let g = So4::new(7).unwrap();
    assert_eq!(ind_p_zeta_self_product(&g).unwrap(), int(1));
    let ch = character(&g, &NamedRep::parse("ind_p_zeta", 7).unwrap()).unwrap();
    assert_eq!(ch.degree(&g), int((7 + 1) * 7));
    assert!(ind_p_zeta_self_product(&So4::new(5).unwrap()).is_err());
}

#[test]
fn no_expected_list_for_mackey_sum() {
    assert_eq!(expected_n_invariants(5, &NamedRep::MackeySumBeta), None);
}

#[test]
fn component_pin_is_consistent() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let p = component_pin(&g).unwrap();
        assert!(p.consistent, "q = {q}: {p:?}");
        assert_eq!(p.regular_class, "c2(1)xc2(1,1)");
        assert_eq!(p.traces.0, int(p.expected_traces.0));
        assert_eq!(p.traces.1, int(p.expected_traces.1));
    }
}

#[test]
fn full_report_passes() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let t = CharTable::new(&g).unwrap();
        let r = parahoric_report(&g, &t).unwrap();
        assert!(r.passed(), "q = {q}");
        assert_eq!(r.ind_p_zeta_self_product.is_some(), q == 7);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn borel_inductions_decompose_nonnegatively(a in 0i64..4, b in 0i64..4, c in 0i64..4) {
        let q = 5u32;
        let g = So4::new(q).unwrap();
        let t = CharTable::new(&g).unwrap();
        let d4 = (a + b - c).rem_euclid(4);
        let rep = NamedRep::IndBorel { tuple: [a, b, c, d4] };
        let d = decompose(&g, &t, &rep).unwrap();
        prop_assert!(d.nonnegative_integral);
        prop_assert_eq!(d.degree, int(36));
        let n = n_invariants_report(&g, &rep).unwrap();
        prop_assert_eq!(n.dimension, 4);
        prop_assert_eq!(n.matches_expected, Some(true));
    }
}
