use proptest::prelude::*;
use redchar::chartab::{self, appendix, named, Family, Gl2Irr};
use redchar::classes::So4;
use redchar::classfn::induce_from_borel;
use redchar::cyclo::{gauss_sqrt_qstar, Cyc};
use redchar::dl::{
    central_involution, count_order2, dl_char, face_profiles, g_sgn, gl2_dl, green, split_difference, su_eval,
    verify_identities, FactorChar, TorusChar, TorusType,
};
use redchar::ff::Field;

fn int(v: i64) -> Cyc {
    Cyc::from_int(1, v)
}

#[test]
fn dl_degrees() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let q = q as i64;
        let r1 = dl_char(&g, &TorusChar::trivial(TorusType::Split)).unwrap();
        assert_eq!(r1.degree(g.q()), (q + 1) * (q + 1));
        let r4 = dl_char(&g, &TorusChar::trivial(TorusType::A1xA1Tilde)).unwrap();
        assert_eq!(r4.degree(g.q()), (q - 1) * (q - 1));
        for w in [TorusType::A1, TorusType::A1Tilde] {
            assert_eq!(dl_char(&g, &TorusChar::trivial(w)).unwrap().degree(g.q()), -(q * q - 1));
        }
    }
}

#[test]
fn split_torus_trivial_character_is_borel_induction() {
    for q in [3u32, 5] {
        let g = So4::new(q).unwrap();
        let r1 = dl_char(&g, &TorusChar::trivial(TorusType::Split)).unwrap();
        assert_eq!(r1.class_function(&g), induce_from_borel(&g, [0, 0, 0, 0]).unwrap());
        let names: Vec<String> = r1.display().into_iter().map(|(n, c)| format!("{c}:{n}")).collect();
        assert_eq!(names.len(), 4);
        assert!(r1.terms.values().all(|&c| c == 1));
    }
}

#[test]
fn gl2_dl_on_quadratic_split_character_is_principal_series() {
    for q in [3u32, 5, 7] {
        let f = Field::new(q).unwrap();
        let e = ((q - 1) / 2) as i64;
        assert_eq!(gl2_dl(&f, &FactorChar::Split { a: 0, b: e }), vec![(1, Gl2Irr::ps(&f, 0, e))]);
        let st = gl2_dl(&f, &FactorChar::Nonsplit { t: 0 });
        assert_eq!(st, vec![(1, Gl2Irr::OneDim { a: 0 }), (-1, Gl2Irr::St { a: 0 })]);
    }
}

#[test]
fn gl2_steinberg_is_half_difference() {
    for q in [3u32, 5, 7] {
        let f = Field::new(q).unwrap();
        let r1 = gl2_dl(&f, &FactorChar::Split { a: 0, b: 0 });
        let rw = gl2_dl(&f, &FactorChar::Nonsplit { t: 0 });
        for m in redchar::groups::gl2_elements(q) {
            let v = |terms: &[(i64, Gl2Irr)]| {
                terms.iter().fold(int(0), |acc, (c, p)| &acc + &chartab::gl2_value(&f, p, &m).scale_int(*c))
            };
            let half = (&v(&r1) - &v(&rw)).scale(&redchar::Rat::new(1.into(), 2.into()));
            assert_eq!(half, chartab::gl2_value(&f, &Gl2Irr::St { a: 0 }, &m));
        }
    }
}

#[test]
fn g_sgn_from_table_difference() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let gs = g_sgn(&g);
        assert_eq!(gs.value_at("c1(1)xc1(1)"), Some(&int(0)));
        // (ω_princ^+ − ω_princ^−)/q* at c2(1)×c2(1,1), read off the printed table
        let plus = named(&g, Family::OmegaPrincPm, Some(1)).unwrap();
        let minus = named(&g, Family::OmegaPrincPm, Some(-1)).unwrap();
        let c = g.find_label("c2(1)xc2(1,1)").unwrap();
        let diff = &appendix::appendix_value(&g, &plus, c).unwrap() - &appendix::appendix_value(&g, &minus, c).unwrap();
        let qstar = &gauss_sqrt_qstar(q) * &gauss_sqrt_qstar(q);
        assert_eq!(&diff * &qstar.to_rat().map(|r| Cyc::from_rat(1, &r.recip())).unwrap(), int(1));
        assert_eq!(gs.value_at("c2(1)xc2(1,1)"), Some(&int(1)));
        assert_eq!(split_difference(&g, Family::OmegaCuspPm), gs);
        assert_eq!(gs.labels.len(), g.unipotent_classes().len());
    }
}

#[test]
fn g_sgn_vanishes_off_the_c2_c2_locus() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let gs = g_sgn(&g);
        for (l, v) in gs.labels.iter().zip(&gs.values) {
            if !l.starts_with("c2(1)xc2(") {
                assert!(v.is_zero(), "{l} at q = {q}");
            }
        }
    }
}

#[test]
fn identities_hold() {
    for q in [3u32, 5, 7, 11] {
        let g = So4::new(q).unwrap();
        let r = verify_identities(&g);
        for c in &r.checks {
            assert!(c.holds, "{} at q = {q}: {:?}", c.name, c.witnesses);
        }
        assert!(r.passed());
    }
}

#[test]
fn trivial_face_is_constant_three() {
    for q in [3u32, 5, 7] {
        let f = Field::new(q).unwrap();
        let c = face_profiles(&f);
        assert!(c.holds, "{:?}", c.witnesses);
    }
}

#[test]
fn greens_have_unipotent_domain() {
    let g = So4::new(5).unwrap();
    for w in TorusType::ALL {
        let p = green(&g, w);
        assert_eq!(p.classes, g.unipotent_classes());
    }
    let one = green(&g, TorusType::Split);
    assert_eq!(one.value_at("c1(1)xc1(1)"), Some(&int(36)));
}

#[test]
fn torus_involution_counts() {
    for q in [3u32, 5, 7] {
        let f = Field::new(q).unwrap();
        let counts: Vec<usize> = TorusType::ALL.iter().map(|w| count_order2(&f, *w)).collect();
        assert_eq!(counts, vec![3, 1, 1, 3], "q = {q}");
    }
}

#[test]
fn central_involution_values_of_omega_cusp() {
    for q in [3u32, 5, 7] {
        let g = So4::new(q).unwrap();
        let f = &g.field;
        let s = central_involution(q);
        let id = g.identity_class();
        let c = g.find_label("c1(1)xc1(-1)").unwrap();
        let e_m1 = f.eps(f.neg(1)) as i64;
        let base = ((q as i64 - 1) * (q as i64 - 1)) / 2;
        for sign in [1i8, -1] {
            let w = named(&g, Family::OmegaCuspPm, Some(sign)).unwrap();
            let ch = chartab::character(&g, &w);
            let v = su_eval(&g, &ch, &s, id).unwrap();
            assert_eq!(v, chartab::eval(&g, &w, c));
            assert_eq!(appendix::appendix_value(&g, &w, c), Some(int(-base * e_m1)));
            assert_eq!(v, int(-base * e_m1));
        }
    }
}

#[test]
fn su_eval_rejects_bad_inputs() {
    let g = So4::new(5).unwrap();
    let ch = chartab::character(&g, &named(&g, Family::Triv, None).unwrap());
    let s = central_involution(5);
    let non_unip = g.find_label("c1(1)xc1(-1)").unwrap();
    assert!(su_eval(&g, &ch, &s, non_unip).is_err());
    let id = redchar::groups::So4Elem::identity(5);
    assert!(su_eval(&g, &ch, &id, g.identity_class()).is_err());
}

fn factor_char(q: i64, split: bool, x: i64, y: i64) -> FactorChar {
    if split {
        FactorChar::Split { a: x.rem_euclid(q - 1), b: y.rem_euclid(q - 1) }
    } else {
        FactorChar::Nonsplit { t: x.rem_euclid(q * q - 1) }
    }
}

fn central(q: i64, c: &FactorChar) -> i64 {
    match *c {
        FactorChar::Split { a, b } => (a + b).rem_euclid(q - 1),
        FactorChar::Nonsplit { t } => t.rem_euclid(q - 1),
    }
}

fn balanced(q: i64, s2: bool, first: FactorChar, x: i64, k: i64) -> FactorChar {
    let need = (-central(q, &first)).rem_euclid(q - 1);
    if s2 {
        FactorChar::Split { a: x.rem_euclid(q - 1), b: (need - x).rem_euclid(q - 1) }
    } else {
        FactorChar::Nonsplit { t: (k.rem_euclid(q + 1) * (q - 1) + need).rem_euclid(q * q - 1) }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dl_char_is_weyl_invariant(q in prop::sample::select(vec![3i64, 5, 7]), s1: bool, s2: bool,
                                 x in 0i64..48, y in 0i64..48, z in 0i64..48, k in 0i64..8) {
        let g = So4::new(q as u32).unwrap();
        let f = &g.field;
        let first = factor_char(q, s1, x, y);
        let second = balanced(q, s2, first, z, k);
        let theta = TorusChar { first, second };
        let base = dl_char(&g, &theta).unwrap();
        for (a, b) in [(true, false), (false, true), (true, true)] {
            let tw = TorusChar {
                first: if a { first.weyl(f) } else { first },
                second: if b { second.weyl(f) } else { second },
            };
            prop_assert_eq!(&dl_char(&g, &tw).unwrap(), &base);
        }
    }

    #[test]
    fn dl_degree_depends_only_on_torus_type(q in prop::sample::select(vec![3i64, 5, 7]), s1: bool, s2: bool,
                                            x in 0i64..48, y in 0i64..48, z in 0i64..48, k in 0i64..8) {
        let g = So4::new(q as u32).unwrap();
        let first = factor_char(q, s1, x, y);
        let second = balanced(q, s2, first, z, k);
        let theta = TorusChar { first, second };
        let d = dl_char(&g, &theta).unwrap().degree(q as u32);
        let expect = dl_char(&g, &TorusChar::trivial(theta.torus_type())).unwrap().degree(q as u32);
        prop_assert_eq!(d, expect);
    }
}

#[test]
fn dl_char_rejects_characters_nontrivial_on_scalars() {
    let g = So4::new(5).unwrap();
    let theta = TorusChar { first: FactorChar::Split { a: 1, b: 0 }, second: FactorChar::Split { a: 0, b: 0 } };
    assert!(dl_char(&g, &theta).is_err());
}
