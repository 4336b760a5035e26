use proptest::prelude::*;
use redchar::cyclo::Cyc;
use redchar::sl3::{
    canonical, check_q, cube_class, degree, eval_reg, induced_value, label_of_inverse, label_report, label_twist,
    pgl3_fusion, reg_unip_label, sl3_order, sl3_orbit, triple_scan, Mat3, PacketChar, PacketFamily,
};

fn int(v: i64) -> Cyc {
    Cyc::from_int(1, v)
}

#[test]
fn only_primes_one_mod_three() {
    assert!(check_q(7).is_ok());
    assert!(check_q(13).is_ok());
    assert!(check_q(5).is_err());
    assert!(check_q(11).is_err());
    assert!(check_q(9).is_err());
}

#[test]
fn superdiagonal_labels_at_7() {
    let f = check_q(7).unwrap();
    let label = |a, b| reg_unip_label(&f, &Mat3::unitriangular(7, a, b, 0)).unwrap();
    assert_eq!(label(1, 1), 0);
    assert_eq!(label(3, 1), 1);
    assert_eq!(label(1, 3), 2);
    for l in 0..3u8 {
        assert_eq!(reg_unip_label(&f, &canonical(&f, l)).unwrap(), l);
    }
}

#[test]
fn non_regular_elements_are_rejected() {
    let f = check_q(7).unwrap();
    assert!(reg_unip_label(&f, &Mat3::identity(7)).is_err());
    assert!(reg_unip_label(&f, &Mat3::unitriangular(7, 1, 0, 0)).is_err());
    assert!(reg_unip_label(&f, &Mat3::diag(7, 2, 4, 1)).is_err());
}

#[test]
fn inversion_fixes_labels() {
    for q in [7u32, 13] {
        let f = check_q(q).unwrap();
        assert_eq!([0u8, 1, 2].map(|l| label_of_inverse(&f, l)), [0, 1, 2]);
    }
}

#[test]
fn regular_values_and_degrees() {
    let q = 7;
    for family in [PacketFamily::StPrime, PacketFamily::R2SPrime] {
        for j in 0..3u8 {
            let chi = PacketChar { family, j };
            for l in 0..3u8 {
                assert_eq!(eval_reg(q, &chi, l), int(if j == l { 5 } else { -2 }));
            }
        }
    }
    assert_eq!(degree(7, PacketFamily::StPrime).unwrap(), 152);
    assert_eq!(degree(7, PacketFamily::R2SPrime).unwrap(), 96);
    assert!(degree(3, PacketFamily::StPrime).is_err());
}

#[test]
fn component_sum_matches_induced_character() {
    let f = check_q(7).unwrap();
    let r = label_report(&f).unwrap();
    assert!(r.passed);
    assert_eq!(r.component_sums, [int(1), int(1), int(1)]);
    assert_eq!(r.induced_at_regular, r.component_sums);
    assert_eq!(r.induced_degree, int(3 * 152));
    assert_eq!(r.flags, 57 * 8);
}

#[test]
fn induced_character_on_regular_unipotents_is_one() {
    let f = check_q(7).unwrap();
    for (a, b) in [(1, 1), (3, 1), (1, 3), (2, 5)] {
        let (v, flags) = induced_value(&f, &Mat3::unitriangular(7, a, b, 4));
        assert_eq!(v, int(1));
        assert_eq!(flags, 57 * 8);
    }
}

#[test]
fn triple_scan_at_7() {
    let f = check_q(7).unwrap();
    let s = triple_scan(&f).unwrap();
    assert!(s.passed);
    assert_eq!(s.triples.len(), 27);
    assert_eq!(s.passing, 6);
    let zero = s.triples.iter().find(|t| t.j == [0, 0, 0]).unwrap();
    assert_eq!(zero.values, [int(3 * 7 - 6), int(-6), int(-6)]);
    assert!(!zero.constant);
    for t in s.triples.iter().filter(|t| t.constant) {
        let mut e = t.j;
        e.sort_unstable();
        assert_eq!(e, [0, 1, 2]);
        assert_eq!(t.values, [int(1), int(1), int(1)]);
    }
}

#[test]
fn fusion_at_7() {
    let f = check_q(7).unwrap();
    let r = pgl3_fusion(&f).unwrap();
    assert!(r.passed());
    assert!(r.sl3_distinct && r.gl3_fused);
    assert_eq!(r.orbit_size, 38304);
    assert_eq!(r.expected_orbit_size, sl3_order(7) / (3 * 49));
    assert_eq!(r.labels_in_orbit, vec![0]);
    assert_eq!(r.examples, vec![((1, 1), 0), ((3, 1), 1), ((1, 3), 2)]);
}

#[test]
fn orbit_oracle_separates_the_superdiagonal_examples() {
    let f = check_q(7).unwrap();
    let u31 = Mat3::unitriangular(7, 3, 1, 0);
    let orbit = sl3_orbit(&f, &u31);
    assert!(!orbit.contains(&Mat3::unitriangular(7, 1, 3, 0)));
    assert!(!orbit.contains(&Mat3::unitriangular(7, 1, 1, 0)));
    assert!(orbit.contains(&Mat3::unitriangular(7, 4, 1, 0)));
}

#[test]
fn twists_by_the_generator_cycle_labels() {
    let f = check_q(7).unwrap();
    let g = f.generator();
    for l in 0..3u8 {
        assert_eq!(label_twist(&f, l, g).unwrap(), (l + 1) % 3);
    }
    assert!(label_twist(&f, 0, 0).is_err());
}

#[test]
fn sl3_order_values() {
    assert_eq!(sl3_order(7), 343 * 48 * 342);
    assert_eq!(sl3_order(7) % (3 * 49), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twist_depends_only_on_cube_class(q in prop::sample::select(vec![7u32, 13]), l in 0u8..3, c in 1u32..13, d in 1u32..13) {
        let f = check_q(q).unwrap();
        let (c, d) = (c % q, d % q);
        prop_assume!(c != 0 && d != 0);
        let lc = label_twist(&f, l, c).unwrap();
        prop_assert_eq!(lc, ((l as u32 + cube_class(&f, c) as u32) % 3) as u8);
        if cube_class(&f, c) == cube_class(&f, d) {
            prop_assert_eq!(lc, label_twist(&f, l, d).unwrap());
        }
    }

    #[test]
    fn label_is_conjugation_invariant(a in 1u32..7, b in 1u32..7, c in 0u32..7, x in 0u32..7, y in 0u32..7, z in 0u32..7) {
        let f = check_q(7).unwrap();
        let u = Mat3::unitriangular(7, a, b, c);
        let h = Mat3::unitriangular(7, x, y, z).mul(&Mat3::new(7, [0, 1, 0, 0, 0, 1, 1, 0, 0]));
        let hi = h.inv(&f).unwrap();
        prop_assert_eq!(h.det(), 1);
        prop_assert_eq!(reg_unip_label(&f, &u.conj_by(&h, &hi)).unwrap(), reg_unip_label(&f, &u).unwrap());
    }
}
