use std::collections::HashSet;

use proptest::prelude::*;
use redchar::chartab::{self, named, CharTable, Family};
use redchar::classes::So4;
use redchar::classfn::{borel_character, induce_from_borel, inner_product, invariants_dim, ClassFunction};
use redchar::cyclo::Cyc;
use redchar::groups::{enumerate, So4Elem, SubgroupId};
use redchar::Rat;

fn int(v: i64) -> Cyc {
    Cyc::from_int(1, v)
}

fn ch(g: &So4, fam: Family, sign: Option<i8>) -> ClassFunction {
    chartab::character(g, &named(g, fam, sign).unwrap())
}

#[test]
fn inner_product_examples() {
    let g = So4::new(3).unwrap();
    let one = ClassFunction::constant(&g, 1);
    assert_eq!(inner_product(&g, &one, &one).unwrap(), int(1));
    let st = ch(&g, Family::Steinberg, None);
    assert_eq!(inner_product(&g, &st, &one).unwrap(), int(0));
    let ind = induce_from_borel(&g, [0, 0, 0, 0]).unwrap();
    assert_eq!(inner_product(&g, &ind, &ind).unwrap(), int(4));
}

#[test]
fn borel_induction_of_trivial_decomposes() {
    for q in [3u32, 5] {
        let g = So4::new(q).unwrap();
        let ind = induce_from_borel(&g, [0, 0, 0, 0]).unwrap();
        let sum = &(&ch(&g, Family::Triv, None) + &ch(&g, Family::OneBoxSt, None))
            + &(&ch(&g, Family::StBoxOne, None) + &ch(&g, Family::Steinberg, None));
        assert_eq!(ind, sum);
    }
}

#[test]
fn borel_induction_degree() {
    for q in [3u32, 5] {
        let g = So4::new(q).unwrap();
        let e = ((q - 1) / 2) as i64;
        let ind = induce_from_borel(&g, [e, e, 0, 0]).unwrap();
        assert_eq!(ind.degree(&g), int(((q + 1) * (q + 1)) as i64));
    }
}

#[test]
fn borel_character_must_be_trivial_on_scalars() {
    let g = So4::new(5).unwrap();
    assert!(borel_character(&g, [1, 0, 0, 0]).is_err());
    assert!(induce_from_borel(&g, [1, 0, 0, 0]).is_err());
}

#[test]
fn invariants_dim_examples() {
    let g = So4::new(3).unwrap();
    let one = ClassFunction::constant(&g, 1);
    assert_eq!(invariants_dim(&g, &one, SubgroupId::Unipotent).unwrap(), (int(1), true));
    let ind = induce_from_borel(&g, [0, 0, 0, 0]).unwrap();
    assert_eq!(invariants_dim(&g, &ind, SubgroupId::Unipotent).unwrap(), (int(4), true));
    let w = ch(&g, Family::OmegaPrincPm, Some(1));
    assert_eq!(invariants_dim(&g, &w, SubgroupId::Unipotent).unwrap(), (int(2), true));
}

#[test]
fn invariants_dim_flags_non_characters() {
    let g = So4::new(3).unwrap();
    let half = ClassFunction::constant(&g, 1).scale(&Rat::new(1.into(), 2.into()));
    let (v, ok) = invariants_dim(&g, &half, SubgroupId::Unipotent).unwrap();
    assert!(!ok);
    assert_eq!(v, Cyc::from_rat(1, &Rat::new(1.into(), 2.into())));
}

#[test]
fn mixing_fields_is_an_error() {
    let g3 = So4::new(3).unwrap();
    let g5 = So4::new(5).unwrap();
    let a = ClassFunction::constant(&g3, 1);
    let b = ClassFunction::constant(&g5, 1);
    assert!(inner_product(&g5, &a, &b).is_err());
}

fn borel_double_cosets(q: u32) -> usize {
    let b = SubgroupId::Borel.elements(q);
    let mut seen: HashSet<So4Elem> = HashSet::new();
    let mut count = 0;
    for x in enumerate(q) {
        if seen.contains(&x) {
            continue;
        }
        count += 1;
        for l in &b {
            let lx = l.mul(&x);
            for r in &b {
                seen.insert(lx.mul(r));
            }
        }
    }
    count
}

#[test]
fn mackey_self_pairing_counts_double_cosets() {
    let g = So4::new(3).unwrap();
    let ind = induce_from_borel(&g, [0, 0, 0, 0]).unwrap();
    let n = borel_double_cosets(3) as i64;
    assert_eq!(n, 4);
    assert_eq!(inner_product(&g, &ind, &ind).unwrap(), int(n));
}

fn restriction_pairing(g: &So4, k: [i64; 4], chi: &ClassFunction) -> Cyc {
    let lam = borel_character(g, k).unwrap();
    let els = SubgroupId::Borel.elements(g.q());
    let n = g.cyc_order();
    let mut acc = Cyc::zero(n);
    for b in &els {
        acc = acc + (&lam(b) * &chi.values[g.class_index(b)].conj()).lift(n);
    }
    acc.scale(&Rat::new(1.into(), (els.len() as i64).into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn frobenius_reciprocity(k1 in 0i64..4, k2 in 0i64..4, k3 in 0i64..4, idx in 0usize..200) {
        let q = 5;
        let g = So4::new(q).unwrap();
        let t = CharTable::new(&g).unwrap();
        let k4 = (-(k1 + k2 + k3)).rem_euclid(q as i64 - 1);
        let k = [k1, k2, k3, k4];
        let chi = &t.chars[idx % t.chars.len()];
        let ind = induce_from_borel(&g, k).unwrap();
        prop_assert_eq!(inner_product(&g, &ind, chi).unwrap(), restriction_pairing(&g, k, chi));
    }

    #[test]
    fn inner_product_is_hermitian_and_linear(i in 0usize..50, j in 0usize..50, a in -3i64..4) {
        let g = So4::new(5).unwrap();
        let t = CharTable::new(&g).unwrap();
        let x = &t.chars[i % t.chars.len()];
        let y = &t.chars[j % t.chars.len()];
        prop_assert_eq!(inner_product(&g, x, y).unwrap(), inner_product(&g, y, x).unwrap().conj());
        let ax = x.scale_int(a);
        prop_assert_eq!(inner_product(&g, &(&ax + y), y).unwrap(),
            &inner_product(&g, x, y).unwrap().scale_int(a) + &inner_product(&g, y, y).unwrap());
    }
}
