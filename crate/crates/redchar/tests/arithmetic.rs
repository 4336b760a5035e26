use proptest::prelude::*;
use redchar::cyclo::{gauss_sqrt_qstar, Cyc};
use redchar::ff::{CharDomain, Field, MultChar};

fn int(v: i64) -> Cyc {
    Cyc::from_int(1, v)
}

#[test]
fn roots_of_unity_examples() {
    assert_eq!(Cyc::root_of_unity(4, 2), int(-1));
    assert_eq!(Cyc::root_of_unity(1, 0), int(1));
    let z3 = Cyc::root_of_unity(3, 1);
    let z3sq = Cyc::root_of_unity(3, 2);
    assert_eq!(&z3 + &z3sq, int(-1));
    assert_eq!(Cyc::root_of_unity(5, 1).conj(), Cyc::root_of_unity(5, 4));
    let d = &z3 - &z3sq;
    assert_eq!(&d * &d, int(-3));
    assert_eq!(Cyc::root_of_unity(6, 1), -&z3sq);
}

#[test]
fn gauss_sums_square_to_signed_prime() {
    for (p, v) in [(3, -3), (5, 5), (7, -7), (11, -11), (13, 13)] {
        let g = gauss_sqrt_qstar(p);
        assert_eq!(&g * &g, int(v), "p = {p}");
    }
}

#[test]
fn cyc_mixed_orders_compare_exactly() {
    let a = Cyc::root_of_unity(12, 4);
    let b = Cyc::root_of_unity(3, 1);
    assert_eq!(a, b);
    assert_eq!(a.lift(24), b);
    assert_eq!(Cyc::from_int(15, 7).to_i64(), Some(7));
    assert!(Cyc::root_of_unity(5, 1).to_rat().is_none());
}

#[test]
fn field_examples() {
    let f3 = Field::new(3).unwrap();
    assert_eq!(f3.legendre(2).unwrap(), -1);
    let f5 = Field::new(5).unwrap();
    assert_eq!(f5.nonsquare(), 2);
    assert_eq!(f5.eps(2), -1);
    let f7 = Field::new(7).unwrap();
    assert_eq!(f7.legendre(4).unwrap(), 1);
    assert!(f7.legendre(0).is_err());
    let zeta = MultChar { domain: CharDomain::Fq, exponent: 2 };
    assert_eq!(f7.generator(), 3);
    assert_eq!(f7.char_eval_fq(zeta, 3).unwrap(), Cyc::root_of_unity(3, 1));
}

#[test]
fn rejects_non_odd_primes() {
    for q in [0, 1, 2, 4, 9, 15] {
        assert!(Field::new(q).is_err(), "q = {q}");
    }
}

#[test]
fn eps_of_minus_one() {
    for q in [3u32, 5, 7, 11, 13] {
        let f = Field::new(q).unwrap();
        let expect = if (q - 1) / 2 % 2 == 0 { 1 } else { -1 };
        assert_eq!(f.eps(q - 1), expect);
    }
}

#[test]
fn frobenius_twist_is_an_involution() {
    for q in [3u32, 5, 7] {
        let f = Field::new(q).unwrap();
        for d in [CharDomain::Fq, CharDomain::Fq2, CharDomain::NormOne] {
            for chi in f.list_chars(d) {
                assert_eq!(f.frobenius_twist(f.frobenius_twist(chi)), chi);
            }
        }
    }
}

#[test]
fn norm_is_surjective_with_kernel_q_plus_one() {
    for q in [3u32, 5, 7] {
        let f = Field::new(q).unwrap();
        let mut counts = vec![0usize; q as usize];
        for j in 0..(q * q - 1) {
            counts[f.norm(f.exp2(j as i64)) as usize] += 1;
        }
        assert_eq!(counts[0], 0);
        assert!(counts[1..].iter().all(|&c| c == (q + 1) as usize));
        assert_eq!(f.norm_one().len(), (q + 1) as usize);
    }
}

#[test]
fn character_orthogonality_on_fq() {
    for q in [3u32, 5, 7] {
        let f = Field::new(q).unwrap();
        let chars = f.list_chars(CharDomain::Fq);
        for a in &chars {
            for b in &chars {
                let mut s = Cyc::zero(1);
                for x in 1..q {
                    let v = &f.char_eval_fq(*a, x).unwrap() * &f.char_eval_fq(*b, x).unwrap().conj();
                    s = &s + &v;
                }
                let expect = if a == b { (q - 1) as i64 } else { 0 };
                assert_eq!(s, int(expect));
            }
        }
    }
}

fn small_cyc(n: u32) -> impl Strategy<Value = Cyc> {
    prop::collection::vec(-3i64..=3, n as usize).prop_map(move |c| Cyc::from_exponent_counts(n, &c))
}

fn order_and_three() -> impl Strategy<Value = (Cyc, Cyc, Cyc)> {
    prop::sample::select(vec![1u32, 3, 4, 5, 8, 12, 15]).prop_flat_map(|n| (small_cyc(n), small_cyc(n), small_cyc(n)))
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in order_and_three()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_a_ring_automorphism((a, b, _c) in order_and_three()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        let norm = &a * &a.conj();
        prop_assert_eq!(norm.conj(), norm);
    }

    #[test]
    fn lifting_preserves_value((a, b, _c) in order_and_three(), k in 1u32..4) {
        let n = a.order() * k;
        prop_assert_eq!(a.lift(n), a.clone());
        prop_assert_eq!(&a.lift(n) * &b, &a * &b);
    }

    #[test]
    fn root_exponents_reduce(n in 1u32..20, k in -40i64..40) {
        let z = Cyc::root_of_unity(n, k);
        prop_assert_eq!(z.clone(), Cyc::root_of_unity(n, k.rem_euclid(n as i64)));
        prop_assert_eq!(&z * &z.conj(), int(1));
    }

    #[test]
    fn characters_are_multiplicative(q in prop::sample::select(vec![3u32, 5, 7, 11, 13]), e in 0u32..12, x in 1u32..13, y in 1u32..13) {
        let f = Field::new(q).unwrap();
        let (x, y) = (x % q, y % q);
        prop_assume!(x != 0 && y != 0);
        let chi = MultChar { domain: CharDomain::Fq, exponent: e % (q - 1) };
        let lhs = f.char_eval_fq(chi, f.mul(x, y)).unwrap();
        let rhs = &f.char_eval_fq(chi, x).unwrap() * &f.char_eval_fq(chi, y).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.eps(f.mul(x, y)), f.eps(x) * f.eps(y));
    }
}
