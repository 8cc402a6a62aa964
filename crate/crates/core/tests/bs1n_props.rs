mod common;

use common::{affine, random_bs_word, rng, splice_relator};
use gbs_core::{in_omega, Bs1nGroup, HGroup};
use num_bigint::BigInt;
use proptest::prelude::*;

fn nonzero_n() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..=-1, 1i64..=5]
}

fn big_n() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..=-2, 2i64..=5]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn from_word_is_a_homomorphism(n in nonzero_n(), seed in any::<u64>()) {
        let g = Bs1nGroup::new(n).unwrap();
        let mut r = rng(seed);
        let w1 = random_bs_word(&mut r, 8);
        let w2 = random_bs_word(&mut r, 8);
        let joined = g.from_word(&w1.concat(&w2)).unwrap();
        let product = g.multiply(&g.from_word(&w1).unwrap(), &g.from_word(&w2).unwrap());
        prop_assert_eq!(joined, product);
    }

    #[test]
    fn equal_words_give_equal_triples(n in nonzero_n(), seed in any::<u64>()) {
        let g = Bs1nGroup::new(n).unwrap();
        let mut r = rng(seed);
        let w = random_bs_word(&mut r, 8);
        let mut v = w.clone();
        for _ in 0..3 {
            v = splice_relator(&mut r, n, &v);
        }
        prop_assert_eq!(g.from_word(&w).unwrap(), g.from_word(&v).unwrap());
    }

    #[test]
    fn triples_match_the_affine_model(n in big_n(), seed in any::<u64>()) {
        let g = Bs1nGroup::new(n).unwrap();
        let mut r = rng(seed);
        let w1 = random_bs_word(&mut r, 6);
        let w2 = random_bs_word(&mut r, 6);
        let (x, y) = (g.from_word(&w1).unwrap(), g.from_word(&w2).unwrap());
        prop_assert_eq!(x == y, affine(n, &w1) == affine(n, &w2));
        // the canonical word of x acts like the original word
        prop_assert_eq!(affine(n, &x.to_word()), affine(n, &w1));
    }

    #[test]
    fn canonical_form_invariant(n in nonzero_n(), seed in any::<u64>()) {
        let g = Bs1nGroup::new(n).unwrap();
        let x = g.from_word(&random_bs_word(&mut rng(seed), 10)).unwrap();
        let reducible = x.u() > 0 && x.v() > 0
            && (n.abs() == 1 || (x.w() % BigInt::from(n)) == BigInt::from(0));
        prop_assert!(!reducible, "{:?}", x);
        prop_assert_eq!(g.from_word(&x.to_word()).unwrap(), x);
    }

    #[test]
    fn group_axioms(n in nonzero_n(), seed in any::<u64>()) {
        let g = Bs1nGroup::new(n).unwrap();
        let mut r = rng(seed);
        let [x, y, z] = [0, 1, 2].map(|_| g.from_word(&random_bs_word(&mut r, 6)).unwrap());
        prop_assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
        prop_assert!(g.multiply(&x, &g.inverse(&x)).is_identity());
        prop_assert_eq!(g.multiply(&x, &g.identity()), x);
    }

    #[test]
    fn conjugates_are_detected_with_verified_conjugator(n in nonzero_n(), seed in any::<u64>()) {
        let g = Bs1nGroup::new(n).unwrap();
        let mut r = rng(seed);
        let x = g.from_word(&random_bs_word(&mut r, 6)).unwrap();
        let c = g.from_word(&random_bs_word(&mut r, 6)).unwrap();
        let y = g.conjugate(&x, &c);
        prop_assert!(g.are_conjugate(&x, &y));
        prop_assert!(g.are_conjugate(&y, &x));
        let found = g.find_conjugator(&x, &y).expect("conjugator");
        prop_assert_eq!(g.conjugate(&x, &found), y);
    }

    #[test]
    fn conjugacy_is_an_equivalence(n in nonzero_n(), seed in any::<u64>()) {
        let g = Bs1nGroup::new(n).unwrap();
        let mut r = rng(seed);
        let x = g.from_word(&random_bs_word(&mut r, 4)).unwrap();
        let c1 = g.from_word(&random_bs_word(&mut r, 4)).unwrap();
        let c2 = g.from_word(&random_bs_word(&mut r, 4)).unwrap();
        let z = g.from_word(&random_bs_word(&mut r, 4)).unwrap();
        let y = g.conjugate(&x, &c1);
        let w = g.conjugate(&y, &c2);
        prop_assert!(g.are_conjugate(&x, &x));
        prop_assert!(g.are_conjugate(&x, &w));
        prop_assert_eq!(g.are_conjugate(&x, &z), g.are_conjugate(&z, &x));
        prop_assert_eq!(g.are_conjugate(&x, &z), g.are_conjugate(&w, &z));
    }

    #[test]
    fn negative_answers_are_consistent(n in nonzero_n(), seed in any::<u64>()) {
        let g = Bs1nGroup::new(n).unwrap();
        let mut r = rng(seed);
        let x = g.from_word(&random_bs_word(&mut r, 4)).unwrap();
        let y = g.from_word(&random_bs_word(&mut r, 4)).unwrap();
        match g.find_conjugator(&x, &y) {
            Some(c) => prop_assert_eq!(g.conjugate(&x, &c), y),
            None => prop_assert!(!g.are_conjugate(&x, &y)),
        }
    }

    #[test]
    fn conjugacy_pushes_forward_to_quotients(n in big_n(), seed in any::<u64>()) {
        let g = Bs1nGroup::new(n).unwrap();
        let mut r = rng(seed);
        let x = g.from_word(&random_bs_word(&mut r, 5)).unwrap();
        let c = g.from_word(&random_bs_word(&mut r, 5)).unwrap();
        let y = g.conjugate(&x, &c);
        let nb = BigInt::from(n);
        for s in 1..=30u64 {
            for rr in 1..=12u64 {
                if !in_omega(&nb, &rr.into(), &s.into()) {
                    continue;
                }
                let h = HGroup::new(n, rr, s).unwrap();
                let (hx, hy) = (h.natural_hom(&g, &x).unwrap(), h.natural_hom(&g, &y).unwrap());
                prop_assert!(h.are_conjugate_criterion(hx, hy));
            }
        }
    }
}

#[test]
fn bs_minus_one_class_structure() {
    let g = Bs1nGroup::new(-1).unwrap();
    for u in -4i64..=4 {
        for v in -6i64..=6 {
            let x = g.multiply(&g.t_pow(u), &g.a_pow(v));
            for w in -6i64..=6 {
                let y = g.multiply(&g.t_pow(u), &g.a_pow(w));
                let expected = if u % 2 == 0 {
                    w == v || w == -v
                } else {
                    (v - w) % 2 == 0
                };
                assert_eq!(g.are_conjugate(&x, &y), expected, "u={u} v={v} w={w}");
            }
        }
    }
}
