use gbs_core::ntheory::{factorize_u64, in_xi_u64, is_prime_u64};
use gbs_core::{enumerate_omega, factorize, in_omega, in_xi, multiplicative_order, PrimeSet};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use proptest::prelude::*;

fn sets() -> Vec<PrimeSet> {
    ["all", "{2}", "{3,7}", "{2,3,5}", "all-{2}", "all-{3,5}"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn nonzero_n() -> impl Strategy<Value = i64> {
    prop_oneof![-12i64..=-1, 1i64..=12]
}

fn order_by_stepping(n: i64, s: u64) -> u64 {
    let base = n.rem_euclid(s as i64) as u64;
    let mut acc = base % s;
    let mut k = 1;
    while acc != 1 % s {
        acc = acc * base % s;
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn factorization_multiplies_back(x in 1u64..u64::MAX) {
        let f = factorize(&BigUint::from(x)).unwrap();
        let mut prod = BigUint::from(1u32);
        for (p, e) in &f {
            prop_assert!(p.to_u64_digits().len() <= 1 && is_prime_u64(p.to_u64_digits()[0]));
            prod *= p.pow(*e);
        }
        prop_assert_eq!(prod, BigUint::from(x));
        let small: Vec<(u64, u32)> = factorize_u64(x);
        prop_assert_eq!(small.len(), f.len());
    }

    #[test]
    fn big_factorization_multiplies_back(a in 2u64..1_000_000_000, b in 2u64..1_000_000_000, c in 2u64..1000) {
        let x = BigUint::from(a) * BigUint::from(b) * BigUint::from(c);
        let f = factorize(&x).unwrap();
        let prod: BigUint = f.iter().map(|(p, e)| p.pow(*e)).product();
        prop_assert_eq!(prod, x);
    }

    #[test]
    fn order_matches_stepping(n in nonzero_n(), s in 1u64..2000) {
        prop_assume!(n.unsigned_abs().gcd(&s) == 1);
        let ord = multiplicative_order(&BigInt::from(n), &BigUint::from(s)).unwrap();
        prop_assert_eq!(ord, BigUint::from(order_by_stepping(n, s)));
    }

    #[test]
    fn order_divides_order_of_multiple(n in nonzero_n(), s in 1u64..500, m in 1u64..50) {
        prop_assume!(n.unsigned_abs().gcd(&(s * m)) == 1);
        let nb = BigInt::from(n);
        let o1 = multiplicative_order(&nb, &BigUint::from(s)).unwrap();
        let o2 = multiplicative_order(&nb, &BigUint::from(s * m)).unwrap();
        prop_assert!((o2 % o1) == BigUint::from(0u32));
    }

    #[test]
    fn lifting_lemma(n in nonzero_n(), s in 1u64..200, k in 1u32..=4) {
        prop_assume!(n.unsigned_abs().gcd(&s) == 1);
        let nb = BigInt::from(n);
        let r = multiplicative_order(&nb, &BigUint::from(s)).unwrap();
        let sb = BigInt::from(s);
        let rk = BigInt::from(r) * sb.pow(k - 1);
        prop_assert!(in_omega(&nb, &rk, &sb.pow(k)));
    }

    #[test]
    fn xi_closed_under_products_and_divisors(n in nonzero_n(), i in any::<usize>(), j in any::<usize>(), which in 0usize..6) {
        let set = &sets()[which];
        let nb = BigInt::from(n);
        let members: Vec<u64> = enumerate_omega(&nb, set, 300).iter().map(|p| p.s).collect();
        let (a, b) = (members[i % members.len()], members[j % members.len()]);
        prop_assert!(in_xi(&nb, &(BigUint::from(a) * BigUint::from(b)), set));
        for d in (1..=a).filter(|d| a % d == 0) {
            prop_assert!(in_xi_u64(&nb, d, set));
        }
    }

    #[test]
    fn xi_small_and_big_paths_agree(n in nonzero_n(), s in 1u64..5000, which in 0usize..6) {
        let set = &sets()[which];
        let nb = BigInt::from(n);
        prop_assert_eq!(in_xi_u64(&nb, s, set), in_xi(&nb, &BigUint::from(s), set));
    }
}
