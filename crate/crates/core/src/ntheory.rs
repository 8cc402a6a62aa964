//! Integer number theory: factorization, multiplicative orders, and the
//! parameter sets Ω(n), Ω(n, P) and Ξ(n, P) of the finite quotients
//! H(n, r, s) of BS(1, n).
//!
//! Divisibility follows the convention `d | x` iff `x = d·z` for some
//! integer `z`; in particular `0 | x` iff `x = 0`.
//!
//! Membership `s ∈ Ξ(n, P)` asks for *some* P-number `r > 0` with
//! `n^r ≡ 1 (mod s)`. Every such `r` is a multiple of the multiplicative
//! order of `n` modulo `s`, so a P-number `r` exists exactly when `s` is a
//! P-number coprime to `n` whose order is itself a P-number. [`in_xi`]
//! decides membership that way.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::{sieve, PrimeSet};

/// Trial division limit before switching to Pollard–Brent rho.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_DIVISION_LIMIT))
}

/// `d | x` in the sense above.
pub fn divides(d: &BigInt, x: &BigInt) -> bool {
    if d.is_zero() {
        x.is_zero()
    } else {
        (x % d).is_zero()
    }
}

/// `x mod m` as a value in `[0, m)`. `m > 0`.
pub fn mod_floor_u64(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue below u64 modulus")
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if (a | b) >> 32 == 0 {
        return a * b % m;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Primality

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin for all of `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with fixed bases; deterministic below 3.3·10^24,
/// probabilistic above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// Factorization

fn rho_u64(n: u64) -> u64 {
    // Brent's variant; n is odd and composite.
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut g, mut x, mut ys) = (1u64, 0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r, mut q) = (BigUint::from(2u32), 1u64, BigUint::one());
        let (mut g, mut x, mut ys) = (BigUint::one(), BigUint::zero(), BigUint::zero());
        let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = f(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split_u64(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        *out.entry(n).or_default() += 1;
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

/// Prime factorization of `x >= 1` as ascending `(prime, exponent)` pairs.
pub fn factorize_u64(mut x: u64) -> Vec<(u64, u32)> {
    assert!(x >= 1, "factorize_u64(0)");
    let mut out = BTreeMap::new();
    for &p in small_primes() {
        if p.saturating_mul(p) > x {
            break;
        }
        while x.is_multiple_of(p) {
            x /= p;
            *out.entry(p).or_default() += 1;
        }
    }
    split_u64(x, &mut out);
    out.into_iter().collect()
}

fn split_big(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if let Some(small) = n.to_u64() {
        let mut tmp = BTreeMap::new();
        split_u64(small, &mut tmp);
        for (p, e) in tmp {
            *out.entry(BigUint::from(p)).or_default() += e;
        }
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_default() += 1;
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

/// Prime factorization of `x >= 1` (empty for `x = 1`).
///
/// Trial division by primes up to [`TRIAL_DIVISION_LIMIT`], then Pollard–Brent
/// rho on the cofactor.
pub fn factorize(x: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if x.is_zero() {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    if let Some(small) = x.to_u64() {
        return Ok(factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect());
    }
    let mut x = x.clone();
    let mut out = BTreeMap::new();
    for &p in small_primes() {
        let bp = BigUint::from(p);
        if &bp * &bp > x {
            break;
        }
        loop {
            let (q, r) = x.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            x = q;
            *out.entry(bp.clone()).or_default() += 1;
        }
    }
    split_big(x, &mut out);
    Ok(out.into_iter().collect())
}

/// Whether every prime divisor of `|x|` lies in `set`; `x = 0` is a domain error.
pub fn is_p_number(x: &BigInt, set: &PrimeSet) -> Result<bool> {
    set.admits(x)
}

// ---------------------------------------------------------------------------
// Multiplicative order

/// Carmichael's λ(s), factored, from the factorization of s.
fn carmichael_factored(s_factors: &[(u64, u32)]) -> BTreeMap<u64, u32> {
    let mut lambda: BTreeMap<u64, u32> = BTreeMap::new();
    let mut merge = |p: u64, e: u32| {
        let slot = lambda.entry(p).or_default();
        *slot = (*slot).max(e);
    };
    for &(p, e) in s_factors {
        if p == 2 {
            match e {
                1 => {}
                2 => merge(2, 1),
                _ => merge(2, e - 2),
            }
        } else {
            if e > 1 {
                merge(p, e - 1);
            }
            for (q, f) in factorize_u64(p - 1) {
                merge(q, f);
            }
        }
    }
    lambda
}

/// Order of `n` modulo `s` where `n` is already reduced into `[0, s)`.
/// Requires `gcd(n, s) = 1`.
pub fn order_mod_u64(n: u64, s: u64) -> u64 {
    if s == 1 {
        return 1;
    }
    let lambda = carmichael_factored(&factorize_u64(s));
    let mut ord: u64 = lambda.iter().map(|(&p, &e)| p.pow(e)).product();
    for (&q, &e) in &lambda {
        for _ in 0..e {
            if pow_mod(n, ord / q, s) == 1 {
                ord /= q;
            } else {
                break;
            }
        }
    }
    ord
}

/// Least `r > 0` with `n^r ≡ 1 (mod s)`.
pub fn multiplicative_order(n: &BigInt, s: &BigUint) -> Result<BigUint> {
    if s.is_zero() {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let s_int = BigInt::from_biguint(Sign::Plus, s.clone());
    if !n.gcd(&s_int).is_one() {
        return Err(Error::Domain(format!("gcd({n}, {s}) != 1")));
    }
    if let Some(small) = s.to_u64() {
        return Ok(BigUint::from(order_mod_u64(mod_floor_u64(n, small), small)));
    }
    let base = n
        .mod_floor(&s_int)
        .to_biguint()
        .expect("non-negative residue");
    let mut lambda: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut merge = |p: BigUint, e: u32| {
        let slot = lambda.entry(p).or_default();
        *slot = (*slot).max(e);
    };
    let two = BigUint::from(2u32);
    for (p, e) in factorize(s)? {
        if p == two {
            match e {
                1 => {}
                2 => merge(two.clone(), 1),
                _ => merge(two.clone(), e - 2),
            }
        } else {
            if e > 1 {
                merge(p.clone(), e - 1);
            }
            for (q, f) in factorize(&(&p - 1u32))? {
                merge(q, f);
            }
        }
    }
    let mut ord: BigUint = lambda.iter().map(|(p, &e)| p.pow(e)).product();
    for (q, &e) in &lambda {
        for _ in 0..e {
            let cand = &ord / q;
            if base.modpow(&cand, s).is_one() {
                ord = cand;
            } else {
                break;
            }
        }
    }
    Ok(ord)
}

// ---------------------------------------------------------------------------
// Ω and Ξ

/// `(r, s)` with `r, s > 0` and `n^r ≡ 1 (mod s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OmegaPair {
    pub r: u64,
    pub s: u64,
}

impl OmegaPair {
    pub fn new(n: &BigInt, r: u64, s: u64) -> Result<Self> {
        if in_omega(n, &BigInt::from(r), &BigInt::from(s)) {
            Ok(OmegaPair { r, s })
        } else {
            Err(Error::Precondition(format!(
                "({r}, {s}) is not in Omega({n}): need r, s > 0 and n^r = 1 mod s"
            )))
        }
    }
}

/// `r > 0`, `s > 0` and `n^r ≡ 1 (mod s)`.
pub fn in_omega(n: &BigInt, r: &BigInt, s: &BigInt) -> bool {
    if !r.is_positive() || !s.is_positive() {
        return false;
    }
    let s = s.magnitude();
    let Some(r) = r.to_biguint() else {
        return false;
    };
    let base = n.mod_floor(&BigInt::from_biguint(Sign::Plus, s.clone()));
    let base = base.magnitude();
    if s.is_one() {
        return true;
    }
    base.modpow(&r, s).is_one()
}

/// `s ∈ Ξ(n, P)`: `s` is a P-number coprime to `n` and the order of `n`
/// modulo `s` is a P-number.
pub fn in_xi(n: &BigInt, s: &BigUint, set: &PrimeSet) -> bool {
    if s.is_zero() {
        return false;
    }
    let s_int = BigInt::from_biguint(Sign::Plus, s.clone());
    if !set.admits(&s_int).unwrap_or(false) || !n.gcd(&s_int).is_one() {
        return false;
    }
    match multiplicative_order(n, s) {
        Ok(ord) => set
            .admits(&BigInt::from_biguint(Sign::Plus, ord))
            .unwrap_or(false),
        Err(_) => false,
    }
}

pub fn in_xi_u64(n: &BigInt, s: u64, set: &PrimeSet) -> bool {
    if s == 0 || !set.admits_u64(s).unwrap_or(false) {
        return false;
    }
    let base = mod_floor_u64(n, s);
    if s > 1 && base.gcd(&s) != 1 {
        return false;
    }
    set.admits_u64(order_mod_u64(base, s)).unwrap_or(false)
}

/// All pairs `(ord_s(n), s)` with `s <= s_max` and `s ∈ Ξ(n, P)`, by ascending `s`.
pub fn enumerate_omega(n: &BigInt, set: &PrimeSet, s_max: u64) -> Vec<OmegaPair> {
    (1..=s_max)
        .filter(|&s| in_xi_u64(n, s, set))
        .map(|s| OmegaPair {
            r: order_mod_u64(mod_floor_u64(n, s), s),
            s,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn ubig(x: u64) -> BigUint {
        BigUint::from(x)
    }

    /// Brute force: smallest r with n^r = 1 mod s, stepping powers.
    fn order_by_stepping(n: i64, s: u64) -> u64 {
        if s == 1 {
            return 1;
        }
        let base = n.rem_euclid(s as i64) as u64;
        let mut acc = base;
        let mut r = 1;
        while acc != 1 {
            acc = mul_mod(acc, base, s);
            r += 1;
        }
        r
    }

    fn trial_division(mut x: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= x {
            let mut e = 0;
            while x.is_multiple_of(d) {
                x /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if x > 1 {
            out.push((x, 1));
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize_u64(80), vec![(2, 4), (5, 1)]);
        assert!(factorize_u64(1).is_empty());
        assert_eq!(factorize_u64(3u64.pow(4) - 1), trial_division(80));
        assert!(factorize(&BigUint::zero()).is_err());
    }

    #[test]
    fn factorize_matches_trial_division() {
        for x in 1..3000u64 {
            assert_eq!(factorize_u64(x), trial_division(x), "{x}");
        }
        // semiprimes beyond the trial-division table
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        assert_eq!(factorize_u64(p * q), vec![(p, 1), (q, 1)]);
        assert_eq!(factorize_u64(p * p), vec![(p, 2)]);
    }

    #[test]
    fn factorize_big() {
        // 3^49 - 1 exceeds u64
        let x = BigUint::from(3u32).pow(49) - 1u32;
        let f = factorize(&x).unwrap();
        let prod: BigUint = f.iter().map(|(p, e)| p.pow(*e)).product();
        assert_eq!(prod, x);
        assert!(f.iter().all(|(p, _)| is_prime(p)));
        // product of two primes above 2^64 / 2^32 boundaries
        let p = BigUint::from(18_446_744_073_709_551_557u64); // largest prime < 2^64
        let q = BigUint::from(4_294_967_311u64);
        let f = factorize(&(&p * &q)).unwrap();
        assert_eq!(f, vec![(q, 1), (p, 1)]);
    }

    #[test]
    fn primality() {
        let primes = sieve(10_000);
        for x in 0..10_000u64 {
            assert_eq!(is_prime_u64(x), primes.binary_search(&x).is_ok(), "{x}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 * 3u32)));
    }

    #[test]
    fn divisibility_convention() {
        assert!(divides(&big(0), &big(0)));
        assert!(!divides(&big(0), &big(5)));
        assert!(divides(&big(-3), &big(6)));
        assert!(!divides(&big(4), &big(6)));
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(&big(2), &ubig(7)).unwrap(), ubig(3));
        assert_eq!(multiplicative_order(&big(5), &ubig(1)).unwrap(), ubig(1));
        assert_eq!(multiplicative_order(&big(10), &ubig(9)).unwrap(), ubig(1));
        assert!(multiplicative_order(&big(2), &ubig(6)).is_err());
        assert!(multiplicative_order(&big(0), &ubig(6)).is_err());
    }

    #[test]
    fn order_matches_stepping() {
        for n in [-7i64, -3, -2, -1, 1, 2, 3, 5, 10] {
            for s in 1..600u64 {
                if (n.rem_euclid(s as i64) as u64).gcd(&s) != 1 && s > 1 {
                    continue;
                }
                let got = multiplicative_order(&big(n), &ubig(s)).unwrap();
                assert_eq!(got, ubig(order_by_stepping(n, s)), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn order_big_modulus() {
        // ord of 2 modulo 2^89 - 1 (prime) is 89
        let m = (BigUint::one() << 89) - 1u32;
        assert_eq!(multiplicative_order(&big(2), &m).unwrap(), ubig(89));
        let m = BigUint::from(3u32).pow(45) - 1u32;
        assert_eq!(multiplicative_order(&big(3), &m).unwrap(), ubig(45));
        assert_eq!(multiplicative_order(&big(-3), &m).unwrap(), ubig(90));
    }

    #[test]
    fn omega_examples() {
        assert!(in_omega(&big(2), &big(3), &big(7)));
        assert!(!in_omega(&big(2), &big(2), &big(7)));
        for n in [-5i64, -1, 1, 2, 9] {
            assert!(in_omega(&big(n), &big(1), &big(1)));
        }
        assert!(!in_omega(&big(2), &big(0), &big(7)));
        assert!(!in_omega(&big(2), &big(3), &big(-7)));
        assert!(OmegaPair::new(&big(2), 2, 7).is_err());
    }

    #[test]
    fn xi_examples() {
        let p37 = PrimeSet::finite([3, 7]).unwrap();
        let p27 = PrimeSet::finite([2, 7]).unwrap();
        assert!(in_xi(&big(2), &ubig(7), &p37));
        assert!(!in_xi(&big(2), &ubig(7), &p27));
        for n in [-4i64, 2, 3, 11] {
            assert!(in_xi(&big(n), &ubig(1), &p37));
            assert!(in_xi_u64(&big(n), 1, &p27));
        }
    }

    #[test]
    fn enumerate_examples() {
        let pairs = |v: &[(u64, u64)]| {
            v.iter()
                .map(|&(r, s)| OmegaPair { r, s })
                .collect::<Vec<_>>()
        };
        assert_eq!(
            enumerate_omega(&big(3), &PrimeSet::All, 4),
            pairs(&[(1, 1), (1, 2), (2, 4)])
        );
        assert_eq!(
            enumerate_omega(&big(2), &PrimeSet::finite([3, 7]).unwrap(), 7),
            pairs(&[(1, 1), (3, 7)])
        );
        assert_eq!(
            enumerate_omega(&big(2), &PrimeSet::finite([2]).unwrap(), 10),
            pairs(&[(1, 1)])
        );
    }

    #[test]
    fn in_xi_u64_agrees_with_big() {
        let sets = [
            PrimeSet::All,
            PrimeSet::finite([2, 3]).unwrap(),
            PrimeSet::all_except([2]).unwrap(),
        ];
        for n in [-3i64, 2, 5] {
            for set in &sets {
                for s in 1..300u64 {
                    assert_eq!(in_xi_u64(&big(n), s, set), in_xi(&big(n), &ubig(s), set));
                }
            }
        }
    }
}
