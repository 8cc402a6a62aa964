//! Sets of primes standing in for the class of finite quotients under study.
//!
//! Text grammar: `all` | `all-{p1,p2,...}` | `{p1,p2,...}` (no whitespace).

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ntheory::is_prime_u64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeSet {
    All,
    /// Non-empty, sorted, duplicate-free list of primes.
    Finite(Vec<u64>),
    /// Every prime except the listed ones (list non-empty, sorted, duplicate-free).
    AllExcept(Vec<u64>),
}

impl PrimeSet {
    pub fn finite(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let list = normalize_list(primes)?;
        if list.is_empty() {
            return Err(Error::Domain("a finite prime set must be non-empty".into()));
        }
        Ok(PrimeSet::Finite(list))
    }

    pub fn all_except(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let list = normalize_list(primes)?;
        if list.is_empty() {
            Ok(PrimeSet::All)
        } else {
            Ok(PrimeSet::AllExcept(list))
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, PrimeSet::All)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PrimeSet::Finite(_))
    }

    /// Membership of a prime `p` (the argument is assumed prime).
    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::All => true,
            PrimeSet::Finite(list) => list.binary_search(&p).is_ok(),
            PrimeSet::AllExcept(list) => list.binary_search(&p).is_err(),
        }
    }

    pub fn contains_big(&self, p: &BigUint) -> bool {
        match p.to_u64() {
            Some(p) => self.contains(p),
            None => !self.is_finite(),
        }
    }

    /// Smallest prime outside the set, if any.
    pub fn smallest_missing(&self) -> Option<u64> {
        match self {
            PrimeSet::All => None,
            PrimeSet::AllExcept(list) => list.first().copied(),
            PrimeSet::Finite(_) => (2u64..).find(|&p| is_prime_u64(p) && !self.contains(p)),
        }
    }

    /// Primes of the set in ascending order, up to and including `bound`.
    pub fn primes_up_to(&self, bound: u64) -> Vec<u64> {
        match self {
            PrimeSet::Finite(list) => list.iter().copied().filter(|&p| p <= bound).collect(),
            _ => sieve(bound)
                .into_iter()
                .filter(|&p| self.contains(p))
                .collect(),
        }
    }

    /// Whether every prime divisor of `x` lies in the set. `x` must be nonzero.
    ///
    /// For the finite case the listed primes are divided out; for the
    /// cofinite case it suffices that no excluded prime divides `x`, so no
    /// factorization is ever needed.
    pub fn admits(&self, x: &BigInt) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::Domain("0 has no prime factorization".into()));
        }
        let x = x.magnitude();
        Ok(match self {
            PrimeSet::All => true,
            PrimeSet::AllExcept(list) => list.iter().all(|&p| !(x % BigUint::from(p)).is_zero()),
            PrimeSet::Finite(list) => {
                if let Some(mut y) = x.to_u64() {
                    for &p in list {
                        while y % p == 0 {
                            y /= p;
                        }
                    }
                    y == 1
                } else {
                    let mut y = x.clone();
                    for &p in list {
                        let p = BigUint::from(p);
                        loop {
                            let (q, r) = y.div_rem(&p);
                            if !r.is_zero() {
                                break;
                            }
                            y = q;
                        }
                    }
                    y.is_one()
                }
            }
        })
    }

    pub fn admits_u64(&self, x: u64) -> Result<bool> {
        self.admits(&BigInt::from(x))
    }
}

fn normalize_list(primes: impl IntoIterator<Item = u64>) -> Result<Vec<u64>> {
    let mut list: Vec<u64> = primes.into_iter().collect();
    if let Some(&bad) = list.iter().find(|&&p| !is_prime_u64(p)) {
        return Err(Error::Domain(format!("{bad} is not prime")));
    }
    list.sort_unstable();
    list.dedup();
    Ok(list)
}

/// Primes `<= bound` by the sieve of Eratosthenes.
pub fn sieve(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

impl FromStr for PrimeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid prime set `{s}`"));
        if s == "all" {
            return Ok(PrimeSet::All);
        }
        let (cofinite, body) = match s.strip_prefix("all-") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let inner = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(bad)?;
        let primes = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| {
                    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(bad());
                    }
                    t.parse::<u64>().map_err(|_| bad())
                })
                .collect::<Result<Vec<_>>>()?
        };
        let set = if cofinite {
            PrimeSet::all_except(primes)
        } else {
            PrimeSet::finite(primes)
        };
        set.map_err(|e| match e {
            Error::Domain(msg) => Error::Parse(format!("invalid prime set `{s}`: {msg}")),
            e => e,
        })
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |list: &[u64]| {
            list.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            PrimeSet::All => write!(f, "all"),
            PrimeSet::Finite(list) => write!(f, "{{{}}}", join(list)),
            PrimeSet::AllExcept(list) => write!(f, "all-{{{}}}", join(list)),
        }
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
