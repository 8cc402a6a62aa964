//! The finite quotients H(n, r, s) = ⟨t, a; t⁻¹at = aⁿ, tʳ = 1, aˢ = 1⟩ of
//! BS(1, n), defined for `(r, s) ∈ Ω(n)`.
//!
//! `⟨a⟩` is normal of order `s` and H splits over it, so every element is
//! uniquely `t^i a^j` with `0 <= i < r`, `0 <= j < s`, and the group has
//! exactly `r·s` elements. Multiplication: `a^j t^k = t^k a^{j n^k}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::bs1n::{Bs1nElement, Bs1nGroup};
use crate::error::{Error, Result};
use crate::ntheory::{enumerate_omega, mod_floor_u64, mul_mod, OmegaPair};
use crate::primes::PrimeSet;
use crate::serde_big;

/// Default cap on `r·s` for exhaustive conjugator enumeration.
pub const DEFAULT_BRUTE_FORCE_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HGroup {
    #[serde(with = "serde_big")]
    n: BigInt,
    r: u64,
    s: u64,
    #[serde(skip)]
    n_mod_s: u64,
    /// `n^i mod s` for `0 <= i < r`.
    #[serde(skip)]
    powers: Vec<u64>,
}

/// `t^i a^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HElement {
    pub i: u64,
    pub j: u64,
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{} a^{}", self.i, self.j)
    }
}

impl fmt::Display for HGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({}, {}, {})", self.n, self.r, self.s)
    }
}

impl HGroup {
    /// Fails unless `(r, s) ∈ Ω(n)`.
    pub fn new(n: impl Into<BigInt>, r: u64, s: u64) -> Result<Self> {
        let n = n.into();
        if n == BigInt::from(0) {
            return Err(Error::Domain("H(n, r, s) needs n != 0".into()));
        }
        OmegaPair::new(&n, r, s)?;
        let r_len = usize::try_from(r).map_err(|_| Error::Domain(format!("r = {r} too large")))?;
        let n_mod_s = mod_floor_u64(&n, s);
        let mut powers = Vec::with_capacity(r_len.min(1 << 20));
        let mut acc = 1 % s;
        for _ in 0..r {
            powers.push(acc);
            acc = mul_mod(acc, n_mod_s, s);
        }
        Ok(HGroup {
            n,
            r,
            s,
            n_mod_s,
            powers,
        })
    }

    pub fn from_pair(n: &BigInt, pair: OmegaPair) -> Result<Self> {
        Self::new(n.clone(), pair.r, pair.s)
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn order(&self) -> u64 {
        self.r * self.s
    }

    pub fn identity(&self) -> HElement {
        HElement { i: 0, j: 0 }
    }

    pub fn t(&self) -> HElement {
        self.element(1, 0)
    }

    pub fn a(&self) -> HElement {
        self.element(0, 1)
    }

    /// `t^i a^j` with both exponents reduced.
    pub fn element(&self, i: i64, j: i64) -> HElement {
        HElement {
            i: i.rem_euclid(self.r as i64) as u64,
            j: j.rem_euclid(self.s as i64) as u64,
        }
    }

    /// All `r·s` elements, `i` major.
    pub fn elements(&self) -> impl Iterator<Item = HElement> + '_ {
        (0..self.r).flat_map(move |i| (0..self.s).map(move |j| HElement { i, j }))
    }

    fn n_pow(&self, e: u64) -> u64 {
        self.powers[(e % self.r) as usize]
    }

    pub fn multiply(&self, x: HElement, y: HElement) -> HElement {
        HElement {
            i: (x.i + y.i) % self.r,
            j: (mul_mod(x.j, self.n_pow(y.i), self.s) + y.j) % self.s,
        }
    }

    pub fn inverse(&self, x: HElement) -> HElement {
        // (t^i a^j)^-1 = a^-j t^-i = t^-i a^{-j n^{-i}}, n^{-i} = n^{r-i}
        let i = (self.r - x.i) % self.r;
        let j = (self.s - mul_mod(x.j, self.n_pow(i), self.s)) % self.s;
        HElement { i, j }
    }

    pub fn power(&self, x: HElement, k: i64) -> HElement {
        let mut base = if k < 0 { self.inverse(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            e >>= 1;
        }
        acc
    }

    /// `c⁻¹ x c`.
    pub fn conjugate(&self, x: HElement, c: HElement) -> HElement {
        self.multiply(self.inverse(c), self.multiply(x, c))
    }

    /// Image of `t^u a^w t^{-v}` under the natural map BS(1, n) → H(n, r, s).
    pub fn natural_hom(&self, g: &Bs1nGroup, x: &Bs1nElement) -> Result<HElement> {
        if g.n() != &self.n {
            return Err(Error::Precondition(format!(
                "BS(1, {}) does not map onto {self}",
                g.n()
            )));
        }
        Ok(self.image(x))
    }

    pub(crate) fn image(&self, x: &Bs1nElement) -> HElement {
        let tu = HElement {
            i: x.u() % self.r,
            j: 0,
        };
        let aw = HElement {
            i: 0,
            j: mod_floor_u64(x.w(), self.s),
        };
        let tv = HElement {
            i: (self.r - x.v() % self.r) % self.r,
            j: 0,
        };
        self.multiply(self.multiply(tu, aw), tv)
    }

    /// Conjugacy by the arithmetic criterion: equal `t`-exponents `u`, and
    /// `d = gcd(n^u - 1, s)` divides `j1 n^x - j2 n^y` for some `x, y`.
    ///
    /// As `gcd(n, d) = 1`, it suffices to search `j1 ≡ j2 n^k (mod d)` over
    /// one period `0 <= k < r`, stopping once the orbit closes.
    pub fn are_conjugate_criterion(&self, x: HElement, y: HElement) -> bool {
        if x.i != y.i {
            return false;
        }
        let n_u_minus_1 = (self.n_pow(x.i) + self.s - 1) % self.s;
        let d = n_u_minus_1.gcd(&self.s);
        if d == 1 {
            return true;
        }
        let target = x.j % d;
        let n_mod_d = self.n_mod_s % d;
        let start = y.j % d;
        let mut acc = start;
        loop {
            if acc == target {
                return true;
            }
            acc = mul_mod(acc, n_mod_d, d);
            if acc == start {
                return false;
            }
        }
    }

    /// Conjugacy by enumerating all `r·s` candidate conjugators.
    pub fn are_conjugate_bruteforce(&self, x: HElement, y: HElement) -> Result<bool> {
        self.are_conjugate_bruteforce_bounded(x, y, DEFAULT_BRUTE_FORCE_BOUND)
    }

    pub fn are_conjugate_bruteforce_bounded(
        &self,
        x: HElement,
        y: HElement,
        bound: u64,
    ) -> Result<bool> {
        self.check_bound(bound)?;
        Ok(self.elements().any(|c| self.conjugate(x, c) == y))
    }

    /// Conjugacy class of `x` by enumerating conjugators, as a membership
    /// table indexed by `i·s + j`.
    pub fn conjugacy_class_bruteforce(&self, x: HElement) -> Result<Vec<bool>> {
        self.check_bound(DEFAULT_BRUTE_FORCE_BOUND)?;
        let mut member = vec![false; self.order() as usize];
        for c in self.elements() {
            let y = self.conjugate(x, c);
            member[(y.i * self.s + y.j) as usize] = true;
        }
        Ok(member)
    }

    fn check_bound(&self, bound: u64) -> Result<()> {
        if self.order() > bound {
            return Err(Error::BoundExceeded {
                what: "r*s",
                value: self.order(),
                bound,
            });
        }
        Ok(())
    }
}

/// Smallest P-number strictly greater than `bound`.
pub(crate) fn smallest_p_number_above(set: &PrimeSet, bound: u64) -> u64 {
    (bound + 1..)
        .find(|&m| set.admits_u64(m).unwrap_or(false))
        .expect("P-numbers are unbounded")
}

/// A finite quotient H(n, r, s) with `(r, s) ∈ Ω(n, P)` in which the images
/// of `x` and `y` are not conjugate, or `None` if the bounded search fails.
///
/// Distinct `t`-exponents `k1 != k2` are separated by the cyclic quotient
/// H(n, r, 1) for a P-number `r > |k1| + |k2|`. Otherwise candidates are
/// scanned by ascending `s <= s_max`, `s ∈ Ξ(n, P)`, with `r` the order of
/// `n` modulo `s`; whether the images are conjugate does not depend on the
/// choice of `r` once `s` is fixed.
pub fn find_separating_quotient(
    g: &Bs1nGroup,
    x: &Bs1nElement,
    y: &Bs1nElement,
    set: &PrimeSet,
    s_max: u64,
) -> Result<Option<HGroup>> {
    if g.are_conjugate(x, y) {
        return Err(Error::Precondition(
            "elements are conjugate in BS(1, n); no quotient separates them".into(),
        ));
    }
    let (k1, k2) = (x.t_exponent(), y.t_exponent());
    if k1 != k2 {
        let r = smallest_p_number_above(set, k1.unsigned_abs() + k2.unsigned_abs());
        return HGroup::new(g.n().clone(), r, 1).map(Some);
    }
    for pair in enumerate_omega(g.n(), set, s_max) {
        let h = HGroup::from_pair(g.n(), pair)?;
        if !h.are_conjugate_criterion(h.image(x), h.image(y)) {
            return Ok(Some(h));
        }
    }
    Ok(None)
}
