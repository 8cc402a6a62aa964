//! Exact arithmetic and conjugacy in BS(1, n) = ⟨a, t; t⁻¹at = aⁿ⟩.
//!
//! Every element has a unique canonical form `t^u a^w t^{-v}` with
//! `u, v >= 0` and `u = 0 or v = 0 or n ∤ w`. Products are computed with the
//! rewriting rules `a^k t = t a^{nk}` and `t^{-1} a^k = a^{nk} t^{-1}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ntheory::divides;
use crate::serde_big;
use crate::word::GroupWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bs1nGroup {
    n: BigInt,
}

/// Canonical triple `(u, w, v)` denoting `t^u a^w t^{-v}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bs1nElement {
    u: u64,
    #[serde(with = "serde_big")]
    w: BigInt,
    v: u64,
}

/// `t^k a^m`, a representative of the conjugacy class of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StandardConjugate {
    pub k: i64,
    #[serde(with = "serde_big")]
    pub m: BigInt,
}

impl Bs1nElement {
    pub fn identity() -> Self {
        Bs1nElement {
            u: 0,
            w: BigInt::zero(),
            v: 0,
        }
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn w(&self) -> &BigInt {
        &self.w
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u == 0 && self.v == 0 && self.w.is_zero()
    }

    /// Image under the homomorphism onto `Z` sending `t ↦ 1`, `a ↦ 0`.
    pub fn t_exponent(&self) -> i64 {
        self.u as i64 - self.v as i64
    }

    pub fn to_word(&self) -> GroupWord {
        let w = i64::try_from(&self.w).expect("a-exponent does not fit in a word");
        GroupWord::from_terms([("t", self.u as i64), ("a", w), ("t", -(self.v as i64))])
    }
}

impl fmt::Display for Bs1nElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{} a^{} t^-{}", self.u, self.w, self.v)
    }
}

impl fmt::Display for StandardConjugate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{} a^{}", self.k, self.m)
    }
}

impl Bs1nGroup {
    pub fn new(n: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        if n.is_zero() {
            return Err(Error::Domain("BS(1, n) needs n != 0".into()));
        }
        Ok(Bs1nGroup { n })
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    fn is_unimodular(&self) -> bool {
        self.n.abs().is_one()
    }

    /// `n^e`.
    pub fn n_pow(&self, e: u64) -> BigInt {
        if self.is_unimodular() {
            return if self.n.is_negative() && e % 2 == 1 {
                -BigInt::one()
            } else {
                BigInt::one()
            };
        }
        num_traits::pow(
            self.n.clone(),
            usize::try_from(e).expect("exponent fits usize"),
        )
    }

    /// Canonical element equal to `t^u a^w t^{-v}`.
    pub fn element(&self, mut u: u64, mut w: BigInt, mut v: u64) -> Bs1nElement {
        if w.is_zero() {
            let m = u.min(v);
            return Bs1nElement {
                u: u - m,
                w,
                v: v - m,
            };
        }
        if self.is_unimodular() {
            // t^m a^w t^-m = a^{w n^-m} and n^-1 = n here
            let m = u.min(v);
            w *= self.n_pow(m);
            return Bs1nElement {
                u: u - m,
                w,
                v: v - m,
            };
        }
        while u > 0 && v > 0 {
            let (q, r) = w.div_rem(&self.n);
            if !r.is_zero() {
                break;
            }
            w = q;
            u -= 1;
            v -= 1;
        }
        Bs1nElement { u, w, v }
    }

    pub fn identity(&self) -> Bs1nElement {
        Bs1nElement::identity()
    }

    pub fn t_pow(&self, k: i64) -> Bs1nElement {
        if k >= 0 {
            self.element(k as u64, BigInt::zero(), 0)
        } else {
            self.element(0, BigInt::zero(), k.unsigned_abs())
        }
    }

    pub fn a_pow(&self, m: impl Into<BigInt>) -> Bs1nElement {
        self.element(0, m.into(), 0)
    }

    pub fn from_word(&self, word: &GroupWord) -> Result<Bs1nElement> {
        word.check_symbols(|s| s == "t" || s == "a")?;
        Ok(word
            .terms()
            .iter()
            .fold(self.identity(), |acc, (sym, exp)| {
                let gen = if sym == "t" {
                    self.t_pow(*exp)
                } else {
                    self.a_pow(*exp)
                };
                self.multiply(&acc, &gen)
            }))
    }

    pub fn parse_word(&self, text: &str) -> Result<Bs1nElement> {
        self.from_word(&GroupWord::parse(text)?)
    }

    pub fn multiply(&self, x: &Bs1nElement, y: &Bs1nElement) -> Bs1nElement {
        // t^u1 a^w1 t^-v1 · t^u2 a^w2 t^-v2
        if x.v >= y.u {
            let d = x.v - y.u;
            let w = &x.w + &y.w * self.n_pow(d);
            self.element(x.u, w, d + y.v)
        } else {
            let d = y.u - x.v;
            let w = &x.w * self.n_pow(d) + &y.w;
            self.element(x.u + d, w, y.v)
        }
    }

    pub fn inverse(&self, x: &Bs1nElement) -> Bs1nElement {
        Bs1nElement {
            u: x.v,
            w: -&x.w,
            v: x.u,
        }
    }

    /// `c⁻¹ x c`.
    pub fn conjugate(&self, x: &Bs1nElement, c: &Bs1nElement) -> Bs1nElement {
        self.multiply(&self.inverse(c), &self.multiply(x, c))
    }

    pub fn power(&self, x: &Bs1nElement, k: i64) -> Bs1nElement {
        let base = if k < 0 { self.inverse(x) } else { x.clone() };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.multiply(&acc, &base))
    }

    /// Conjugating `t^u a^w t^{-v}` by `t^v` gives `t^{u-v} a^w`.
    pub fn to_standard_conjugate(&self, x: &Bs1nElement) -> StandardConjugate {
        StandardConjugate {
            k: x.t_exponent(),
            m: x.w.clone(),
        }
    }

    /// The element `t^k a^m`.
    pub fn standard_element(&self, sc: &StandardConjugate) -> Bs1nElement {
        self.multiply(&self.t_pow(sc.k), &self.a_pow(sc.m.clone()))
    }

    pub fn are_conjugate(&self, x: &Bs1nElement, y: &Bs1nElement) -> bool {
        self.find_conjugator(x, y).is_some()
    }

    /// Some `c` with `c⁻¹ x c = y`, or `None` when `x` and `y` are not conjugate.
    ///
    /// Both elements are first conjugated to `t^k a^m` form. Distinct
    /// `k` means non-conjugate. For `k < 0` both are inverted, which
    /// preserves conjugacy and makes `k >= 0`. Then `t^k a^{m1}` and
    /// `t^k a^{m2}` are conjugate iff `n^k - 1 | m1 n^x - m2 n^y` for some
    /// `x, y >= 0`, and a solution yields the conjugator
    /// `t^x a^z t^{-y}` with `z = (m1 n^x - m2 n^y) / (n^k - 1)`.
    pub fn find_conjugator(&self, x: &Bs1nElement, y: &Bs1nElement) -> Option<Bs1nElement> {
        let sx = self.to_standard_conjugate(x);
        let sy = self.to_standard_conjugate(y);
        if sx.k != sy.k {
            return None;
        }
        // x = c1 X c1⁻¹ with X = t^k a^m1, c1 = t^{v}
        let c1 = self.t_pow(x.v as i64);
        let c2 = self.t_pow(y.v as i64);
        let (mut big_x, mut big_y) = (self.standard_element(&sx), self.standard_element(&sy));
        if sx.k < 0 {
            big_x = self.inverse(&big_x);
            big_y = self.inverse(&big_y);
        }
        let u = big_x.u;
        debug_assert!(big_x.v == 0 && big_y.v == 0 && big_y.u == u);
        let d = self.conjugator_same_level(u, &big_x.w, &big_y.w)?;
        let c = self.multiply(&self.multiply(&c1, &d), &self.inverse(&c2));
        debug_assert_eq!(&self.conjugate(x, &c), y);
        Some(c)
    }

    /// Conjugator taking `t^u a^m1` to `t^u a^m2`, `u >= 0`.
    fn conjugator_same_level(&self, u: u64, m1: &BigInt, m2: &BigInt) -> Option<Bs1nElement> {
        let modulus = self.n_pow(u) - BigInt::one();
        let (x, y) = if modulus.is_zero() {
            self.exact_power_ratio(m1, m2)?
        } else {
            (0, self.residue_orbit_match(&modulus.abs(), m1, m2)?)
        };
        let z = if modulus.is_zero() {
            BigInt::zero()
        } else {
            let diff = m1 * self.n_pow(x) - m2 * self.n_pow(y);
            debug_assert!(divides(&modulus, &diff));
            diff / &modulus
        };
        Some(self.element(x, z, y))
    }

    /// Some `(x, y)`, `x, y >= 0`, with `m1 n^x = m2 n^y` exactly.
    fn exact_power_ratio(&self, m1: &BigInt, m2: &BigInt) -> Option<(u64, u64)> {
        if m1.is_zero() || m2.is_zero() {
            return (m1.is_zero() && m2.is_zero()).then_some((0, 0));
        }
        if self.is_unimodular() {
            if m1 == m2 {
                return Some((0, 0));
            }
            return (self.n.is_negative() && *m1 == -m2).then_some((1, 0));
        }
        // m1 = m2 n^j  or  m2 = m1 n^j
        let search = |big: &BigInt, small: &BigInt| -> Option<u64> {
            let mut acc = small.clone();
            let mut j = 0u64;
            while acc.abs() <= big.abs() {
                if &acc == big {
                    return Some(j);
                }
                acc *= &self.n;
                j += 1;
            }
            None
        };
        if let Some(j) = search(m1, m2) {
            return Some((0, j));
        }
        search(m2, m1).map(|j| (j, 0))
    }

    /// Some `j` with `m1 ≡ m2 n^j (mod modulus)`, where `gcd(n, modulus) = 1`.
    ///
    /// Since `n` is invertible the powers of `n` are purely periodic, with
    /// period the multiplicative order of `n`; the loop walks exactly one
    /// period (found by stepping, so no factorization of the modulus is
    /// needed). Searching `m1 n^x ≡ m2 n^y` over `x, y` reduces to this with
    /// `x = 0`.
    fn residue_orbit_match(&self, modulus: &BigInt, m1: &BigInt, m2: &BigInt) -> Option<u64> {
        if modulus.is_one() {
            return Some(0);
        }
        let target = m1.mod_floor(modulus);
        let n_mod = self.n.mod_floor(modulus);
        let mut acc = m2.mod_floor(modulus);
        let start = acc.clone();
        let mut j = 0u64;
        loop {
            if acc == target {
                return Some(j);
            }
            acc = (acc * &n_mod).mod_floor(modulus);
            j += 1;
            if acc == start {
                return None;
            }
        }
    }
}
