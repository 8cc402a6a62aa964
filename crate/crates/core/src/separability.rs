//! Verdicts on residual 𝒞-ness and conjugacy 𝒞-separability of GBS groups,
//! where the class 𝒞 of periodic groups enters only through its prime set.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bs1n::Bs1nGroup;
use crate::error::{Error, Result};
use crate::graph::{GbsClass, LabeledGraph, ModularClass};
use crate::ntheory::{
    factorize, in_xi, in_xi_u64, is_prime_u64, mod_floor_u64, mul_mod, multiplicative_order,
    order_mod_u64, pow_mod,
};
use crate::primes::PrimeSet;

/// Default bound for searches over primes and moduli.
pub const DEFAULT_SEARCH_BOUND: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

/// Which criterion produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    /// Z or Z²: every nonzero vector survives modulo a large P-number.
    FreeAbelian,
    TwoInSet,
    TwoNotInSet,
    PrimeWithPOrder,
    NoPrimeWithPOrder,
    ModularImageNotUnit,
    LabelsPNumbers,
    LabelNotPNumber,
    AllPrimes,
    MissingPrime,
    SeparatingModulus,
    NoSeparatingModulus,
    SearchExhausted,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string tag"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Prime {
        p: u64,
    },
    MissingPrime {
        p: u64,
    },
    Modulus {
        #[serde(with = "crate::serde_big")]
        s: BigInt,
    },
    Label {
        edge: String,
        #[serde(with = "crate::serde_big")]
        label: BigInt,
    },
    ModularGenerator {
        edge: String,
        delta: String,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Prime { p } => write!(f, "prime p={p}"),
            Witness::MissingPrime { p } => write!(f, "missing prime p={p}"),
            Witness::Modulus { s } => write!(f, "modulus s={s}"),
            Witness::Label { edge, label } => write!(f, "label {label} on edge {edge}"),
            Witness::ModularGenerator { edge, delta } => {
                write!(f, "modular value {delta} on t.{edge}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    pub reason: Reason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

impl Verdict {
    pub fn yes(reason: Reason, witness: Option<Witness>) -> Self {
        Verdict {
            answer: Answer::Yes,
            reason,
            witness,
            bound: None,
        }
    }

    pub fn no(reason: Reason, witness: Option<Witness>) -> Self {
        Verdict {
            answer: Answer::No,
            reason,
            witness,
            bound: None,
        }
    }

    pub fn unknown(reason: Reason, bound: u64) -> Self {
        Verdict {
            answer: Answer::Unknown,
            reason,
            witness: None,
            bound: Some(bound),
        }
    }

    fn from_bool(ok: bool, yes: Reason, no: Reason) -> Self {
        if ok {
            Self::yes(yes, None)
        } else {
            Self::no(no, None)
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.answer, self.reason)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        if let Some(b) = self.bound {
            write!(f, " [searched up to {b}]")?;
        }
        Ok(())
    }
}

/// Residual finiteness of BS(m, n): after normalizing to `0 < m <= |n|`,
/// holds iff `m = 1` or `m = |n|`.
pub fn meskin_residually_finite(m: &BigInt, n: &BigInt) -> Result<bool> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::Domain("BS(m, n) needs nonzero m and n".into()));
    }
    let (mut m, mut n) = (m.clone(), n.clone());
    if m.abs() > n.abs() {
        std::mem::swap(&mut m, &mut n);
    }
    if m.is_negative() {
        m = -m;
        n = -n;
    }
    Ok(m.is_one() || m == n.abs())
}

/// BS(m, −m) is residually 𝒞 iff `m` is a P-number and `2 ∈ P`.
pub fn bs_m_minus_m_residual(m: &BigInt, set: &PrimeSet) -> Result<bool> {
    if !m.is_positive() {
        return Err(Error::Domain("m must be positive".into()));
    }
    Ok(set.admits(m)? && set.contains(2))
}

/// Residual 𝒞-ness of BS(1, n), `|n| >= 2`: some `p ∈ P` with `p ∤ n` and
/// `ord_p(n)` a P-number. Cofinite sets are searched over primes `<= bound`.
pub fn bs1n_residual(n: &BigInt, set: &PrimeSet, bound: u64) -> Result<Verdict> {
    if n.abs() < BigInt::from(2) {
        return Err(Error::Precondition("need |n| >= 2".into()));
    }
    let candidates = match set {
        PrimeSet::Finite(list) => list.clone(),
        _ => set.primes_up_to(bound),
    };
    for p in candidates {
        let r = mod_floor_u64(n, p);
        if r != 0 && set.admits_u64(order_mod_u64(r, p))? {
            return Ok(Verdict::yes(
                Reason::PrimeWithPOrder,
                Some(Witness::Prime { p }),
            ));
        }
    }
    Ok(if set.is_finite() {
        Verdict::no(Reason::NoPrimeWithPOrder, None)
    } else {
        Verdict::unknown(Reason::SearchExhausted, bound)
    })
}

/// Whether the GBS group of `graph` is residually a 𝒞-group.
pub fn residually_c_gbs(graph: &LabeledGraph, set: &PrimeSet, bound: u64) -> Result<Verdict> {
    let (reduced, span) = graph.positive_form();
    match reduced.classify()? {
        GbsClass::InfiniteCyclic | GbsClass::Bs11 => Ok(Verdict::yes(Reason::FreeAbelian, None)),
        GbsClass::Bs1Minus1 => Ok(Verdict::from_bool(
            set.contains(2),
            Reason::TwoInSet,
            Reason::TwoNotInSet,
        )),
        GbsClass::SolvableBs1n { n } => bs1n_residual(&n, set, bound),
        GbsClass::NonSolvable => {
            let image = reduced.modular_image(&span)?;
            if image.classification() == ModularClass::Other {
                let (edge, delta) = image
                    .generators()
                    .iter()
                    .find(|(_, d)| !d.abs().is_one())
                    .expect("some generator is not ±1");
                return Ok(Verdict::no(
                    Reason::ModularImageNotUnit,
                    Some(Witness::ModularGenerator {
                        edge: edge.clone(),
                        delta: delta.to_string(),
                    }),
                ));
            }
            for e in reduced.edges() {
                for label in [&e.label_from, &e.label_to] {
                    if !set.admits(label)? {
                        return Ok(Verdict::no(
                            Reason::LabelNotPNumber,
                            Some(Witness::Label {
                                edge: e.id.clone(),
                                label: label.clone(),
                            }),
                        ));
                    }
                }
            }
            if image.classification() == ModularClass::PlusMinusOne && !set.contains(2) {
                return Ok(Verdict::no(Reason::TwoNotInSet, None));
            }
            Ok(Verdict::yes(Reason::LabelsPNumbers, None))
        }
    }
}

/// Whether the GBS group of `graph` is conjugacy 𝒞-separable.
///
/// For elementary and non-solvable groups this coincides with residual
/// 𝒞-ness. BS(1, n) with `|n| >= 2` is conjugacy 𝒞-separable iff `P`
/// contains every prime.
pub fn conjugacy_separable_gbs(
    graph: &LabeledGraph,
    set: &PrimeSet,
    bound: u64,
) -> Result<Verdict> {
    match graph.reduce().classify()? {
        GbsClass::SolvableBs1n { .. } => Ok(match set.smallest_missing() {
            None => Verdict::yes(Reason::AllPrimes, None),
            Some(p) => Verdict::no(Reason::MissingPrime, Some(Witness::MissingPrime { p })),
        }),
        _ => residually_c_gbs(graph, set, bound),
    }
}

/// Whether some `s ∈ Ξ(n, P)` separates `t^u a^v` from `t^u a^w`, i.e.
/// `gcd(n^u − 1, s) ∤ v n^x − w n^y` for all `x, y >= 0`.
///
/// Moduli `s <= s_max` are tried in ascending order. For a finite `P` and
/// `n^u ≠ 1`, only `d = gcd(n^u − 1, s)` matters and separation is inherited
/// by multiples of `d`; the divisors of `n^u − 1` lying in Ξ are closed under
/// lcm, so the largest of them decides the question exactly.
pub fn condition1_check(
    n: &BigInt,
    set: &PrimeSet,
    u: u64,
    v: &BigInt,
    w: &BigInt,
    s_max: u64,
) -> Result<Verdict> {
    let g = Bs1nGroup::new(n.clone())?;
    let x = g.element(u, v.clone(), 0);
    let y = g.element(u, w.clone(), 0);
    if g.are_conjugate(&x, &y) {
        return Err(Error::Precondition(format!(
            "t^{u} a^{v} and t^{u} a^{w} are conjugate in BS(1, {n})"
        )));
    }
    for s in 1..=s_max {
        if !in_xi_u64(n, s, set) {
            continue;
        }
        let nr = mod_floor_u64(n, s);
        let d = ((pow_mod(nr, u, s) + s - 1) % s).gcd(&s);
        if separates_u64(n, v, w, d) {
            return Ok(Verdict::yes(
                Reason::SeparatingModulus,
                Some(Witness::Modulus { s: s.into() }),
            ));
        }
    }
    let modulus = g.n_pow(u) - BigInt::one();
    if set.is_finite() && !modulus.is_zero() {
        if let Ok(best) = largest_xi_divisor(n, modulus.magnitude(), set) {
            return Ok(if separates_big(n, v, w, &best)? {
                Verdict::yes(
                    Reason::SeparatingModulus,
                    Some(Witness::Modulus {
                        s: BigInt::from_biguint(Sign::Plus, best),
                    }),
                )
            } else {
                Verdict::no(Reason::NoSeparatingModulus, None)
            });
        }
    }
    Ok(Verdict::unknown(Reason::SearchExhausted, s_max))
}

/// True iff `v ≢ w n^k (mod d)` for every `k`; `gcd(n, d) = 1` is assumed.
fn separates_u64(n: &BigInt, v: &BigInt, w: &BigInt, d: u64) -> bool {
    if d == 1 {
        return false;
    }
    let nd = mod_floor_u64(n, d);
    let target = mod_floor_u64(v, d);
    let mut acc = mod_floor_u64(w, d);
    for _ in 0..order_mod_u64(nd, d) {
        if acc == target {
            return false;
        }
        acc = mul_mod(acc, nd, d);
    }
    true
}

fn separates_big(n: &BigInt, v: &BigInt, w: &BigInt, d: &BigUint) -> Result<bool> {
    if let Some(small) = d.to_u64() {
        return Ok(separates_u64(n, v, w, small));
    }
    let d_int = BigInt::from_biguint(Sign::Plus, d.clone());
    let nd = n.mod_floor(&d_int);
    let target = v.mod_floor(&d_int);
    let mut acc = w.mod_floor(&d_int);
    let period = multiplicative_order(n, d)?;
    let mut k = BigUint::zero();
    while k < period {
        if acc == target {
            return Ok(false);
        }
        acc = (acc * &nd).mod_floor(&d_int);
        k += 1u32;
    }
    Ok(true)
}

/// Largest divisor of `m` lying in Ξ(n, P).
fn largest_xi_divisor(n: &BigInt, m: &BigUint, set: &PrimeSet) -> Result<BigUint> {
    let mut best = BigUint::one();
    for (p, e) in factorize(m)? {
        if !set.contains_big(&p) {
            continue;
        }
        if let Some(f) = (1..=e).rev().find(|&f| in_xi(n, &p.pow(f), set)) {
            best *= p.pow(f);
        }
    }
    Ok(best)
}

/// Elements `t^u a^v`, `t^u a^w` of BS(1, n) that are not conjugate although
/// their images in every H(n, r, s) with `(r, s) ∈ Ω(n, P)` are.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionWitness {
    #[serde(with = "crate::serde_big")]
    pub n: BigInt,
    pub u: u64,
    #[serde(with = "crate::serde_big")]
    pub v: BigInt,
    #[serde(with = "crate::serde_big")]
    pub w: BigInt,
    #[serde(with = "crate::serde_big")]
    pub q: BigInt,
}

/// `u = p²`, `v = n^u − 1`, `q` the smallest prime divisor of `v` outside
/// Ξ(n, P), and `w = v / q`, for a prime `p ∉ P`.
pub fn fusion_witness(n: &BigInt, set: &PrimeSet, missing: u64) -> Result<FusionWitness> {
    if n.abs() < BigInt::from(2) {
        return Err(Error::Precondition("need |n| >= 2".into()));
    }
    if !is_prime_u64(missing) {
        return Err(Error::Domain(format!("{missing} is not prime")));
    }
    if set.contains(missing) {
        return Err(Error::Precondition(format!("{missing} lies in {set}")));
    }
    let u = missing
        .checked_mul(missing)
        .ok_or_else(|| Error::Domain(format!("exponent {missing}^2 overflows")))?;
    let g = Bs1nGroup::new(n.clone())?;
    let v = g.n_pow(u) - BigInt::one();
    let q = factorize(v.magnitude())?
        .into_iter()
        .map(|(q, _)| q)
        .find(|q| !in_xi(n, q, set))
        .ok_or_else(|| {
            Error::Internal(format!("every prime divisor of {v} lies in Xi({n}, {set})"))
        })?;
    let q = BigInt::from_biguint(Sign::Plus, q);
    let w = &v / &q;
    Ok(FusionWitness {
        n: n.clone(),
        u,
        v,
        w,
        q,
    })
}
