//! Decision procedures for Baumslag–Solitar groups BS(1, n), their finite
//! quotients H(n, r, s), and generalized Baumslag–Solitar (GBS) groups given
//! by labeled graphs: equality, conjugacy with explicit conjugators,
//! residual properties and conjugacy separability with respect to classes
//! of finite groups described by a set of primes.

pub mod bs1n;
pub mod cli;
pub mod error;
pub mod graph;
pub mod hgroup;
pub mod ntheory;
pub mod primes;
pub mod radical;
pub mod separability;
pub mod word;

pub use bs1n::{Bs1nElement, Bs1nGroup, StandardConjugate};
pub use error::{Error, Result};
pub use graph::{Edge, GbsClass, LabeledGraph, ModularClass, ModularImage, SpanningData};
pub use hgroup::{find_separating_quotient, HElement, HGroup};
pub use ntheory::{
    enumerate_omega, factorize, in_omega, in_xi, is_p_number, multiplicative_order, OmegaPair,
};
pub use primes::PrimeSet;
pub use radical::{chi_k_map, cyclic_radical, RadicalData, TauMap, XElement, XkElement};
pub use separability::{
    bs1n_residual, bs_m_minus_m_residual, condition1_check, conjugacy_separable_gbs,
    fusion_witness, meskin_residually_finite, residually_c_gbs, Answer, FusionWitness, Reason,
    Verdict, Witness,
};
pub use word::GroupWord;

/// Big integers in JSON: a number when it fits in `i64`, a decimal string otherwise.
pub(crate) mod serde_big {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(x) {
            Ok(v) => v.serialize(s),
            Err(_) => s.collect_str(x),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(BigInt::from(v)),
            Repr::Text(t) => t.parse().map_err(de::Error::custom),
        }
    }
}
