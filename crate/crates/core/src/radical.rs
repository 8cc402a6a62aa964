//! Cyclic radical of a GBS group with modular image in {±1}, and the maps
//! τ: 𝔊 → X = Z ⋊ ⟨a₁, a₋₁⟩ and τ_k: 𝔊 → X_k = Z_{μk} ⋊ Z₂.
//!
//! In X, `a_q⁻¹ z a_q = z^q`; elements are written `a₁^{e1} a₋₁^{em1} z^l`.
//! In X_k, elements are `b^b z_k^j` with `b⁻¹ z_k b = z_k⁻¹`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GbsClass, LabeledGraph, ModularClass, ModularImage, SpanningData};
use crate::word::GroupWord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalData {
    /// μ(v): index of the radical in each vertex group.
    #[serde(serialize_with = "ser_index_map")]
    pub radical_exponent: BTreeMap<String, BigInt>,
    #[serde(with = "crate::serde_big")]
    pub mu: BigInt,
}

fn ser_index_map<S: serde::Serializer>(
    m: &BTreeMap<String, BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &BigWrap(v))?;
    }
    map.end()
}

struct BigWrap<'a>(&'a BigInt);

impl Serialize for BigWrap<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serde_big::serialize(self.0, s)
    }
}

/// μ(v) and μ for a reduced, 𝒯-positive graph whose modular image lies in
/// {±1}.
///
/// The radical is generated in each vertex group by `g_v^{μ(v)}` with
/// `μ(v) = L / w(v)`, where `L` is the rational lcm (lcm of numerators over
/// gcd of denominators) of the values `|λ(εe)·w(e(ε))|`.
pub fn cyclic_radical(graph: &LabeledGraph, span: &SpanningData) -> Result<RadicalData> {
    let class = graph.classify()?;
    if class == GbsClass::InfiniteCyclic {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    if !graph.is_tree_positive(span) {
        return Err(Error::Precondition("graph is not tree-positive".into()));
    }
    if graph.modular_image(span)?.classification() == ModularClass::Other {
        return Err(Error::Precondition(
            "modular image is not contained in {1,-1}".into(),
        ));
    }
    let mut num_lcm = BigInt::one();
    let mut den_gcd = BigInt::zero();
    for e in graph.edges() {
        for eps in [1i8, -1] {
            let x = (BigRational::from(e.label(eps).clone()) * span.weight(e.end(eps))).abs();
            num_lcm = num_lcm.lcm(x.numer());
            den_gcd = den_gcd.gcd(x.denom());
        }
    }
    let level = BigRational::new(num_lcm, den_gcd);
    let mut radical_exponent = BTreeMap::new();
    let mut mu = BigInt::one();
    for v in graph.vertices() {
        let idx = (&level / span.weight(v)).abs();
        if !idx.is_integer() {
            return Err(Error::Internal(format!(
                "radical index at `{v}` is not an integer: {idx}"
            )));
        }
        let idx = idx.to_integer();
        mu = mu.lcm(&idx);
        radical_exponent.insert(v.clone(), idx);
    }
    Ok(RadicalData {
        radical_exponent,
        mu,
    })
}

/// `a₁^{e1} a₋₁^{em1} z^l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct XElement {
    pub e1: i64,
    pub em1: i64,
    #[serde(with = "crate::serde_big")]
    pub l: BigInt,
}

impl XElement {
    pub fn identity() -> Self {
        XElement {
            e1: 0,
            em1: 0,
            l: BigInt::zero(),
        }
    }

    pub fn z(l: impl Into<BigInt>) -> Self {
        XElement {
            e1: 0,
            em1: 0,
            l: l.into(),
        }
    }

    /// `(a z^ℓ)(a' z^ℓ') = a a' z^{ℓ·(−1)^{em1'} + ℓ'}`.
    pub fn multiply(&self, other: &XElement) -> XElement {
        XElement {
            e1: self.e1 + other.e1,
            em1: self.em1 + other.em1,
            l: flip(&self.l, other.em1) + &other.l,
        }
    }

    pub fn inverse(&self) -> XElement {
        XElement {
            e1: -self.e1,
            em1: -self.em1,
            l: -flip(&self.l, self.em1),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.e1 == 0 && self.em1 == 0 && self.l.is_zero()
    }
}

/// `b^b z_k^j` with `b ∈ {0,1}` and `0 ≤ j < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct XkElement {
    pub b: u8,
    #[serde(with = "crate::serde_big")]
    pub j: BigInt,
}

impl XkElement {
    pub fn identity() -> Self {
        XkElement {
            b: 0,
            j: BigInt::zero(),
        }
    }

    pub fn multiply(&self, other: &XkElement, modulus: &BigInt) -> XkElement {
        XkElement {
            b: (self.b + other.b) % 2,
            j: (flip(&self.j, other.b.into()) + &other.j).mod_floor(modulus),
        }
    }
}

fn flip(x: &BigInt, parity: i64) -> BigInt {
    if parity.rem_euclid(2) == 1 {
        -x
    } else {
        x.clone()
    }
}

/// χ_k: X → X_k, `a₁^{e1} a₋₁^{em1} z^l ↦ b^{em1} z_k^l`.
pub fn chi_k_map(x: &XElement, mu: &BigInt, k: u64) -> XkElement {
    let modulus = mu * BigInt::from(k);
    XkElement {
        b: x.em1.rem_euclid(2) as u8,
        j: x.l.mod_floor(&modulus),
    }
}

/// Generator images of τ: `g_v ↦ z^{μ/μ(v)}`, `t_e ↦ a_{Δ(t_e)}`.
#[derive(Clone, Debug)]
pub struct TauMap {
    mu: BigInt,
    vertex_power: BTreeMap<String, BigInt>,
    /// True when Δ(t_e) = −1.
    edge_flips: BTreeMap<String, bool>,
}

impl TauMap {
    pub fn new(radical: &RadicalData, modular: &ModularImage) -> Result<Self> {
        let vertex_power = radical
            .radical_exponent
            .iter()
            .map(|(v, idx)| (v.clone(), &radical.mu / idx))
            .collect();
        let minus_one = -BigRational::one();
        let mut edge_flips = BTreeMap::new();
        for (e, d) in modular.generators() {
            let flipped = if d.is_one() {
                false
            } else if *d == minus_one {
                true
            } else {
                return Err(Error::Precondition(format!("Δ(t.{e}) = {d} is not ±1")));
            };
            edge_flips.insert(e.clone(), flipped);
        }
        Ok(TauMap {
            mu: radical.mu.clone(),
            vertex_power,
            edge_flips,
        })
    }

    /// Builds τ for a reduced, 𝒯-positive graph.
    pub fn for_graph(graph: &LabeledGraph, span: &SpanningData) -> Result<Self> {
        let radical = cyclic_radical(graph, span)?;
        let modular = graph.modular_image(span)?;
        Self::new(&radical, &modular)
    }

    pub fn mu(&self) -> &BigInt {
        &self.mu
    }

    fn lookup(&self, sym: &str) -> Result<Generator<'_>> {
        if let Some(v) = sym.strip_prefix("g.") {
            if let Some(p) = self.vertex_power.get(v) {
                return Ok(Generator::Vertex(p));
            }
        } else if let Some(e) = sym.strip_prefix("t.") {
            if let Some(&f) = self.edge_flips.get(e) {
                return Ok(Generator::Edge(f));
            }
        }
        Err(Error::Parse(format!("unknown generator `{sym}`")))
    }

    pub fn evaluate(&self, word: &GroupWord) -> Result<XElement> {
        let mut acc = XElement::identity();
        for (sym, exp) in word.terms() {
            let x = match self.lookup(sym)? {
                Generator::Vertex(p) => XElement::z(p * exp),
                Generator::Edge(false) => XElement {
                    e1: *exp,
                    em1: 0,
                    l: BigInt::zero(),
                },
                Generator::Edge(true) => XElement {
                    e1: 0,
                    em1: *exp,
                    l: BigInt::zero(),
                },
            };
            acc = acc.multiply(&x);
        }
        Ok(acc)
    }

    /// τ_k evaluated directly in X_k: `g_v ↦ z_k^{μ/μ(v)}`, `t_e ↦ b` or 1.
    pub fn evaluate_k(&self, word: &GroupWord, k: u64) -> Result<XkElement> {
        if k == 0 {
            return Err(Error::Domain("k must be positive".into()));
        }
        let modulus = &self.mu * BigInt::from(k);
        let mut acc = XkElement::identity();
        for (sym, exp) in word.terms() {
            let x = match self.lookup(sym)? {
                Generator::Vertex(p) => XkElement {
                    b: 0,
                    j: (p * exp).mod_floor(&modulus),
                },
                Generator::Edge(flipped) => XkElement {
                    b: u8::from(flipped && exp.rem_euclid(2) == 1),
                    j: BigInt::zero(),
                },
            };
            acc = acc.multiply(&x, &modulus);
        }
        Ok(acc)
    }

    pub fn chi_k(&self, x: &XElement, k: u64) -> XkElement {
        chi_k_map(x, &self.mu, k)
    }
}

enum Generator<'a> {
    Vertex(&'a BigInt),
    Edge(bool),
}
