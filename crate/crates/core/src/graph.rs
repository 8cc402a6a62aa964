//! Labeled graphs defining GBS groups.
//!
//! Each edge `e` has two ends: `from` = e(1) carrying `label_from` = λ(+e),
//! and `to` = e(−1) carrying `label_to` = λ(−e). The group has a generator
//! `g_v` per vertex, a generator `t_e` per edge outside a chosen maximal
//! subtree, and relations `t_e⁻¹ g_{e(1)}^{λ(+e)} t_e = g_{e(−1)}^{λ(−e)}`
//! (with `t_e = 1` on tree edges).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub id: String,
    pub from: String,
    pub to: String,
    #[serde(with = "crate::serde_big")]
    pub label_from: BigInt,
    #[serde(with = "crate::serde_big")]
    pub label_to: BigInt,
}

impl Edge {
    pub fn new(
        id: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
        label_from: impl Into<BigInt>,
        label_to: impl Into<BigInt>,
    ) -> Self {
        Edge {
            id: id.into(),
            from: from.into(),
            to: to.into(),
            label_from: label_from.into(),
            label_to: label_to.into(),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }

    /// Endpoint e(ε).
    pub fn end(&self, eps: i8) -> &str {
        if eps > 0 {
            &self.from
        } else {
            &self.to
        }
    }

    /// Label λ(εe).
    pub fn label(&self, eps: i8) -> &BigInt {
        if eps > 0 {
            &self.label_from
        } else {
            &self.label_to
        }
    }

    fn label_mut(&mut self, eps: i8) -> &mut BigInt {
        if eps > 0 {
            &mut self.label_from
        } else {
            &mut self.label_to
        }
    }

    fn end_mut(&mut self, eps: i8) -> &mut String {
        if eps > 0 {
            &mut self.from
        } else {
            &mut self.to
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct LabeledGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for LabeledGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        LabeledGraph::new(raw.vertices, raw.edges)
    }
}

/// Maximal subtree with vertex weights: `w(root) = 1` and
/// `λ(+e)·w(e(1)) = λ(−e)·w(e(−1))` on every tree edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningData {
    root: String,
    tree: BTreeSet<String>,
    weights: BTreeMap<String, BigRational>,
}

impl SpanningData {
    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn tree(&self) -> &BTreeSet<String> {
        &self.tree
    }

    pub fn in_tree(&self, edge: &str) -> bool {
        self.tree.contains(edge)
    }

    pub fn weights(&self) -> &BTreeMap<String, BigRational> {
        &self.weights
    }

    pub fn weight(&self, vertex: &str) -> &BigRational {
        &self.weights[vertex]
    }
}

impl Serialize for SpanningData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            root: &'a str,
            tree: &'a BTreeSet<String>,
            weights: BTreeMap<&'a str, String>,
        }
        Repr {
            root: &self.root,
            tree: &self.tree,
            weights: self
                .weights
                .iter()
                .map(|(v, w)| (v.as_str(), w.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum GbsClass {
    InfiniteCyclic,
    #[serde(rename = "bs-1-1")]
    Bs11,
    #[serde(rename = "bs-1-minus1")]
    Bs1Minus1,
    #[serde(rename = "solvable-bs1n")]
    SolvableBs1n {
        #[serde(with = "crate::serde_big")]
        n: BigInt,
    },
    NonSolvable,
}

impl GbsClass {
    pub fn is_elementary(&self) -> bool {
        matches!(
            self,
            GbsClass::InfiniteCyclic | GbsClass::Bs11 | GbsClass::Bs1Minus1
        )
    }

    fn from_bs1n(n: BigInt) -> Self {
        if n.is_one() {
            GbsClass::Bs11
        } else if n == -BigInt::one() {
            GbsClass::Bs1Minus1
        } else {
            GbsClass::SolvableBs1n { n }
        }
    }
}

impl fmt::Display for GbsClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GbsClass::InfiniteCyclic => write!(f, "infinite-cyclic"),
            GbsClass::Bs11 => write!(f, "bs-1-1"),
            GbsClass::Bs1Minus1 => write!(f, "bs-1-minus1"),
            GbsClass::SolvableBs1n { n } => write!(f, "solvable-bs1n n={n}"),
            GbsClass::NonSolvable => write!(f, "non-solvable"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModularClass {
    Trivial,
    PlusMinusOne,
    Other,
}

impl fmt::Display for ModularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModularClass::Trivial => "trivial",
            ModularClass::PlusMinusOne => "plus-minus-one",
            ModularClass::Other => "other",
        })
    }
}

/// Values of the modular homomorphism on the generators `t_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularImage {
    generators: Vec<(String, BigRational)>,
    classification: ModularClass,
}

impl ModularImage {
    pub fn generators(&self) -> &[(String, BigRational)] {
        &self.generators
    }

    pub fn classification(&self) -> ModularClass {
        self.classification
    }

    pub fn delta(&self, edge: &str) -> Option<&BigRational> {
        self.generators
            .iter()
            .find(|(e, _)| e == edge)
            .map(|(_, d)| d)
    }
}

impl Serialize for ModularImage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Gen<'a> {
            edge: &'a str,
            delta: String,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            classification: ModularClass,
            generators: Vec<Gen<'a>>,
        }
        Repr {
            classification: self.classification,
            generators: self
                .generators
                .iter()
                .map(|(e, d)| Gen {
                    edge: e,
                    delta: d.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl LabeledGraph {
    /// Validates: non-empty, unique vertex and edge ids, endpoints exist,
    /// labels nonzero, connected.
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let bad = |msg: String| Err(Error::Parse(format!("invalid graph: {msg}")));
        if vertices.is_empty() {
            return bad("no vertices".into());
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return bad(format!("duplicate vertex `{v}`"));
            }
        }
        let mut ids = BTreeSet::new();
        for e in &edges {
            if !ids.insert(e.id.as_str()) {
                return bad(format!("duplicate edge id `{}`", e.id));
            }
            for end in [&e.from, &e.to] {
                if !seen.contains(end.as_str()) {
                    return bad(format!("edge `{}` uses unknown vertex `{end}`", e.id));
                }
            }
            if e.label_from.is_zero() || e.label_to.is_zero() {
                return bad(format!("edge `{}` has a zero label", e.id));
            }
        }
        let g = LabeledGraph { vertices, edges };
        if g.grow(&g.vertices[0], None).0.len() != g.vertices.len() {
            return bad("not connected".into());
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialization cannot fail")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.iter().any(|x| x == v)
    }

    /// BFS from `root`, scanning edges in list order, optionally restricted
    /// to the edge ids in `allowed`. Returns weights and the tree edges used.
    fn grow(
        &self,
        root: &str,
        allowed: Option<&BTreeSet<String>>,
    ) -> (BTreeMap<String, BigRational>, BTreeSet<String>) {
        let mut weights = BTreeMap::new();
        weights.insert(root.to_string(), BigRational::one());
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::from([root.to_string()]);
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                if e.is_loop() || allowed.is_some_and(|a| !a.contains(&e.id)) {
                    continue;
                }
                let wv = weights[&v].clone();
                let (child, w) = if e.from == v && !weights.contains_key(&e.to) {
                    (&e.to, wv * ratio(&e.label_from, &e.label_to))
                } else if e.to == v && !weights.contains_key(&e.from) {
                    (&e.from, wv * ratio(&e.label_to, &e.label_from))
                } else {
                    continue;
                };
                weights.insert(child.clone(), w);
                tree.insert(e.id.clone());
                queue.push_back(child.clone());
            }
        }
        (weights, tree)
    }

    /// BFS spanning tree from the first vertex.
    pub fn maximal_subtree(&self) -> SpanningData {
        let root = self.vertices[0].clone();
        let (weights, tree) = self.grow(&root, None);
        SpanningData {
            root,
            tree,
            weights,
        }
    }

    /// Spanning data for a prescribed tree.
    pub fn spanning_on(&self, root: &str, tree: &BTreeSet<String>) -> Result<SpanningData> {
        let (weights, used) = self.grow(root, Some(tree));
        if weights.len() != self.vertices.len() || &used != tree {
            return Err(Error::Precondition(
                "edge set is not a maximal subtree".into(),
            ));
        }
        Ok(SpanningData {
            root: root.to_string(),
            tree: used,
            weights,
        })
    }

    /// All (edge, end) pairs admitting an elementary collapse, ordered by
    /// edge id with `+1` before `−1`.
    pub fn collapsible(&self) -> Vec<(String, i8)> {
        let mut out: Vec<(String, i8)> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .flat_map(|e| {
                [1i8, -1]
                    .into_iter()
                    .filter(|&eps| e.label(eps).abs().is_one())
                    .map(|eps| (e.id.clone(), eps))
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.collapsible().is_empty()
    }

    /// Contracts `e`, merging e(ε) into e(−ε) after multiplying every other
    /// label at e(ε) by λ(εe)λ(−εe).
    pub fn elementary_collapse(&self, edge: &str, eps: i8) -> Result<LabeledGraph> {
        let eps = if eps > 0 { 1 } else { -1 };
        let e = self
            .edge(edge)
            .ok_or_else(|| Error::Precondition(format!("no edge `{edge}`")))?;
        if e.is_loop() {
            return Err(Error::Precondition(format!("edge `{edge}` is a loop")));
        }
        if !e.label(eps).abs().is_one() {
            return Err(Error::Precondition(format!(
                "label {} of edge `{edge}` is not ±1",
                e.label(eps)
            )));
        }
        let gone = e.end(eps).to_string();
        let keep = e.end(-eps).to_string();
        let factor = e.label(eps) * e.label(-eps);
        let mut edges = Vec::with_capacity(self.edges.len() - 1);
        for f in self.edges.iter().filter(|f| f.id != edge) {
            let mut f = f.clone();
            for d in [1i8, -1] {
                if f.end(d) == gone {
                    *f.label_mut(d) *= &factor;
                    *f.end_mut(d) = keep.clone();
                }
            }
            edges.push(f);
        }
        let vertices = self
            .vertices
            .iter()
            .filter(|v| **v != gone)
            .cloned()
            .collect();
        Ok(LabeledGraph { vertices, edges })
    }

    /// Collapses the smallest collapsible (edge, end) until none remain.
    pub fn reduce(&self) -> LabeledGraph {
        self.reduce_with(|_| 0)
    }

    /// Like [`reduce`](Self::reduce), with `choose` picking an index into
    /// the current (non-empty) list of collapsible pairs.
    pub fn reduce_with(&self, mut choose: impl FnMut(&[(String, i8)]) -> usize) -> LabeledGraph {
        let mut g = self.clone();
        loop {
            let options = g.collapsible();
            if options.is_empty() {
                return g;
            }
            let (id, eps) = &options[choose(&options).min(options.len() - 1)];
            g = g
                .elementary_collapse(id, *eps)
                .expect("collapsible pair must collapse");
        }
    }

    /// Admissible sign changes making every tree-edge label positive.
    ///
    /// Tree edges are visited outward from the root: an edge whose label at
    /// the parent end is negative has both labels negated, then the child
    /// vertex has all labels around it negated if its end is still negative.
    pub fn normalize_signs(&self, span: &SpanningData) -> LabeledGraph {
        let mut g = self.clone();
        let mut visited = BTreeSet::from([span.root.clone()]);
        let mut queue = VecDeque::from([span.root.clone()]);
        while let Some(parent) = queue.pop_front() {
            for idx in 0..g.edges.len() {
                let e = &g.edges[idx];
                if !span.in_tree(&e.id) || e.is_loop() {
                    continue;
                }
                let up = if e.from == parent && !visited.contains(&e.to) {
                    1i8
                } else if e.to == parent && !visited.contains(&e.from) {
                    -1
                } else {
                    continue;
                };
                let child = e.end(-up).to_string();
                if g.edges[idx].label(up).is_negative() {
                    let e = &mut g.edges[idx];
                    e.label_from = -&e.label_from;
                    e.label_to = -&e.label_to;
                }
                if g.edges[idx].label(-up).is_negative() {
                    g.flip_vertex(&child);
                }
                visited.insert(child.clone());
                queue.push_back(child);
            }
        }
        g
    }

    fn flip_vertex(&mut self, v: &str) {
        for e in &mut self.edges {
            for d in [1i8, -1] {
                if e.end(d) == v {
                    let l = e.label_mut(d);
                    *l = -&*l;
                }
            }
        }
    }

    /// Whether every label at an end of a tree edge is positive.
    pub fn is_tree_positive(&self, span: &SpanningData) -> bool {
        self.edges
            .iter()
            .filter(|e| span.in_tree(&e.id))
            .all(|e| e.label_from.is_positive() && e.label_to.is_positive())
    }

    /// Reduced, 𝒯-positive form with its spanning data.
    pub fn positive_form(&self) -> (LabeledGraph, SpanningData) {
        let reduced = self.reduce();
        let span = reduced.maximal_subtree();
        let positive = reduced.normalize_signs(&span);
        let span = positive
            .spanning_on(&span.root, &span.tree)
            .expect("sign changes keep the tree");
        (positive, span)
    }

    /// Classification of a reduced graph.
    ///
    /// A single vertex with one loop carrying a unit label is BS(1, n); a
    /// segment with labels of absolute value (2, 2) presents the Klein
    /// bottle group, which is BS(1, −1). All other reduced graphs define
    /// non-solvable groups.
    pub fn classify(&self) -> Result<GbsClass> {
        if !self.is_reduced() {
            return Err(Error::Precondition("graph is not reduced".into()));
        }
        let two = BigInt::from(2);
        match (self.vertices.len(), self.edges.as_slice()) {
            (1, []) => Ok(GbsClass::InfiniteCyclic),
            (1, [e]) => {
                let (p, m) = (&e.label_from, &e.label_to);
                if p.abs().is_one() {
                    Ok(GbsClass::from_bs1n(m * p))
                } else if m.abs().is_one() {
                    Ok(GbsClass::from_bs1n(p * m))
                } else {
                    Ok(GbsClass::NonSolvable)
                }
            }
            (2, [e]) if e.label_from.abs() == two && e.label_to.abs() == two => {
                Ok(GbsClass::Bs1Minus1)
            }
            _ => Ok(GbsClass::NonSolvable),
        }
    }

    /// Δ(t_e) = λ(−e)·w(e(−1)) / (λ(+e)·w(e(1))) on every non-tree edge.
    pub fn modular_image(&self, span: &SpanningData) -> Result<ModularImage> {
        if self.edges.is_empty() || self.reduce().edges.is_empty() {
            return Err(Error::Precondition(
                "modular homomorphism needs a non-cyclic group".into(),
            ));
        }
        let generators: Vec<(String, BigRational)> = self
            .edges
            .iter()
            .filter(|e| !span.in_tree(&e.id))
            .map(|e| {
                let top = BigRational::from(e.label_to.clone()) * span.weight(&e.to);
                let bottom = BigRational::from(e.label_from.clone()) * span.weight(&e.from);
                (e.id.clone(), top / bottom)
            })
            .collect();
        let minus_one = -BigRational::one();
        let classification = if generators.iter().all(|(_, d)| d.is_one()) {
            ModularClass::Trivial
        } else if generators
            .iter()
            .all(|(_, d)| d.is_one() || *d == minus_one)
        {
            ModularClass::PlusMinusOne
        } else {
            ModularClass::Other
        };
        Ok(ModularImage {
            generators,
            classification,
        })
    }

    /// All labels with multiplicity, λ(+e) then λ(−e) per edge.
    pub fn labels(&self) -> impl Iterator<Item = &BigInt> {
        self.edges.iter().flat_map(|e| [&e.label_from, &e.label_to])
    }
}

fn ratio(num: &BigInt, den: &BigInt) -> BigRational {
    BigRational::new(num.clone(), den.clone())
}
