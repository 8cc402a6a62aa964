//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use gbs_core::{Edge, GbsClass, GroupWord, LabeledGraph};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph(vs: &[&str], es: &[(&str, &str, &str, i64, i64)]) -> LabeledGraph {
    LabeledGraph::new(
        vs.iter().map(|v| v.to_string()).collect(),
        es.iter()
            .map(|&(id, f, t, a, b)| Edge::new(id, f, t, a, b))
            .collect(),
    )
    .unwrap()
}

pub fn trefoil() -> LabeledGraph {
    graph(&["x", "y"], &[("e", "x", "y", 2, 3)])
}

pub fn loop_graph(a: i64, b: i64) -> LabeledGraph {
    graph(&["v"], &[("e", "v", "v", a, b)])
}

const LABELS: [i64; 12] = [1, -1, 1, -1, 2, -2, 3, -3, 4, -4, 6, 5];

fn vertex_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Connected graph on up to `max_vertices` vertices: a random tree plus up to
/// `max_extra` further edges (loops allowed), labels drawn from a small pool
/// that includes ±1 so that collapses occur.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize, max_extra: usize) -> LabeledGraph {
    let nv = rng.gen_range(1..=max_vertices);
    let names = vertex_names(nv);
    let mut edges = Vec::new();
    for i in 1..nv {
        let j = rng.gen_range(0..i);
        let (a, b) = if rng.gen() { (i, j) } else { (j, i) };
        edges.push((names[a].clone(), names[b].clone()));
    }
    for _ in 0..rng.gen_range(0..=max_extra) {
        edges.push((
            names[rng.gen_range(0..nv)].clone(),
            names[rng.gen_range(0..nv)].clone(),
        ));
    }
    edges.shuffle(rng);
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| {
            Edge::new(
                format!("e{k}"),
                a,
                b,
                *LABELS.choose(rng).unwrap(),
                *LABELS.choose(rng).unwrap(),
            )
        })
        .collect();
    LabeledGraph::new(names, edges).unwrap()
}

/// Reduced graph whose group is not solvable.
pub fn random_reduced_nonsolvable(rng: &mut impl Rng) -> LabeledGraph {
    loop {
        let g = random_graph(rng, 4, 3).reduce();
        if g.classify().unwrap() == GbsClass::NonSolvable {
            return g;
        }
    }
}

/// Reduced graph with modular image in {1, −1}.
///
/// Tree labels are random with absolute value at least 2; every extra edge
/// from `a` to `b` gets labels `V/w(a)` and `±V/w(b)` for a common multiple
/// `V`, so that Δ of its stable letter is ±1.
pub fn random_unimodular_graph(rng: &mut impl Rng) -> LabeledGraph {
    let nv = rng.gen_range(1..=4);
    let names = vertex_names(nv);
    let mut tree = Vec::new();
    for i in 1..nv {
        let j = rng.gen_range(0..i);
        let lf = rng.gen_range(2..=6) * random_sign(rng);
        let lt = rng.gen_range(2..=6) * random_sign(rng);
        tree.push(Edge::new(
            format!("t{i}"),
            names[j].clone(),
            names[i].clone(),
            lf,
            lt,
        ));
    }
    let weights = LabeledGraph::new(names.clone(), tree.clone())
        .unwrap()
        .maximal_subtree()
        .weights()
        .clone();
    let extra = if nv == 1 {
        rng.gen_range(1..=3)
    } else {
        rng.gen_range(0..=3)
    };
    let mut edges = tree;
    for k in 0..extra {
        let a = &names[rng.gen_range(0..nv)];
        let b = &names[rng.gen_range(0..nv)];
        let (wa, wb) = (&weights[a], &weights[b]);
        let base = wa.numer().abs().lcm(&wb.numer().abs());
        let v = BigRational::from(base * BigInt::from(rng.gen_range(2..=3)));
        let plus = (&v / wa).to_integer();
        let mut minus = (&v / wb).to_integer();
        if rng.gen() {
            minus = -minus;
        }
        edges.push(Edge::new(
            format!("x{k}"),
            a.clone(),
            b.clone(),
            plus,
            minus,
        ));
    }
    edges.shuffle(rng);
    let g = LabeledGraph::new(names, edges).unwrap();
    assert!(g.is_reduced());
    g
}

fn random_sign(rng: &mut impl Rng) -> i64 {
    if rng.gen() {
        1
    } else {
        -1
    }
}

pub fn random_word(rng: &mut impl Rng, symbols: &[String], max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord::from_terms((0..len).map(|_| {
        let s = symbols.choose(rng).unwrap().clone();
        let mut e = rng.gen_range(1..=3);
        if rng.gen() {
            e = -e;
        }
        (s, e)
    }))
}

pub fn random_bs_word(rng: &mut impl Rng, max_len: usize) -> GroupWord {
    random_word(rng, &["t".to_string(), "a".to_string()], max_len)
}

/// Affine map `q ↦ alpha·q + beta` on Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl Affine {
    pub fn identity() -> Self {
        Affine {
            alpha: BigRational::one(),
            beta: BigRational::zero(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Affine) -> Affine {
        Affine {
            alpha: &self.alpha * &next.alpha,
            beta: &next.alpha * &self.beta + &next.beta,
        }
    }
}

/// Faithful action of BS(1, n), `|n| >= 2`, on Q with words read left to
/// right: `a: q ↦ q + 1`, `t: q ↦ n·q`.
pub fn affine(n: i64, word: &GroupWord) -> Affine {
    let n = BigRational::from(BigInt::from(n));
    let mut acc = Affine::identity();
    for (sym, exp) in word.terms() {
        let step = match sym.as_str() {
            "a" => Affine {
                alpha: BigRational::one(),
                beta: BigRational::from(BigInt::from(*exp)),
            },
            "t" => Affine {
                alpha: n.pow(*exp as i32),
                beta: BigRational::zero(),
            },
            other => panic!("unexpected symbol {other}"),
        };
        acc = acc.then(&step);
    }
    acc
}

/// Word with a defining relator of BS(1, n) or a cancelling pair spliced in
/// at a random position, so it denotes the same element.
pub fn splice_relator(rng: &mut impl Rng, n: i64, word: &GroupWord) -> GroupWord {
    let terms = word.terms();
    let cut = rng.gen_range(0..=terms.len());
    let relator = match rng.gen_range(0..3) {
        0 => GroupWord::from_terms([("t", -1), ("a", 1), ("t", 1), ("a", -n)]),
        1 => GroupWord::from_terms([("a", n), ("t", -1), ("a", -1), ("t", 1)]),
        _ => {
            let s = if rng.gen() { "t" } else { "a" };
            let e = rng.gen_range(1..=3);
            GroupWord::from_terms([(s, e), (s, -e)])
        }
    };
    let head = GroupWord::from_terms(terms[..cut].iter().cloned());
    let tail = GroupWord::from_terms(terms[cut..].iter().cloned());
    head.concat(&relator).concat(&tail)
}
