#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use vwtower::field::{PiElem, PiField, RadicalElem, RadicalExt};
use vwtower::graph::{Edge, Vertex, VertexWeightedGraph};
use vwtower::io::GraphFile;
use vwtower::voltage::{derive, FiniteAbelianGroup, FiniteVoltage, VoltageAssignment};
use vwtower::Ring;

pub fn data(name: &str) -> GraphFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    GraphFile::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// √2 in a field with π^M = 2, M divisible by 2.
pub fn sqrt2(f: PiField) -> PiElem {
    f.pi_pow(f.root_index() as i64 / 2)
}

/// a + b√2
pub fn a_b_sqrt2(f: PiField, a: i64, b: i64) -> PiElem {
    f.from_int(a).add(&sqrt2(f).mul(&f.from_int(b)))
}

/// Random edge list on n vertices: a random spanning tree plus extra edges
/// (loops and parallels allowed), at most `max_edges` in total.
pub fn random_edges(rng: &mut impl Rng, n: usize, max_edges: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent, order[i]));
    }
    let extra = rng.gen_range(0..=max_edges.saturating_sub(edges.len()));
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    edges.shuffle(rng);
    edges
}

fn assemble<F: vwtower::graph::Weight>(ws: Vec<(F, F)>, edges: &[(usize, usize)]) -> VertexWeightedGraph<F> {
    let vertices = ws
        .into_iter()
        .enumerate()
        .map(|(i, (weight, sqrt))| Vertex {
            id: format!("v{}", i + 1),
            weight,
            sqrt,
        })
        .collect();
    let edges = edges
        .iter()
        .enumerate()
        .map(|(k, &(from, to))| Edge {
            id: format!("e{}", k + 1),
            from,
            to,
        })
        .collect();
    VertexWeightedGraph::new(vertices, edges).expect("valid random graph")
}

/// Q(2^{1/4})(√−1, √3): every weight below has its square root here.
pub fn mixed_ext() -> RadicalExt {
    let base = PiField::new(2, 4).unwrap();
    RadicalExt::new(base, vec![base.from_int(-1), base.from_int(3)])
}

/// A random (w, s) with s² = w, including negatives, surds and powers of π.
pub fn mixed_weight(rng: &mut impl Rng, ext: &RadicalExt) -> (RadicalElem, RadicalElem) {
    let base = ext.base();
    let i = ext.sqrt_gen(0);
    let s = match rng.gen_range(0..9) {
        0 => ext.one(),
        1 => ext.embed(base.from_int(rng.gen_range(2..4))),
        2 => ext.embed(base.from_rational(vwtower::field::rational::rat(1, 2))),
        3 => i.clone(),
        4 => ext.sqrt_gen(1),
        5 => i.mul(&ext.sqrt_gen(1)),
        6 => ext.embed(base.pi_pow(rng.gen_range(1..4))),
        7 => i.mul(&ext.embed(base.pi())),
        _ => ext.embed(base.pi_pow(2).mul(&base.from_rational(vwtower::field::rational::rat(1, 2)))),
    };
    let s = if rng.gen_bool(0.5) { s.neg() } else { s };
    (s.mul(&s), s)
}

pub fn random_mixed_graph(rng: &mut impl Rng, ext: &RadicalExt) -> VertexWeightedGraph<RadicalElem> {
    let n = rng.gen_range(1..=6);
    let edges = random_edges(rng, n, 9);
    let ws = (0..n).map(|_| mixed_weight(rng, ext)).collect();
    assemble(ws, &edges)
}

/// A random graph whose weights sum to zero: w, −w pairs plus, for odd
/// sizes, a triple (w, w, −2w).
pub fn random_balanced_graph(rng: &mut impl Rng, ext: &RadicalExt) -> VertexWeightedGraph<RadicalElem> {
    let n = rng.gen_range(2..=6);
    let i = ext.sqrt_gen(0);
    let root2 = ext.embed(ext.base().pi_pow(2));
    let mut ws = Vec::new();
    let mut left = n;
    if n % 2 == 1 {
        let (w, s) = mixed_weight(rng, ext);
        ws.push((w.clone(), s.clone()));
        ws.push((w.clone(), s.clone()));
        ws.push((w.mul(&root2.mul(&root2)).neg(), s.mul(&root2).mul(&i)));
        left -= 3;
    }
    for _ in 0..left / 2 {
        let (w, s) = mixed_weight(rng, ext);
        ws.push((w.neg(), s.mul(&i)));
        ws.push((w, s));
    }
    ws.shuffle(rng);
    assemble(ws, &random_edges(rng, n, 9))
}

/// Weights in Q(2^{1/4}) that are squares there.
pub fn pi_weight(rng: &mut impl Rng, f: PiField) -> (PiElem, PiElem) {
    let s = match rng.gen_range(0..5) {
        0 => f.one(),
        1 => f.from_int(2),
        2 => f.pi(),
        3 => f.pi_pow(2),
        _ => f.from_rational(vwtower::field::rational::rat(1, 2)).mul(&f.pi()),
    };
    let s = if rng.gen_bool(0.3) { s.neg() } else { s };
    (s.mul(&s), s)
}

pub fn random_pi_graph(rng: &mut impl Rng, f: PiField, max_vertices: usize, max_edges: usize) -> VertexWeightedGraph {
    let n = rng.gen_range(1..=max_vertices);
    let edges = random_edges(rng, n, max_edges);
    let ws = (0..n).map(|_| pi_weight(rng, f)).collect();
    assemble(ws, &edges)
}

pub fn random_voltage(rng: &mut impl Rng, edges: usize, dim: usize) -> VoltageAssignment {
    let values = (0..edges)
        .map(|_| (0..dim).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    VoltageAssignment::new(dim, values).unwrap()
}

/// A random graph with an integer voltage whose reduction into `group` gives
/// a connected derived graph.
pub fn random_connected_cover(
    rng: &mut impl Rng,
    f: PiField,
    group: &FiniteAbelianGroup,
    max_vertices: usize,
    max_edges: usize,
) -> (VertexWeightedGraph, VoltageAssignment, FiniteVoltage) {
    loop {
        let g = random_pi_graph(rng, f, max_vertices, max_edges);
        let a = random_voltage(rng, g.edges().len(), group.rank());
        let alpha = FiniteVoltage::reduce(&a, group.clone()).unwrap();
        if derive(&g, &alpha).unwrap().graph.is_connected() {
            return (g, a, alpha);
        }
    }
}
