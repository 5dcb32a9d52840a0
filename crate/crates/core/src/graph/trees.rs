//! Brute-force spanning-tree enumeration: the oracle for every complexity.

use std::collections::VecDeque;

use itertools::Itertools;

use super::{DirectedEdge, VertexWeightedGraph, Weight};
use crate::error::{Error, Result};

/// Largest number of non-loop edges the enumerator accepts by default.
pub const DEFAULT_TREE_CAP: usize = 24;

/// Spanning trees as sorted edge-index sets, in lexicographic order.
pub fn spanning_trees<F: Weight>(g: &VertexWeightedGraph<F>) -> Result<Vec<Vec<usize>>> {
    spanning_trees_capped(g, DEFAULT_TREE_CAP)
}

pub fn spanning_trees_capped<F: Weight>(g: &VertexWeightedGraph<F>, cap: usize) -> Result<Vec<Vec<usize>>> {
    g.require_connected()?;
    let candidates: Vec<usize> = (0..g.edges().len()).filter(|&e| !g.is_loop(e)).collect();
    if candidates.len() > cap {
        return Err(Error::TooManyEdges {
            count: candidates.len(),
            cap,
        });
    }
    let n = g.vertex_count();
    Ok(candidates
        .into_iter()
        .combinations(n - 1)
        .filter(|subset| is_forest(g, subset))
        .collect())
}

/// With |V| − 1 edges, acyclic is equivalent to spanning.
fn is_forest<F: Weight>(g: &VertexWeightedGraph<F>, edges: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &e in edges {
        let (a, b) = (find(&mut parent, g.edges()[e].from), find(&mut parent, g.edges()[e].to));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// A spanning tree with every edge oriented toward `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub edges: Vec<usize>,
    pub root: usize,
    /// Directed edges strictly decreasing the distance to the root.
    pub oriented: Vec<DirectedEdge>,
}

impl RootedTree {
    pub fn new<F: Weight>(g: &VertexWeightedGraph<F>, edges: &[usize], root: usize) -> Result<Self> {
        let n = g.vertex_count();
        if edges.len() + 1 != n || edges.iter().any(|&e| g.is_loop(e)) || !is_forest(g, edges) {
            return Err(Error::CheckFailed("edge set is not a spanning tree".into()));
        }
        let mut dist = vec![usize::MAX; n];
        let mut oriented = Vec::with_capacity(edges.len());
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &e in edges {
                let edge = &g.edges()[e];
                let (other, reversed) = if edge.from == u {
                    (edge.to, true)
                } else if edge.to == u {
                    (edge.from, false)
                } else {
                    continue;
                };
                if dist[other] == usize::MAX {
                    dist[other] = dist[u] + 1;
                    // the directed edge runs from `other` to `u`
                    oriented.push(DirectedEdge { edge: e, reversed });
                    queue.push_back(other);
                }
            }
        }
        debug_assert!(oriented.iter().all(|&d| dist[g.origin(d)] == dist[g.terminus(d)] + 1));
        oriented.sort();
        let mut edges = edges.to_vec();
        edges.sort();
        Ok(RootedTree { edges, root, oriented })
    }

    /// w(T_v) = ∏ w_{t(e)} over the oriented edges.
    pub fn rooted_weight<F: Weight>(&self, g: &VertexWeightedGraph<F>) -> F {
        self.oriented
            .iter()
            .fold(g.zero().one_like(), |acc, &e| acc.mul(g.weight(g.terminus(e))))
    }
}

/// κ_v for every vertex from one enumeration of trees.
pub fn kappa_all_oracle<F: Weight>(g: &VertexWeightedGraph<F>) -> Result<Vec<F>> {
    let trees = spanning_trees(g)?;
    (0..g.vertex_count())
        .map(|v| {
            trees.iter().try_fold(g.zero(), |acc, t| {
                Ok(acc.add(&RootedTree::new(g, t, v)?.rooted_weight(g)))
            })
        })
        .collect()
}

pub fn kappa_v_oracle<F: Weight>(g: &VertexWeightedGraph<F>, v: usize) -> Result<F> {
    let trees = spanning_trees(g)?;
    trees.iter().try_fold(g.zero(), |acc, t| {
        Ok(acc.add(&RootedTree::new(g, t, v)?.rooted_weight(g)))
    })
}

pub fn kappa_oracle<F: Weight>(g: &VertexWeightedGraph<F>) -> Result<F> {
    Ok(kappa_all_oracle(g)?
        .into_iter()
        .fold(g.zero(), |acc, k| acc.add(&k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PiElem, PiField};
    use crate::graph::Vertex;
    use crate::ring::Ring;

    fn verts(ws: &[(PiElem, PiElem)]) -> Vec<Vertex<PiElem>> {
        ws.iter()
            .enumerate()
            .map(|(i, (w, s))| Vertex {
                id: format!("v{}", i + 1),
                weight: w.clone(),
                sqrt: s.clone(),
            })
            .collect()
    }

    fn triangle() -> VertexWeightedGraph {
        let f = PiField::new(3, 1).unwrap();
        let one = (f.one(), f.one());
        VertexWeightedGraph::from_ids(
            verts(&[one.clone(), one.clone(), one]),
            &[("a", "v1", "v2"), ("b", "v2", "v3"), ("c", "v3", "v1")],
        )
        .unwrap()
    }

    #[test]
    fn triangle_trees() {
        let g = triangle();
        assert_eq!(spanning_trees(&g).unwrap(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let three = PiField::new(3, 1).unwrap().from_int(3);
        assert_eq!(kappa_all_oracle(&g).unwrap(), vec![three.clone(); 3]);
        assert_eq!(kappa_oracle(&g).unwrap(), three.from_int_like(9));
    }

    #[test]
    fn rooted_weight_orients_toward_root() {
        // path v3 - v2 - v1 rooted at v1: w(T) = w_{v2} · w_{v1}
        let f = PiField::new(2, 4).unwrap();
        let g = VertexWeightedGraph::from_ids(
            verts(&[(f.pi_pow(2), f.pi()), (f.one(), f.one()), (f.one(), f.one())]),
            &[("e1", "v1", "v2"), ("e2", "v2", "v3")],
        )
        .unwrap();
        let t = RootedTree::new(&g, &[0, 1], 0).unwrap();
        assert_eq!(t.rooted_weight(&g), f.pi_pow(2));
        assert!(t.oriented.iter().all(|&e| g.origin(e) != 0));
    }

    #[test]
    fn single_vertex_tree_has_unit_weight() {
        let f = PiField::new(2, 1).unwrap();
        let g = VertexWeightedGraph::from_ids(verts(&[(f.from_int(4), f.from_int(2))]), &[]).unwrap();
        let t = RootedTree::new(&g, &[], 0).unwrap();
        assert_eq!(t.rooted_weight(&g), f.one());
    }

    #[test]
    fn disconnected_and_capped() {
        let f = PiField::new(2, 1).unwrap();
        let one = (f.one(), f.one());
        let g = VertexWeightedGraph::from_ids(verts(&[one.clone(), one.clone()]), &[]).unwrap();
        assert_eq!(spanning_trees(&g), Err(Error::Disconnected { level: None }));
        let g = VertexWeightedGraph::from_ids(
            verts(&[one.clone(), one]),
            &[("a", "v1", "v2"), ("b", "v1", "v2"), ("c", "v2", "v1")],
        )
        .unwrap();
        assert_eq!(spanning_trees_capped(&g, 2), Err(Error::TooManyEdges { count: 3, cap: 2 }));
        assert_eq!(spanning_trees(&g).unwrap().len(), 3);
    }
}
