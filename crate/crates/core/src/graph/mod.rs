//! Vertex-weighted symmetric directed multigraphs.
//!
//! Every undirected edge k with endpoints (u, v) yields the two directed
//! edges `DirectedEdge { edge: k, reversed: false }` (u → v) and its
//! inverse (v → u). Loops yield two distinct directed edges as well.

pub mod trees;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PiElem;
use crate::ring::Field;

/// Weight fields: anything exact with a printable form.
pub trait Weight: Field + fmt::Display {}

impl<F: Field + fmt::Display> Weight for F {}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex<F> {
    pub id: String,
    pub weight: F,
    /// The fixed square root s_v of the weight.
    pub sqrt: F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedEdge {
    pub edge: usize,
    pub reversed: bool,
}

impl DirectedEdge {
    pub fn inverse(self) -> DirectedEdge {
        DirectedEdge {
            edge: self.edge,
            reversed: !self.reversed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexWeightedGraph<F = PiElem> {
    vertices: Vec<Vertex<F>>,
    edges: Vec<Edge>,
}

impl<F: Weight> VertexWeightedGraph<F> {
    /// Validates endpoints, id uniqueness and s_v² = w_v.
    pub fn new(vertices: Vec<Vertex<F>>, edges: Vec<Edge>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].iter().any(|u| u.id == v.id) {
                return Err(Error::Parse(format!("duplicate vertex id `{}`", v.id)));
            }
            if v.sqrt.mul(&v.sqrt) != v.weight {
                return Err(Error::InvalidSqrt(v.id.clone()));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if e.from >= vertices.len() || e.to >= vertices.len() {
                return Err(Error::UnknownLabel(format!("endpoint of edge `{}`", e.id)));
            }
            if edges[..i].iter().any(|f| f.id == e.id) {
                return Err(Error::Parse(format!("duplicate edge id `{}`", e.id)));
            }
        }
        Ok(VertexWeightedGraph { vertices, edges })
    }

    /// Convenience constructor from (id, from-id, to-id) triples.
    pub fn from_ids(vertices: Vec<Vertex<F>>, edges: &[(&str, &str, &str)]) -> Result<Self> {
        let find = |id: &str| {
            vertices
                .iter()
                .position(|v| v.id == id)
                .ok_or_else(|| Error::UnknownLabel(id.to_string()))
        };
        let edges = edges
            .iter()
            .map(|(id, u, v)| {
                Ok(Edge {
                    id: id.to_string(),
                    from: find(u)?,
                    to: find(v)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[Vertex<F>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> Vec<String> {
        self.vertices.iter().map(|v| v.id.clone()).collect()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::UnknownLabel(id.to_string()))
    }

    pub fn weight(&self, v: usize) -> &F {
        &self.vertices[v].weight
    }

    pub fn sqrt(&self, v: usize) -> &F {
        &self.vertices[v].sqrt
    }

    pub fn total_weight(&self) -> F {
        let zero = self.zero();
        self.vertices.iter().fold(zero, |acc, v| acc.add(&v.weight))
    }

    /// A zero of the weight field, taken from the first vertex.
    pub fn zero(&self) -> F {
        self.vertices
            .first()
            .expect("graph has at least one vertex")
            .weight
            .zero_like()
    }

    /// Both orientations of every edge, in edge order.
    pub fn directed_edges(&self) -> impl Iterator<Item = DirectedEdge> + '_ {
        (0..self.edges.len()).flat_map(|edge| {
            [false, true].into_iter().map(move |reversed| DirectedEdge { edge, reversed })
        })
    }

    pub fn origin(&self, e: DirectedEdge) -> usize {
        let edge = &self.edges[e.edge];
        if e.reversed {
            edge.to
        } else {
            edge.from
        }
    }

    pub fn terminus(&self, e: DirectedEdge) -> usize {
        self.origin(e.inverse())
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        self.edges[edge].from == self.edges[edge].to
    }

    /// Breadth-first reachability over undirected edges.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected { level: None })
        }
    }

    /// Same graph with every weight multiplied by c² (square roots by c).
    pub fn scaled(&self, c: &F) -> Self {
        let c2 = c.mul(c);
        VertexWeightedGraph {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vertex {
                    id: v.id.clone(),
                    weight: v.weight.mul(&c2),
                    sqrt: v.sqrt.mul(c),
                })
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// Replaces the square root at vertex `v` by its negative.
    pub fn with_flipped_sqrt(&self, v: usize) -> Self {
        let mut g = self.clone();
        g.vertices[v].sqrt = g.vertices[v].sqrt.neg();
        g
    }
}
