//! The graph file format.
//!
//! ```json
//! {"prime": 2, "root_index": 4, "dim": 1, "levels": 2,
//!  "vertices": [{"id": "v1", "weight": ["0/1", "0/1", "1/1"], "sqrt": ["0/1", "1/1"]}],
//!  "edges": [{"id": "e1", "from": "v1", "to": "v1", "voltage": [1], "beta": [0]}]}
//! ```
//!
//! Weights and square roots are coefficient arrays in π (shorter arrays are
//! zero-padded). Any extra per-edge key holding an integer array can serve as
//! a secondary voltage.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{PiElem, PiField};
use crate::graph::{Edge, Vertex, VertexWeightedGraph};
use crate::voltage::{FiniteAbelianGroup, FiniteVoltage, VoltageAssignment};

#[derive(Debug, Serialize, Deserialize)]
struct RawFile {
    prime: u64,
    root_index: usize,
    #[serde(default = "default_dim")]
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    levels: Option<u32>,
    vertices: Vec<RawVertex>,
    edges: Vec<RawEdge>,
}

fn default_dim() -> usize {
    1
}

#[derive(Debug, Serialize, Deserialize)]
struct RawVertex {
    id: String,
    weight: Value,
    sqrt: Value,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawEdge {
    id: String,
    from: String,
    to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    voltage: Option<Vec<i64>>,
    #[serde(flatten)]
    extra: BTreeMap<String, Value>,
}

/// A parsed graph file.
#[derive(Clone, Debug)]
pub struct GraphFile {
    pub field: PiField,
    pub graph: VertexWeightedGraph<PiElem>,
    pub dim: usize,
    pub levels: Option<u32>,
    /// Present when every edge carries a `voltage` array.
    pub voltage: Option<VoltageAssignment>,
    /// Unrecognised per-edge keys, in edge order.
    pub extra: Vec<BTreeMap<String, Value>>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let field = PiField::new(raw.prime, raw.root_index)?;
        let vertices = raw
            .vertices
            .iter()
            .map(|v| {
                Ok(Vertex {
                    id: v.id.clone(),
                    weight: field.parse_json(&v.weight)?,
                    sqrt: field.parse_json(&v.sqrt)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if vertices.is_empty() {
            return Err(Error::Parse("graph has no vertices".into()));
        }
        let index = |id: &str| {
            vertices
                .iter()
                .position(|v| v.id == id)
                .ok_or_else(|| Error::Parse(format!("edge endpoint `{id}` is not a vertex")))
        };
        let edges = raw
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    id: e.id.clone(),
                    from: index(&e.from)?,
                    to: index(&e.to)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let graph = VertexWeightedGraph::new(vertices, edges)?;
        let given = raw.edges.iter().filter(|e| e.voltage.is_some()).count();
        let voltage = if given == 0 {
            None
        } else if given == raw.edges.len() {
            let values = raw.edges.iter().map(|e| e.voltage.clone().unwrap_or_default()).collect();
            Some(VoltageAssignment::new(raw.dim, values).map_err(|e| Error::Parse(e.to_string()))?)
        } else {
            return Err(Error::Parse("voltage given on some edges only".into()));
        };
        Ok(GraphFile {
            field,
            graph,
            dim: raw.dim,
            levels: raw.levels,
            voltage,
            extra: raw.edges.into_iter().map(|e| e.extra).collect(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn require_voltage(&self) -> Result<&VoltageAssignment> {
        self.voltage
            .as_ref()
            .ok_or_else(|| Error::Parse("graph file has no `voltage` arrays".into()))
    }

    /// The per-edge integer arrays under `key`, reduced into Z/m.
    pub fn secondary_voltage(&self, key: &str, m: u64) -> Result<FiniteVoltage> {
        let group = FiniteAbelianGroup::new(vec![m]);
        let values = self
            .extra
            .iter()
            .zip(self.graph.edges())
            .map(|(extra, e)| {
                let v = extra
                    .get(key)
                    .ok_or_else(|| Error::Parse(format!("edge `{}` has no `{key}`", e.id)))?;
                let ints: Vec<i64> = serde_json::from_value(v.clone())
                    .map_err(|_| Error::Parse(format!("`{key}` of edge `{}` is not an integer array", e.id)))?;
                if ints.len() != 1 {
                    return Err(Error::Parse(format!("`{key}` of edge `{}` must have one entry", e.id)));
                }
                Ok(group.reduce(&ints))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteVoltage::new(group, values)
    }

    pub fn to_json(&self) -> Value {
        let g = &self.graph;
        let raw = RawFile {
            prime: self.field.prime(),
            root_index: self.field.root_index(),
            dim: self.dim,
            levels: self.levels,
            vertices: g
                .vertices()
                .iter()
                .map(|v| RawVertex {
                    id: v.id.clone(),
                    weight: v.weight.to_json(),
                    sqrt: v.sqrt.to_json(),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(k, e)| RawEdge {
                    id: e.id.clone(),
                    from: g.vertices()[e.from].id.clone(),
                    to: g.vertices()[e.to].id.clone(),
                    voltage: self.voltage.as_ref().map(|a| a.values[k].clone()),
                    extra: self.extra.get(k).cloned().unwrap_or_default(),
                })
                .collect(),
        };
        serde_json::to_value(raw).expect("graph files serialize")
    }

    /// Wraps a graph (for example a derived graph) with an optional voltage.
    pub fn from_graph(graph: VertexWeightedGraph<PiElem>, voltage: Option<VoltageAssignment>) -> Self {
        let field = graph.zero().field();
        let n = graph.edges().len();
        GraphFile {
            field,
            dim: voltage.as_ref().map_or(1, |a| a.dim),
            levels: None,
            voltage,
            extra: vec![BTreeMap::new(); n],
            graph,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    const SAMPLE: &str = r#"{
        "prime": 2, "root_index": 4, "dim": 1,
        "vertices": [
            {"id": "v1", "weight": ["0", "0", "1"], "sqrt": ["0", "1"]},
            {"id": "v2", "weight": ["1"], "sqrt": [1]}
        ],
        "edges": [
            {"id": "e1", "from": "v1", "to": "v2", "voltage": [1], "beta": [3]},
            {"id": "e2", "from": "v2", "to": "v2", "voltage": [-2], "beta": [0]}
        ]
    }"#;

    #[test]
    fn parse_and_round_trip() {
        let f = GraphFile::parse(SAMPLE).unwrap();
        assert_eq!(f.graph.weight(0), &f.field.pi_pow(2));
        assert_eq!(f.voltage.as_ref().unwrap().values, vec![vec![1], vec![-2]]);
        assert_eq!(f.secondary_voltage("beta", 2).unwrap().values, vec![vec![1], vec![0]]);
        let again = GraphFile::parse(&f.to_json().to_string()).unwrap();
        assert_eq!(again.graph, f.graph);
        assert_eq!(again.voltage, f.voltage);
        assert_eq!(again.extra, f.extra);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(GraphFile::parse("{"), Err(Error::Parse(_))));
        let bad_sqrt = SAMPLE.replace(r#""sqrt": [1]"#, r#""sqrt": [2]"#);
        assert_eq!(GraphFile::parse(&bad_sqrt).unwrap_err(), Error::InvalidSqrt("v2".into()));
        let partial = SAMPLE.replace(r#", "voltage": [-2]"#, "");
        assert!(matches!(GraphFile::parse(&partial), Err(Error::Parse(_))));
        let f = GraphFile::parse(SAMPLE).unwrap();
        assert!(f.secondary_voltage("gamma", 2).is_err());
        assert!(f.graph.weight(1).is_one());
    }
}
