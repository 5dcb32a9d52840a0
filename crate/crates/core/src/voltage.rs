//! Voltage assignments, derived graphs and intermediate graphs.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, Edge, Vertex, VertexWeightedGraph, Weight};

/// An element of a finite abelian group, as residues per cyclic factor.
pub type GroupElem = Vec<u64>;

/// ∏ Z/m_i with elements listed lexicographically (first coordinate most
/// significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        assert!(orders.iter().all(|&m| m >= 1), "cyclic orders must be positive");
        FiniteAbelianGroup { orders }
    }

    /// (Z/p^n Z)^d
    pub fn tower_level(p: u64, n: u32, d: usize) -> Self {
        Self::new(vec![p.pow(n); d])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.rank()]
    }

    pub fn elements(&self) -> Vec<GroupElem> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn element(&self, mut index: usize) -> GroupElem {
        let mut out = vec![0; self.rank()];
        for (slot, &m) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (index as u64) % m;
            index /= m as usize;
        }
        out
    }

    pub fn index_of(&self, g: &[u64]) -> usize {
        g.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    /// Reduces an integer vector into the group.
    pub fn reduce(&self, a: &[i64]) -> GroupElem {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &m)| x.rem_euclid(m as i64) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> GroupElem {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), m)| (x + y) % m).collect()
    }

    pub fn neg(&self, a: &[u64]) -> GroupElem {
        a.iter().zip(&self.orders).map(|(x, m)| (m - x) % m).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> GroupElem {
        self.add(a, &self.neg(b))
    }

    /// k·a for an integer k.
    pub fn scale(&self, k: i64, a: &[u64]) -> GroupElem {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &m)| (k.rem_euclid(m as i64) as u64 * x) % m)
            .collect()
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        let zero = self.zero();
        let mut k = 1;
        let mut x = a.to_vec();
        while x != zero {
            x = self.add(&x, a);
            k += 1;
        }
        k
    }

    pub fn format_elem(&self, a: &[u64]) -> String {
        if a.len() == 1 {
            a[0].to_string()
        } else {
            format!("({})", a.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        }
    }
}

/// Integer voltages a(e) ∈ Z^d on the undirected edges; ē carries −a(e).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageAssignment {
    pub dim: usize,
    pub values: Vec<Vec<i64>>,
}

impl VoltageAssignment {
    pub fn new(dim: usize, values: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!("voltage {v:?} is not of dimension {dim}")));
        }
        Ok(VoltageAssignment { dim, values })
    }

    pub fn zero(dim: usize, edges: usize) -> Self {
        VoltageAssignment {
            dim,
            values: vec![vec![0; dim]; edges],
        }
    }

    pub fn of(&self, e: DirectedEdge) -> Vec<i64> {
        let v = &self.values[e.edge];
        if e.reversed {
            v.iter().map(|x| -x).collect()
        } else {
            v.clone()
        }
    }
}

/// A voltage assignment with values in a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteVoltage {
    pub group: FiniteAbelianGroup,
    pub values: Vec<GroupElem>,
}

impl FiniteVoltage {
    pub fn new(group: FiniteAbelianGroup, values: Vec<GroupElem>) -> Result<Self> {
        for v in &values {
            if v.len() != group.rank() || v.iter().zip(group.orders()).any(|(x, m)| x >= m) {
                return Err(Error::DimensionMismatch(format!("{v:?} is not an element of Z/{:?}", group.orders())));
            }
        }
        Ok(FiniteVoltage { group, values })
    }

    /// Reduces integer voltages into an arbitrary group of matching rank.
    pub fn reduce(alpha: &VoltageAssignment, group: FiniteAbelianGroup) -> Result<Self> {
        if alpha.dim != group.rank() {
            return Err(Error::DimensionMismatch(format!(
                "voltage dimension {} against group rank {}",
                alpha.dim,
                group.rank()
            )));
        }
        let values = alpha.values.iter().map(|v| group.reduce(v)).collect();
        Ok(FiniteVoltage { group, values })
    }

    pub fn of(&self, e: DirectedEdge) -> GroupElem {
        let v = &self.values[e.edge];
        if e.reversed {
            self.group.neg(v)
        } else {
            v.clone()
        }
    }
}

/// α_n: componentwise reduction mod p^n into (Z/p^n Z)^d.
pub fn truncate(alpha: &VoltageAssignment, p: u64, n: u32) -> FiniteVoltage {
    FiniteVoltage::reduce(alpha, FiniteAbelianGroup::tower_level(p, n, alpha.dim)).expect("rank matches by construction")
}

/// X(α) together with its projection to X.
#[derive(Clone, Debug)]
pub struct DerivedGraph<F> {
    pub graph: VertexWeightedGraph<F>,
    pub group: FiniteAbelianGroup,
    /// Derived vertex index → (base vertex, group element index).
    pub fiber: Vec<(usize, usize)>,
    /// Derived edge index → (base edge, group element index of its origin).
    pub edge_map: Vec<(usize, usize)>,
}

impl<F: Weight> DerivedGraph<F> {
    /// Index of (v, σ) in the derived graph.
    pub fn vertex(&self, v: usize, sigma: &[u64]) -> usize {
        v * self.group.order() + self.group.index_of(sigma)
    }

    /// The voltage a(e) pulled back along the projection: (e, σ) ↦ a(e).
    pub fn lift_voltage(&self, alpha: &VoltageAssignment) -> VoltageAssignment {
        VoltageAssignment {
            dim: alpha.dim,
            values: self.edge_map.iter().map(|&(e, _)| alpha.values[e].clone()).collect(),
        }
    }

    pub fn lift_finite(&self, alpha: &FiniteVoltage) -> FiniteVoltage {
        FiniteVoltage {
            group: alpha.group.clone(),
            values: self.edge_map.iter().map(|&(e, _)| alpha.values[e].clone()).collect(),
        }
    }
}

/// The derived graph X(α): vertices (v, σ) vertex-major, edges (e, σ) from
/// (o(e), σ) to (t(e), σ + α(e)).
pub fn derive<F: Weight>(g: &VertexWeightedGraph<F>, alpha: &FiniteVoltage) -> Result<DerivedGraph<F>> {
    if alpha.values.len() != g.edges().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} voltages for {} edges",
            alpha.values.len(),
            g.edges().len()
        )));
    }
    let group = alpha.group.clone();
    let elems = group.elements();
    let mut vertices = Vec::with_capacity(g.vertex_count() * elems.len());
    let mut fiber = Vec::with_capacity(vertices.capacity());
    for (v, vert) in g.vertices().iter().enumerate() {
        for (s, sigma) in elems.iter().enumerate() {
            vertices.push(Vertex {
                id: format!("{}@{}", vert.id, group.format_elem(sigma)),
                weight: vert.weight.clone(),
                sqrt: vert.sqrt.clone(),
            });
            fiber.push((v, s));
        }
    }
    let n = group.order();
    let mut edges = Vec::with_capacity(g.edges().len() * n);
    let mut edge_map = Vec::with_capacity(edges.capacity());
    for (k, e) in g.edges().iter().enumerate() {
        for (s, sigma) in elems.iter().enumerate() {
            let target = group.add(sigma, &alpha.values[k]);
            edges.push(Edge {
                id: format!("{}@{}", e.id, group.format_elem(sigma)),
                from: e.from * n + s,
                to: e.to * n + group.index_of(&target),
            });
            edge_map.push((k, s));
        }
    }
    Ok(DerivedGraph {
        graph: VertexWeightedGraph::new(vertices, edges)?,
        group,
        fiber,
        edge_map,
    })
}

/// Fibers have size |G| and each vertex star maps bijectively onto the star below.
pub fn check_cover<F: Weight>(base: &VertexWeightedGraph<F>, derived: &DerivedGraph<F>) -> bool {
    let n = derived.group.order();
    let mut fiber_sizes = vec![0; base.vertex_count()];
    for &(v, _) in &derived.fiber {
        fiber_sizes[v] += 1;
    }
    if fiber_sizes.iter().any(|&s| s != n) {
        return false;
    }
    let star = |g: &VertexWeightedGraph<F>, v: usize| -> Vec<DirectedEdge> {
        g.directed_edges().filter(|&e| g.origin(e) == v).collect()
    };
    (0..derived.graph.vertex_count()).all(|x| {
        let (v, _) = derived.fiber[x];
        let mut up: Vec<DirectedEdge> = star(&derived.graph, x)
            .into_iter()
            .map(|e| DirectedEdge {
                edge: derived.edge_map[e.edge].0,
                reversed: e.reversed,
            })
            .collect();
        let mut down = star(base, v);
        up.sort();
        down.sort();
        up == down && up.windows(2).all(|w| w[0] != w[1])
    })
}

/// A subgroup H ≤ G presented as an abstract group ∏ Z/ord(g_i) with an
/// injective embedding h ↦ Σ h_i g_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub ambient: FiniteAbelianGroup,
    pub group: FiniteAbelianGroup,
    pub generators: Vec<GroupElem>,
}

impl Subgroup {
    /// Fails with `NotSubgroup` unless the generators are independent.
    pub fn from_generators(ambient: &FiniteAbelianGroup, generators: Vec<GroupElem>) -> Result<Self> {
        for g in &generators {
            if g.len() != ambient.rank() || g.iter().zip(ambient.orders()).any(|(x, m)| x >= m) {
                return Err(Error::NotSubgroup(format!("{g:?} is not in the ambient group")));
            }
        }
        let orders = generators.iter().map(|g| ambient.element_order(g)).collect();
        let h = Subgroup {
            ambient: ambient.clone(),
            group: FiniteAbelianGroup::new(orders),
            generators,
        };
        let mut image: Vec<GroupElem> = h.group.elements().iter().map(|x| h.embed(x)).collect();
        image.sort();
        image.dedup();
        if image.len() != h.group.order() {
            return Err(Error::NotSubgroup("generators are not independent".into()));
        }
        Ok(h)
    }

    pub fn whole(ambient: &FiniteAbelianGroup) -> Self {
        let gens = (0..ambient.rank())
            .map(|i| {
                let mut g = ambient.zero();
                g[i] = 1 % ambient.orders()[i];
                g
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        Self::from_generators(ambient, gens).expect("standard basis is independent")
    }

    pub fn trivial(ambient: &FiniteAbelianGroup) -> Self {
        Self::from_generators(ambient, vec![]).expect("empty family is independent")
    }

    pub fn embed(&self, h: &[u64]) -> GroupElem {
        let mut acc = self.ambient.zero();
        for (k, g) in h.iter().zip(&self.generators) {
            acc = self.ambient.add(&acc, &self.ambient.scale(*k as i64, g));
        }
        acc
    }

    pub fn preimage_table(&self) -> HashMap<GroupElem, GroupElem> {
        self.group.elements().into_iter().map(|h| (self.embed(&h), h)).collect()
    }

    pub fn index(&self) -> usize {
        self.ambient.order() / self.group.order()
    }
}

/// Coset representatives σ_i of H\G with a decomposition x = h + σ_i.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub subgroup: Subgroup,
    pub reps: Vec<GroupElem>,
    preimage: HashMap<GroupElem, GroupElem>,
}

impl Transversal {
    /// Fails with `NotTransversal` unless `reps` meets every coset exactly once.
    pub fn new(h: &Subgroup, reps: &[GroupElem]) -> Result<Self> {
        let t = Transversal {
            subgroup: h.clone(),
            reps: reps.to_vec(),
            preimage: h.preimage_table(),
        };
        if reps.len() != h.index() {
            return Err(Error::NotTransversal);
        }
        for (i, r) in reps.iter().enumerate() {
            if r.len() != h.ambient.rank() || r.iter().zip(h.ambient.orders()).any(|(x, m)| x >= m) {
                return Err(Error::NotTransversal);
            }
            if t.decompose(r).map(|c| c.0) != Some(i) {
                return Err(Error::NotTransversal);
            }
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// (i, h) with x = embed(h) + σ_i; `None` only if `reps` were not a transversal.
    pub fn decompose(&self, x: &[u64]) -> Option<(usize, GroupElem)> {
        let g = &self.subgroup.ambient;
        self.reps
            .iter()
            .enumerate()
            .find_map(|(i, r)| self.preimage.get(&g.sub(x, r)).map(|h| (i, h.clone())))
    }

    /// The H-coordinates of x, if x ∈ H.
    pub fn in_subgroup(&self, x: &[u64]) -> Option<&GroupElem> {
        self.preimage.get(x)
    }
}

/// Z with its voltage β into H.
#[derive(Clone, Debug)]
pub struct Intermediate<F> {
    pub graph: VertexWeightedGraph<F>,
    pub beta: FiniteVoltage,
    pub reps: Vec<GroupElem>,
}

/// The intermediate graph for H\G: vertices (v, Hσ_i), edge (e, i) from
/// (o(e), i) to (t(e), j) where H + σ_i + α(e) = H + σ_j, with
/// β = σ_i + α(e) − σ_j ∈ H. The isomorphism Z(β) ≅ X(α) is verified.
pub fn intermediate<F: Weight>(
    g: &VertexWeightedGraph<F>,
    alpha: &FiniteVoltage,
    h: &Subgroup,
    reps: &[GroupElem],
) -> Result<Intermediate<F>> {
    let group = &alpha.group;
    if &h.ambient != group {
        return Err(Error::NotSubgroup("subgroup of a different group".into()));
    }
    let tr = Transversal::new(h, reps)?;
    let m = reps.len();
    let mut vertices = Vec::new();
    for v in g.vertices() {
        for i in 0..m {
            vertices.push(Vertex {
                id: format!("{}#{}", v.id, i),
                weight: v.weight.clone(),
                sqrt: v.sqrt.clone(),
            });
        }
    }
    let mut edges = Vec::new();
    let mut beta = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        for (i, r) in reps.iter().enumerate() {
            let (j, b) = tr.decompose(&group.add(r, &alpha.values[k])).expect("checked transversal");
            edges.push(Edge {
                id: format!("{}#{}", e.id, i),
                from: e.from * m + i,
                to: e.to * m + j,
            });
            beta.push(b);
        }
    }
    let z = Intermediate {
        graph: VertexWeightedGraph::new(vertices, edges)?,
        beta: FiniteVoltage::new(h.group.clone(), beta)?,
        reps: reps.to_vec(),
    };
    verify_intermediate(g, alpha, h, &z)?;
    Ok(z)
}

/// Checks ((v, i), τ) ↦ (v, τ + σ_i) maps Z(β) onto X(α) edge by edge.
fn verify_intermediate<F: Weight>(
    g: &VertexWeightedGraph<F>,
    alpha: &FiniteVoltage,
    h: &Subgroup,
    z: &Intermediate<F>,
) -> Result<()> {
    let group = &alpha.group;
    let upper = derive(&z.graph, &z.beta)?;
    let target = derive(g, alpha)?;
    let m = z.reps.len();
    let hn = h.group.order();
    let map_vertex = |x: usize| -> usize {
        let (zv, t) = upper.fiber[x];
        let (v, i) = (zv / m, zv % m);
        let tau = h.embed(&h.group.element(t));
        target.vertex(v, &group.add(&tau, &z.reps[i]))
    };
    let mut hit = vec![false; target.graph.edges().len()];
    for (x, e) in upper.graph.edges().iter().enumerate() {
        let (ze, t) = upper.edge_map[x];
        let (k, i) = (ze / m, ze % m);
        let tau = h.embed(&h.group.element(t));
        let image = k * group.order() + group.index_of(&group.add(&tau, &z.reps[i]));
        let te = &target.graph.edges()[image];
        if hit[image] || te.from != map_vertex(e.from) || te.to != map_vertex(e.to) {
            return Err(Error::CheckFailed("Z(β) is not isomorphic to X(α) under the coset map".into()));
        }
        hit[image] = true;
    }
    let vertex_images: std::collections::HashSet<usize> = (0..upper.graph.vertex_count()).map(map_vertex).collect();
    if vertex_images.len() != target.graph.vertex_count() || upper.graph.vertex_count() != m * hn * g.vertex_count() {
        return Err(Error::CheckFailed("coset map is not a bijection on vertices".into()));
    }
    Ok(())
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.orders.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PiElem, PiField};

    fn unit_graph(n: usize, edges: &[(usize, usize)]) -> VertexWeightedGraph {
        let f = PiField::new(2, 1).unwrap();
        VertexWeightedGraph::new(
            (0..n)
                .map(|i| Vertex {
                    id: format!("v{}", i + 1),
                    weight: f.one(),
                    sqrt: f.one(),
                })
                .collect(),
            edges
                .iter()
                .enumerate()
                .map(|(k, &(from, to))| Edge {
                    id: format!("e{}", k + 1),
                    from,
                    to,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn lexicographic_elements() {
        let g = FiniteAbelianGroup::new(vec![2, 3]);
        let e = g.elements();
        assert_eq!(e[1], vec![0, 1]);
        assert_eq!(e[3], vec![1, 0]);
        assert!(e.iter().enumerate().all(|(i, x)| g.index_of(x) == i));
    }

    #[test]
    fn truncation() {
        let a = VoltageAssignment::new(1, vec![vec![1], vec![4], vec![3], vec![-1]]).unwrap();
        assert_eq!(truncate(&a, 2, 1).values, vec![vec![1], vec![0], vec![1], vec![1]]);
        assert_eq!(truncate(&a, 2, 2).values, vec![vec![1], vec![0], vec![3], vec![3]]);
    }

    #[test]
    fn trivial_and_zero_voltage_covers() {
        let g = unit_graph(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]);
        let a = VoltageAssignment::new(1, vec![vec![1], vec![0], vec![0], vec![1]]).unwrap();
        let d = derive(&g, &truncate(&a, 2, 0)).unwrap();
        assert_eq!(d.graph.vertex_count(), 3);
        assert!(check_cover(&g, &d));
        let zero = VoltageAssignment::zero(1, 4);
        let d = derive(&g, &truncate(&zero, 2, 1)).unwrap();
        assert!(!d.graph.is_connected());
        assert!(check_cover(&g, &d));
        let d = derive(&g, &truncate(&a, 2, 1)).unwrap();
        assert!(d.graph.is_connected());
        assert_eq!(d.graph.edges().len(), 8);
        assert!(check_cover(&g, &d));
        // the lifted loop is a doubled edge between the two copies of v1
        let between: Vec<_> = d
            .graph
            .edges()
            .iter()
            .filter(|e| (e.from, e.to) == (0, 1) || (e.from, e.to) == (1, 0))
            .collect();
        assert_eq!(between.len(), 2);
    }

    #[test]
    fn dimension_mismatch() {
        let g = unit_graph(2, &[(0, 1)]);
        let a = VoltageAssignment::new(2, vec![vec![1, 0]]).unwrap();
        assert!(matches!(
            FiniteVoltage::reduce(&a, FiniteAbelianGroup::new(vec![2])),
            Err(Error::DimensionMismatch(_))
        ));
        let short = FiniteVoltage::new(FiniteAbelianGroup::new(vec![2]), vec![]).unwrap();
        assert!(matches!(derive(&g, &short), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn subgroups() {
        let g = FiniteAbelianGroup::new(vec![4]);
        let h = Subgroup::from_generators(&g, vec![vec![2]]).unwrap();
        assert_eq!(h.group.orders(), &[2]);
        assert_eq!(h.index(), 2);
        let k = FiniteAbelianGroup::new(vec![2, 2]);
        assert!(matches!(
            Subgroup::from_generators(&k, vec![vec![1, 0], vec![1, 0]]),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn intermediate_extremes() {
        let g = unit_graph(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]);
        let a = VoltageAssignment::new(1, vec![vec![1], vec![0], vec![0], vec![1]]).unwrap();
        let alpha = truncate(&a, 2, 2);
        let whole = Subgroup::whole(&alpha.group);
        let z = intermediate(&g, &alpha, &whole, &[vec![0]]).unwrap();
        assert_eq!(z.graph.vertex_count(), 3);
        assert_eq!(z.beta.values, alpha.values);
        let triv = Subgroup::trivial(&alpha.group);
        let reps: Vec<_> = alpha.group.elements();
        let z = intermediate(&g, &alpha, &triv, &reps).unwrap();
        assert_eq!(z.graph.vertex_count(), 12);
        assert!(z.beta.values.iter().all(|b| b.is_empty()));
        let half = Subgroup::from_generators(&alpha.group, vec![vec![2]]).unwrap();
        assert!(intermediate(&g, &alpha, &half, &[vec![1], vec![3]]).is_err());
        let z = intermediate(&g, &alpha, &half, &[vec![1], vec![2]]).unwrap();
        assert_eq!(z.graph.vertex_count(), 6);
        let _: &VertexWeightedGraph<PiElem> = &z.graph;
    }
}
