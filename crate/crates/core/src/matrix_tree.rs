//! Weighted Laplacians and the vertex-weighted matrix-tree theorems.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::trees::RootedTree;
use crate::graph::{DirectedEdge, VertexWeightedGraph, Weight};
use crate::linalg::LabeledMatrix;

pub type Matrix<F> = LabeledMatrix<String, F>;

/// Which direction of each undirected edge indexes a column of B.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    FirstRecorded,
    Reversed,
}

impl Section {
    fn pick(self, edge: usize) -> DirectedEdge {
        DirectedEdge {
            edge,
            reversed: self == Section::Reversed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LaplacianBundle<F> {
    /// D(u,u) = Σ_{o(e)=u} w_{t(e)}
    pub degree: Matrix<F>,
    /// W(u,v) = Σ_{o(e)=u, t(e)=v} w_v
    pub adjacency: Matrix<F>,
    /// 𝒲(u,v) = Σ_{o(e)=u, t(e)=v} s_u s_v
    pub sym_adjacency: Matrix<F>,
    /// L = D − W
    pub laplacian: Matrix<F>,
    /// ℒ = D − 𝒲
    pub sym_laplacian: Matrix<F>,
    /// diag(w_v)
    pub weights: Matrix<F>,
    /// diag(s_v)
    pub sqrt_weights: Matrix<F>,
    /// B for the first-recorded section
    pub boundary: Matrix<F>,
}

impl<F: Weight> LaplacianBundle<F> {
    pub fn new(g: &VertexWeightedGraph<F>) -> Self {
        let labels = g.vertex_ids();
        let zero = g.zero();
        let mut degree = Matrix::zeros(labels.clone(), labels.clone(), zero.clone());
        let mut adjacency = degree.clone();
        let mut sym_adjacency = degree.clone();
        for e in g.directed_edges() {
            let (u, v) = (g.origin(e), g.terminus(e));
            degree.accumulate(u, u, g.weight(v));
            adjacency.accumulate(u, v, g.weight(v));
            sym_adjacency.accumulate(u, v, &g.sqrt(u).mul(g.sqrt(v)));
        }
        let n = g.vertex_count();
        let weights = Matrix::diagonal(labels.clone(), (0..n).map(|v| g.weight(v).clone()).collect(), zero.clone());
        let sqrt_weights = Matrix::diagonal(labels, (0..n).map(|v| g.sqrt(v).clone()).collect(), zero);
        LaplacianBundle {
            laplacian: degree.sub(&adjacency).expect("same labels"),
            sym_laplacian: degree.sub(&sym_adjacency).expect("same labels"),
            boundary: boundary(g, Section::FirstRecorded),
            degree,
            adjacency,
            sym_adjacency,
            weights,
            sqrt_weights,
        }
    }
}

/// B(u, e) = s_{t(e)} if o(e) = u, −s_{o(e)} if t(e) = u, 0 for loops.
pub fn boundary<F: Weight>(g: &VertexWeightedGraph<F>, section: Section) -> Matrix<F> {
    let edge_ids = g.edges().iter().map(|e| e.id.clone()).collect();
    let mut b = Matrix::zeros(g.vertex_ids(), edge_ids, g.zero());
    for k in 0..g.edges().len() {
        if g.is_loop(k) {
            continue;
        }
        let e = section.pick(k);
        let (o, t) = (g.origin(e), g.terminus(e));
        b.set(o, k, g.sqrt(t).clone());
        b.set(t, k, g.sqrt(o).neg());
    }
    b
}

/// κ_v(X) = det ℒ with row and column v deleted.
pub fn kappa_v_det<F: Weight>(g: &VertexWeightedGraph<F>, v: usize) -> Result<F> {
    g.require_connected()?;
    let l = LaplacianBundle::new(g).sym_laplacian;
    let id = &g.vertices()[v].id;
    l.minor(std::slice::from_ref(id), std::slice::from_ref(id))?.det_gauss()
}

/// All rooted complexities by determinants, computed in parallel.
pub fn kappa_all_det<F: Weight>(g: &VertexWeightedGraph<F>) -> Result<Vec<F>> {
    g.require_connected()?;
    let l = LaplacianBundle::new(g).sym_laplacian;
    (0..g.vertex_count())
        .into_par_iter()
        .map(|v| {
            let id = &g.vertices()[v].id;
            l.minor(std::slice::from_ref(id), std::slice::from_ref(id))?.det_gauss()
        })
        .collect()
}

/// κ(X) as the sum of all principal (n−1)-minors; valid even when Σ w = 0.
pub fn kappa_det<F: Weight>(g: &VertexWeightedGraph<F>) -> Result<F> {
    Ok(kappa_all_det(g)?.into_iter().fold(g.zero(), |acc, k| acc.add(&k)))
}

/// (Σ w_z)·adj(ℒ)(u,v) = s_u s_v κ(X) for all pairs (u, v).
pub fn mtt2_check<F: Weight>(g: &VertexWeightedGraph<F>) -> Result<bool> {
    let kappa = kappa_det(g)?;
    let adj = LaplacianBundle::new(g).sym_laplacian.adjugate()?;
    let total = g.total_weight();
    let n = g.vertex_count();
    Ok((0..n).all(|u| {
        (0..n).all(|v| total.mul(adj.get(u, v)) == g.sqrt(u).mul(g.sqrt(v)).mul(&kappa))
    }))
}

/// det B[{v}, S∖A]: row v removed, only the columns in `a` kept.
pub fn boundary_minor<F: Weight>(g: &VertexWeightedGraph<F>, v: usize, a: &[usize]) -> Result<F> {
    let b = boundary(g, Section::FirstRecorded);
    let drop_cols: Vec<String> = (0..g.edges().len())
        .filter(|k| !a.contains(k))
        .map(|k| g.edges()[k].id.clone())
        .collect();
    let m = b.minor(std::slice::from_ref(&g.vertices()[v].id), &drop_cols)?;
    m.det_gauss()
}

/// Non-trees give 0; a tree's minor squares to the rooted weight w((Ã)_v).
pub fn boundary_minor_check<F: Weight>(g: &VertexWeightedGraph<F>, v: usize, a: &[usize]) -> Result<bool> {
    if a.len() + 1 != g.vertex_count() || a.iter().any(|&e| g.is_loop(e)) {
        return Err(Error::DimensionMismatch("need |V| − 1 loop-free edges".into()));
    }
    let det = boundary_minor(g, v, a)?;
    Ok(match RootedTree::new(g, a, v) {
        Ok(t) => det.mul(&det) == t.rooted_weight(g),
        Err(_) => det.is_zero(),
    })
}

/// Structural identities of the bundle, each reported separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleChecks {
    /// ℒ = B Bᵀ for the first-recorded section
    pub factor_first: bool,
    /// ℒ = B Bᵀ for the reversed section
    pub factor_reversed: bool,
    /// √𝒮 L = ℒ √𝒮
    pub conjugation: bool,
    /// ℒ (√𝒮 𝟙) = 0
    pub kernel: bool,
    /// 𝒲 is symmetric
    pub symmetric: bool,
}

impl BundleChecks {
    pub fn all(&self) -> bool {
        self.factor_first && self.factor_reversed && self.conjugation && self.kernel && self.symmetric
    }
}

pub fn bundle_checks<F: Weight>(g: &VertexWeightedGraph<F>) -> Result<BundleChecks> {
    let bundle = LaplacianBundle::new(g);
    let factor = |s: Section| -> Result<bool> {
        let b = boundary(g, s);
        Ok(b.mul(&b.transpose())? == bundle.sym_laplacian)
    };
    let lhs = bundle.sqrt_weights.mul(&bundle.laplacian)?;
    let rhs = bundle.sym_laplacian.mul(&bundle.sqrt_weights)?;
    let labels = g.vertex_ids();
    let ones = LabeledMatrix::from_fn(labels, vec!["1".to_string()], g.zero(), |_, _| g.zero().one_like());
    let kernel = bundle.sym_laplacian.mul(&bundle.sqrt_weights.mul(&ones)?)?;
    Ok(BundleChecks {
        factor_first: factor(Section::FirstRecorded)?,
        factor_reversed: factor(Section::Reversed)?,
        conjugation: lhs == rhs,
        kernel: (0..g.vertex_count()).all(|i| kernel.get(i, 0).is_zero()),
        symmetric: bundle.sym_adjacency.transpose().relabel(g.vertex_ids(), g.vertex_ids()) == bundle.sym_adjacency,
    })
}
