use super::character::{character_ring, galois_orbits, Character};
use crate::error::{Error, Result};
use crate::field::{CycloElem, CycloRing, PiElem};
use crate::graph::VertexWeightedGraph;
use crate::linalg::{LabeledMatrix, LaurentPoly};
use crate::matrix_tree::LaplacianBundle;
use crate::ring::Ring;
use crate::voltage::{derive, FiniteVoltage, VoltageAssignment};

/// Q_X^α(T) ∈ R[T_1^{±}, …, T_d^{±}] in the (1+T)^{−k}·P(T) normal form.
pub type QSeries = LaurentPoly<PiElem>;

fn check_lengths(g: &VertexWeightedGraph, n: usize) -> Result<()> {
    if n != g.edges().len() {
        return Err(Error::DimensionMismatch(format!("{n} voltages for {} edges", g.edges().len())));
    }
    Ok(())
}

/// det(D − 𝕎(T)) with entry factors `twist(e)` on each directed edge.
fn twisted_det<C: Ring>(
    g: &VertexWeightedGraph,
    alpha: &VoltageAssignment,
    embed: impl Fn(&PiElem) -> C,
    twist: impl Fn(crate::graph::DirectedEdge) -> C,
    zero: C,
) -> Result<LaurentPoly<C>> {
    check_lengths(g, alpha.values.len())?;
    let d = alpha.dim;
    let degree = LaplacianBundle::new(g).degree;
    let ids = g.vertex_ids();
    let lzero = LaurentPoly::zero(d, zero.clone());
    let mut m = LabeledMatrix::zeros(ids.clone(), ids, lzero);
    for v in 0..g.vertex_count() {
        m.set(v, v, LaurentPoly::constant(d, embed(degree.get(v, v))));
    }
    for e in g.directed_edges() {
        let (u, v) = (g.origin(e), g.terminus(e));
        let c = embed(&g.sqrt(u).mul(g.sqrt(v))).mul(&twist(e));
        let term = LaurentPoly::unit_monomial(&alpha.of(e), zero.clone()).mul(&LaurentPoly::constant(d, c));
        let entry = m.get(u, v).sub(&term);
        m.set(u, v, entry);
    }
    m.det_berkowitz()
}

/// Q_X^α(T) = det(D − 𝕎^α(T)), 𝕎(u,v) = Σ 𝕥(α(e)) s_u s_v.
pub fn q_series(g: &VertexWeightedGraph, alpha: &VoltageAssignment) -> Result<QSeries> {
    let zero = g.zero();
    let one = zero.one_like();
    twisted_det(g, alpha, PiElem::clone, |_| one.clone(), zero)
}

/// Q(ζ_ψ − 1): substitutes T_i = ψ(e_i) − 1.
pub fn q_eval(q: &QSeries, psi: &Character) -> Result<CycloElem> {
    let group = psi.group();
    if group.rank() != q.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "character of rank {} for a series in {} variables",
            group.rank(),
            q.nvars()
        )));
    }
    let ring = psi.ring();
    let basis = |i: usize, sign: i64| {
        let mut e = vec![0i64; group.rank()];
        e[i] = sign;
        psi.eval(&group.reduce(&e))
    };
    let units: Vec<_> = (0..group.rank()).map(|i| basis(i, 1)).collect();
    let inverses: Vec<_> = (0..group.rank()).map(|i| basis(i, -1)).collect();
    Ok(q.eval_at_units(|c| ring.embed(c.clone()), &units, &inverses))
}

/// Q_X^{α,β}(φ, T): each directed edge also carries φ(β(e)).
pub fn q_twisted(
    g: &VertexWeightedGraph,
    alpha: &VoltageAssignment,
    beta: &FiniteVoltage,
    phi: &Character,
) -> Result<LaurentPoly<CycloElem>> {
    check_lengths(g, beta.values.len())?;
    if phi.group() != &beta.group {
        return Err(Error::DimensionMismatch("twisting character of a different group".into()));
    }
    let ring = phi.ring();
    twisted_det(g, alpha, |c| ring.embed(c.clone()), |e| phi.eval(&beta.of(e)), ring.zero())
}

#[derive(Clone, Debug)]
pub struct TwistedFactorization {
    pub ring: CycloRing,
    /// Q^{α,β}(φ, T) for each φ, in dual order.
    pub factors: Vec<LaurentPoly<CycloElem>>,
    /// Products over Galois orbits of φ, descended to R; the trivial orbit first.
    pub orbit_products: Vec<QSeries>,
    /// ∏_φ Q^{α,β}(φ, T)
    pub product: QSeries,
    /// Q_{X(β)}^{α∘π}(T) computed on the derived graph.
    pub derived: QSeries,
}

impl TwistedFactorization {
    pub fn holds(&self) -> bool {
        self.product == self.derived
    }
}

/// ∏_φ Q^{α,β}(φ, T) = Q_{X(β)}^{α∘π}(T) for β into Z/p.
pub fn twisted_factorization(
    g: &VertexWeightedGraph,
    alpha: &VoltageAssignment,
    beta: &FiniteVoltage,
) -> Result<TwistedFactorization> {
    let zero = g.zero();
    let p = zero.field().prime();
    if beta.group.orders() != [p] {
        return Err(Error::DimensionMismatch(format!("β must take values in Z/{p}")));
    }
    let ring = character_ring(zero.field(), &beta.group)?;
    let chars = Character::all(&beta.group, ring)?;
    let factors = chars
        .iter()
        .map(|phi| q_twisted(g, alpha, beta, phi))
        .collect::<Result<Vec<_>>>()?;
    let orbit_products = galois_orbits(&chars)
        .into_iter()
        .map(|orbit| {
            let prod = orbit[1..]
                .iter()
                .fold(factors[orbit[0]].clone(), |acc, &i| acc.mul(&factors[i]));
            prod.try_map_coeffs(zero.clone(), |c| c.descend().ok_or(Error::NonRationalDescent))
        })
        .collect::<Result<Vec<_>>>()?;
    let product = orbit_products
        .iter()
        .fold(LaurentPoly::constant(alpha.dim, zero.one_like()), |acc, q| acc.mul(q));
    let y = derive(g, beta)?;
    let derived = q_series(&y.graph, &y.lift_voltage(alpha))?;
    Ok(TwistedFactorization {
        ring,
        factors,
        orbit_products,
        product,
        derived,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PiField;
    use crate::graph::Vertex;
    use crate::lfunc::hfun::h_character;
    use crate::voltage::{truncate, FiniteAbelianGroup};

    fn base() -> (VertexWeightedGraph, VoltageAssignment) {
        let f = PiField::new(2, 4).unwrap();
        let v = |id: &str, w: PiElem, s: PiElem| Vertex {
            id: id.into(),
            weight: w,
            sqrt: s,
        };
        let g = VertexWeightedGraph::from_ids(
            vec![v("v1", f.pi_pow(2), f.pi()), v("v2", f.one(), f.one()), v("v3", f.one(), f.one())],
            &[("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v3", "v1"), ("e4", "v1", "v1")],
        )
        .unwrap();
        let a = VoltageAssignment::new(1, vec![vec![1], vec![0], vec![0], vec![1]]).unwrap();
        (g, a)
    }

    #[test]
    fn zero_voltage_gives_laplacian_determinant() {
        let (g, _) = base();
        let q = q_series(&g, &VoltageAssignment::zero(1, 4)).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn q_evaluates_to_h() {
        let (g, a) = base();
        let q = q_series(&g, &a).unwrap();
        for n in 0..3 {
            let alpha = truncate(&a, 2, n);
            let ring = character_ring(g.zero().field(), &alpha.group).unwrap();
            for psi in Character::all(&alpha.group, ring).unwrap() {
                assert_eq!(q_eval(&q, &psi).unwrap(), h_character(&g, &alpha, &psi).unwrap());
            }
        }
    }

    #[test]
    fn trivial_twist_is_untwisted() {
        let (g, a) = base();
        let beta = FiniteVoltage::new(FiniteAbelianGroup::new(vec![2]), vec![vec![0], vec![1], vec![0], vec![0]]).unwrap();
        let ring = character_ring(g.zero().field(), &beta.group).unwrap();
        let triv = Character::trivial(&beta.group, ring);
        let q = q_series(&g, &a).unwrap();
        let qt = q_twisted(&g, &a, &beta, &triv).unwrap();
        assert_eq!(qt, q.map_coeffs(ring.zero(), |c| ring.embed(c.clone())));
        let f = twisted_factorization(&g, &a, &beta).unwrap();
        assert!(f.holds());
        assert_eq!(f.orbit_products[0], q);
    }
}
