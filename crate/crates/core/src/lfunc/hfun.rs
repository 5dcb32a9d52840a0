use super::character::{character_ring, galois_orbits, Character};
use super::rep::MatrixRep;
use crate::error::{Error, Result};
use crate::field::{galois_orbit_product, CycloElem, PiElem};
use crate::graph::VertexWeightedGraph;
use crate::linalg::{LabeledMatrix, UniPoly};
use crate::matrix_tree::{kappa_all_det, LaplacianBundle, Matrix};
use crate::ring::Ring;
use crate::voltage::{derive, intermediate, FiniteVoltage, GroupElem, Subgroup};

type BlockLabel = (String, usize);

fn check_voltage(g: &VertexWeightedGraph, alpha: &FiniteVoltage) -> Result<()> {
    if alpha.values.len() != g.edges().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} voltages for {} edges",
            alpha.values.len(),
            g.edges().len()
        )));
    }
    Ok(())
}

/// 𝒲^{α,σ}(u,v) = Σ s_u s_v over directed edges u → v with α(e) = σ.
pub fn w_sigma(g: &VertexWeightedGraph, alpha: &FiniteVoltage, sigma: &[u64]) -> Result<Matrix<PiElem>> {
    check_voltage(g, alpha)?;
    let ids = g.vertex_ids();
    let mut w = Matrix::zeros(ids.clone(), ids, g.zero());
    for e in g.directed_edges() {
        if alpha.of(e) == sigma {
            let (u, v) = (g.origin(e), g.terminus(e));
            w.accumulate(u, v, &g.sqrt(u).mul(g.sqrt(v)));
        }
    }
    Ok(w)
}

/// Σ_σ 𝒲^{α,σ} ⊗ ρ(σ), assembled edge by edge.
pub fn twisted_adjacency(
    g: &VertexWeightedGraph,
    alpha: &FiniteVoltage,
    rho: &MatrixRep,
) -> Result<LabeledMatrix<BlockLabel, CycloElem>> {
    check_voltage(g, alpha)?;
    if &alpha.group != rho.group() {
        return Err(Error::DimensionMismatch("representation of a different group".into()));
    }
    let ring = rho.ring();
    let d = rho.degree();
    let labels = block_labels(g, d);
    let mut a = LabeledMatrix::zeros(labels.clone(), labels, ring.zero());
    for e in g.directed_edges() {
        let (u, v) = (g.origin(e), g.terminus(e));
        let s = ring.embed(g.sqrt(u).mul(g.sqrt(v)));
        let r = rho.at(&alpha.of(e));
        for i in 0..d {
            for j in 0..d {
                if !r.get(i, j).is_zero() {
                    a.accumulate(u * d + i, v * d + j, &s.mul(r.get(i, j)));
                }
            }
        }
    }
    Ok(a)
}

fn block_labels(g: &VertexWeightedGraph, d: usize) -> Vec<BlockLabel> {
    g.vertex_ids()
        .into_iter()
        .flat_map(|id| (0..d).map(move |i| (id.clone(), i)))
        .collect()
}

fn degrees(g: &VertexWeightedGraph) -> Vec<PiElem> {
    let d = LaplacianBundle::new(g).degree;
    (0..g.vertex_count()).map(|v| d.get(v, v).clone()).collect()
}

/// h(ρ, t) = det(I⊗I − tΣ𝒲^σ⊗ρ(σ) + t²(D − I)⊗I) by Berkowitz over C[t].
pub fn h_polynomial(g: &VertexWeightedGraph, alpha: &FiniteVoltage, rho: &MatrixRep) -> Result<UniPoly<CycloElem>> {
    let a = twisted_adjacency(g, alpha, rho)?;
    let ring = rho.ring();
    let d = rho.degree();
    let deg = degrees(g);
    let pzero = UniPoly::zero(ring.zero());
    let m = LabeledMatrix::from_fn(a.row_labels().to_vec(), a.col_labels().to_vec(), pzero, |i, j| {
        let mut coeffs = vec![ring.zero(), a.get(i, j).neg(), ring.zero()];
        if i == j {
            coeffs[0] = ring.one();
            coeffs[2] = ring.embed(deg[i / d].sub(&deg[i / d].one_like()));
        }
        UniPoly::new(coeffs, ring.zero())
    });
    m.det_berkowitz()
}

/// h(ρ, 1) = det(D⊗I − Σ𝒲^σ⊗ρ(σ)).
pub fn h_at_one(g: &VertexWeightedGraph, alpha: &FiniteVoltage, rho: &MatrixRep) -> Result<CycloElem> {
    let a = twisted_adjacency(g, alpha, rho)?;
    let ring = rho.ring();
    let d = rho.degree();
    let deg = degrees(g);
    let mut m = a.scale(&ring.one().neg());
    for i in 0..m.nrows() {
        m.accumulate(i, i, &ring.embed(deg[i / d].clone()));
    }
    m.det_berkowitz()
}

pub fn h_character(g: &VertexWeightedGraph, alpha: &FiniteVoltage, psi: &Character) -> Result<CycloElem> {
    h_at_one(g, alpha, &MatrixRep::from_character(psi))
}

/// D_{X(α)} = D_X ⊗ I and 𝒲_{X(α)} = Σ_σ 𝒲^{α,σ} ⊗ reg(σ), entry by entry.
pub fn cover_matrix_check(g: &VertexWeightedGraph, alpha: &FiniteVoltage) -> Result<bool> {
    let derived = derive(g, alpha)?;
    let up = LaplacianBundle::new(&derived.graph);
    let base = LaplacianBundle::new(g);
    let group = &alpha.group;
    let n = group.order();
    let elems = group.elements();
    let zero = g.zero();
    let d_kron = base.degree.kronecker(&Matrix::identity(elems_labels(n), zero.clone()));
    let mut w_kron = LabeledMatrix::zeros(d_kron.row_labels().to_vec(), d_kron.col_labels().to_vec(), zero.clone());
    for sigma in &elems {
        let reg = Matrix::from_fn(elems_labels(n), elems_labels(n), zero.clone(), |t, z| {
            if group.add(&elems[t], sigma) == elems[z] {
                zero.one_like()
            } else {
                zero.clone()
            }
        });
        w_kron = w_kron.add(&w_sigma(g, alpha, sigma)?.kronecker(&reg))?;
    }
    let same = |a: &Matrix<PiElem>, b: &LabeledMatrix<(String, String), PiElem>| {
        (0..a.nrows()).all(|i| (0..a.ncols()).all(|j| a.get(i, j) == b.get(i, j)))
    };
    Ok(same(&up.degree, &d_kron) && same(&up.sym_adjacency, &w_kron))
}

fn elems_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// One Galois orbit of nontrivial characters and the product of its h-values.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitFactor {
    pub duals: Vec<GroupElem>,
    pub value: PiElem,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub group_order: usize,
    pub kappa_v: Vec<PiElem>,
    pub kappa: PiElem,
    pub orbits: Vec<OrbitFactor>,
    /// ∏_{ψ ≠ triv} h(ψ, 1), descended to R.
    pub product: PiElem,
    /// κ_{(v,σ)}(X(α)) in derived vertex order.
    pub derived_kappa_v: Vec<PiElem>,
    pub derived_kappa: PiElem,
    /// κ_{(v,σ)}(X(α)) = κ_v(X)/#G · ∏ h for every derived vertex.
    pub fiber_holds: bool,
    /// κ(X(α)) = κ(X) · ∏ h.
    pub total_holds: bool,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.fiber_holds && self.total_holds
    }
}

/// h(ψ, 1) for every nontrivial character, multiplied orbit by orbit.
pub fn character_orbit_factors(g: &VertexWeightedGraph, alpha: &FiniteVoltage) -> Result<Vec<OrbitFactor>> {
    let ring = character_ring(g.zero().field(), &alpha.group)?;
    let chars = Character::all(&alpha.group, ring)?;
    galois_orbits(&chars)
        .into_iter()
        .filter(|orbit| !chars[orbit[0]].is_trivial())
        .map(|orbit| {
            let values = orbit
                .iter()
                .map(|&i| h_character(g, alpha, &chars[i]))
                .collect::<Result<Vec<_>>>()?;
            Ok(OrbitFactor {
                duals: orbit.iter().map(|&i| chars[i].dual()).collect(),
                value: galois_orbit_product(&values)?,
            })
        })
        .collect()
}

pub fn decomposition_check(g: &VertexWeightedGraph, alpha: &FiniteVoltage) -> Result<DecompositionReport> {
    let derived = derive(g, alpha)?;
    let derived_kappa_v = kappa_all_det(&derived.graph)?;
    let kappa_v = kappa_all_det(g)?;
    let zero = g.zero();
    let kappa = kappa_v.iter().fold(zero.clone(), |acc, k| acc.add(k));
    let derived_kappa = derived_kappa_v.iter().fold(zero.clone(), |acc, k| acc.add(k));
    let orbits = character_orbit_factors(g, alpha)?;
    let product = orbits.iter().fold(zero.one_like(), |acc, o| acc.mul(&o.value));
    let order = zero.from_int_like(alpha.group.order() as i64);
    let fiber_holds = derived.fiber.iter().zip(&derived_kappa_v).all(|(&(v, _), k)| {
        k.mul(&order) == kappa_v[v].mul(&product)
    });
    let total_holds = derived_kappa == kappa.mul(&product);
    Ok(DecompositionReport {
        group_order: alpha.group.order(),
        kappa_v,
        kappa,
        orbits,
        product,
        derived_kappa_v,
        derived_kappa,
        fiber_holds,
        total_holds,
    })
}

/// h(ρ1 ⊕ ρ2, t) = h(ρ1, t)·h(ρ2, t).
pub fn direct_sum_check(
    g: &VertexWeightedGraph,
    alpha: &FiniteVoltage,
    rho1: &MatrixRep,
    rho2: &MatrixRep,
) -> Result<bool> {
    let sum = rho1.direct_sum(rho2)?;
    let lhs = h_polynomial(g, alpha, &sum)?;
    let rhs = h_polynomial(g, alpha, rho1)?.mul(&h_polynomial(g, alpha, rho2)?);
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionReport {
    /// h_Z^β(χ, t) = h_X^α(Ind χ, t)
    pub induced: bool,
    /// h_X^α(Ind χ, t) = ∏_{ψ|_H = χ} h_X^α(ψ, t)
    pub frobenius: bool,
}

impl InductionReport {
    pub fn holds(&self) -> bool {
        self.induced && self.frobenius
    }
}

pub fn induction_check(
    g: &VertexWeightedGraph,
    alpha: &FiniteVoltage,
    h: &Subgroup,
    reps: &[GroupElem],
    chi: &Character,
) -> Result<InductionReport> {
    let z = intermediate(g, alpha, h, reps)?;
    let ind = MatrixRep::induced(h, chi, reps)?;
    let upstairs = h_polynomial(g, alpha, &ind)?;
    let downstairs = h_polynomial(&z.graph, &z.beta, &MatrixRep::from_character(chi))?;
    let ring = chi.ring();
    let mut product = UniPoly::constant(ring.one());
    for psi in Character::all(&alpha.group, ring)? {
        if psi.restrict(h)? == *chi {
            product = product.mul(&h_polynomial(g, alpha, &MatrixRep::from_character(&psi))?);
        }
    }
    Ok(InductionReport {
        induced: upstairs == downstairs,
        frobenius: upstairs == product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PiField;
    use crate::graph::Vertex;
    use crate::voltage::{truncate, VoltageAssignment};

    /// Three vertices, weights (π², 1, 1) with π⁴ = 2; a triangle plus a loop.
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
    fn w_sigma_reads_off_edges() {
        let (g, a) = base();
        let f = g.zero().field();
        let alpha = truncate(&a, 2, 1);
        let w1 = w_sigma(&g, &alpha, &[1]).unwrap();
        // e4 and its inverse both contribute π·π at (v1, v1)
        assert_eq!(w1.get(0, 0), &f.pi_pow(2).mul(&f.from_int(2)));
        assert_eq!(w1.get(0, 1), &f.pi());
        assert_eq!(w1.get(1, 0), &f.pi());
        let w0 = w_sigma(&g, &alpha, &[0]).unwrap();
        assert_eq!(w0.get(0, 2), &f.pi());
        assert_eq!(w0.get(1, 2), &f.one());
        let total = w0.add(&w1).unwrap();
        assert_eq!(total, LaplacianBundle::new(&g).sym_adjacency);
    }

    #[test]
    fn trivial_character_gives_laplacian_determinant() {
        let (g, a) = base();
        let alpha = truncate(&a, 2, 2);
        let ring = character_ring(g.zero().field(), &alpha.group).unwrap();
        let triv = Character::trivial(&alpha.group, ring);
        assert!(h_character(&g, &alpha, &triv).unwrap().is_zero());
        let hp = h_polynomial(&g, &alpha, &MatrixRep::from_character(&triv)).unwrap();
        assert!(hp.eval(&ring.one()).is_zero());
    }

    #[test]
    fn h_values_against_three_by_three_oracle() {
        let (g, a) = base();
        let f = g.zero().field();
        let two_sqrt2 = |x: i64, y: i64| f.from_int(x).add(&f.pi_pow(2).mul(&f.from_int(y)));
        let alpha = truncate(&a, 2, 1);
        let ring = character_ring(f, &alpha.group).unwrap();
        let sign = Character::new(&alpha.group, &[1], ring).unwrap();
        assert_eq!(h_character(&g, &alpha, &sign).unwrap().descend(), Some(two_sqrt2(16, 12)));
        let alpha = truncate(&a, 2, 2);
        let ring = character_ring(f, &alpha.group).unwrap();
        for c in [1, 3] {
            let psi = Character::new(&alpha.group, &[c], ring).unwrap();
            assert_eq!(h_character(&g, &alpha, &psi).unwrap().descend(), Some(two_sqrt2(8, 6)));
        }
    }

    #[test]
    fn cover_matrices_are_kronecker_sums() {
        let (g, a) = base();
        for n in 0..3 {
            assert!(cover_matrix_check(&g, &truncate(&a, 2, n)).unwrap());
        }
    }

    #[test]
    fn decomposition_levels() {
        let (g, a) = base();
        for n in 0..3 {
            let r = decomposition_check(&g, &truncate(&a, 2, n)).unwrap();
            assert!(r.holds(), "level {n}");
        }
        let r = decomposition_check(&g, &truncate(&a, 2, 0)).unwrap();
        assert!(r.orbits.is_empty());
        assert_eq!(r.derived_kappa, r.kappa);
    }

    #[test]
    fn direct_sum_and_induction() {
        let (g, a) = base();
        let alpha = truncate(&a, 2, 2);
        let ring = character_ring(g.zero().field(), &alpha.group).unwrap();
        let chars = Character::all(&alpha.group, ring).unwrap();
        let reps: Vec<_> = chars.iter().map(MatrixRep::from_character).collect();
        assert!(direct_sum_check(&g, &alpha, &reps[1], &reps[3]).unwrap());
        assert!(direct_sum_check(&g, &alpha, &reps[0], &reps[0]).unwrap());
        let h = Subgroup::from_generators(&alpha.group, vec![vec![2]]).unwrap();
        for chi in Character::all(&h.group, ring).unwrap() {
            assert!(induction_check(&g, &alpha, &h, &[vec![0], vec![1]], &chi).unwrap().holds());
        }
        let whole = Subgroup::whole(&alpha.group);
        let chi = Character::new(&whole.group, &[1], ring).unwrap();
        assert!(induction_check(&g, &alpha, &whole, &[vec![0]], &chi).unwrap().holds());
    }
}
