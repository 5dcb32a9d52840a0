use super::character::Character;
use crate::error::{Error, Result};
use crate::field::{CycloElem, CycloRing};
use crate::linalg::LabeledMatrix;
use crate::ring::Ring;
use crate::voltage::{FiniteAbelianGroup, Subgroup, Transversal};

pub type RepMatrix = LabeledMatrix<usize, CycloElem>;

/// A representation given by its full table σ ↦ ρ(σ), indexed like
/// `group.elements()`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep {
    group: FiniteAbelianGroup,
    ring: CycloRing,
    degree: usize,
    mats: Vec<RepMatrix>,
}

impl MatrixRep {
    pub fn from_character(psi: &Character) -> Self {
        let ring = psi.ring();
        let mats = psi
            .group()
            .elements()
            .iter()
            .map(|s| RepMatrix::diagonal(vec![0], vec![psi.eval(s)], ring.zero()))
            .collect();
        MatrixRep {
            group: psi.group().clone(),
            ring,
            degree: 1,
            mats,
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn ring(&self) -> CycloRing {
        self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn at(&self, sigma: &[u64]) -> &RepMatrix {
        &self.mats[self.group.index_of(sigma)]
    }

    /// Block-diagonal ρ1 ⊕ ρ2.
    pub fn direct_sum(&self, other: &MatrixRep) -> Result<MatrixRep> {
        if self.group != other.group || self.ring != other.ring {
            return Err(Error::DimensionMismatch("direct sum of representations of different groups".into()));
        }
        let d = self.degree + other.degree;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                RepMatrix::from_fn((0..d).collect(), (0..d).collect(), self.ring.zero(), |i, j| {
                    match (i < self.degree, j < self.degree) {
                        (true, true) => a.get(i, j).clone(),
                        (false, false) => b.get(i - self.degree, j - self.degree).clone(),
                        _ => self.ring.zero(),
                    }
                })
            })
            .collect();
        Ok(MatrixRep {
            group: self.group.clone(),
            ring: self.ring,
            degree: d,
            mats,
        })
    }

    /// Ind_H^G χ as monomial matrices: entry (i, j) of Ind(ξ) is
    /// χ(σ_i + ξ − σ_j) when that lies in H, else 0.
    pub fn induced(h: &Subgroup, chi: &Character, reps: &[Vec<u64>]) -> Result<MatrixRep> {
        if chi.group() != &h.group {
            return Err(Error::NotSubgroup("character is not defined on the subgroup".into()));
        }
        let tr = Transversal::new(h, reps)?;
        let g = &h.ambient;
        let ring = chi.ring();
        let m = tr.len();
        let mats = g
            .elements()
            .iter()
            .map(|xi| {
                RepMatrix::from_fn((0..m).collect(), (0..m).collect(), ring.zero(), |i, j| {
                    let x = g.sub(&g.add(&reps[i], xi), &reps[j]);
                    match tr.in_subgroup(&x) {
                        Some(hh) => chi.eval(hh),
                        None => ring.zero(),
                    }
                })
            })
            .collect();
        Ok(MatrixRep {
            group: g.clone(),
            ring,
            degree: m,
            mats,
        })
    }

    /// ρ(0) = I and ρ(σ+τ) = ρ(σ)ρ(τ) over the whole group.
    pub fn is_homomorphism(&self) -> bool {
        let labels: Vec<usize> = (0..self.degree).collect();
        if *self.at(&self.group.zero()) != RepMatrix::identity(labels, self.ring.zero()) {
            return false;
        }
        let elems = self.group.elements();
        elems.iter().all(|a| {
            elems.iter().all(|b| {
                self.at(a).mul(self.at(b)).ok().as_ref() == Some(self.at(&self.group.add(a, b)))
            })
        })
    }

    /// Trace of ρ(σ), for character comparisons.
    pub fn trace(&self, sigma: &[u64]) -> CycloElem {
        let m = self.at(sigma);
        (0..self.degree).fold(self.ring.zero(), |acc, i| acc.add(m.get(i, i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PiField;
    use crate::lfunc::character::character_ring;

    #[test]
    fn induced_from_index_two_subgroup() {
        let g = FiniteAbelianGroup::new(vec![4]);
        let ring = character_ring(PiField::new(2, 1).unwrap(), &g).unwrap();
        let h = Subgroup::from_generators(&g, vec![vec![2]]).unwrap();
        for chi in Character::all(&h.group, ring).unwrap() {
            let ind = MatrixRep::induced(&h, &chi, &[vec![0], vec![1]]).unwrap();
            assert_eq!(ind.degree(), 2);
            assert!(ind.is_homomorphism());
            // the trace of Ind χ is the sum of the characters extending χ
            let ext: Vec<_> = Character::all(&g, ring)
                .unwrap()
                .into_iter()
                .filter(|psi| psi.restrict(&h).unwrap() == chi)
                .collect();
            assert_eq!(ext.len(), 2);
            let sum = |s: &[u64]| ext[0].eval(s).add(&ext[1].eval(s));
            for s in g.elements() {
                assert_eq!(ind.trace(&s), sum(&s));
            }
        }
    }

    #[test]
    fn bad_transversal() {
        let g = FiniteAbelianGroup::new(vec![4]);
        let ring = character_ring(PiField::new(2, 1).unwrap(), &g).unwrap();
        let h = Subgroup::from_generators(&g, vec![vec![2]]).unwrap();
        let chi = Character::trivial(&h.group, ring);
        assert_eq!(MatrixRep::induced(&h, &chi, &[vec![0], vec![2]]), Err(Error::NotTransversal));
    }
}
