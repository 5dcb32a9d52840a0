use crate::error::{Error, Result};
use crate::field::{CycloElem, CycloRing, PiField};
use crate::voltage::{FiniteAbelianGroup, GroupElem, Subgroup};

/// The smallest cyclotomic ring holding every character value of `group`.
pub fn character_ring(field: PiField, group: &FiniteAbelianGroup) -> Result<CycloRing> {
    let p = field.prime();
    let mut level = 0;
    for &m in group.orders() {
        let mut k = 0;
        let mut x = m;
        while x % p == 0 {
            x /= p;
            k += 1;
        }
        if x != 1 {
            return Err(Error::DimensionMismatch(format!("Z/{m} is not a {p}-group")));
        }
        level = level.max(k);
    }
    Ok(CycloRing::new(field, level))
}

/// ψ(σ) = ζ^{Σ e_i σ_i} with ζ the generator of `ring`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    group: FiniteAbelianGroup,
    ring: CycloRing,
    exps: Vec<u64>,
}

impl Character {
    /// The character with dual vector c: ψ(σ) = exp(2πi Σ c_i σ_i / m_i).
    pub fn new(group: &FiniteAbelianGroup, dual: &[u64], ring: CycloRing) -> Result<Self> {
        let order = ring.order();
        if dual.len() != group.rank() {
            return Err(Error::DimensionMismatch(format!("dual vector {dual:?} for rank {}", group.rank())));
        }
        let exps = dual
            .iter()
            .zip(group.orders())
            .map(|(&c, &m)| {
                if !order.is_multiple_of(m) {
                    return Err(Error::DimensionMismatch(format!("Z/{m} has values outside μ_{order}")));
                }
                Ok((c % m) * (order / m))
            })
            .collect::<Result<_>>()?;
        Ok(Character {
            group: group.clone(),
            ring,
            exps,
        })
    }

    pub fn trivial(group: &FiniteAbelianGroup, ring: CycloRing) -> Self {
        Character {
            group: group.clone(),
            ring,
            exps: vec![0; group.rank()],
        }
    }

    /// Every character of `group`, in lexicographic order of dual vectors.
    pub fn all(group: &FiniteAbelianGroup, ring: CycloRing) -> Result<Vec<Character>> {
        group.elements().iter().map(|c| Character::new(group, c, ring)).collect()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn ring(&self) -> CycloRing {
        self.ring
    }

    pub fn dual(&self) -> GroupElem {
        let order = self.ring.order();
        self.exps
            .iter()
            .zip(self.group.orders())
            .map(|(&e, &m)| e / (order / m))
            .collect()
    }

    /// k with ψ(σ) = ζ^k.
    pub fn exponent(&self, sigma: &[u64]) -> u64 {
        let order = self.ring.order();
        self.exps
            .iter()
            .zip(sigma)
            .fold(0, |acc, (&e, &s)| (acc + e * s) % order)
    }

    pub fn eval(&self, sigma: &[u64]) -> CycloElem {
        self.ring.zeta_pow(self.exponent(sigma) as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// ψ^j = ψ composed with ζ ↦ ζ^j.
    pub fn power(&self, j: i64) -> Character {
        let order = self.ring.order() as i64;
        Character {
            group: self.group.clone(),
            ring: self.ring,
            exps: self
                .exps
                .iter()
                .map(|&e| (e as i64 * j).rem_euclid(order) as u64)
                .collect(),
        }
    }

    pub fn conj(&self) -> Character {
        self.power(-1)
    }

    /// ψ restricted along the embedding of `h`.
    pub fn restrict(&self, h: &Subgroup) -> Result<Character> {
        if h.ambient != self.group {
            return Err(Error::NotSubgroup("restriction to a subgroup of another group".into()));
        }
        Ok(Character {
            group: h.group.clone(),
            ring: self.ring,
            exps: h.generators.iter().map(|g| self.exponent(g)).collect(),
        })
    }
}

/// Orbits of ψ ↦ ψ^j, j ∈ (Z/p^L)^×, as index lists into `chars`, in order
/// of first appearance.
pub fn galois_orbits(chars: &[Character]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; chars.len()];
    let mut orbits = Vec::new();
    for i in 0..chars.len() {
        if seen[i] {
            continue;
        }
        let ring = chars[i].ring();
        let p = ring.field().prime() as i64;
        let mut orbit = Vec::new();
        for j in (1..ring.order() as i64).filter(|j| j % p != 0).chain(std::iter::once(1)) {
            let image = chars[i].power(j);
            if let Some(k) = chars.iter().position(|c| *c == image) {
                if !seen[k] {
                    seen[k] = true;
                    orbit.push(k);
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    orbits
}
