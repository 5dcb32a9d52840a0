//! C = R[x]/Φ_{p^n}(x), the home of character values.

use std::fmt;

use serde_json::Value;

use super::pi::{forward_ops, PiElem, PiField};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// R together with a level n; ζ = x mod Φ_{p^n}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycloRing {
    field: PiField,
    level: u32,
}

impl CycloRing {
    pub fn new(field: PiField, level: u32) -> Self {
        CycloRing { field, level }
    }

    pub fn field(&self) -> PiField {
        self.field
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// p^n, the order of ζ.
    pub fn order(&self) -> u64 {
        self.field.prime().pow(self.level)
    }

    /// φ(p^n) = deg Φ_{p^n}.
    pub fn degree(&self) -> usize {
        match self.level {
            0 => 1,
            n => (self.field.prime().pow(n - 1) * (self.field.prime() - 1)) as usize,
        }
    }

    pub fn zero(&self) -> CycloElem {
        CycloElem {
            ring: *self,
            coeffs: vec![self.field.zero(); self.degree()],
        }
    }

    pub fn one(&self) -> CycloElem {
        self.embed(self.field.one())
    }

    pub fn embed(&self, x: PiElem) -> CycloElem {
        assert_eq!(x.field(), self.field, "embedding from a different field");
        let mut z = self.zero();
        z.coeffs[0] = x;
        z
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CycloElem {
        let e = k.rem_euclid(self.order() as i64) as usize;
        let mut coeffs = vec![self.field.zero(); e + 1];
        coeffs[e] = self.field.one();
        self.reduce(coeffs)
    }

    /// Reduces an arbitrary polynomial in ζ modulo Φ_{p^n}.
    pub fn reduce(&self, mut coeffs: Vec<PiElem>) -> CycloElem {
        let deg = self.degree();
        if self.level == 0 {
            // Φ_1 = x - 1
            let mut acc = self.field.zero();
            for c in &coeffs {
                acc = acc.add(c);
            }
            return self.embed(acc);
        }
        // Φ_{p^n}(x) = Σ_{k<p} x^{k·p^{n-1}}, monic of degree (p-1)p^{n-1}.
        let step = self.field.prime().pow(self.level - 1) as usize;
        let p = self.field.prime() as usize;
        for top in (deg..coeffs.len()).rev() {
            if coeffs[top].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut coeffs[top], self.field.zero());
            let base = top - deg;
            for k in 0..p - 1 {
                let idx = base + k * step;
                coeffs[idx] = coeffs[idx].sub(&c);
            }
        }
        coeffs.resize(deg, self.field.zero());
        CycloElem { ring: *self, coeffs }
    }

    pub fn parse_json(&self, v: &Value) -> Result<CycloElem> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected array of coefficient arrays".into()))?;
        let coeffs = arr.iter().map(|c| self.field.parse_json(c)).collect::<Result<Vec<_>>>()?;
        if coeffs.len() > self.degree() {
            return Err(Error::Parse("too many cyclotomic coordinates".into()));
        }
        Ok(self.reduce(coeffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElem {
    ring: CycloRing,
    coeffs: Vec<PiElem>,
}

impl CycloElem {
    pub fn ring(&self) -> CycloRing {
        self.ring
    }

    pub fn coeffs(&self) -> &[PiElem] {
        &self.coeffs
    }

    /// The R-value, if every coordinate of degree ≥ 1 vanishes.
    pub fn descend(&self) -> Option<PiElem> {
        self.coeffs[1..].iter().all(Ring::is_zero).then(|| self.coeffs[0].clone())
    }

    /// Image under the automorphism ζ ↦ ζ^j, gcd(j, p) = 1.
    pub fn galois(&self, j: i64) -> CycloElem {
        assert!(j.rem_euclid(self.ring.field.prime() as i64) != 0, "ζ ↦ ζ^j needs p ∤ j");
        let order = self.ring.order() as i64;
        let mut coeffs = vec![self.ring.field.zero(); order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as i64 * j).rem_euclid(order) as usize;
            coeffs[e] = coeffs[e].add(c);
        }
        self.ring.reduce(coeffs)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(PiElem::to_json).collect())
    }

    fn check(&self, rhs: &CycloElem) {
        assert_eq!(self.ring, rhs.ring, "mixed arithmetic across cyclotomic rings");
    }
}

impl Ring for CycloElem {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }

    fn one_like(&self) -> Self {
        self.ring.one()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        CycloElem {
            ring: self.ring,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        CycloElem {
            ring: self.ring,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let n = self.coeffs.len();
        let mut out = vec![self.ring.field.zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        self.ring.reduce(out)
    }

    fn neg(&self) -> Self {
        CycloElem {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }
}

forward_ops!(CycloElem);

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})ζ"),
                _ => format!("({c})ζ^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Multiplies a full Galois orbit of values and descends the product to R.
pub fn galois_orbit_product(values: &[CycloElem]) -> Result<PiElem> {
    let first = values
        .first()
        .ok_or_else(|| Error::DimensionMismatch("empty orbit".into()))?;
    let prod = values[1..].iter().fold(first.clone(), |acc, v| acc.mul(v));
    prod.descend().ok_or(Error::NonRationalDescent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::int;

    fn ring(p: u64, m: usize, n: u32) -> CycloRing {
        CycloRing::new(PiField::new(p, m).unwrap(), n)
    }

    /// Schoolbook product followed by long division by Φ_{p^n}, built from
    /// the explicit coefficient list of Φ.
    fn long_division_product(r: CycloRing, a: &CycloElem, b: &CycloElem) -> Vec<PiElem> {
        let f = r.field();
        let mut prod = vec![f.zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j].add(&x.mul(y));
            }
        }
        let p = f.prime() as usize;
        let n = r.level();
        let step = p.pow(n - 1);
        let mut phi = vec![f.zero(); r.degree() + 1];
        for k in 0..p {
            phi[k * step] = f.one();
        }
        let d = r.degree();
        while prod.len() > d {
            let c = prod.pop().unwrap();
            let shift = prod.len() - d;
            for (k, pk) in phi.iter().enumerate().take(d) {
                prod[shift + k] = prod[shift + k].sub(&c.mul(pk));
            }
        }
        prod
    }

    #[test]
    fn zeta_relations() {
        let r = ring(2, 1, 1);
        assert_eq!(r.zeta_pow(1), r.embed(r.field().from_int(-1)));
        assert_eq!(r.zeta_pow(1).mul(&r.zeta_pow(1)), r.one());
        let r4 = ring(2, 2, 2);
        assert_eq!(r4.zeta_pow(2), r4.one().neg());
        assert_eq!(r4.zeta_pow(-1), r4.zeta_pow(3));
        for (p, n) in [(2, 3), (3, 2), (5, 1)] {
            let r = ring(p, 1, n);
            let total = (0..r.order() as i64).fold(r.zero(), |acc, k| acc.add(&r.zeta_pow(k)));
            assert!(total.is_zero());
            assert_eq!(r.zeta_pow(r.order() as i64), r.one());
        }
    }

    #[test]
    fn level_zero_is_the_base_field() {
        let r = ring(3, 2, 0);
        assert_eq!(r.degree(), 1);
        assert_eq!(r.zeta_pow(5), r.one());
    }

    #[test]
    fn multiplication_matches_long_division() {
        let r = ring(3, 2, 2);
        let f = r.field();
        let a = r.reduce((0..6).map(|i| f.from_coeffs(vec![int(i - 2), int(1)]).unwrap()).collect());
        let b = r.reduce((0..6).map(|i| f.from_coeffs(vec![int(2 * i + 1), int(-i)]).unwrap()).collect());
        assert_eq!(a.mul(&b).coeffs, long_division_product(r, &a, &b));
    }

    #[test]
    fn galois_action_is_multiplicative() {
        let r = ring(5, 1, 1);
        let x = r.zeta_pow(1).add(&r.one());
        let y = r.zeta_pow(3).sub(&r.zeta_pow(2));
        for j in 1..5 {
            assert_eq!(x.mul(&y).galois(j), x.galois(j).mul(&y.galois(j)));
        }
    }

    #[test]
    fn orbit_products() {
        let r = ring(2, 2, 1);
        let x = r.embed(r.field().from_int(7));
        assert_eq!(galois_orbit_product(&[x]).unwrap(), r.field().from_int(7));
        // (1 + i)(1 - i) = 2 in Q(i)
        let r4 = ring(2, 2, 2);
        let u = r4.one().add(&r4.zeta_pow(1));
        assert_eq!(galois_orbit_product(&[u.clone(), u.galois(3)]).unwrap(), r4.field().from_int(2));
        assert_eq!(galois_orbit_product(&[u]), Err(Error::NonRationalDescent));
    }

    #[test]
    fn json_roundtrip() {
        let r = ring(3, 2, 1);
        let x = r.zeta_pow(1).add(&r.embed(r.field().pi()));
        assert_eq!(r.parse_json(&x.to_json()).unwrap(), x);
    }
}
