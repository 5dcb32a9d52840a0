//! R[√g_1, …, √g_k] for test weights whose square roots are not in R.
//!
//! Basis elements are indexed by bitmasks: bit i set means a factor √g_i.
//! The caller is responsible for choosing generators that are independent
//! modulo squares, so that the algebra is a field.

use std::fmt;
use std::sync::Arc;

use super::pi::{forward_ops, PiElem, PiField};
use crate::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalExt {
    inner: Arc<Ctx>,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Ctx {
    base: PiField,
    gens: Vec<PiElem>,
}

impl RadicalExt {
    pub fn new(base: PiField, gens: Vec<PiElem>) -> Self {
        assert!(gens.len() < 16, "too many radical generators");
        assert!(gens.iter().all(|g| g.field() == base && !g.is_zero()));
        RadicalExt {
            inner: Arc::new(Ctx { base, gens }),
        }
    }

    pub fn base(&self) -> PiField {
        self.inner.base
    }

    fn dim(&self) -> usize {
        1 << self.inner.gens.len()
    }

    pub fn zero(&self) -> RadicalElem {
        RadicalElem {
            ext: self.clone(),
            coeffs: vec![self.inner.base.zero(); self.dim()],
        }
    }

    pub fn one(&self) -> RadicalElem {
        self.embed(self.inner.base.one())
    }

    pub fn embed(&self, x: PiElem) -> RadicalElem {
        let mut z = self.zero();
        z.coeffs[0] = x;
        z
    }

    /// The adjoined square root of generator `i`.
    pub fn sqrt_gen(&self, i: usize) -> RadicalElem {
        let mut z = self.zero();
        z.coeffs[1 << i] = self.inner.base.one();
        z
    }

    /// √a · √b = √(a xor b) · ∏_{i ∈ a and b} g_i.
    fn basis_product(&self, a: usize, b: usize) -> PiElem {
        let mut c = self.inner.base.one();
        for (i, g) in self.inner.gens.iter().enumerate() {
            if (a & b) >> i & 1 == 1 {
                c = c.mul(g);
            }
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalElem {
    ext: RadicalExt,
    coeffs: Vec<PiElem>,
}

impl RadicalElem {
    pub fn ext(&self) -> &RadicalExt {
        &self.ext
    }

    /// The R-value, if no radical coordinate is present.
    pub fn as_base(&self) -> Option<&PiElem> {
        self.coeffs[1..].iter().all(Ring::is_zero).then(|| &self.coeffs[0])
    }

    /// Negates every coordinate that involves √g_i.
    fn conjugate(&self, i: usize) -> RadicalElem {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| if mask >> i & 1 == 1 { c.neg() } else { c.clone() })
            .collect();
        RadicalElem { ext: self.ext.clone(), coeffs }
    }

    fn check(&self, rhs: &RadicalElem) {
        assert_eq!(self.ext, rhs.ext, "mixed arithmetic across radical extensions");
    }
}

impl Ring for RadicalElem {
    fn zero_like(&self) -> Self {
        self.ext.zero()
    }

    fn one_like(&self) -> Self {
        self.ext.one()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        RadicalElem {
            ext: self.ext.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        RadicalElem {
            ext: self.ext.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let mut out = self.ext.zero();
        for (a, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in rhs.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let term = x.mul(y).mul(&self.ext.basis_product(a, b));
                out.coeffs[a ^ b] = out.coeffs[a ^ b].add(&term);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        RadicalElem {
            ext: self.ext.clone(),
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }
}

impl Field for RadicalElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x · conj_i(x) is free of √g_i; after every generator the product is in R.
        let mut x = self.clone();
        let mut acc = self.ext.one();
        for i in 0..self.ext.inner.gens.len() {
            let c = x.conjugate(i);
            acc = acc.mul(&c);
            x = x.mul(&c);
        }
        let norm = x.as_base().expect("full conjugate product lies in the base field").inv()?;
        Some(acc.mul(&self.ext.embed(norm)))
    }
}

forward_ops!(RadicalElem);

impl fmt::Display for RadicalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mask, c)| {
                if mask == 0 {
                    return c.to_string();
                }
                let roots: Vec<String> = (0..self.ext.inner.gens.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| format!("√({})", self.ext.inner.gens[i]))
                    .collect();
                format!("({c}){}", roots.join(""))
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rat};

    fn ext() -> RadicalExt {
        let f = PiField::new(2, 8).unwrap();
        RadicalExt::new(f, vec![f.from_int(-1), f.from_int(3), f.from_int(5)])
    }

    #[test]
    fn generators_square_back() {
        let e = ext();
        for (i, g) in [-1, 3, 5].into_iter().enumerate() {
            let s = e.sqrt_gen(i);
            assert_eq!(s.mul(&s), e.embed(e.base().from_int(g)));
        }
        let s = e.sqrt_gen(1).mul(&e.sqrt_gen(2));
        assert_eq!(s.mul(&s), e.embed(e.base().from_int(15)));
    }

    #[test]
    fn inverses() {
        let e = ext();
        let f = e.base();
        let x = e
            .embed(f.from_coeffs(vec![int(1), rat(1, 3)]).unwrap())
            .add(&e.sqrt_gen(0))
            .sub(&e.sqrt_gen(1).mul(&e.sqrt_gen(2)).mul(&e.embed(f.pi())));
        assert_eq!(x.mul(&x.inv().unwrap()), e.one());
        assert!(e.zero().inv().is_none());
    }
}
