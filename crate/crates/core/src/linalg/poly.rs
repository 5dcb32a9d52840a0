use std::fmt;

use crate::ring::{Field, Ring};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
    zero: C,
}

impl<C: Ring> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>, zero: C) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs, zero }
    }

    pub fn zero(zero: C) -> Self {
        UniPoly { coeffs: vec![], zero }
    }

    pub fn constant(c: C) -> Self {
        let zero = c.zero_like();
        Self::new(vec![c], zero)
    }

    /// c·x^k
    pub fn monomial(c: C, k: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Self::new(coeffs, zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        self.coeffs.get(i).unwrap_or(&self.zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(self.zero.clone(), |acc, c| acc.mul(x).add(c))
    }

    /// p(q(x)).
    pub fn compose(&self, q: &UniPoly<C>) -> UniPoly<C> {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(self.zero.clone()), |acc, c| {
                acc.mul(q).add(&UniPoly::constant(c.clone()))
            })
    }

    pub fn map<D: Ring>(&self, zero: D, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), zero)
    }
}

impl<C: Field> UniPoly<C> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly<C>) -> (UniPoly<C>, UniPoly<C>) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.coeffs[dd].inv().expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.zero.clone(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = rem[top].mul(&lead_inv);
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].sub(&c.mul(dc));
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Ring::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot, self.zero.clone()), UniPoly::new(rem, self.zero.clone()))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly<C>) -> UniPoly<C> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => {
                let inv = l.inv().expect("nonzero");
                a.map(self.zero.clone(), |c| c.mul(&inv))
            }
            None => a,
        }
    }

    pub fn divides(&self, other: &UniPoly<C>) -> bool {
        other.div_rem(self).1.degree().is_none()
    }
}

impl<C: Ring> Ring for UniPoly<C> {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.zero.clone())
    }

    fn one_like(&self) -> Self {
        UniPoly::constant(self.zero.one_like())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i).add(rhs.coeff(i))).collect(), self.zero.clone())
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i).sub(rhs.coeff(i))).collect(), self.zero.clone())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(out, self.zero.clone())
    }

    fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
            zero: self.zero.clone(),
        }
    }
}

impl<C: Ring + fmt::Display> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
