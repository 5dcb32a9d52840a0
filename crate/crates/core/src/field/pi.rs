//! The totally ramified field R = Q(π), π^M = p.

use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::Value;

use super::rational::{format_rational, is_prime, parse_rational, rational_valuation, Rational};
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

/// The pair (p, M) identifying R = Q(p^(1/M)).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PiField {
    p: u64,
    m: usize,
}

impl PiField {
    pub fn new(p: u64, m: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::Parse("root index must be at least 1".into()));
        }
        Ok(PiField { p, m })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// M, which is also the ramification index e(R/Q_p).
    pub fn root_index(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> PiElem {
        PiElem {
            field: *self,
            coeffs: vec![Rational::zero(); self.m],
        }
    }

    pub fn one(&self) -> PiElem {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> PiElem {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, r: Rational) -> PiElem {
        let mut x = self.zero();
        x.coeffs[0] = r;
        x
    }

    pub fn pi(&self) -> PiElem {
        self.pi_pow(1)
    }

    /// π^k for any integer k, using π^M = p.
    pub fn pi_pow(&self, k: i64) -> PiElem {
        let m = self.m as i64;
        let (q, r) = k.div_mod_floor(&m);
        let mut x = self.zero();
        let p = Rational::from_integer(BigInt::from(self.p));
        x.coeffs[r as usize] = if q >= 0 {
            num_traits::pow(p, q as usize)
        } else {
            num_traits::pow(p.recip(), (-q) as usize)
        };
        x
    }

    /// Builds an element from up to M coefficients, padding with zeros.
    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> Result<PiElem> {
        if coeffs.len() > self.m {
            return Err(Error::Parse(format!(
                "{} coefficients given but root index is {}",
                coeffs.len(),
                self.m
            )));
        }
        let mut x = self.zero();
        for (slot, c) in x.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        Ok(x)
    }

    /// Reads the wire format: an array of `"num/den"` strings (integers accepted).
    pub fn parse_json(&self, v: &Value) -> Result<PiElem> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected coefficient array, got {v}")))?;
        let coeffs = arr
            .iter()
            .map(|c| match c {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => parse_rational(&n.to_string()),
                other => Err(Error::Parse(format!("bad coefficient {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(coeffs)
    }
}

/// `val_p` of an element of R; `Infinite` is the valuation of zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PAdicValue {
    Finite(Rational),
    Infinite,
}

impl PAdicValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            PAdicValue::Finite(r) => Some(r),
            PAdicValue::Infinite => None,
        }
    }
}

impl ops::Add for PAdicValue {
    type Output = PAdicValue;
    fn add(self, rhs: PAdicValue) -> PAdicValue {
        match (self, rhs) {
            (PAdicValue::Finite(a), PAdicValue::Finite(b)) => PAdicValue::Finite(a + b),
            _ => PAdicValue::Infinite,
        }
    }
}

impl fmt::Display for PAdicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdicValue::Finite(r) => write!(f, "{r}"),
            PAdicValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Σ c_j π^j with rational c_j, j < M.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiElem {
    field: PiField,
    coeffs: Vec<Rational>,
}

impl PiElem {
    pub fn field(&self) -> PiField {
        self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The rational value, if only the constant coordinate is nonzero.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    /// Exact p-adic valuation, normalized by val_p(p) = 1.
    ///
    /// The candidates val_p(c_j) + j/M have pairwise distinct fractional
    /// parts, so the minimum is attained by a single term.
    pub fn valuation(&self) -> PAdicValue {
        let m = self.field.m as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                Rational::new(
                    BigInt::from(rational_valuation(c, self.field.p) * m + j as i64),
                    BigInt::from(m),
                )
            })
            .min()
            .map_or(PAdicValue::Infinite, PAdicValue::Finite)
    }

    pub fn sqrt_check(&self, s: &PiElem) -> bool {
        s.field == self.field && s.mul(s) == *self
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| Value::String(format_rational(c))).collect())
    }

    fn check(&self, rhs: &PiElem) {
        assert_eq!(self.field, rhs.field, "mixed arithmetic across different fields");
    }

    fn radical(&self, j: usize) -> String {
        let g = j.gcd(&self.field.m);
        let (a, b) = (j / g, self.field.m / g);
        match (a, b) {
            (1, 2) => format!("√{}", self.field.p),
            _ => format!("{}^({a}/{b})", self.field.p),
        }
    }
}

impl Ring for PiElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }

    fn one_like(&self) -> Self {
        self.field.one()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        PiElem {
            field: self.field,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        PiElem {
            field: self.field,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let m = self.field.m;
        let p = Rational::from_integer(BigInt::from(self.field.p));
        let mut out = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let prod = a * b;
                if i + j < m {
                    out[i + j] += prod;
                } else {
                    out[i + j - m] += prod * &p;
                }
            }
        }
        PiElem { field: self.field, coeffs: out }
    }

    fn neg(&self) -> Self {
        PiElem {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Field for PiElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(self.field.from_rational(r.recip()));
        }
        // Column j of the multiplication matrix is self * π^j.
        let m = self.field.m;
        let cols: Vec<PiElem> = (0..m).map(|j| self.mul(&self.field.pi_pow(j as i64))).collect();
        let a = (0..m)
            .map(|r| (0..m).map(|c| cols[c].coeffs[r].clone()).collect())
            .collect();
        let mut b = vec![Rational::zero(); m];
        b[0] = Rational::one();
        // x^M - p is Eisenstein, so R is a field and the system is regular.
        let y = super::rational::solve(a, b).expect("multiplication matrix of a nonzero element is regular");
        Some(PiElem { field: self.field, coeffs: y })
    }
}

impl fmt::Display for PiElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let coef = if c.is_integer() {
                c.to_string()
            } else {
                format!("({c})")
            };
            terms.push(if j == 0 {
                coef
            } else if c.is_one() {
                self.radical(j)
            } else if (-c).is_one() {
                format!("-{}", self.radical(j))
            } else {
                format!("{coef}{}", self.radical(j))
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if !t.starts_with('-') {
                out.push('+');
            }
            out.push_str(t);
        }
        write!(f, "{out}")
    }
}

macro_rules! forward_ops {
    ($ty:ty) => {
        impl std::ops::Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $crate::ring::Ring::add(self, rhs)
            }
        }
        impl std::ops::Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $crate::ring::Ring::sub(self, rhs)
            }
        }
        impl std::ops::Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                $crate::ring::Ring::mul(self, rhs)
            }
        }
        impl std::ops::Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $crate::ring::Ring::neg(self)
            }
        }
    };
}
pub(crate) use forward_ops;

forward_ops!(PiElem);
