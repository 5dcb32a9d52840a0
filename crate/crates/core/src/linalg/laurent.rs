use std::collections::BTreeMap;
use std::fmt;

use super::poly::UniPoly;
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

type Terms<C> = BTreeMap<Vec<u32>, C>;

/// (1+T_1)^{−k_1}···(1+T_d)^{−k_d} · P(T_1, …, T_d).
///
/// Normal form: P is not divisible by (1+T_i) whenever k_i > 0, and the
/// zero series has k = 0. With that, equality is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<C> {
    nvars: usize,
    shift: Vec<u32>,
    terms: Terms<C>,
    zero: C,
}

impl<C: Ring> LaurentPoly<C> {
    pub fn zero(nvars: usize, zero: C) -> Self {
        LaurentPoly {
            nvars,
            shift: vec![0; nvars],
            terms: BTreeMap::new(),
            zero,
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut z = Self::zero(nvars, c.zero_like());
        if !c.is_zero() {
            z.terms.insert(vec![0; nvars], c);
        }
        z
    }

    /// The variable T_i.
    pub fn var(nvars: usize, i: usize, zero: C) -> Self {
        let mut z = Self::zero(nvars, zero.clone());
        let mut e = vec![0; nvars];
        e[i] = 1;
        z.terms.insert(e, zero.one_like());
        z
    }

    /// 𝕥(a) = ∏ (1+T_i)^{a_i} for an integer vector a.
    pub fn unit_monomial(a: &[i64], zero: C) -> Self {
        let nvars = a.len();
        let mut terms = Terms::new();
        terms.insert(vec![0; nvars], zero.one_like());
        let mut shift = vec![0; nvars];
        for (i, &ai) in a.iter().enumerate() {
            if ai >= 0 {
                terms = times_one_plus(&terms, i, ai as u32);
            } else {
                shift[i] = (-ai) as u32;
            }
        }
        LaurentPoly { nvars, shift, terms, zero }
    }

    /// Builds from explicit parts and brings the result into normal form.
    pub fn from_parts(shift: Vec<u32>, terms: impl IntoIterator<Item = (Vec<u32>, C)>, zero: C) -> Self {
        let nvars = shift.len();
        let mut map = Terms::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            add_term(&mut map, e, c);
        }
        let mut x = LaurentPoly {
            nvars,
            shift,
            terms: map,
            zero,
        };
        x.normalize();
        x
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn shift(&self) -> &[u32] {
        &self.shift
    }

    /// Nonzero coefficients of the polynomial part, keyed by exponent vector.
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> &C {
        self.terms.get(exps).unwrap_or(&self.zero)
    }

    fn normalize(&mut self) {
        if self.terms.is_empty() {
            self.shift.iter_mut().for_each(|k| *k = 0);
            return;
        }
        for i in 0..self.nvars {
            while self.shift[i] > 0 {
                match divide_one_plus(&self.terms, i, &self.zero) {
                    Some(q) => {
                        self.terms = q;
                        self.shift[i] -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    /// Polynomial part multiplied up to the common shift `target` ≥ shift.
    fn lifted(&self, target: &[u32]) -> Terms<C> {
        let mut t = self.terms.clone();
        for i in 0..self.nvars {
            t = times_one_plus(&t, i, target[i] - self.shift[i]);
        }
        t
    }

    fn combine(&self, rhs: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        assert_eq!(self.nvars, rhs.nvars, "Laurent polynomials in different variable counts");
        let target: Vec<u32> = self.shift.iter().zip(&rhs.shift).map(|(a, b)| *a.max(b)).collect();
        let (a, b) = (self.lifted(&target), rhs.lifted(&target));
        let mut out = Terms::new();
        for k in a.keys().chain(b.keys()) {
            if out.contains_key(k) {
                continue;
            }
            let v = f(a.get(k).unwrap_or(&self.zero), b.get(k).unwrap_or(&self.zero));
            if !v.is_zero() {
                out.insert(k.clone(), v);
            }
        }
        let mut x = LaurentPoly {
            nvars: self.nvars,
            shift: target,
            terms: out,
            zero: self.zero.clone(),
        };
        x.normalize();
        x
    }

    /// Substitutes T_i = u_i − 1 for units u_i; `inverses[i]` must be u_i^{−1}.
    pub fn eval_at_units<D: Ring>(&self, embed: impl Fn(&C) -> D, units: &[D], inverses: &[D]) -> D {
        assert_eq!(units.len(), self.nvars);
        let one = units
            .first()
            .map(Ring::one_like)
            .unwrap_or_else(|| embed(&self.zero.one_like()));
        let ts: Vec<D> = units.iter().map(|u| u.sub(&one)).collect();
        let mut acc = one.zero_like();
        for (e, c) in &self.terms {
            let mut term = embed(c);
            for (t, &k) in ts.iter().zip(e) {
                term = term.mul(&t.pow(k as u64));
            }
            acc = acc.add(&term);
        }
        for (inv, &k) in inverses.iter().zip(&self.shift) {
            acc = acc.mul(&inv.pow(k as u64));
        }
        acc
    }

    pub fn map_coeffs<D: Ring>(&self, zero: D, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_parts(
            self.shift.clone(),
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
            zero,
        )
    }

    /// Fallible coefficient map, e.g. descending from C to R.
    pub fn try_map_coeffs<D: Ring>(&self, zero: D, f: impl Fn(&C) -> Result<D>) -> Result<LaurentPoly<D>> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), f(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly::from_parts(self.shift.clone(), terms, zero))
    }

    /// Polynomial part as a one-variable polynomial in T.
    pub fn numerator(&self) -> Result<UniPoly<C>> {
        if self.nvars != 1 {
            return Err(Error::MultivariableUnsupported);
        }
        let deg = self.terms.keys().map(|e| e[0] as usize).max().unwrap_or(0);
        let mut coeffs = vec![self.zero.clone(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[0] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs, self.zero.clone()))
    }
}

impl<C: Field> LaurentPoly<C> {
    /// Whether the polynomial part of `a` divides that of `b` in R[T].
    pub fn divides(&self, b: &LaurentPoly<C>) -> Result<bool> {
        let (pa, pb) = (self.numerator()?, b.numerator()?);
        if pa.is_zero() {
            return Ok(pb.is_zero());
        }
        Ok(pa.divides(&pb))
    }
}

/// `a | b` in R[T] after clearing unit shifts; one variable only.
pub fn poly_divides<C: Field>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> Result<bool> {
    a.divides(b)
}

fn add_term<C: Ring>(map: &mut Terms<C>, e: Vec<u32>, c: C) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&e) {
        Some(v) => {
            *v = v.add(&c);
            if v.is_zero() {
                map.remove(&e);
            }
        }
        None => {
            map.insert(e, c);
        }
    }
}

fn times_one_plus<C: Ring>(terms: &Terms<C>, i: usize, k: u32) -> Terms<C> {
    let mut t = terms.clone();
    for _ in 0..k {
        let mut next = Terms::new();
        for (e, c) in &t {
            add_term(&mut next, e.clone(), c.clone());
            let mut up = e.clone();
            up[i] += 1;
            add_term(&mut next, up, c.clone());
        }
        t = next;
    }
    t
}

/// Exact quotient by (1+T_i), or `None` if it does not divide.
fn divide_one_plus<C: Ring>(terms: &Terms<C>, i: usize, zero: &C) -> Option<Terms<C>> {
    // Group by the exponent vector with coordinate i removed.
    let mut groups: BTreeMap<Vec<u32>, Vec<C>> = BTreeMap::new();
    for (e, c) in terms {
        let mut rest = e.clone();
        let k = rest[i] as usize;
        rest[i] = 0;
        let g = groups.entry(rest).or_default();
        if g.len() <= k {
            g.resize(k + 1, zero.clone());
        }
        g[k] = c.clone();
    }
    let mut out = Terms::new();
    for (rest, cs) in groups {
        // Synthetic division by T + 1.
        let n = cs.len() - 1;
        let mut q = vec![zero.clone(); n];
        let mut carry = zero.clone();
        for k in (1..=n).rev() {
            carry = cs[k].sub(&carry);
            q[k - 1] = carry.clone();
        }
        if !cs[0].sub(&carry).is_zero() {
            return None;
        }
        for (k, c) in q.into_iter().enumerate() {
            let mut e = rest.clone();
            e[i] = k as u32;
            add_term(&mut out, e, c);
        }
    }
    Some(out)
}

impl<C: Ring> Ring for LaurentPoly<C> {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.nvars, self.zero.clone())
    }

    fn one_like(&self) -> Self {
        LaurentPoly::constant(self.nvars, self.zero.one_like())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, |a, b| a.add(b))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, |a, b| a.sub(b))
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars, "Laurent polynomials in different variable counts");
        let mut out = Terms::new();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                add_term(&mut out, e, a.mul(b));
            }
        }
        let mut x = LaurentPoly {
            nvars: self.nvars,
            shift: self.shift.iter().zip(&rhs.shift).map(|(a, b)| a + b).collect(),
            terms: out,
            zero: self.zero.clone(),
        };
        x.normalize();
        x
    }

    fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            shift: self.shift.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            zero: self.zero.clone(),
        }
    }
}

impl<C: Ring + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = |i: usize| {
            if self.nvars == 1 {
                "T".to_string()
            } else {
                format!("T{}", i + 1)
            }
        };
        let mut prefix = String::new();
        for (i, &k) in self.shift.iter().enumerate().filter(|(_, k)| **k > 0) {
            prefix.push_str(&format!("(1+{})^(-{k})·", var(i)));
        }
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: String = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, &k)| if k == 1 { var(i) } else { format!("{}^{k}", var(i)) })
                    .collect();
                format!("({c}){mono}")
            })
            .collect();
        write!(f, "{prefix}({})", terms.join(" + "))
    }
}
