//! Iwasawa invariants of Q-series, growth of complexities along towers, and
//! Kida-type comparisons between two towers.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{PAdicValue, PiElem, Rational};
use crate::graph::VertexWeightedGraph;
use crate::lfunc::{q_series, twisted_factorization, QSeries};
use crate::linalg::UniPoly;
use crate::matrix_tree::{kappa_det, kappa_v_det};
use crate::ring::Ring;
use crate::voltage::{derive, truncate, FiniteVoltage, VoltageAssignment};

/// μ(Q): the least valuation among the coefficients of the polynomial part.
pub fn mu_of(q: &QSeries) -> Result<Rational> {
    q.terms()
        .values()
        .filter_map(|c| c.valuation().finite().cloned())
        .min()
        .ok_or(Error::ZeroSeries)
}

/// λ(Q) for one variable: the first index whose coefficient attains μ.
pub fn lambda_of(q: &QSeries) -> Result<u64> {
    let p = q.numerator()?;
    let mu = PAdicValue::Finite(mu_of(q)?);
    Ok(p.coeffs().iter().position(|c| c.valuation() == mu).expect("μ is attained") as u64)
}

/// Φ_{p^j}(S) = Σ_{k<p} S^{k·p^{j−1}}.
fn cyclotomic(zero: &PiElem, p: u64, j: u32) -> UniPoly<PiElem> {
    let step = p.pow(j - 1) as usize;
    let mut coeffs = vec![zero.clone(); step * (p as usize - 1) + 1];
    for k in 0..p as usize {
        coeffs[k * step] = zero.one_like();
    }
    UniPoly::new(coeffs, zero.clone())
}

/// Whether Q(ζ − 1) ≠ 0 for every p-power root of unity ζ ≠ 1.
///
/// Φ_{p^j} may split over R, but each factor has degree at least φ(p^j)/M,
/// so only finitely many j need a gcd test.
pub fn nonvanishing_on_w(q: &QSeries) -> Result<bool> {
    let p_t = q.numerator()?;
    let Some(deg) = p_t.degree() else {
        return Ok(false);
    };
    let zero = p_t.coeff(0).zero_like();
    let field = zero.field();
    let (p, m) = (field.prime(), field.root_index());
    let shift = UniPoly::new(vec![zero.one_like().neg(), zero.one_like()], zero.clone());
    let p_s = p_t.compose(&shift);
    let mut j = 1;
    loop {
        let phi = p.pow(j - 1) * (p - 1);
        if phi as usize > m * deg {
            return Ok(true);
        }
        let g = p_s.gcd(&cyclotomic(&zero, p, j));
        if g.degree() != Some(0) {
            return Ok(false);
        }
        j += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IwasawaInvariants {
    pub mu: Rational,
    pub lambda: u64,
    /// Fitted at the largest level with κ ≠ 0.
    pub nu: Option<Rational>,
    /// Smallest level from which every computed level matches.
    pub n0: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Total,
    /// κ_{(v,0)} for the base vertex with this index.
    Rooted(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelRow {
    pub level: usize,
    pub vertices: usize,
    pub kappa: PiElem,
    pub valuation: PAdicValue,
    pub predicted: Option<Rational>,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct IwasawaReport {
    pub mode: Mode,
    pub q: QSeries,
    /// `None` when Q vanishes identically.
    pub invariants: Option<IwasawaInvariants>,
    pub rows: Vec<LevelRow>,
    /// First level with κ = 0, if any.
    pub zero_from: Option<usize>,
    /// κ stays 0 at every level after `zero_from`.
    pub zero_propagates: bool,
}

impl IwasawaReport {
    pub fn matching_levels(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.matches).map(|r| r.level).collect()
    }
}

/// κ(X(α_n)) or κ_{(v,0)}(X(α_n)); the total uses that κ_{(v,σ)} is constant
/// on fibers (translation by G is a weight-preserving automorphism).
pub fn level_kappa(g: &VertexWeightedGraph, alpha: &VoltageAssignment, n: u32, mode: Mode) -> Result<(usize, PiElem)> {
    let p = g.zero().field().prime();
    let at = truncate(alpha, p, n);
    let derived = derive(g, &at)?;
    if !derived.graph.is_connected() {
        return Err(Error::Disconnected { level: Some(n as usize) });
    }
    let zero = derived.group.zero();
    let size = derived.graph.vertex_count();
    let kappa = match mode {
        Mode::Rooted(v) => kappa_v_det(&derived.graph, derived.vertex(v, &zero))?,
        Mode::Total => {
            let sum = (0..g.vertex_count())
                .into_par_iter()
                .map(|v| kappa_v_det(&derived.graph, derived.vertex(v, &zero)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(g.zero(), |acc, k| acc.add(&k));
            sum.mul(&g.zero().from_int_like(derived.group.order() as i64))
        }
    };
    Ok((size, kappa))
}

/// Computes κ (or κ_v) for n = 0..=levels and compares val_p with
/// μp^n + λ'n + ν, where λ' = λ(Q) in total mode and λ(Q) − 1 when rooted.
pub fn iwasawa_verify(g: &VertexWeightedGraph, alpha: &VoltageAssignment, levels: u32, mode: Mode) -> Result<IwasawaReport> {
    if alpha.dim != 1 {
        return Err(Error::MultivariableUnsupported);
    }
    if let Mode::Rooted(v) = mode {
        if v >= g.vertex_count() {
            return Err(Error::UnknownLabel(format!("vertex index {v}")));
        }
    }
    let p = g.zero().field().prime();
    let q = q_series(g, alpha)?;
    let computed = (0..=levels)
        .into_par_iter()
        .map(|n| level_kappa(g, alpha, n, mode))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<LevelRow> = computed
        .into_iter()
        .enumerate()
        .map(|(level, (vertices, kappa))| LevelRow {
            level,
            vertices,
            valuation: kappa.valuation(),
            kappa,
            predicted: None,
            matches: false,
        })
        .collect();
    let zero_from = rows.iter().position(|r| r.kappa.is_zero());
    let zero_propagates = zero_from.is_none_or(|z| rows[z..].iter().all(|r| r.kappa.is_zero()));
    let invariants = if q.is_zero() {
        None
    } else {
        let mu = mu_of(&q)?;
        let lambda = lambda_of(&q)?;
        let slope = match mode {
            Mode::Total => Rational::from_integer(lambda.into()),
            Mode::Rooted(_) => Rational::from_integer(lambda.into()) - Rational::from_integer(1.into()),
        };
        let growth = |n: usize| &mu * Rational::from_integer(p.pow(n as u32).into()) + &slope * Rational::from_integer(n.into());
        let nu = rows
            .iter()
            .rev()
            .find_map(|r| r.valuation.finite().map(|v| v - growth(r.level)));
        if let Some(nu) = &nu {
            for r in rows.iter_mut() {
                let pred = growth(r.level) + nu;
                r.matches = r.valuation == PAdicValue::Finite(pred.clone());
                r.predicted = Some(pred);
            }
        }
        let n0 = (0..rows.len()).find(|&n| rows[n..].iter().all(|r| r.matches));
        Some(IwasawaInvariants { mu, lambda, nu, n0 })
    };
    Ok(IwasawaReport {
        mode,
        q,
        invariants,
        rows,
        zero_from,
        zero_propagates,
    })
}

/// val_p(w_v) against a bound μ/#V.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightCheck {
    pub vertex: String,
    pub valuation: PAdicValue,
    pub bound: Rational,
    pub ok: bool,
}

fn weight_checks(g: &VertexWeightedGraph, mu: &Rational) -> Vec<WeightCheck> {
    let bound = mu / Rational::from_integer(g.vertex_count().into());
    g.vertices()
        .iter()
        .map(|v| {
            let valuation = v.weight.valuation();
            WeightCheck {
                vertex: v.id.clone(),
                ok: valuation >= PAdicValue::Finite(bound.clone()),
                valuation,
                bound: bound.clone(),
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct KidaReport {
    /// [Y : X] = p
    pub degree: u64,
    pub levels: u32,
    pub q_x: QSeries,
    pub q_y: QSeries,
    pub mu_x: Rational,
    pub lambda_x: u64,
    pub mu_y: Rational,
    pub lambda_y: u64,
    /// Q_Y has no zero on the p-power roots of unity other than 1.
    pub nonvanishing: bool,
    /// A base vertex v with κ_{(v,0)}(Y) ≠ 0, certifying (b) with `nonvanishing`.
    pub b_vertex: Option<String>,
    pub b: bool,
    pub b_prime: bool,
    pub c: Vec<WeightCheck>,
    pub c_prime: Vec<WeightCheck>,
    /// ∏_φ Q^{α,β}(φ, T) = Q_Y
    pub factorization: bool,
    /// μ and λ of Q_Y are the sums over the Galois orbits of twisted factors.
    pub mu_additive: bool,
    pub lambda_additive: bool,
    pub mu_identity: bool,
    pub lambda_identity: bool,
}

impl KidaReport {
    pub fn c_holds(&self) -> bool {
        self.c.iter().all(|w| w.ok)
    }

    pub fn c_prime_holds(&self) -> bool {
        self.c_prime.iter().all(|w| w.ok)
    }

    pub fn hypotheses_hold(&self) -> bool {
        (self.b || self.b_prime) && (self.c_holds() || self.c_prime_holds())
    }

    pub fn identities_hold(&self) -> bool {
        self.mu_identity && self.lambda_identity
    }

    /// Human-readable descriptions of each failed hypothesis.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.b {
            out.push("(b) fails: no vertex with all rooted complexities nonzero".to_string());
        }
        if !self.b_prime {
            out.push("(b)' fails: some complexity vanishes".to_string());
        }
        for (name, checks) in [("(c)", &self.c), ("(c)'", &self.c_prime)] {
            for w in checks.iter().filter(|w| !w.ok) {
                out.push(format!("{name} violated at {}: val={} < {}", w.vertex, w.valuation, w.bound));
            }
        }
        out
    }
}

/// Compares the towers X(α_n) and Y(α_n∘π) for Y = X(β), β into Z/p.
/// Fails with `Disconnected` at the first level where Y(α_n∘π) is not connected.
pub fn kida_verify(
    g: &VertexWeightedGraph,
    alpha: &VoltageAssignment,
    beta: &FiniteVoltage,
    levels: u32,
) -> Result<KidaReport> {
    if alpha.dim != 1 {
        return Err(Error::MultivariableUnsupported);
    }
    let zero = g.zero();
    let p = zero.field().prime();
    if beta.group.orders() != [p] {
        return Err(Error::DimensionMismatch(format!("β must take values in Z/{p}")));
    }
    let y = derive(g, beta)?;
    let alpha_y = y.lift_voltage(alpha);
    for n in 0..=levels {
        if !derive(&y.graph, &truncate(&alpha_y, p, n))?.graph.is_connected() {
            return Err(Error::Disconnected { level: Some(n as usize) });
        }
    }
    let q_x = q_series(g, alpha)?;
    let q_y = q_series(&y.graph, &alpha_y)?;
    let (mu_x, lambda_x) = (mu_of(&q_x)?, lambda_of(&q_x)?);
    let (mu_y, lambda_y) = (mu_of(&q_y)?, lambda_of(&q_y)?);
    let nonvanishing = nonvanishing_on_w(&q_y)?;
    let zero_sigma = y.group.zero();
    let mut b_vertex = None;
    for v in 0..g.vertex_count() {
        if !kappa_v_det(&y.graph, y.vertex(v, &zero_sigma))?.is_zero() {
            b_vertex = Some(g.vertices()[v].id.clone());
            break;
        }
    }
    let b = nonvanishing && b_vertex.is_some();
    let b_prime = nonvanishing && !kappa_det(&y.graph)?.is_zero();
    let tf = twisted_factorization(g, alpha, beta)?;
    let mut mu_sum = Rational::from_integer(0.into());
    let mut lambda_sum = 0;
    for f in &tf.orbit_products {
        mu_sum += mu_of(f)?;
        lambda_sum += lambda_of(f)?;
    }
    let deg = Rational::from_integer(p.into());
    Ok(KidaReport {
        degree: p,
        levels,
        c: weight_checks(g, &mu_x),
        c_prime: weight_checks(&y.graph, &mu_y),
        factorization: tf.holds() && tf.product == q_y,
        mu_additive: mu_sum == mu_y,
        lambda_additive: lambda_sum == lambda_y,
        mu_identity: mu_y == &deg * &mu_x,
        lambda_identity: lambda_y == p * lambda_x,
        q_x,
        q_y,
        mu_x,
        lambda_x,
        mu_y,
        lambda_y,
        nonvanishing,
        b_vertex,
        b,
        b_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{int, rat};
    use crate::field::PiField;
    use crate::linalg::LaurentPoly;

    fn f() -> PiField {
        PiField::new(2, 4).unwrap()
    }

    fn series(shift: u32, coeffs: &[PiElem]) -> QSeries {
        LaurentPoly::from_parts(
            vec![shift],
            coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())),
            f().zero(),
        )
    }

    #[test]
    fn simple_invariants() {
        let f = f();
        let pt = series(0, &[f.zero(), f.from_int(2)]);
        assert_eq!(mu_of(&pt).unwrap(), int(1));
        let t3 = series(0, &[f.zero(), f.zero(), f.zero(), f.one()]);
        assert_eq!(lambda_of(&t3).unwrap(), 3);
        assert_eq!(mu_of(&series(0, &[])), Err(Error::ZeroSeries));
        // −(4+3√2)T²(1+T)^{-1}
        let c = f.from_int(4).add(&f.pi_pow(2).mul(&f.from_int(3))).neg();
        let q = series(1, &[f.zero(), f.zero(), c]);
        assert_eq!(mu_of(&q).unwrap(), rat(1, 2));
        assert_eq!(lambda_of(&q).unwrap(), 2);
        assert!(nonvanishing_on_w(&q).unwrap());
    }

    #[test]
    fn nonvanishing_examples() {
        let f = f();
        assert!(nonvanishing_on_w(&series(0, &[f.zero(), f.one()])).unwrap());
        // S + 1 = T + 2
        assert!(!nonvanishing_on_w(&series(0, &[f.from_int(2), f.one()])).unwrap());
        // S² + 1 = T² + 2T + 2
        assert!(!nonvanishing_on_w(&series(0, &[f.from_int(2), f.from_int(2), f.one()])).unwrap());
        let two_var = LaurentPoly::var(2, 0, f.zero());
        assert_eq!(nonvanishing_on_w(&two_var), Err(Error::MultivariableUnsupported));
        assert_eq!(lambda_of(&two_var), Err(Error::MultivariableUnsupported));
    }

    #[test]
    fn factor_of_split_cyclotomic_is_detected() {
        // over Q(√2), Φ_8(S) = (S² − √2S + 1)(S² + √2S + 1)
        let f = PiField::new(2, 2).unwrap();
        let s2 = f.pi();
        let fac = UniPoly::new(vec![f.one(), s2.neg(), f.one()], f.zero());
        let shift = UniPoly::new(vec![f.one(), f.one()], f.zero());
        let in_t = fac.compose(&shift);
        let q = LaurentPoly::from_parts(
            vec![0],
            in_t.coeffs().iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())),
            f.zero(),
        );
        assert!(!nonvanishing_on_w(&q).unwrap());
    }
}
