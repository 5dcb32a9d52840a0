use std::fmt::Write;

use serde_json::{json, Value};
use vwtower::field::{CycloElem, PAdicValue, PiElem, Rational};
use vwtower::linalg::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Status {
    Ok = 0,
    OracleMismatch = 4,
    HypothesisFailed = 5,
}

pub struct Report {
    pub table: String,
    pub json: Value,
    pub status: Status,
}

pub fn val_text(v: &PAdicValue) -> String {
    v.to_string()
}

pub fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// An R-element as text, coefficients and valuation.
pub fn elem(x: &PiElem) -> Value {
    json!({"text": x.to_string(), "value": x.to_json(), "valuation": val_text(&x.valuation())})
}

pub fn cyclo(x: &CycloElem) -> Value {
    json!({"text": x.to_string(), "value": x.to_json()})
}

pub fn series<C: vwtower::Ring + std::fmt::Display>(q: &LaurentPoly<C>, coeff: impl Fn(&C) -> Value) -> Value {
    let terms: Vec<Value> = q
        .terms()
        .iter()
        .map(|(e, c)| json!({"exponents": e, "coeff": coeff(c)}))
        .collect();
    json!({"text": q.to_string(), "shift": q.shift(), "terms": terms})
}

pub fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

/// Left-aligned columns separated by two spaces.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(header.to_vec(), &mut out);
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}
