//! JSON shapes for everything the command line emits. The schemas are load
//! bearing: downstream consumers parse these exact fields, so every change
//! here is a compatibility break.
//!
//! Conventions: big integers are decimal strings (no 64-bit overflow
//! surprises), rationals are always "num/den" strings even when the value
//! is an integer, exponents ride on the doubled grid.

use num::{BigInt, BigRational};
use serde_json::{json, Map, Value};
use std::str::FromStr;

use crate::checks::{CongruenceFailure, CongruenceReport, ValuationRow, ValuationTable};
use crate::eisenstein::{EisensteinDecomposition, EisensteinMonomial};
use crate::error::{Error, Result};
use crate::series::{QSeries, Rat};
use crate::xseries::XSeries;

fn bad(reason: impl Into<String>) -> Error {
    Error::InvalidArgument {
        name: "json",
        reason: reason.into(),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key}")))
}

fn int_field(v: &Value, key: &str) -> Result<i64> {
    field(v, key)?
        .as_i64()
        .ok_or_else(|| bad(format!("field {key} must be an integer")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| bad(format!("field {key} must be a string")))
}

fn array_field<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| bad(format!("field {key} must be an array")))
}

fn big_from(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| bad(format!("not a decimal integer: {s}")))
}

fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rat_from_string(s: &str) -> Result<Rat> {
    let (num, den) = s
        .split_once('/')
        .ok_or_else(|| bad(format!("rational must be num/den, got {s}")))?;
    let den = big_from(den)?;
    if den == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(big_from(num)?, den))
}

pub fn qseries_to_json(s: &QSeries) -> Value {
    let coeffs: Vec<Value> = s
        .iter()
        .map(|(k, v)| json!([k, rat_to_string(v)]))
        .collect();
    json!({ "trunc_order_x2": s.trunc_x2(), "coeffs": coeffs })
}

pub fn qseries_from_json(v: &Value) -> Result<QSeries> {
    let trunc = int_field(v, "trunc_order_x2")?;
    if trunc <= 0 {
        return Err(bad("trunc_order_x2 must be positive"));
    }
    let mut pairs = Vec::new();
    for entry in array_field(v, "coeffs")? {
        let pair = entry
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| bad("coeffs entries must be [exponent, rational] pairs"))?;
        let exp = pair[0]
            .as_i64()
            .ok_or_else(|| bad("exponent must be an integer"))?;
        let c = rat_from_string(
            pair[1]
                .as_str()
                .ok_or_else(|| bad("coefficient must be a string"))?,
        )?;
        if exp < 0 || exp >= trunc {
            return Err(bad(format!("exponent {exp} outside [0, {trunc})")));
        }
        pairs.push((exp, c));
    }
    Ok(QSeries::from_coeffs(pairs, trunc))
}

pub fn xseries_to_json(s: &XSeries) -> Value {
    let coefficients: Vec<Value> = (0..s.x_trunc()).map(|k| qseries_to_json(s.q_coeff(k))).collect();
    json!({ "x_trunc": s.x_trunc(), "coefficients": coefficients })
}

pub fn xseries_from_json(v: &Value) -> Result<XSeries> {
    let coefficients = array_field(v, "coefficients")?;
    if coefficients.is_empty() {
        return Err(bad("coefficients must be nonempty"));
    }
    let coeffs: Result<Vec<QSeries>> = coefficients.iter().map(qseries_from_json).collect();
    Ok(XSeries::from_q_coeffs(coeffs?))
}

pub fn decomposition_to_json(d: &EisensteinDecomposition) -> Value {
    let (denom, nums) = d.cleared();
    let terms: Vec<Value> = nums
        .iter()
        .map(|(m, n)| json!({ "a": m.a, "b": m.b, "c": m.c, "num": n.to_string() }))
        .collect();
    json!({ "weight": d.weight, "denominator": denom.to_string(), "terms": terms })
}

pub fn decomposition_from_json(v: &Value) -> Result<EisensteinDecomposition> {
    let weight = int_field(v, "weight")?;
    if weight <= 0 {
        return Err(bad("weight must be positive"));
    }
    let denom = big_from(str_field(v, "denominator")?)?;
    if denom == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    let mut coeffs = Vec::new();
    for term in array_field(v, "terms")? {
        let m = EisensteinMonomial::new(
            int_field(term, "a")? as u32,
            int_field(term, "b")? as u32,
            int_field(term, "c")? as u32,
        );
        let num = big_from(str_field(term, "num")?)?;
        coeffs.push((m, BigRational::new(num, denom.clone())));
    }
    Ok(EisensteinDecomposition {
        weight: weight as u32,
        coeffs,
    })
}

pub fn congruence_to_json(r: &CongruenceReport) -> Value {
    let failure = match &r.first_failure {
        None => Value::Null,
        Some(f) => json!({
            "exponent": f.exponent,
            "residues": [f.residues.0.to_string(), f.residues.1.to_string()],
        }),
    };
    json!({
        "i": r.i, "j": r.j, "p": r.p, "s": r.s,
        "order": r.order,
        "holds": r.holds,
        "first_failure": failure,
    })
}

pub fn congruence_from_json(v: &Value) -> Result<CongruenceReport> {
    let failure = field(v, "first_failure")?;
    let first_failure = if failure.is_null() {
        None
    } else {
        let residues = array_field(failure, "residues")?;
        if residues.len() != 2 {
            return Err(bad("residues must hold exactly two values"));
        }
        let r0 = big_from(residues[0].as_str().ok_or_else(|| bad("residue must be a string"))?)?;
        let r1 = big_from(residues[1].as_str().ok_or_else(|| bad("residue must be a string"))?)?;
        Some(CongruenceFailure {
            exponent: int_field(failure, "exponent")?,
            residues: (r0, r1),
        })
    };
    Ok(CongruenceReport {
        i: int_field(v, "i")? as u32,
        j: int_field(v, "j")? as u32,
        p: int_field(v, "p")? as u64,
        s: int_field(v, "s")? as u32,
        order: int_field(v, "order")?,
        holds: field(v, "holds")?
            .as_bool()
            .ok_or_else(|| bad("holds must be a boolean"))?,
        first_failure,
    })
}

pub fn valuation_to_json(t: &ValuationTable) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            let mut row = Map::new();
            row.insert("n".into(), json!(r.n));
            row.insert("coefficient".into(), json!(r.coefficient.to_string()));
            let v = match r.valuation {
                Some(v) => json!(v),
                None => json!("∞"),
            };
            row.insert("valuation".into(), v);
            Value::Object(row)
        })
        .collect();
    json!({ "k": t.k, "p": t.p, "rows": rows })
}

pub fn valuation_from_json(v: &Value) -> Result<ValuationTable> {
    let mut rows = Vec::new();
    for row in array_field(v, "rows")? {
        let raw = field(row, "valuation")?;
        let valuation = if raw.as_str() == Some("∞") {
            None
        } else {
            Some(
                raw.as_u64()
                    .ok_or_else(|| bad("valuation must be a number or \"∞\""))?,
            )
        };
        rows.push(ValuationRow {
            n: int_field(row, "n")? as u32,
            coefficient: big_from(str_field(row, "coefficient")?)?,
            valuation,
        });
    }
    Ok(ValuationTable {
        k: int_field(v, "k")? as u32,
        p: int_field(v, "p")? as u64,
        rows,
    })
}
