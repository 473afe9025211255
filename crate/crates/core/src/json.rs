//! JSON wire format for expressions.
//!
//! Schema:
//!
//! ```json
//! {
//!   "dim": 3,
//!   "mode": "exact",
//!   "atoms": [
//!     {"kind": "T", "degree": -5, "coeff": {"num": "3", "den": "1", "pi_half": 0}},
//!     {"kind": "LogT", "degree": 2,
//!      "coeff": {"num": "1", "den": "1", "pi_half": 0},
//!      "p": {"num": "-1", "den": "2", "pi_half": -4},
//!      "q": {"num": "0", "den": "1", "pi_half": 0}}
//!   ]
//! }
//! ```
//!
//! Numeric-mode degrees and coefficients are `{"re": .., "im": ..}` objects.
//! Exact rationals are decimal strings so arbitrary precision survives the
//! round trip. For logarithmic atoms the atom is
//! `coeff * (p ln r + q) X*_degree`; the canonical renderer always emits
//! `coeff = 1` there.

use crate::coeff::{ExactScalar, NumericScalar, Scalar};
use crate::dist::{Atom, AtomKind, Degree, DistExpr};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JsonError {
    #[error("malformed expression JSON: {0}")]
    Malformed(String),
    #[error("invalid expression content: {0}")]
    Invalid(String),
}

fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(e) => json!({
            "num": e.rational().numer().to_string(),
            "den": e.rational().denom().to_string(),
            "pi_half": e.pi_half(),
        }),
        Scalar::Numeric(n) => json!({ "re": n.re, "im": n.im }),
    }
}

fn degree_to_value(d: &Degree) -> Value {
    match d {
        Degree::Exact(n) => json!(n),
        Degree::Numeric(z) => json!({ "re": z.re, "im": z.im }),
    }
}

/// Render an expression to the wire schema.
pub fn expr_to_json(e: &DistExpr) -> Value {
    let mode = if e.is_exact() { "exact" } else { "numeric" };
    let atoms: Vec<Value> = e
        .atoms()
        .iter()
        .map(|a| {
            let kind = match (a.kind, a.is_log()) {
                (AtomKind::ScalarT, false) => "T",
                (AtomKind::VectorU, false) => "U",
                (AtomKind::ScalarT, true) => "LogT",
                (AtomKind::VectorU, true) => "LogU",
            };
            let mut obj = Map::new();
            obj.insert("kind".into(), json!(kind));
            obj.insert("degree".into(), degree_to_value(&a.degree));
            if a.is_log() {
                obj.insert("coeff".into(), scalar_to_value(&Scalar::one()));
                obj.insert("p".into(), scalar_to_value(&a.log_coeff));
                obj.insert("q".into(), scalar_to_value(&a.coeff));
            } else {
                obj.insert("coeff".into(), scalar_to_value(&a.coeff));
            }
            Value::Object(obj)
        })
        .collect();
    json!({ "dim": e.dim(), "mode": mode, "atoms": atoms })
}

pub fn expr_to_string(e: &DistExpr) -> String {
    expr_to_json(e).to_string()
}

fn parse_scalar(v: &Value) -> Result<Scalar, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| JsonError::Malformed("scalar must be an object".into()))?;
    if obj.contains_key("re") {
        let re = obj
            .get("re")
            .and_then(Value::as_f64)
            .ok_or_else(|| JsonError::Malformed("re must be a number".into()))?;
        let im = obj.get("im").and_then(Value::as_f64).unwrap_or(0.0);
        return Ok(Scalar::Numeric(NumericScalar::new(re, im)));
    }
    let num_s = obj
        .get("num")
        .and_then(Value::as_str)
        .ok_or_else(|| JsonError::Malformed("missing num".into()))?;
    let den_s = obj
        .get("den")
        .and_then(Value::as_str)
        .ok_or_else(|| JsonError::Malformed("missing den".into()))?;
    let pi_half = obj
        .get("pi_half")
        .and_then(Value::as_i64)
        .ok_or_else(|| JsonError::Malformed("missing pi_half".into()))?;
    let num = BigInt::from_str(num_s)
        .map_err(|e| JsonError::Malformed(format!("bad num {:?}: {}", num_s, e)))?;
    let den = BigInt::from_str(den_s)
        .map_err(|e| JsonError::Malformed(format!("bad den {:?}: {}", den_s, e)))?;
    if den == BigInt::from(0) {
        return Err(JsonError::Invalid("zero denominator".into()));
    }
    Ok(Scalar::Exact(ExactScalar::new(
        BigRational::new(num, den),
        pi_half,
    )))
}

fn parse_degree(v: &Value) -> Result<Degree, JsonError> {
    if let Some(n) = v.as_i64() {
        return Ok(Degree::Exact(n));
    }
    if let Some(obj) = v.as_object() {
        let re = obj
            .get("re")
            .and_then(Value::as_f64)
            .ok_or_else(|| JsonError::Malformed("degree.re must be a number".into()))?;
        let im = obj.get("im").and_then(Value::as_f64).unwrap_or(0.0);
        return Ok(Degree::Numeric(Complex64::new(re, im)));
    }
    Err(JsonError::Malformed(
        "degree must be an integer or {re, im}".into(),
    ))
}

/// Parse an expression from the wire schema.
pub fn expr_from_json(v: &Value) -> Result<DistExpr, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| JsonError::Malformed("expression must be an object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| JsonError::Malformed("missing dim".into()))? as u32;
    if dim < 2 {
        return Err(JsonError::Invalid("dim must be >= 2".into()));
    }
    let atoms_v = obj
        .get("atoms")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Malformed("missing atoms array".into()))?;
    let mut atoms = Vec::with_capacity(atoms_v.len());
    for av in atoms_v {
        let a = av
            .as_object()
            .ok_or_else(|| JsonError::Malformed("atom must be an object".into()))?;
        let kind_s = a
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| JsonError::Malformed("missing atom kind".into()))?;
        let degree = parse_degree(
            a.get("degree")
                .ok_or_else(|| JsonError::Malformed("missing degree".into()))?,
        )?;
        let coeff = parse_scalar(
            a.get("coeff")
                .ok_or_else(|| JsonError::Malformed("missing coeff".into()))?,
        )?;
        let (kind, is_log) = match kind_s {
            "T" => (AtomKind::ScalarT, false),
            "U" => (AtomKind::VectorU, false),
            "LogT" => (AtomKind::ScalarT, true),
            "LogU" => (AtomKind::VectorU, true),
            other => {
                return Err(JsonError::Malformed(format!("unknown atom kind {:?}", other)))
            }
        };
        let atom = if is_log {
            let p = parse_scalar(
                a.get("p")
                    .ok_or_else(|| JsonError::Malformed("log atom missing p".into()))?,
            )?;
            let q = parse_scalar(
                a.get("q")
                    .ok_or_else(|| JsonError::Malformed("log atom missing q".into()))?,
            )?;
            Atom {
                kind,
                degree,
                coeff: coeff.mul(&q),
                log_coeff: coeff.mul(&p),
            }
        } else {
            Atom::plain(kind, degree, coeff)
        };
        atoms.push(atom);
    }
    DistExpr::from_atoms(dim, atoms).map_err(|e| JsonError::Invalid(e.to_string()))
}

pub fn expr_from_str(s: &str) -> Result<DistExpr, JsonError> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| JsonError::Malformed(format!("not JSON: {}", e)))?;
    expr_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_exact() {
        let m = 3;
        let e = DistExpr::delta(m)
            .add(&DistExpr::hilbert_kernel(m).scale(&Scalar::Exact(ExactScalar::ratio(-7, 3))))
            .unwrap();
        let s = expr_to_string(&e);
        let back = expr_from_str(&s).unwrap();
        assert!(back.equal(&e));
    }

    #[test]
    fn round_trip_log_atoms() {
        let e = DistExpr::log_tstar(
            4,
            2,
            Scalar::Exact(ExactScalar::with_pi(-1, 8, -8)),
            Scalar::Exact(ExactScalar::with_pi(3, 16, -8)),
        )
        .unwrap();
        let s = expr_to_string(&e);
        let back = expr_from_str(&s).unwrap();
        assert!(back.equal(&e));
        // log coefficient folding: coeff multiplies into p and q on parse
        let v: Value = serde_json::from_str(
            r#"{"dim":4,"mode":"exact","atoms":[{"kind":"LogU","degree":1,
                "coeff":{"num":"2","den":"1","pi_half":0},
                "p":{"num":"1","den":"2","pi_half":0},
                "q":{"num":"3","den":"1","pi_half":0}}]}"#,
        )
        .unwrap();
        let e = expr_from_json(&v).unwrap();
        assert_eq!(e.atoms()[0].log_coeff, Scalar::Exact(ExactScalar::one()));
        assert_eq!(e.atoms()[0].coeff, Scalar::Exact(ExactScalar::from_int(6)));
    }

    #[test]
    fn round_trip_numeric() {
        let e = DistExpr::from_atoms(
            3,
            vec![Atom::plain(
                AtomKind::ScalarT,
                Degree::Numeric(Complex64::new(-2.5, 0.25)),
                Scalar::Numeric(NumericScalar::new(1.5, -0.125)),
            )],
        )
        .unwrap();
        let back = expr_from_str(&expr_to_string(&e)).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(expr_from_str("not json").is_err());
        assert!(expr_from_str(r#"{"dim":1,"atoms":[]}"#).is_err());
        assert!(expr_from_str(r#"{"dim":3,"atoms":[{"kind":"X","degree":0,"coeff":{"re":1.0}}]}"#).is_err());
        // log shape violations are content errors
        assert!(matches!(
            expr_from_str(
                r#"{"dim":3,"atoms":[{"kind":"LogT","degree":1,
                    "coeff":{"num":"1","den":"1","pi_half":0},
                    "p":{"num":"1","den":"1","pi_half":0},
                    "q":{"num":"0","den":"1","pi_half":0}}]}"#
            ),
            Err(JsonError::Invalid(_))
        ));
    }
}
