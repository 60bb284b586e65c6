//! JSON wire formats.
//!
//! Ring elements are arrays of decimal strings `[a_0, …, a_{e-1}]` in the
//! basis `1, π, …, π^{e-1}`; on input a bare integer or decimal string is
//! also accepted for `a_0`. Structural counts (precisions, degrees, indices)
//! are plain JSON numbers. A bound that is only known from below is written
//! as the string `">=k"`.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::dynamics::{LiftReport, RamificationIndex, ResidueSeries, SenOutcome, SenReport};
use crate::error::Error;
use crate::field::{Certified, Field, FieldSpec, OkElement, Valuation};
use crate::hensel::HenselFactorization;
use crate::poly::Polynomial;
use crate::series::{NewtonPolygon, PowerSeries};
use crate::universal::UniversalSeries;

/// Failure to read an input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputError {
    /// The document does not match the expected shape; `path` locates the
    /// offending field, e.g. `$.g.coeffs[3]`.
    Schema { path: String, message: String },
    /// The document is well formed but describes an unusable object.
    Domain(Error),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Schema { path, message } => write!(f, "{path}: {message}"),
            InputError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for InputError {}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Domain(e)
    }
}

pub type InputResult<T> = std::result::Result<T, InputError>;

pub fn schema_error(path: &str, message: impl Into<String>) -> InputError {
    InputError::Schema { path: path.to_string(), message: message.into() }
}

/// Command-line overrides applied while parsing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub precision: Option<u32>,
    pub xprec: Option<usize>,
}

pub fn field_path(path: &str, key: &str) -> String {
    format!("{path}.{key}")
}

pub fn required<'a>(v: &'a Value, key: &str, path: &str) -> InputResult<&'a Value> {
    let obj = v.as_object().ok_or_else(|| schema_error(path, "expected an object"))?;
    obj.get(key).ok_or_else(|| schema_error(&field_path(path, key), "missing field"))
}

pub fn optional<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.as_object().and_then(|o| o.get(key)).filter(|x| !x.is_null())
}

pub fn parse_bigint(v: &Value, path: &str) -> InputResult<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            Ok(n.as_i64().map(BigInt::from).unwrap_or_else(|| BigInt::from(n.as_u64().expect("u64"))))
        }
        Value::String(s) => s.trim().parse().map_err(|_| schema_error(path, format!("{s:?} is not a decimal integer"))),
        _ => Err(schema_error(path, "expected an integer or a decimal string")),
    }
}

pub fn parse_i64(v: &Value, path: &str) -> InputResult<i64> {
    let b = parse_bigint(v, path)?;
    i64::try_from(b).map_err(|_| schema_error(path, "integer out of range"))
}

pub fn parse_u64(v: &Value, path: &str) -> InputResult<u64> {
    let b = parse_bigint(v, path)?;
    u64::try_from(b).map_err(|_| schema_error(path, "expected a non-negative integer"))
}

pub fn parse_u32(v: &Value, path: &str) -> InputResult<u32> {
    let b = parse_u64(v, path)?;
    u32::try_from(b).map_err(|_| schema_error(path, "integer out of range"))
}

pub fn parse_array<'a>(v: &'a Value, path: &str) -> InputResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema_error(path, "expected an array"))
}

/// `{"p": int, "eisenstein": [c_0, …, c_e], "precision": N}`; `eisenstein`
/// defaults to `x - p`.
pub fn parse_field(v: &Value, path: &str, ov: Overrides) -> InputResult<Field> {
    let p = parse_u64(required(v, "p", path)?, &field_path(path, "p"))?;
    let precision = match ov.precision {
        Some(n) => n,
        None => parse_u32(required(v, "precision", path)?, &field_path(path, "precision"))?,
    };
    let eisenstein = match optional(v, "eisenstein") {
        None => {
            let p = i64::try_from(p).map_err(|_| schema_error(&field_path(path, "p"), "out of range"))?;
            vec![-p, 1]
        }
        Some(e) => {
            let epath = field_path(path, "eisenstein");
            parse_array(e, &epath)?
                .iter()
                .enumerate()
                .map(|(i, c)| parse_i64(c, &format!("{epath}[{i}]")))
                .collect::<InputResult<_>>()?
        }
    };
    FieldSpec::new(p, eisenstein, precision).map_err(|e| match e {
        Error::InvalidField(msg) => schema_error(path, msg),
        other => InputError::Domain(other),
    })
}

pub fn field_to_json(f: &FieldSpec) -> Value {
    json!({"p": f.p(), "eisenstein": f.eisenstein(), "precision": f.precision()})
}

pub fn parse_element(field: &Field, v: &Value, path: &str) -> InputResult<OkElement> {
    let coords: Vec<BigInt> = match v {
        Value::Array(items) => {
            if items.len() > field.ramification() {
                return Err(schema_error(path, format!("at most {} coordinates", field.ramification())));
            }
            items.iter().enumerate().map(|(i, c)| parse_bigint(c, &format!("{path}[{i}]"))).collect::<InputResult<_>>()?
        }
        other => vec![parse_bigint(other, path)?],
    };
    Ok(OkElement::from_coords(field, &coords)?)
}

pub fn element_to_json(x: &OkElement) -> Value {
    Value::from(x.to_decimal_strings())
}

pub fn elements_to_json(xs: &[OkElement]) -> Value {
    Value::Array(xs.iter().map(element_to_json).collect())
}

pub fn valuation_to_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(k) => json!(k),
        Valuation::AtLeast(k) => json!(format!(">={k}")),
    }
}

pub fn ramification_to_json(i: RamificationIndex) -> Value {
    match i {
        RamificationIndex::Finite(k) => json!(k),
        RamificationIndex::AtLeast(k) => json!(format!(">={k}")),
    }
}

pub fn certified_to_json(c: &Certified) -> Value {
    json!({
        "value": element_to_json(&c.value),
        "precision": c.precision,
        "valuation": valuation_to_json(c.valuation()),
    })
}

/// The field comes from `v.field` when present, else from `default`.
pub fn series_field(v: &Value, path: &str, default: Option<&Field>, ov: Overrides) -> InputResult<Field> {
    match optional(v, "field") {
        Some(f) => parse_field(f, &field_path(path, "field"), ov),
        None => default.cloned().ok_or_else(|| schema_error(&field_path(path, "field"), "missing field")),
    }
}

/// `{"field"?, "coeffs": [...], "xprec"?}`; `xprec` defaults to the number
/// of coefficients. A bare array of coefficients is accepted when a default
/// field is supplied.
pub fn parse_series(v: &Value, path: &str, default: Option<&Field>, ov: Overrides) -> InputResult<PowerSeries> {
    let (field, coeffs, cpath, xprec) = if v.is_array() {
        let field = default.cloned().ok_or_else(|| schema_error(path, "a bare coefficient array needs a top-level field"))?;
        (field, v, path.to_string(), None)
    } else {
        let field = series_field(v, path, default, ov)?;
        let xprec = optional(v, "xprec").map(|x| parse_u64(x, &field_path(path, "xprec"))).transpose()?;
        (field, required(v, "coeffs", path)?, field_path(path, "coeffs"), xprec)
    };
    let items = parse_array(coeffs, &cpath)?;
    let elems: Vec<OkElement> =
        items.iter().enumerate().map(|(i, c)| parse_element(&field, c, &format!("{cpath}[{i}]"))).collect::<InputResult<_>>()?;
    let xprec = ov.xprec.or(xprec.map(|x| x as usize)).unwrap_or(elems.len());
    Ok(PowerSeries::from_elements(&field, &elems, xprec)?)
}

pub fn parse_polynomial(v: &Value, path: &str, default: Option<&Field>, ov: Overrides) -> InputResult<Polynomial> {
    let (field, coeffs, cpath) = if v.is_array() {
        let field = default.cloned().ok_or_else(|| schema_error(path, "a bare coefficient array needs a top-level field"))?;
        (field, v, path.to_string())
    } else {
        (series_field(v, path, default, ov)?, required(v, "coeffs", path)?, field_path(path, "coeffs"))
    };
    let elems: Vec<OkElement> = parse_array(coeffs, &cpath)?
        .iter()
        .enumerate()
        .map(|(i, c)| parse_element(&field, c, &format!("{cpath}[{i}]")))
        .collect::<InputResult<_>>()?;
    Ok(Polynomial::from_elements(&field, &elems)?)
}

pub fn series_to_json(s: &PowerSeries) -> Value {
    json!({
        "field": field_to_json(s.field()),
        "coeffs": elements_to_json(&s.coefficients()),
        "xprec": s.xprec(),
    })
}

pub fn polynomial_to_json(p: &Polynomial) -> Value {
    json!({"coeffs": elements_to_json(&p.coefficients()), "degree": p.degree()})
}

pub fn newton_to_json(np: &NewtonPolygon) -> Value {
    let segments: Vec<Value> = np
        .segments
        .iter()
        .map(|s| json!({"slope": s.slope.to_string(), "length": s.length}))
        .collect();
    json!({
        "segments": segments,
        "complete": np.complete,
        "certified_up_to": np.certified_up_to.map(|r| r.to_string()),
        "zero_root_multiplicity": np.zero_root_multiplicity,
        "root_count": np.root_count(),
    })
}

pub fn hensel_to_json(h: &HenselFactorization) -> Value {
    json!({
        "p": polynomial_to_json(&h.p),
        "u": elements_to_json(&h.u.coefficients()),
        "n": h.n,
        "d": h.d,
    })
}

/// `{"p": int, "coeffs": [ints], "xprec": M}`; `xprec` defaults to the
/// number of coefficients.
pub fn parse_residue_series(v: &Value, path: &str, ov: Overrides) -> InputResult<ResidueSeries> {
    let p = parse_u64(required(v, "p", path)?, &field_path(path, "p"))?;
    let cpath = field_path(path, "coeffs");
    let coeffs: Vec<i64> = parse_array(required(v, "coeffs", path)?, &cpath)?
        .iter()
        .enumerate()
        .map(|(i, c)| parse_i64(c, &format!("{cpath}[{i}]")))
        .collect::<InputResult<_>>()?;
    let xprec = match ov.xprec {
        Some(m) => m,
        None => optional(v, "xprec").map(|x| parse_u64(x, &field_path(path, "xprec"))).transpose()?.map_or(coeffs.len(), |m| m as usize),
    };
    ResidueSeries::new(p, &coeffs, xprec).map_err(|e| match e {
        Error::InvalidField(msg) | Error::Precondition(msg) => schema_error(path, msg),
        other => InputError::Domain(other),
    })
}

pub fn residue_series_to_json(w: &ResidueSeries) -> Value {
    json!({"p": w.p(), "coeffs": w.coeffs(), "xprec": w.xprec()})
}

pub fn sen_report_to_json(r: &SenReport) -> Value {
    let pairs: Vec<Value> = r
        .pairs
        .iter()
        .map(|p| {
            let (pass, status) = match p.outcome {
                SenOutcome::Pass => (json!(true), "pass"),
                SenOutcome::Fail => (json!(false), "fail"),
                SenOutcome::Vacuous => (json!(true), "vacuous"),
                SenOutcome::Indeterminate => (Value::Null, "indeterminate"),
            };
            json!({
                "n": p.n,
                "i_prev": ramification_to_json(p.i_prev),
                "i": ramification_to_json(p.i),
                "mod": p.modulus,
                "pass": pass,
                "status": status,
            })
        })
        .collect();
    json!({"pairs": pairs})
}

pub fn lift_report_to_json(r: &LiftReport) -> Value {
    let vals: Map<String, Value> = r.disc_valuations.iter().map(|(n, v)| (n.to_string(), json!(v))).collect();
    let precs: Map<String, Value> = r.certified_precision.iter().map(|(n, v)| (n.to_string(), json!(v))).collect();
    json!({
        "lift": series_to_json(&r.lift),
        "candidate": r.candidate,
        "checked": r.checked,
        "disc_valuations": vals,
        "certified_precision": precs,
        "seed": r.seed,
        "budget": r.budget,
    })
}

/// `[{"exps": {"F0": 1, "V": 2}, "coeff": "-3"}, …]`, graded by total degree.
pub fn universal_to_json(s: &UniversalSeries) -> Value {
    let ctx = s.context();
    let terms: Vec<Value> = s
        .sorted_terms()
        .into_iter()
        .map(|(m, c)| {
            let exps: Map<String, Value> = m
                .iter()
                .map(|&(v, e)| {
                    let (name, k) = ctx.factor_name(v, e);
                    (name, json!(k))
                })
                .collect();
            json!({"exps": exps, "coeff": c.to_string()})
        })
        .collect();
    Value::Array(terms)
}
