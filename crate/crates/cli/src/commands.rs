use std::fmt;

use padic_series::dynamics::{good_lift_search, sen_check, sen_corpus, sen_report};
use padic_series::hensel::{hensel_factor_with, slope_zero_factor, LiftStrategy};
use padic_series::io::{
    self, certified_to_json, elements_to_json, hensel_to_json, lift_report_to_json, newton_to_json, optional,
    parse_array, parse_element, parse_field, parse_polynomial, parse_residue_series, parse_series, parse_u32,
    parse_u64, polynomial_to_json, required, sen_report_to_json, universal_to_json, valuation_to_json, InputError,
    Overrides,
};
use padic_series::resultant::{common_root_test, disc_n, res_n, CommonRootVerdict};
use padic_series::universal::{
    bgw_p0, coefficient_assignment, compare_bgw_with_prepare, resultant_assignment, respol_symmetric,
    universal_prepare_with, DEFAULT_TERM_CAP,
};
use padic_series::{weierstrass_divide, weierstrass_prepare, Error, Execution, Field, OkElement};
use serde_json::{json, Value};

use crate::Command;

pub struct Options {
    pub overrides: Overrides,
    pub seed: Option<u64>,
    pub exec: Execution,
}

pub struct Output {
    pub payload: Value,
    /// π-adic precision of the numeric payload; `None` for exact or
    /// residue-field results.
    pub certified_precision: Option<u32>,
}

#[derive(Debug)]
pub enum CliError {
    Malformed { path: String, message: String },
    Domain(Error),
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Schema { path, message } => CliError::Malformed { path, message },
            InputError::Domain(e) => CliError::Domain(e),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed { path, message } => write!(f, "malformed input at {path}: {message}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidField(_) => "InvalidField",
        Error::PrecisionTooLarge { .. } => "PrecisionTooLarge",
        Error::FieldMismatch => "FieldMismatch",
        Error::NotAUnit => "NotAUnit",
        Error::WidegNotCertified { .. } => "WidegNotCertified",
        Error::InsufficientXPrecision { .. } => "InsufficientXPrecision",
        Error::CompositionDomain => "CompositionDomain",
        Error::NoUnitCoefficient => "NoUnitCoefficient",
        Error::IndeterminateAtPrecision { .. } => "IndeterminateAtPrecision",
        Error::BudgetExhausted { .. } => "BudgetExhausted",
        Error::TruncationOverflow { .. } => "TruncationOverflow",
        Error::IntegralityViolation { .. } => "IntegralityViolation",
        Error::UncoveredVariable(_) => "UncoveredVariable",
        Error::Precondition(_) => "Precondition",
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed { .. } => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Malformed { path, message } => json!({"kind": "MalformedInput", "path": path, "message": message}),
            CliError::Domain(e) => json!({"kind": error_kind(e), "message": e.to_string()}),
        }
    }
}

type CliResult = Result<Output, CliError>;

pub fn run(cmd: Command, input: &Value, opts: &Options) -> CliResult {
    match cmd {
        Command::Prepare => prepare(input, opts),
        Command::Divide => divide(input, opts),
        Command::Resultant => resultant(input, opts),
        Command::Discriminant => discriminant(input, opts),
        Command::Newton => newton(input, opts),
        Command::Hensel => hensel(input, opts),
        Command::Slope0 => slope0(input, opts),
        Command::Sen => sen(input, opts),
        Command::Lift => lift(input, opts),
        Command::Universal => universal(input, opts),
    }
}

fn top_field(input: &Value, opts: &Options) -> Result<Option<Field>, CliError> {
    Ok(optional(input, "field").map(|f| parse_field(f, "$.field", opts.overrides)).transpose()?)
}

fn prepare(input: &Value, opts: &Options) -> CliResult {
    let f = parse_series(input, "$", None, opts.overrides)?;
    let fact = weierstrass_prepare(&f)?;
    Ok(Output {
        payload: json!({
            "wideg": fact.p.degree(),
            "p": polynomial_to_json(&fact.p.to_polynomial()),
            "u": elements_to_json(&fact.u.coefficients()),
            "u_xprec": fact.u.xprec(),
            "reconstruction_ok": fact.verify(&f),
        }),
        certified_precision: Some(fact.certified_precision),
    })
}

fn divide(input: &Value, opts: &Options) -> CliResult {
    let field = top_field(input, opts)?;
    let g = parse_series(required(input, "g", "$")?, "$.g", field.as_ref(), opts.overrides)?;
    let f = parse_series(required(input, "f", "$")?, "$.f", field.as_ref().or(Some(g.field())), opts.overrides)?;
    let div = weierstrass_divide(&g, &f)?;
    Ok(Output {
        payload: json!({
            "quotient": elements_to_json(&div.quotient.coefficients()),
            "quotient_xprec": div.quotient.xprec(),
            "remainder": polynomial_to_json(&div.remainder),
            "sweeps": div.sweeps,
            "verified": div.verify(&g, &f),
        }),
        certified_precision: Some(div.certified_precision),
    })
}

fn resultant(input: &Value, opts: &Options) -> CliResult {
    let field = top_field(input, opts)?;
    let f = parse_series(required(input, "f", "$")?, "$.f", field.as_ref(), opts.overrides)?;
    let g = parse_series(required(input, "g", "$")?, "$.g", field.as_ref().or(Some(f.field())), opts.overrides)?;
    let r = res_n(&f, &g)?;
    let verdict = match common_root_test(&f, &g)? {
        CommonRootVerdict::NoCommonRoot { .. } => "none",
        CommonRootVerdict::PossibleCommonRoot { .. } => "possible",
    };
    Ok(Output {
        payload: json!({
            "wideg": f.wideg()?,
            "value": io::element_to_json(&r.value),
            "valuation": valuation_to_json(r.valuation()),
            "common_root": verdict,
        }),
        certified_precision: Some(r.precision),
    })
}

fn discriminant(input: &Value, opts: &Options) -> CliResult {
    let f = parse_series(input, "$", None, opts.overrides)?;
    let d = disc_n(&f)?;
    Ok(Output {
        payload: json!({
            "wideg": f.wideg()?,
            "value": io::element_to_json(&d.value),
            "valuation": valuation_to_json(d.valuation()),
        }),
        certified_precision: Some(d.precision),
    })
}

fn newton(input: &Value, opts: &Options) -> CliResult {
    let f = parse_series(input, "$", None, opts.overrides)?;
    let np = f.newton_polygon()?;
    Ok(Output { payload: newton_to_json(&np), certified_precision: Some(f.field().precision()) })
}

fn hensel(input: &Value, opts: &Options) -> CliResult {
    let f = parse_series(input, "$", None, opts.overrides)?;
    let strategy = match optional(input, "strategy").map(|s| s.as_str()) {
        None | Some(Some("quadratic")) => LiftStrategy::Quadratic,
        Some(Some("linear")) => LiftStrategy::Linear,
        _ => {
            return Err(CliError::Malformed {
                path: "$.strategy".into(),
                message: "expected \"quadratic\" or \"linear\"".into(),
            })
        }
    };
    let h = hensel_factor_with(&f, strategy)?;
    let mut payload = hensel_to_json(&h);
    payload["reconstruction_ok"] = json!(h.verify(&f));
    Ok(Output { payload, certified_precision: Some(f.field().precision()) })
}

fn slope0(input: &Value, opts: &Options) -> CliResult {
    let p = parse_polynomial(input, "$", None, opts.overrides)?;
    let factor = slope_zero_factor(&p)?;
    Ok(Output { payload: json!({"factor": polynomial_to_json(&factor)}), certified_precision: Some(p.field().precision()) })
}

fn sen(input: &Value, opts: &Options) -> CliResult {
    let n_max = parse_u32(required(input, "n_max", "$")?, "$.n_max")?;
    let strict = optional(input, "strict").and_then(Value::as_bool).unwrap_or(false);
    if let Some(batch) = optional(input, "series") {
        let ws = parse_array(batch, "$.series")?
            .iter()
            .enumerate()
            .map(|(i, w)| parse_residue_series(w, &format!("$.series[{i}]"), opts.overrides))
            .collect::<Result<Vec<_>, _>>()?;
        let reports = sen_corpus(&ws, n_max, opts.exec);
        if strict {
            for w in &ws {
                sen_check(w, n_max)?;
            }
        }
        let all_passed = reports.iter().all(|r| r.passed());
        return Ok(Output {
            payload: json!({
                "reports": reports.iter().map(sen_report_to_json).collect::<Vec<_>>(),
                "all_passed": all_passed,
            }),
            certified_precision: None,
        });
    }
    let w = parse_residue_series(input, "$", opts.overrides)?;
    let report = if strict { sen_check(&w, n_max)? } else { sen_report(&w, n_max) };
    Ok(Output { payload: sen_report_to_json(&report), certified_precision: None })
}

fn lift(input: &Value, opts: &Options) -> CliResult {
    let field = parse_field(required(input, "field", "$")?, "$.field", opts.overrides)?;
    let w = parse_residue_series(required(input, "w", "$")?, "$.w", opts.overrides)?;
    let ns = parse_array(required(input, "ns", "$")?, "$.ns")?
        .iter()
        .enumerate()
        .map(|(i, n)| parse_u32(n, &format!("$.ns[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let budget = parse_u64(required(input, "budget", "$")?, "$.budget")?;
    let seed = match opts.seed {
        Some(s) => s,
        None => optional(input, "seed").map(|s| parse_u64(s, "$.seed")).transpose()?.unwrap_or(0),
    };
    let report = good_lift_search(&w, &field, &ns, budget, seed, opts.exec)?;
    Ok(Output { payload: lift_report_to_json(&report), certified_precision: Some(field.precision()) })
}

fn universal(input: &Value, opts: &Options) -> CliResult {
    let op = required(input, "op", "$")?
        .as_str()
        .ok_or_else(|| CliError::Malformed { path: "$.op".into(), message: "expected a string".into() })?;
    let u32_field = |key: &str| -> Result<u32, CliError> { Ok(parse_u32(required(input, key, "$")?, &format!("$.{key}"))?) };
    match op {
        "prepare" => {
            let (n, order, kmax) = (u32_field("n")?, u32_field("order")?, u32_field("kmax")?);
            let xbound = match optional(input, "xbound") {
                Some(x) => parse_u64(x, "$.xbound")? as usize,
                None => kmax as usize + 1,
            };
            let prep = universal_prepare_with(n, order, kmax, xbound, DEFAULT_TERM_CAP)?;
            let mut payload = json!({
                "n": n,
                "order": order,
                "kmax": kmax,
                "p": prep.p.iter().map(universal_to_json).collect::<Vec<_>>(),
                "u": prep.u.iter().map(universal_to_json).collect::<Vec<_>>(),
            });
            let mut precision = None;
            if let Some(s) = optional(input, "specialize") {
                let f = parse_series(s, "$.specialize", None, opts.overrides)?;
                let assignment = coefficient_assignment(&f, kmax);
                let values = prep.p.iter().map(|pi| pi.specialize(&assignment)).collect::<Result<Vec<_>, _>>()?;
                precision = values.iter().map(|c| c.precision).min();
                payload["specialized"] = values.iter().map(certified_to_json).collect();
            }
            Ok(Output { payload, certified_precision: precision })
        }
        "bgw" => {
            let s = bgw_p0(u32_field("order")?, u32_field("kmax")?)?;
            Ok(Output { payload: json!({"p0_closed_form": universal_to_json(&s)}), certified_precision: None })
        }
        "compare_bgw" => {
            let c = compare_bgw_with_prepare(u32_field("order")?, u32_field("kmax")?)?;
            Ok(Output {
                payload: json!({
                    "equals_p0": c.equals_p0,
                    "equals_f1_times_p0": c.equals_f1_times_p0,
                    "consistent_under_exactly_one": c.consistent_under_exactly_one(),
                }),
                certified_precision: None,
            })
        }
        "respol" => {
            let (n, dmax, gmax) = (u32_field("n")?, u32_field("dmax")?, u32_field("gmax")?);
            let s = respol_symmetric(n, dmax, gmax)?;
            let mut payload = json!({"respol": universal_to_json(&s), "order": s.context().order()});
            let mut precision = None;
            if let Some(spec) = optional(input, "specialize") {
                let field = parse_field(required(spec, "field", "$.specialize")?, "$.specialize.field", opts.overrides)?;
                let p = parse_array(required(spec, "p", "$.specialize")?, "$.specialize.p")?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| parse_element(&field, x, &format!("$.specialize.p[{i}]")))
                    .collect::<Result<Vec<OkElement>, _>>()?;
                if p.len() != n as usize {
                    return Err(CliError::Malformed {
                        path: "$.specialize.p".into(),
                        message: format!("expected {n} coefficients"),
                    });
                }
                let g = parse_series(required(spec, "g", "$.specialize")?, "$.specialize.g", Some(&field), opts.overrides)?;
                let value = s.specialize(&resultant_assignment(&p, &g, gmax))?;
                precision = Some(value.precision);
                payload["specialized"] = certified_to_json(&value);
            }
            Ok(Output { payload, certified_precision: precision })
        }
        other => Err(CliError::Malformed {
            path: "$.op".into(),
            message: format!("unknown op {other:?}; expected prepare, bgw, compare_bgw or respol"),
        }),
    }
}
