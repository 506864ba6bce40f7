//! Input loading and the exit-code policy.
//!
//! Anything that fails while reading or validating user input is a parse
//! error and exits 2; anything the library rejects during the computation
//! itself is a domain error and exits 1. Both print one JSON object on
//! stderr: {"error": {"kind": …, "message": …}}.

use std::fs;
use std::io::Read;

use logent::{Error, Scalar};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let (kind, message) = match self {
            CliError::Parse(m) => ("parse", m.clone()),
            CliError::Domain(e) => (domain_kind(e), e.to_string()),
        };
        serde_json::json!({"error": {"kind": kind, "message": message}}).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

/// Library errors triggered while constructing objects from command-line
/// input: structural rejections count as schema violations (exit 2), while
/// mathematically meaningful ones (an infeasible mean, say) stay domain
/// errors (exit 1).
pub fn input_err(e: Error) -> CliError {
    match e {
        Error::InvalidPartition(_)
        | Error::InvalidDistribution(_)
        | Error::InvalidMatrix(_)
        | Error::InvalidObservable(_)
        | Error::NotNormalized(_)
        | Error::LengthMismatch(..)
        | Error::AxisCount { .. }
        | Error::Domain(_)
        | Error::Parse(_) => CliError::Parse(e.to_string()),
        other => CliError::Domain(other),
    }
}

fn domain_kind(e: &Error) -> &'static str {
    match e {
        Error::UniverseMismatch(..) => "universe_mismatch",
        Error::LabelMismatch => "label_mismatch",
        Error::NotEquivalence(_) => "not_equivalence",
        Error::RelationTooLarge { .. } => "relation_too_large",
        Error::InvalidPartition(_) => "invalid_partition",
        Error::InvalidDistribution(_) => "invalid_distribution",
        Error::AxisCount { .. } => "axis_count",
        Error::LengthMismatch(..) => "length_mismatch",
        Error::DimensionMismatch(..) => "dimension_mismatch",
        Error::Domain(_) => "domain",
        Error::InfeasibleMean { .. } => "infeasible_mean",
        Error::NoConvergence(_) => "no_convergence",
        Error::Infeasible => "infeasible",
        Error::EnumerationBound(_) => "enumeration_bound",
        Error::MalformedExpr(_) => "malformed_expr",
        Error::NotNormalized(_) => "not_normalized",
        Error::BasisMismatch => "basis_mismatch",
        Error::NotCoarsening(..) => "not_coarsening",
        Error::InvalidObservable(_) => "invalid_observable",
        Error::InvalidMatrix(_) => "invalid_matrix",
        Error::Parse(_) => "parse",
    }
}

/// Reads `spec` as inline JSON when it starts with '{' or '[', as stdin when
/// it is "-", and as a file path otherwise.
pub fn read_input(spec: &str) -> Result<String, CliError> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(spec.to_string());
    }
    if spec == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Parse(format!("reading stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(spec).map_err(|e| CliError::Parse(format!("reading {spec}: {e}")))
}

pub fn load_json<T: serde::de::DeserializeOwned>(spec: &str, what: &str) -> Result<T, CliError> {
    let text = read_input(spec)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

pub fn parse_scalar(text: &str, exact: bool) -> Result<Scalar, CliError> {
    Scalar::parse(text.trim(), exact).map_err(|e| CliError::Parse(e.to_string()))
}

/// Comma-separated numbers, where an item "a..b" expands to the integers
/// a, …, b and fractions like 9/2 stay exact in exact mode.
pub fn parse_values(text: &str, exact: bool) -> Result<Vec<Scalar>, CliError> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if let Some((a, b)) = item.split_once("..") {
            let lo: i64 = a.trim().parse().map_err(|_| bad_range(item))?;
            let hi: i64 = b.trim().parse().map_err(|_| bad_range(item))?;
            if hi < lo {
                return Err(bad_range(item));
            }
            for v in lo..=hi {
                out.push(if exact {
                    Scalar::from_int(v)
                } else {
                    Scalar::Float(v as f64)
                });
            }
        } else {
            out.push(parse_scalar(item, exact)?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Parse("empty value list".into()));
    }
    Ok(out)
}

fn bad_range(item: &str) -> CliError {
    CliError::Parse(format!("bad integer range {item:?}"))
}
