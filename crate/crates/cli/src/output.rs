//! Report shaping and file output.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use factorlab::kk_verify::{Status, VerificationReport};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct JsonCheck {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
}

/// `{suite, params, checks, timing_ms}`. Check-level parameters are folded into `params`
/// under `"<check>.<key>"`.
#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<JsonCheck>,
    pub timing_ms: Option<u64>,
}

impl JsonReport {
    pub fn from_report(r: &VerificationReport, timing_ms: Option<u64>) -> Self {
        let mut params = r.params.clone();
        for c in &r.checks {
            for (k, v) in &c.params {
                params.insert(format!("{}.{k}", c.name), v.clone());
            }
        }
        let checks = r
            .checks
            .iter()
            .map(|c| JsonCheck { name: c.name.clone(), status: c.status, residual: c.residual, tolerance: c.tolerance })
            .collect();
        JsonReport { suite: r.suite.clone(), params, checks, timing_ms }
    }
}

/// Writes `body` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, body: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

pub fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// C `printf("%.12e")`: mantissa with 12 decimals and a signed exponent of at least two digits.
pub fn sci12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let e: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
}
