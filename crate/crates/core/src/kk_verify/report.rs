//! Machine-readable verification reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named comparison. `status` is derived: pass iff `residual ≤ tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        // NaN never passes
        let status = if residual <= tolerance { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, residual, tolerance, params: BTreeMap::new() }
    }

    /// A boolean condition recorded as residual 0 or 1 against tolerance 0.
    pub fn condition(name: impl Into<String>, holds: bool) -> Self {
        Self::new(name, if holds { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), params: BTreeMap::new(), checks: Vec::new(), timing_ms: None }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest residual among checks whose name starts with `prefix`.
    pub fn max_residual(&self, prefix: &str) -> f64 {
        self.checks.iter().filter(|c| c.name.starts_with(prefix)).map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.timing_ms = Some(start.elapsed().as_millis() as u64);
        self
    }
}
