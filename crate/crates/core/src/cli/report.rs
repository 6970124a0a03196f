//! Machine-readable run reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
}

impl Check {
    /// Passes when `residual <= tolerance`.
    pub fn within(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), status: Status::from_bool(residual <= tolerance), residual: Some(residual), tolerance: Some(tolerance) }
    }

    /// Exact check; the residual is `0` on success.
    pub fn exact(name: impl Into<String>, ok: bool, residual: f64) -> Self {
        Check { name: name.into(), status: Status::from_bool(ok), residual: Some(residual), tolerance: Some(0.0) }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), status: Status::from_bool(ok), residual: None, tolerance: None }
    }

    pub fn skipped(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Skipped, residual: None, tolerance: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub seed: u64,
    pub version: String,
    pub status: Status,
    /// Sorted by name.
    pub checks: Vec<Check>,
    pub data: Value,
}

impl Report {
    pub fn new(command: String, inputs: &Value, seed: u64, mut checks: Vec<Check>, data: Value) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let failed = checks.iter().any(|c| c.status == Status::Fail);
        Report {
            command,
            inputs_digest: digest(inputs),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            status: Status::from_bool(!failed),
            checks,
            data,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Fail {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        let _ = writeln!(out, "{:<w$}  {:<7}  {:>12}  {:>9}", "check", "status", "residual", "tolerance");
        let num = |x: Option<f64>| x.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
        for c in &self.checks {
            let _ = writeln!(out, "{:<w$}  {:<7}  {:>12}  {:>9}", c.name, c.status.as_str(), num(c.residual), num(c.tolerance));
        }
        let _ = writeln!(out, "overall: {}  seed: {}  digest: {}", self.status.as_str(), self.seed, &self.inputs_digest[..16]);
        out
    }
}

/// SHA-256 of the canonical JSON text.
pub fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(serde_json::to_string(v).expect("json").as_bytes()))
}
