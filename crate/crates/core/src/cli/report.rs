//! The machine-readable record of one command run.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::expr::ZeroCertificate;

/// What a check must show to pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// A residual certifies zero.
    Zero,
    /// A residual certifies nonzero.
    Nonzero,
    /// A numeric bound holds.
    Bound,
    /// Recorded only; never fails the run.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Expectation,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ZeroCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn certified(name: impl Into<String>, expected: Expectation, certificate: ZeroCertificate) -> Check {
        let passed = match expected {
            Expectation::Zero => certificate.is_zero(),
            Expectation::Nonzero => certificate.verdict == crate::expr::Verdict::Nonzero,
            Expectation::Bound | Expectation::Info => true,
        };
        Check { name: name.into(), expected, passed, certificate: Some(certificate), detail: None }
    }

    pub fn bound(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), expected: Expectation::Bound, passed, certificate: None, detail: Some(detail.into()) }
    }

    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { name: name.into(), expected: Expectation::Info, passed: true, certificate: None, detail: Some(detail.into()) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub total_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Command-specific payload.
    pub output: serde_json::Value,
    pub timings: Timings,
    pub exit_code: i32,
    /// Human-readable listing printed ahead of the checks.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: BTreeMap<String, String>, seed: u64) -> RunReport {
        RunReport {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            seed,
            checks: Vec::new(),
            output: serde_json::Value::Null,
            timings: Timings { total_seconds: 0.0 },
            exit_code: 0,
            lines: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        for c in &self.checks {
            let mark = match (c.expected, c.passed) {
                (Expectation::Info, _) => "info",
                (_, true) => "PASS",
                (_, false) => "FAIL",
            };
            write!(f, "{mark:4}  {}", c.name)?;
            if let Some(cert) = &c.certificate {
                write!(f, "  [{:?} via {:?}]", cert.verdict, cert.method)?;
            }
            if let Some(d) = &c.detail {
                write!(f, "  {d}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{}: {} checks, {} failed, {:.2}s", self.command, self.checks.len(), failed, self.timings.total_seconds)
    }
}
