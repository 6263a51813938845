use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub id: String,
    pub inputs: BTreeMap<String, String>,
    pub expected: String,
    pub got: String,
    pub abs_err: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CaseRecord {
    /// A numeric comparison; passes when `abs_err <= tol`.
    pub fn numeric(id: impl Into<String>, inputs: &[(&str, String)], expected: String, got: String, abs_err: f64, tol: f64) -> Self {
        Self {
            id: id.into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            expected,
            got,
            abs_err,
            tol,
            pass: abs_err <= tol,
        }
    }

    /// A yes/no check with no residual.
    pub fn exact(id: impl Into<String>, inputs: &[(&str, String)], expected: impl Into<String>, got: impl Into<String>) -> Self {
        let (expected, got) = (expected.into(), got.into());
        let pass = expected == got;
        Self {
            id: id.into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            expected,
            got,
            abs_err: 0.0,
            tol: 0.0,
            pass,
        }
    }

    /// A case whose computation raised an error.
    pub fn errored(id: impl Into<String>, inputs: &[(&str, String)], expected: String, err: &mellin_core::Error) -> Self {
        Self {
            id: id.into(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            expected,
            got: format!("error: {err}"),
            abs_err: f64::INFINITY,
            tol: 0.0,
            pass: false,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportConfig {
    pub precision_bits: u32,
    pub tolerance_exponent: i32,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub run: usize,
    pub passed: usize,
    pub worst_residual: f64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Serialize)]
pub struct VerifySuiteResult {
    pub suite: String,
    pub config: ReportConfig,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl VerifySuiteResult {
    pub fn new(suite: &str, config: &RunConfig, cases: Vec<CaseRecord>, elapsed_ms: u64) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        let worst_residual = cases.iter().map(|c| c.abs_err).filter(|e| e.is_finite()).fold(0.0, f64::max);
        Self {
            suite: suite.to_string(),
            config: ReportConfig {
                precision_bits: config.precision_bits,
                tolerance_exponent: config.tolerance_exponent,
                seed: config.seed,
            },
            summary: Summary { run: cases.len(), passed, worst_residual, elapsed_ms },
            cases,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.run
    }

    pub fn write(&self, format: OutputFormat, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["suite", "id", "inputs", "expected", "got", "abs_err", "tol", "pass"])?;
                for c in &self.cases {
                    let inputs: Vec<String> = c.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    w.write_record([
                        self.suite.as_str(),
                        &c.id,
                        &inputs.join(";"),
                        &c.expected,
                        &c.got,
                        &format!("{:e}", c.abs_err),
                        &format!("{:e}", c.tol),
                        if c.pass { "true" } else { "false" },
                    ])?;
                }
                w.flush()
            }
            OutputFormat::Text => {
                for c in &self.cases {
                    let tag = if c.pass { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag} {:<40} err {:.3e} tol {:.1e}", c.id, c.abs_err, c.tol)?;
                }
                let s = &self.summary;
                writeln!(
                    out,
                    "{}: {}/{} passed, worst residual {:.3e}, {} ms",
                    self.suite, s.passed, s.run, s.worst_residual, s.elapsed_ms
                )
            }
        }
    }
}
