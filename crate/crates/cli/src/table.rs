//! Row-oriented output shared by the tables and the single-value commands.
//!
//! Rows are ordered JSON objects. CSV and text take the column set from the
//! first row; array cells are joined with `;`.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use mellin_core::criticality::critical_line_report;
use mellin_core::exec::{self, Exec};
use mellin_core::mellin::{mellin_closed, poly_factor};
use mellin_core::mpcore::HPComplex;

use crate::config::{OutputFormat, RunConfig};
use crate::Failure;

pub type Row = Map<String, Value>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Polys,
    Zeros,
    Transforms,
}

pub fn build(cfg: &RunConfig, what: TableKind, from: u32, to: u32, m_max: u32, s: &str) -> Result<Vec<Row>, Failure> {
    if from > to {
        return Err(Failure::Domain(format!("empty range {from}..{to}")));
    }
    let p = cfg.precision_bits;
    let step = if what == TableKind::Zeros { 2 } else { 1 };
    let keys: Vec<(u32, u32)> = (from..=to)
        .flat_map(|n| (0..=m_max.min(n)).step_by(step).map(move |m| (n, m)))
        .collect();
    let rows = match what {
        TableKind::Polys => exec::map(Exec::Auto, &keys, |&(n, m)| {
            let f = poly_factor(n, m)?;
            Ok(row(json!({ "n": n, "m": m, "coeffs": f.poly.coeff_strings() })))
        }),
        TableKind::Zeros => {
            let keys: Vec<(u32, u32)> = keys.into_iter().filter(|&(n, m)| n / 2 > m / 2).collect();
            exec::map(Exec::Auto, &keys, |&(n, m)| {
                let r = critical_line_report(n, m, p)?;
                let roots: Vec<String> = r.roots.iter().map(|z| z.to_full_string()).collect();
                Ok(row(json!({
                    "n": n,
                    "m": m,
                    "degree": r.degree(),
                    "max_deviation": format!("{:e}", r.max_deviation.to_f64()),
                    "shift_match": r.shift_match,
                    "roots": roots,
                })))
            })
        }
        TableKind::Transforms => {
            let s = HPComplex::parse(s, p)?;
            exec::map(Exec::Auto, &keys, |&(n, m)| {
                let v = mellin_closed(n, m, &s)?;
                Ok(row(json!({ "n": n, "m": m, "s": s.to_full_string(), "value": v.to_full_string() })))
            })
        }
    };
    rows.into_iter().collect::<mellin_core::Result<Vec<Row>>>().map_err(Failure::from)
}

pub fn row(v: Value) -> Row {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("rows are built from object literals"),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

pub fn write(rows: &[Row], format: OutputFormat, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = rows.first() {
                w.write_record(first.keys())?;
            }
            for r in rows {
                w.write_record(r.values().map(cell))?;
            }
            w.flush()
        }
        OutputFormat::Text => {
            for r in rows {
                let parts: Vec<String> = r.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
                writeln!(out, "{}", parts.join("  "))?;
            }
            Ok(())
        }
    }
}

/// One object: compact JSON on one line, otherwise a one-row table.
pub fn write_one(r: Row, format: OutputFormat, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, &r)?;
            writeln!(out)
        }
        _ => write(&[r], format, out),
    }
}
