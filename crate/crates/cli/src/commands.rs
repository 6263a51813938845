use std::io::Write;
use std::time::Instant;

use clap::{Subcommand, ValueEnum};
use rug::Float;
use serde_json::json;

use mellin_core::criticality::critical_line_report;
use mellin_core::fracpart::{
    fermi_bose_transform, frac_basic, frac_general, frac_general_alpha_one, frac_int_moments, frac_pair_integral,
    frac_pair_oracle, numeric_fracpart_oracle, FracIntegralSpec, Statistics,
};
use mellin_core::mellin::{genfun as genfun_sum, mellin_closed, mellin_rep, poly_factor, RepVariant};
use mellin_core::mpcore::HPComplex;

use crate::config::{report_timing, RunConfig};
use crate::report::VerifySuiteResult;
use crate::suites::{self, Suite, SuiteOptions};
use crate::table::{row, write_one, Row};
use crate::Failure;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    /// I_j(s) = int x^s / (e^x + 1)^j
    Fermi,
    /// J_j(s) = int x^s / (e^x - 1)^j
    Bose,
}

#[derive(Subcommand, Debug)]
pub enum FracCommand {
    /// int_0^1 {1/t} t^(s-1) dt
    Basic {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// int_0^1 {1/t}^alpha [1/t]^beta t^(s-1) dt for alpha in {1, 2}, with the quadrature oracle.
    Moment {
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        beta: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Oracle tolerance in bits; 0 skips the oracle.
        #[arg(long = "oracle-bits", default_value_t = 96)]
        oracle_bits: u32,
    },
    /// int_0^1 {1/t} t^(s-1) (1 - t^b)^(-alpha) dt; `--alpha 1` takes the limit (s = 2, b = 1).
    General {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// int_0^1 {1/x}{1/(1-x)} x^(s-1) dx for integer s >= 1, with direct quadrature.
    Pair {
        #[arg(long)]
        s: u32,
    },
    /// I_j(s) or J_j(s): series, closed form and their difference.
    Transform {
        #[arg(long)]
        j: u32,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
}

fn parse(text: &str, prec: u32) -> Result<HPComplex, Failure> {
    HPComplex::parse(text, prec).map_err(Failure::from)
}

fn emit(cfg: &RunConfig, r: Row, out: &mut dyn Write) -> Result<(), Failure> {
    write_one(r, cfg.output_format, out).map_err(|e| Failure::Io(format!("stdout: {e}")))
}

pub fn poly(cfg: &RunConfig, n: u32, m: u32, out: &mut dyn Write) -> Result<(), Failure> {
    let f = poly_factor(n, m)?;
    emit(cfg, row(json!({ "n": n, "m": m, "coeffs": f.poly.coeff_strings() })), out)
}

pub fn zeros(cfg: &RunConfig, n: u32, m: u32, out: &mut dyn Write) -> Result<(), Failure> {
    let r = critical_line_report(n, m, cfg.precision_bits)?;
    let strs = |v: &[Float]| v.iter().map(|x| format!("{:e}", x.to_f64())).collect::<Vec<_>>();
    emit(
        cfg,
        row(json!({
            "n": n,
            "m": m,
            "precision_bits": r.precision_bits,
            "degree": r.degree(),
            "roots": r.roots.iter().map(|z| z.to_full_string()).collect::<Vec<_>>(),
            "residuals": strs(&r.residuals),
            "newton_radii": strs(&r.newton_radii),
            "max_deviation": format!("{:e}", r.max_deviation.to_f64()),
            "shift_match": r.shift_match,
        })),
        out,
    )
}

pub fn mellin(cfg: &RunConfig, n: u32, m: u32, s: &str, rep: &str, out: &mut dyn Write) -> Result<(), Failure> {
    let p = cfg.precision_bits;
    let s = parse(s, p)?;
    let closed = mellin_closed(n, m, &s)?;
    let mut r = row(json!({ "n": n, "m": m, "s": s.to_full_string(), "closed": closed.to_full_string() }));
    let variants: Vec<RepVariant> = match rep.to_ascii_lowercase().as_str() {
        "closed" => vec![],
        "all" => RepVariant::ALL.into_iter().filter(|v| v.is_legal(n, m)).collect(),
        name => vec![name.parse::<RepVariant>()?],
    };
    let single = variants.len() == 1 && !rep.eq_ignore_ascii_case("all");
    for v in variants {
        match mellin_rep(v, n, m, &s, p) {
            Ok(value) => {
                let err = (&value - &closed).abs().to_f64();
                r.insert(v.name().to_string(), json!(value.to_full_string()));
                r.insert(format!("{}_abs_err", v.name()), json!(format!("{err:e}")));
            }
            Err(e) if single => return Err(e.into()),
            // with `all`, a variant excluded at this s is reported in place
            Err(e) => {
                r.insert(v.name().to_string(), json!(format!("error: {e}")));
            }
        }
    }
    emit(cfg, r, out)
}

pub fn genfun(cfg: &RunConfig, t: &str, s: &str, nmax: u32, out: &mut dyn Write) -> Result<(), Failure> {
    let p = cfg.precision_bits;
    let (t, s) = (parse(t, p)?, parse(s, p)?);
    let g = genfun_sum(&t, &s, nmax, p)?;
    let err = |a: &HPComplex, b: &HPComplex| format!("{:e}", (a - b).abs().to_f64());
    emit(
        cfg,
        row(json!({
            "t": t.to_full_string(),
            "s": s.to_full_string(),
            "nmax": nmax,
            "partial": g.partial.to_full_string(),
            "closed": g.closed.to_full_string(),
            "abs_err": err(&g.partial, &g.closed),
            "even_line_abs_err": err(&g.even_partial, &g.even_line),
            "odd_line_abs_err": err(&g.odd_partial, &g.odd_line),
            "tail_bound": g.tail_bound.to_full_string(),
        })),
        out,
    )
}

pub fn fracpart(cfg: &RunConfig, which: FracCommand, out: &mut dyn Write) -> Result<(), Failure> {
    let p = cfg.precision_bits;
    let r = match which {
        FracCommand::Basic { s } => {
            let s = parse(&s, p)?;
            row(json!({ "s": s.to_full_string(), "value": frac_basic(&s)?.to_full_string() }))
        }
        FracCommand::Moment { alpha, beta, s, oracle_bits } => {
            let s = parse(&s, p)?;
            let spec = FracIntegralSpec::moment(HPComplex::from_i64(alpha as i64, p), beta, s.clone());
            let v = frac_int_moments(&spec)?;
            let mut r = row(json!({ "alpha": alpha, "beta": beta, "s": s.to_full_string(), "value": v.to_full_string() }));
            if oracle_bits > 0 {
                let o = numeric_fracpart_oracle(&spec, oracle_bits)?;
                r.insert("oracle".into(), json!(o.value.to_full_string()));
                r.insert("oracle_error".into(), json!(format!("{:e}", o.error.to_f64())));
                r.insert("abs_err".into(), json!(format!("{:e}", (&v - &o.value).abs().to_f64())));
                if let Some((lo, hi)) = &o.sandwich {
                    r.insert("sandwich".into(), json!([format!("{:e}", lo.to_f64()), format!("{:e}", hi.to_f64())]));
                }
            }
            r
        }
        FracCommand::General { s, b, alpha } => {
            let s = parse(&s, p)?;
            let b = parse(&b, p)?;
            if !b.is_real() {
                return Err(Failure::Domain(format!("b must be real, got {b}")));
            }
            let b = b.re().clone();
            let alpha = parse(&alpha, p)?;
            let v = if alpha.as_integer() == Some(1) {
                frac_general_alpha_one(&s, &b, p)?
            } else {
                frac_general(&s, &b, &alpha)?
            };
            row(json!({
                "s": s.to_full_string(),
                "b": b.to_string(),
                "alpha": alpha.to_full_string(),
                "value": v.to_full_string(),
            }))
        }
        FracCommand::Pair { s } => {
            let v = frac_pair_integral(s, p)?;
            let q = frac_pair_oracle(s, p.min(128))?;
            row(json!({
                "s": s,
                "value": v.to_full_string(),
                "quadrature": q.value.to_full_string(),
                "abs_err": format!("{:e}", (&v - &q.value).abs().to_f64()),
            }))
        }
        FracCommand::Transform { j, kind, s } => {
            let s = parse(&s, p)?;
            let stats = match kind {
                Kind::Fermi => Statistics::Fermi,
                Kind::Bose => Statistics::Bose,
            };
            let t = fermi_bose_transform(j, stats, &s)?;
            row(json!({
                "j": j,
                "kind": format!("{kind:?}").to_lowercase(),
                "s": s.to_full_string(),
                "series": t.series.to_full_string(),
                "closed": t.closed.to_full_string(),
                "difference": format!("{:e}", t.difference.to_f64()),
            }))
        }
    };
    emit(cfg, r, out)
}

pub fn verify(cfg: &RunConfig, suite: Suite, opts: SuiteOptions, out: &mut dyn Write) -> Result<(), Failure> {
    let start = Instant::now();
    let cases = suites::run(suite, cfg, opts);
    let elapsed = if report_timing() { start.elapsed().as_millis() as u64 } else { 0 };
    let report = VerifySuiteResult::new(suite.name(), cfg, cases, elapsed);
    report
        .write(cfg.output_format, out)
        .map_err(|e| Failure::Io(format!("stdout: {e}")))?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
