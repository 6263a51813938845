//! Verification suites. Each returns its cases in key order.

use clap::ValueEnum;
use rug::{Float, Rational};

use mellin_core::criticality::{
    critical_line_report, difference_equation_residual, difference_equation_symbolic, functional_equation_check_with,
    hahn_constant_exact, hahn_proportionality, SignConvention,
};
use mellin_core::exec::{self, Exec};
use mellin_core::fracpart::{
    fermi_bose_series, fermi_closed, frac_basic, frac_general, frac_general_alpha_one, frac_general_oracle,
    frac_int_moments, frac_pair_integral, frac_pair_oracle, moment_a, moment_c, numeric_fracpart_oracle,
    FracIntegralSpec, Statistics,
};
use mellin_core::mellin::{
    genfun, m1_gamma_ratio, m1_rationality, mellin_closed, mellin_recursive, mellin_rep, poly_factor, RepVariant,
};
use mellin_core::mpcore::{digits_for_prec, ComplexRational, HPComplex};
use mellin_core::specfun::{
    appendix_min_excess, appendix_tuples, euler_gamma, kummer_closed, kummer_series, riemann_zeta,
    three_f2_transform_check, AppendixId, KummerId,
};

use crate::config::RunConfig;
use crate::report::CaseRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Recursion,
    Funceq,
    Zeros,
    Reps,
    Diffeq,
    Hahn,
    Fracpart,
    Appendix,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Recursion,
        Suite::Funceq,
        Suite::Zeros,
        Suite::Reps,
        Suite::Diffeq,
        Suite::Hahn,
        Suite::Fracpart,
        Suite::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Recursion => "recursion",
            Suite::Funceq => "funceq",
            Suite::Zeros => "zeros",
            Suite::Reps => "reps",
            Suite::Diffeq => "diffeq",
            Suite::Hahn => "hahn",
            Suite::Fracpart => "fracpart",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }
}

/// Options that only some suites read.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub sign: SignConvention,
}

pub fn run(suite: Suite, cfg: &RunConfig, opts: SuiteOptions) -> Vec<CaseRecord> {
    match suite {
        Suite::Recursion => recursion(cfg),
        Suite::Funceq => funceq(cfg, opts.sign),
        Suite::Zeros => zeros(cfg),
        Suite::Reps => reps(cfg),
        Suite::Diffeq => diffeq(cfg),
        Suite::Hahn => hahn(cfg),
        Suite::Fracpart => fracpart(cfg),
        Suite::Appendix => appendix(cfg),
        Suite::All => Suite::EACH
            .iter()
            .flat_map(|&s| {
                run(s, cfg, opts).into_iter().map(move |mut c| {
                    c.id = format!("{}/{}", s.name(), c.id);
                    c
                })
            })
            .collect(),
    }
}

fn show(x: &HPComplex) -> String {
    x.format_digits(digits_for_prec(x.prec()))
}

fn diff(a: &HPComplex, b: &HPComplex) -> f64 {
    (a - b).abs().to_f64()
}

/// `|a - b| / max(|b|, 1)`
fn rel_diff(a: &HPComplex, b: &HPComplex) -> f64 {
    diff(a, b) / b.abs().to_f64().max(1.0)
}

fn compare(id: String, inputs: &[(&str, String)], want: &HPComplex, got: mellin_core::Result<HPComplex>, tol: f64) -> CaseRecord {
    match got {
        Ok(g) => CaseRecord::numeric(id, inputs, show(want), show(&g), rel_diff(&g, want), tol),
        Err(e) => CaseRecord::errored(id, inputs, show(want), &e),
    }
}

fn sample_points(p: u32) -> Vec<(String, HPComplex)> {
    [("3/2", 3, 2, 0), ("5/2+i", 5, 2, 1), ("7/3-2i", 7, 3, -2)]
        .into_iter()
        .map(|(name, a, b, im)| (name.to_string(), &HPComplex::from_ratio(a, b, p) + &HPComplex::i(p).mul_i64(im)))
        .collect()
}

fn recursion(cfg: &RunConfig) -> Vec<CaseRecord> {
    let p = cfg.precision_bits;
    let tol = cfg.tolerance();
    let mut cases = Vec::new();
    let points = sample_points(p);

    let keys: Vec<(u32, u32, usize)> = (0..=cfg.max_n)
        .flat_map(|n| [0u32, 1, 2].into_iter().filter(move |&m| m <= n).map(move |m| (n, m)))
        .flat_map(|(n, m)| (0..points.len()).map(move |i| (n, m, i)))
        .collect();
    cases.extend(exec::map(Exec::Auto, &keys, |&(n, m, i)| {
        let (name, s) = &points[i];
        let inputs = [("n", n.to_string()), ("m", m.to_string()), ("s", name.clone())];
        let id = format!("recursion n={n} m={m} s={name}");
        // odd m: the closed form is the recursion itself, so compare with the gamma-ratio form
        let (want, got) = if m == 1 {
            (m1_gamma_ratio(n, s), mellin_closed(n, m, s))
        } else {
            (mellin_closed(n, m, s), mellin_recursive(n, m, s))
        };
        match want {
            Ok(w) => compare(id, &inputs, &w, got, tol),
            Err(e) => CaseRecord::errored(id, &inputs, String::new(), &e),
        }
    }));

    for k in 0..20 {
        let s = HPComplex::from_f64(0.3 + 0.29 * k as f64, (k % 5) as f64 - 2.0, p);
        let want = mellin_closed(0, 0, &s.add_i64(1)).unwrap_or_else(|_| HPComplex::zero(p));
        let inputs = [("s", show(&s))];
        cases.push(compare(format!("degenerate M1(s)=M0(s+1) #{k:02}"), &inputs, &want, mellin_closed(1, 0, &s), tol));
    }

    for n in 0..=cfg.max_n.min(20) {
        let r = m1_rationality(n);
        cases.push(CaseRecord::exact(format!("m1 rational n={n}"), &[("n", n.to_string())], "true", r.passed().to_string()));
    }

    for n in 0..=200u32 {
        let inputs = [("n", n.to_string())];
        let id = format!("leading n={n:03}");
        match poly_factor(n, 0) {
            Ok(f) => {
                let lead = f.poly.leading().map(|c| c.to_string()).unwrap_or_default();
                let want = (rug::Integer::from(1) << (n / 2)).to_string();
                let deg = f.poly.degree().map(|d| d.to_string()).unwrap_or_default();
                cases.push(CaseRecord::exact(id, &inputs, format!("deg {} lead {want}", n / 2), format!("deg {deg} lead {lead}")));
            }
            Err(e) => cases.push(CaseRecord::errored(id, &inputs, String::new(), &e)),
        }
    }

    for (n, extra) in [(0u32, 1u32), (3, 2), (7, 1)] {
        let s = HPComplex::from_ratio(5, 2, p);
        let got = mellin_closed(n, n + extra, &s).map(|v| v.is_zero().to_string()).unwrap_or_else(|e| e.to_string());
        cases.push(CaseRecord::exact(
            format!("vanishing n={n} m={}", n + extra),
            &[("n", n.to_string()), ("m", (n + extra).to_string())],
            "true",
            got,
        ));
    }

    let t = HPComplex::from_ratio(1, 10, p);
    let s = HPComplex::from_i64(2, p);
    let inputs = [("t", "1/10".to_string()), ("s", "2".to_string()), ("N", "60".to_string())];
    match genfun(&t, &s, 60, p) {
        Ok(g) => {
            for (name, a, b) in [
                ("genfun partial", &g.partial, &g.closed),
                ("genfun even line", &g.even_partial, &g.even_line),
                ("genfun odd line", &g.odd_partial, &g.odd_line),
            ] {
                cases.push(CaseRecord::numeric(name, &inputs, show(b), show(a), diff(a, b), tol.min(1e-25)));
            }
        }
        Err(e) => cases.push(CaseRecord::errored("genfun", &inputs, String::new(), &e)),
    }
    cases
}

fn funceq(cfg: &RunConfig, sign: SignConvention) -> Vec<CaseRecord> {
    let mut keys: Vec<(u32, u32)> = (0..=5 * cfg.max_n).map(|n| (n, 0)).collect();
    for n in 0..=2 * cfg.max_n {
        keys.extend((2..=n).step_by(2).map(|m| (n, m)));
    }
    keys.sort_unstable();
    exec::map(Exec::Auto, &keys, |&(n, m)| {
        let inputs = [("n", n.to_string()), ("m", m.to_string()), ("sign", sign.sign(n, m).to_string())];
        let id = format!("funceq n={n:03} m={m:02}");
        match functional_equation_check_with(n, m, sign) {
            Ok(ok) => CaseRecord::exact(id, &inputs, "true", ok.to_string()),
            Err(e) => CaseRecord::errored(id, &inputs, "true".into(), &e),
        }
    })
}

fn zeros(cfg: &RunConfig) -> Vec<CaseRecord> {
    let p = cfg.precision_bits;
    let tol = cfg.tolerance().min(1e-25);
    let mut keys: Vec<(u32, u32)> = Vec::new();
    for n in 2..=cfg.max_n {
        keys.extend((0..=n).step_by(2).map(|m| (n, m)).filter(|&(n, m)| n / 2 > m / 2));
    }
    let cert = Float::with_val(64, Float::i_exp(1, -(p as i32 / 2)));
    exec::map(Exec::Auto, &keys, |&(n, m)| {
        let inputs = [("n", n.to_string()), ("m", m.to_string()), ("precision", p.to_string())];
        let id = format!("zeros n={n:02} m={m:02}");
        match critical_line_report(n, m, p) {
            Ok(r) => {
                let certified = r.newton_radii.iter().all(|x| *x <= cert);
                let dev = r.max_deviation.to_f64();
                let mut c = CaseRecord::numeric(id, &inputs, "|Re - 1/2| = 0".into(), format!("{dev:e}"), dev, tol);
                if !certified || !r.shift_match || r.roots.len() != r.degree() {
                    c.pass = false;
                    c.got = format!("{dev:e} certified={certified} shift_match={}", r.shift_match);
                }
                c
            }
            Err(e) => CaseRecord::errored(id, &inputs, String::new(), &e),
        }
    })
}

fn reps(cfg: &RunConfig) -> Vec<CaseRecord> {
    let p = cfg.precision_bits;
    let grid = [("3/4", 3, 4, 0), ("3/2", 3, 2, 0), ("5/2", 5, 2, 0), ("2+3i", 2, 1, 3)];
    let mut keys = Vec::new();
    for (gi, _) in grid.iter().enumerate() {
        for n in 0..=cfg.max_n.min(20) {
            for m in 0..=n.min(2) {
                for v in RepVariant::ALL {
                    if v.is_legal(n, m) {
                        keys.push((gi, n, m, v));
                    }
                }
            }
        }
    }
    exec::map(Exec::Auto, &keys, |&(gi, n, m, v)| {
        let (name, a, b, im) = grid[gi];
        // quadrature variants are checked at 1e-15 and need no more than 128 bits
        let (prec, tol) = if v.is_quadrature() { (p.min(128), 1e-15) } else { (p, cfg.tolerance()) };
        let s = &HPComplex::from_ratio(a, b, prec) + &HPComplex::i(prec).mul_i64(im);
        let inputs = [("variant", v.name().to_string()), ("n", n.to_string()), ("m", m.to_string()), ("s", name.to_string())];
        let id = format!("{} n={n:02} m={m} s={name}", v.name());
        match mellin_closed(n, m, &s) {
            Ok(want) => compare(id, &inputs, &want, mellin_rep(v, n, m, &s, prec), tol),
            Err(e) => CaseRecord::errored(id, &inputs, String::new(), &e),
        }
    })
}

fn diffeq(cfg: &RunConfig) -> Vec<CaseRecord> {
    let p = cfg.precision_bits;
    let tol = cfg.tolerance();
    let grid = [("5/2", 5, 2, 0), ("3", 3, 1, 0), ("7/2", 7, 2, 0), ("3+i", 3, 1, 1)];
    let mut keys = Vec::new();
    for n in 0..=cfg.max_n.min(20) {
        for m in [0u32, 2].into_iter().filter(|&m| m <= n) {
            keys.extend((0..grid.len()).map(|g| (n, m, g)));
        }
    }
    let mut cases = exec::map(Exec::Auto, &keys, |&(n, m, g)| {
        let (name, a, b, im) = grid[g];
        let s = &HPComplex::from_ratio(a, b, p) + &HPComplex::i(p).mul_i64(im);
        let inputs = [("n", n.to_string()), ("m", m.to_string()), ("s", name.to_string())];
        let id = format!("numeric n={n:02} m={m} s={name}");
        match difference_equation_residual(n, m, &s, p) {
            Ok(r) => {
                let rel = (r.residual.abs() / &r.scale).to_f64();
                CaseRecord::numeric(id, &inputs, "0".into(), show(&r.residual), rel, tol)
            }
            Err(e) => CaseRecord::errored(id, &inputs, "0".into(), &e),
        }
    });
    for n in 0..=cfg.max_n {
        for m in [0u32, 2].into_iter().filter(|&m| m <= n) {
            let inputs = [("n", n.to_string()), ("m", m.to_string())];
            let id = format!("symbolic n={n:02} m={m}");
            cases.push(match difference_equation_symbolic(n, m) {
                Ok(r) => CaseRecord::exact(id, &inputs, "0", r.to_string()),
                Err(e) => CaseRecord::errored(id, &inputs, "0".into(), &e),
            });
        }
    }
    cases
}

fn hahn(cfg: &RunConfig) -> Vec<CaseRecord> {
    let p = cfg.precision_bits;
    let samples: Vec<HPComplex> = [(2.0, 0.0), (3.5, 0.0), (1.25, 1.0), (-0.75, 2.0), (4.0, -0.5)]
        .iter()
        .map(|&(a, b)| HPComplex::from_f64(a, b, p))
        .collect();
    let mut cases = Vec::new();
    for n in 1..=cfg.max_n.min(10) {
        let inputs = [("n", n.to_string()), ("samples", samples.len().to_string())];
        let id = format!("proportional n={n:02}");
        cases.push(match hahn_proportionality(n, &samples, p) {
            Ok(r) => {
                let rel = (r.spread.clone() / r.ratios[0].abs()).to_f64();
                CaseRecord::numeric(id, &inputs, "equal ratios".into(), format!("ratio {}", show(&r.ratios[0])), rel, cfg.tolerance())
            }
            Err(e) => CaseRecord::errored(id, &inputs, String::new(), &e),
        });
    }
    let minus_four_i = ComplexRational::new(Rational::new(), Rational::from(-4));
    for n in 1..=cfg.max_n.min(5) {
        let want = minus_four_i.pow(n);
        let fmt = |c: &ComplexRational| format!("{}{:+}i", c.re, c.im);
        let id = format!("constant n={n}");
        let inputs = [("n", n.to_string())];
        cases.push(match hahn_constant_exact(n) {
            Ok(c) => CaseRecord::exact(id, &inputs, fmt(&want), fmt(&c)),
            Err(e) => CaseRecord::errored(id, &inputs, fmt(&want), &e),
        });
    }
    cases
}

fn fracpart(cfg: &RunConfig) -> Vec<CaseRecord> {
    let p = cfg.precision_bits;
    let tol = cfg.tolerance();
    let oracle_bits = 96;
    let q = |a: i64, b: i64| HPComplex::from_ratio(a, b, p);
    let one = q(1, 1);
    let two = q(2, 1);
    let z = |k: i64| riemann_zeta(&q(k, 1)).unwrap();
    let gamma = HPComplex::from_real(euler_gamma(p));
    let mut cases = Vec::new();

    let basic_want = (-z(2).div_i64(2)).add_i64(1);
    cases.push(compare("basic s=2".into(), &[("s", "2".into())], &basic_want, frac_basic(&two), tol));

    let a_want = z(2).add_i64(-1).div_i64(2);
    let spec_a = FracIntegralSpec::moment(one.clone(), 1, two.clone());
    let inputs = [("alpha", "1".into()), ("beta", "1".into()), ("s", "2".into())];
    cases.push(compare("moment alpha=1 beta=1 s=2".into(), &inputs, &a_want, frac_int_moments(&spec_a), tol));
    cases.push(compare(
        "moment alpha=1 beta=1 s=2 oracle".into(),
        &inputs,
        &a_want,
        numeric_fracpart_oracle(&spec_a, oracle_bits).map(|o| o.value),
        1e-12,
    ));

    let b_want = &(&z(2).div_i64(2) - &z(3).div_i64(3)) - &q(1, 6);
    let spec_b = FracIntegralSpec::moment(one.clone(), 2, q(3, 1));
    let inputs = [("alpha", "1".into()), ("beta", "2".into()), ("s", "3".into())];
    cases.push(compare("moment alpha=1 beta=2 s=3".into(), &inputs, &b_want, frac_int_moments(&spec_b), tol));

    for (alpha, beta, s) in [(1u32, 3u32, (11, 2)), (2, 0, (5, 2)), (2, 2, (9, 2)), (1, 1, (2, 1)), (2, 1, (3, 1))] {
        let spec = FracIntegralSpec::moment(q(alpha as i64, 1), beta, q(s.0, s.1));
        let inputs = [("alpha", alpha.to_string()), ("beta", beta.to_string()), ("s", format!("{}/{}", s.0, s.1))];
        let id = format!("moment alpha={alpha} beta={beta} s={}/{} oracle", s.0, s.1);
        cases.push(match numeric_fracpart_oracle(&spec, oracle_bits) {
            Ok(o) => compare(id, &inputs, &o.value, frac_int_moments(&spec), 1e-12),
            Err(e) => CaseRecord::errored(id, &inputs, String::new(), &e),
        });
    }

    let exact = moment_c(1).map(|c| c.equivalent(&moment_a())).unwrap_or(false);
    cases.push(CaseRecord::exact("general moment form at n=1 equals beta=1 form", &[("n", "1".into())], "true", exact.to_string()));

    let spec = FracIntegralSpec::moment(one.clone(), 1, q(3, 1));
    let inputs = [("alpha", "1".into()), ("beta", "1".into()), ("s", "3".into())];
    let within = numeric_fracpart_oracle(&spec, oracle_bits)
        .map(|o| o.within_sandwich().unwrap_or(false).to_string())
        .unwrap_or_else(|e| e.to_string());
    cases.push(CaseRecord::exact("sandwich (1,1,3)", &inputs, "true", within));

    let b2 = Float::with_val(p, 2u32);
    let inputs = [("s", "3".into()), ("b", "2".into()), ("alpha", "1/4".into())];
    let id = "general s=3 b=2 alpha=1/4 oracle".to_string();
    cases.push(match frac_general_oracle(&q(3, 1), &b2, &q(1, 4), 64) {
        Ok(o) => compare(id, &inputs, &o.value, frac_general(&q(3, 1), &b2, &q(1, 4)), 1e-10),
        Err(e) => CaseRecord::errored(id, &inputs, String::new(), &e),
    });
    let inputs = [("s", "2".into()), ("b", "1".into())];
    cases.push(compare(
        "alpha->1 limit equals euler gamma".into(),
        &inputs,
        &gamma,
        frac_general_alpha_one(&two, &Float::with_val(p, 1u32), p),
        1e-10,
    ));

    let pair_want = gamma.mul_i64(2).add_i64(-1);
    cases.push(compare("pair s=1".into(), &[("s", "1".into())], &pair_want, frac_pair_integral(1, p), tol));
    for s in [1u32, 2, 3] {
        let id = format!("pair s={s} quadrature");
        let inputs = [("s", s.to_string())];
        cases.push(match frac_pair_oracle(s, 128) {
            Ok(o) => compare(id, &inputs, &o.value, frac_pair_integral(s, p), 1e-8),
            Err(e) => CaseRecord::errored(id, &inputs, String::new(), &e),
        });
    }

    for (a, b) in [(3, 2), (2, 1), (13, 4)] {
        let s = q(a, b);
        for j in [2u32, 3] {
            let id = format!("I_{j} s={a}/{b} series vs closed");
            let inputs = [("j", j.to_string()), ("s", format!("{a}/{b}"))];
            cases.push(match fermi_closed(j, &s) {
                Ok(c) => compare(id, &inputs, &c, fermi_bose_series(j, Statistics::Fermi, &s), tol),
                Err(e) => CaseRecord::errored(id, &inputs, String::new(), &e),
            });
        }
    }
    cases.push(compare(
        "J_1 s=2".into(),
        &[("j", "1".into()), ("s", "2".into())],
        &z(3).mul_i64(2),
        fermi_bose_series(1, Statistics::Bose, &two),
        tol.min(1e-25),
    ));
    cases
}

fn appendix(cfg: &RunConfig) -> Vec<CaseRecord> {
    let p = cfg.precision_bits;
    let half = Rational::from((1, 2));
    let mut keys = Vec::new();
    for id in AppendixId::ALL {
        keys.extend(appendix_tuples(id, 50, cfg.seed).into_iter().enumerate().map(move |(k, t)| (id, k, t)));
    }
    let mut cases = exec::map(Exec::Auto, &keys, |(id, k, t)| {
        let hp: [HPComplex; 5] = std::array::from_fn(|i| HPComplex::from_rational(&t[i], p));
        let names = ["a", "b", "c", "d", "e"];
        let mut inputs: Vec<(&str, String)> = names.iter().zip(t.iter()).map(|(n, v)| (*n, v.to_string())).collect();
        let excess = appendix_min_excess(*id, t);
        inputs.push(("min_excess", excess.to_string()));
        let case_id = format!("{} #{k:02}", id.name());
        match three_f2_transform_check(*id, &hp, p) {
            Ok(r) => {
                let mut c = CaseRecord::numeric(case_id, &inputs, "0".into(), show(&r), r.abs().to_f64(), 1e-18);
                c.pass &= excess >= half;
                c
            }
            Err(e) => CaseRecord::errored(case_id, &inputs, "0".into(), &e),
        }
    });
    for k in 0..20i64 {
        let s = HPComplex::from_f64(0.15 + 0.29 * k as f64, ((k * 7) % 5 - 2) as f64 * 0.75, p);
        for (name, id) in [("a", KummerId::A), ("b", KummerId::B), ("c", KummerId::C)] {
            let inputs = [("s", show(&s))];
            let case_id = format!("kummer {name} #{k:02}");
            cases.push(match kummer_closed(id, &s) {
                Ok(c) => compare(case_id, &inputs, &c, kummer_series(id, &s), cfg.tolerance()),
                Err(e) => CaseRecord::errored(case_id, &inputs, String::new(), &e),
            });
        }
    }
    cases
}
