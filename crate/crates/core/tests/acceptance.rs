//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exits non-zero when a criterion fails, except for the analysed failure of
//! criterion 1, which must fail on exactly the `m = 2 (mod 4)` cases and pass
//! for every case under the degree sign.

use std::time::Instant;

use mellin_core::criticality::{
    critical_line_report, difference_equation_residual, difference_equation_symbolic, functional_equation_check,
    functional_equation_check_with, hahn_proportionality, SignConvention,
};
use mellin_core::exec::{self, Exec};
use mellin_core::fracpart::{
    fermi_bose_series, fermi_bose_transform, fermi_closed, frac_general_alpha_one, frac_int_moments, frac_pair_integral,
    frac_pair_oracle, moment_a, moment_c, numeric_fracpart_oracle, FracIntegralSpec, Statistics,
};
use mellin_core::mellin::{
    genfun, mellin_closed, mellin_quadrature_with, mellin_rep, special_value_at_1, RepVariant,
};
use mellin_core::mpcore::{log2_abs, HPComplex};
use mellin_core::quad::QuadOptions;
use mellin_core::specfun::{
    appendix_min_excess, appendix_tuples, euler_gamma, kummer_closed, kummer_series, riemann_zeta,
    three_f2_transform_check, AppendixId, KummerId,
};
use rug::{Float, Rational};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

struct Outcome {
    pass: bool,
    detail: String,
    /// Failure accepted after analysis; the string says what was pinned.
    pinned: Option<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into(), pinned: None }
    }
}

fn err10(a: &HPComplex, b: &HPComplex) -> f64 {
    log2_abs(&(a - b).abs()) / LOG2_10
}

fn rel10(a: &HPComplex, b: &HPComplex) -> f64 {
    (log2_abs(&(a - b).abs()) - log2_abs(&b.abs()).max(0.0)) / LOG2_10
}

/// `1e<x>` for a base-10 exponent, `0` for an exact zero.
fn sci(x: f64) -> String {
    if x < -1.0e6 {
        "0".into()
    } else {
        format!("1e{x:.0}")
    }
}

fn worst(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

fn criterion_1() -> Outcome {
    let mut cases: Vec<(u32, u32)> = (0..=200).map(|n| (n, 0)).collect();
    for n in 0..=80u32 {
        cases.extend((2..=n).step_by(2).map(|m| (n, m)));
    }
    let stated = exec::map(Exec::Auto, &cases, |&(n, m)| functional_equation_check(n, m));
    let degree = exec::map(Exec::Auto, &cases, |&(n, m)| {
        functional_equation_check_with(n, m, SignConvention::Degree)
    });
    let mut failing = Vec::new();
    for (case, r) in cases.iter().zip(&stated) {
        match r {
            Ok(true) => {}
            Ok(false) => failing.push(*case),
            Err(e) => return Outcome::new(false, format!("({}, {}) errored: {e}", case.0, case.1)),
        }
    }
    let degree_ok = degree.iter().all(|r| matches!(r, Ok(true)));
    let expected: Vec<(u32, u32)> = cases.iter().copied().filter(|&(_, m)| m % 4 == 2).collect();
    let detail = format!("{} cases, {} fail the stated sign", cases.len(), failing.len());
    let mut out = Outcome::new(failing.is_empty(), detail);
    if !out.pass && failing == expected && degree_ok {
        out.pinned = Some(format!(
            "failures are exactly the {} cases with m = 2 mod 4; all cases hold with sign (-1)^deg p",
            expected.len()
        ));
    }
    out
}

fn criterion_2() -> Outcome {
    let mut cases: Vec<(u32, u32)> = (2..=60).map(|n| (n, 0)).collect();
    for n in 2..=40u32 {
        cases.extend((2..=n).step_by(2).map(|m| (n, m)));
    }
    // constant factors have no zeros to certify
    cases.retain(|&(n, m)| n / 2 > m / 2);
    let run = |prec: u32| {
        exec::map(Exec::Auto, &cases, |&(n, m)| {
            critical_line_report(n, m, prec).map(|r| {
                let cert = Float::with_val(64, Float::i_exp(1, -(prec as i32 / 2)));
                let certified = r.newton_radii.iter().all(|x| *x <= cert) && r.roots.len() == r.degree();
                (r.deviation_log10(), certified, r.shift_match)
            })
        })
    };
    let low = run(256);
    let high = run(512);
    let mut bad = Vec::new();
    let (mut dev_lo, mut dev_hi) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for ((case, l), h) in cases.iter().zip(&low).zip(&high) {
        match (l, h) {
            (Ok(l), Ok(h)) => {
                dev_lo = dev_lo.max(l.0);
                dev_hi = dev_hi.max(h.0);
                if l.0 > -25.0 || !l.1 || !l.2 || !h.1 {
                    bad.push(*case);
                }
            }
            _ => bad.push(*case),
        }
    }
    let pass = bad.is_empty() && dev_lo <= -25.0 && dev_hi < -60.0;
    Outcome::new(
        pass,
        format!(
            "{} cases; max |Re - 1/2|: {} at 256 bits, {} at 512 bits; uncertified {:?}",
            cases.len(),
            sci(dev_lo),
            sci(dev_hi),
            bad
        ),
    )
}

fn criterion_3() -> Outcome {
    let p = 256;
    let s = HPComplex::one(p);
    let pi = HPComplex::pi(p);
    let mut errs = Vec::new();
    let mut levels = Vec::new();
    for (n, want) in [(0u32, pi.div_i64(2)), (2, pi.div_i64(8)), (4, pi.mul_i64(9).div_i64(128))] {
        let closed = mellin_closed(n, 0, &s);
        let remark = special_value_at_1(n, p);
        let opts = QuadOptions::new(p).min_level(10).max_level(16).tol_bits(100);
        let quad = mellin_quadrature_with(n, 0, &s, opts);
        match (closed, remark, quad) {
            (Ok(c), Ok(r), Ok(q)) => {
                errs.extend([err10(&c, &want), err10(&r, &want), err10(&q.value, &want)]);
                levels.push(q.level);
            }
            _ => return Outcome::new(false, format!("n = {n}: a route errored")),
        }
    }
    let e = worst(errs);
    let pass = e <= -25.0 && levels.iter().all(|&l| l >= 10);
    Outcome::new(pass, format!("worst error {} over 3 routes; quadrature levels {levels:?}", sci(e)))
}

fn criterion_4() -> Outcome {
    let grid = [(3, 4, 0), (3, 2, 0), (5, 2, 0), (2, 1, 3)];
    let mut cases = Vec::new();
    for &(a, b, im) in &grid {
        for n in 0..=20u32 {
            for m in 0..=n.min(3) {
                for v in RepVariant::ALL {
                    if v != RepVariant::Genfun && v.is_legal(n, m) {
                        cases.push((a, b, im, n, m, v));
                    }
                }
            }
        }
    }
    let res = exec::map(Exec::Auto, &cases, |&(a, b, im, n, m, v)| {
        let prec = if v.is_quadrature() { 128 } else { 192 };
        let s = &HPComplex::from_ratio(a, b, prec) + &HPComplex::i(prec).mul_i64(im);
        let want = mellin_closed(n, m, &s)?;
        let got = mellin_rep(v, n, m, &s, prec)?;
        Ok::<_, mellin_core::Error>(rel10(&got, &want))
    });
    let (mut wa, mut wq) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut bad = Vec::new();
    for (c, r) in cases.iter().zip(&res) {
        let (n, m, v) = (c.3, c.4, c.5);
        let lim = if v.is_quadrature() { -15.0 } else { -20.0 };
        match r {
            Ok(e) => {
                if v.is_quadrature() {
                    wq = wq.max(*e);
                } else {
                    wa = wa.max(*e);
                }
                if *e > lim {
                    bad.push(format!("{v}({n},{m}) s={}/{}+{}i: {}", c.0, c.1, c.2, sci(*e)));
                }
            }
            Err(e) => bad.push(format!("{v}({n},{m}) s={}/{}+{}i: {e}", c.0, c.1, c.2)),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{} cases; worst analytic {}, quadrature {}; failures {bad:?}", cases.len(), sci(wa), sci(wq)),
    )
}

fn criterion_5() -> Outcome {
    let mut cases = Vec::new();
    for n in 0..=20u32 {
        for m in [0u32, 2] {
            if m <= n {
                for s in [(5, 2, 0), (3, 1, 0), (7, 2, 0), (3, 1, 1)] {
                    cases.push((n, m, s));
                }
            }
        }
    }
    let res = exec::map(Exec::Auto, &cases, |&(n, m, (a, b, im))| {
        let s = &HPComplex::from_ratio(a, b, 256) + &HPComplex::i(256).mul_i64(im);
        difference_equation_residual(n, m, &s, 256).map(|r| r.relative_log2() / LOG2_10)
    });
    let numeric = worst(res.iter().map(|r| *r.as_ref().unwrap_or(&0.0)));
    let symbolic = (0..=30u32).all(|n| difference_equation_symbolic(n, 0).map(|p| p.is_zero()).unwrap_or(false));
    Outcome::new(
        numeric <= -20.0 && symbolic,
        format!("{} numeric cases, worst relative residual {}; symbolic zero for n <= 30: {symbolic}", cases.len(), sci(numeric)),
    )
}

fn criterion_6() -> Outcome {
    let p = 256;
    match genfun(&HPComplex::from_ratio(1, 10, p), &HPComplex::from_i64(2, p), 60, p) {
        Ok(g) => {
            let e = [err10(&g.partial, &g.closed), err10(&g.even_partial, &g.even_line), err10(&g.odd_partial, &g.odd_line)];
            let w = worst(e);
            Outcome::new(w <= -25.0, format!("|partial - closed| {}, even {}, odd {}", sci(e[0]), sci(e[1]), sci(e[2])))
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn criterion_7() -> Outcome {
    let p = 256;
    let samples: Vec<HPComplex> = [(2.0, 0.0), (3.5, 0.0), (1.25, 1.0), (-0.75, 2.0), (4.0, -0.5)]
        .iter()
        .map(|&(a, b)| HPComplex::from_f64(a, b, p))
        .collect();
    let mut spreads = Vec::new();
    for n in 1..=10u32 {
        match hahn_proportionality(n, &samples, p) {
            Ok(r) => spreads.push(r.relative_spread_log2 / LOG2_10),
            Err(e) => return Outcome::new(false, format!("n = {n}: {e}")),
        }
    }
    let w = worst(spreads);
    Outcome::new(w <= -20.0, format!("5 samples, n = 1..10, worst relative spread {}", sci(w)))
}

fn criterion_8() -> Outcome {
    let p = 192;
    let two = HPComplex::from_i64(2, p);
    let mut lines = Vec::new();
    let mut pass = true;
    let mut check = |name: &str, e: f64, lim: f64| {
        pass &= e <= lim;
        lines.push(format!("{name} {}", sci(e)));
    };

    let z2 = riemann_zeta(&two).unwrap();
    let stated = z2.add_i64(-1).div_i64(2);
    let spec = FracIntegralSpec::moment(HPComplex::one(p), 1, two.clone());
    match (frac_int_moments(&spec), numeric_fracpart_oracle(&spec, 96)) {
        (Ok(v), Ok(o)) => {
            check("beta=1 s=2 vs (zeta(2)-1)/2", err10(&v, &stated), -25.0);
            check("beta=1 s=2 vs oracle", err10(&v, &o.value), -12.0);
        }
        _ => check("beta=1 s=2 errored", 0.0, -1.0),
    }

    let gamma = HPComplex::from_real(euler_gamma(p));
    match frac_general_alpha_one(&two, &Float::with_val(p, 1u32), p) {
        Ok(v) => check("alpha->1 limit vs gamma", err10(&v, &gamma), -10.0),
        Err(_) => check("alpha->1 limit errored", 0.0, -1.0),
    }

    let want = gamma.mul_i64(2).add_i64(-1);
    match (frac_pair_integral(1, p), frac_pair_oracle(1, 128)) {
        (Ok(v), Ok(q)) => {
            check("pair s=1 vs 2gamma-1", err10(&v, &want), -8.0);
            check("pair s=1 vs quadrature", err10(&v, &q.value), -8.0);
        }
        _ => check("pair errored", 0.0, -1.0),
    }

    let exact = moment_c(1).map(|c| c.equivalent(&moment_a())).unwrap_or(false);
    pass &= exact;
    lines.push(format!("general form at n=1 == beta=1 form exactly: {exact}"));

    let spec = FracIntegralSpec::moment(HPComplex::one(p), 1, HPComplex::from_i64(3, p));
    let sandwich = numeric_fracpart_oracle(&spec, 96).ok().and_then(|o| o.within_sandwich()).unwrap_or(false);
    pass &= sandwich;
    lines.push(format!("sandwich at (1,1,3): {sandwich}"));
    Outcome::new(pass, lines.join("; "))
}

fn criterion_9() -> Outcome {
    let p = 256;
    let mut errs = Vec::new();
    for (a, b) in [(3, 2), (2, 1), (13, 4)] {
        let s = HPComplex::from_ratio(a, b, p);
        for j in [2u32, 3] {
            let series = fermi_bose_series(j, Statistics::Fermi, &s);
            let closed = fermi_closed(j, &s);
            match (series, closed) {
                (Ok(x), Ok(y)) => errs.push(err10(&x, &y)),
                _ => return Outcome::new(false, format!("I_{j}({a}/{b}) errored")),
            }
        }
    }
    let w = worst(errs);
    let j1 = fermi_bose_transform(1, Statistics::Bose, &HPComplex::from_i64(2, p));
    let z3 = riemann_zeta(&HPComplex::from_i64(3, p)).unwrap().mul_i64(2);
    let e1 = j1.map(|t| err10(&t.series, &z3)).unwrap_or(0.0);
    Outcome::new(
        w <= -20.0 && e1 <= -25.0,
        format!("I_2, I_3 series vs closed worst {}; J_1(2) - 2 zeta(3) {}", sci(w), sci(e1)),
    )
}

fn criterion_10() -> Outcome {
    let p = 256;
    let mut worst_res = f64::NEG_INFINITY;
    let mut failures = Vec::new();
    let half = Rational::from((1, 2));
    for id in AppendixId::ALL {
        let tuples = appendix_tuples(id, 50, 20_240_601);
        let res = exec::map(Exec::Auto, &tuples, |t| {
            let hp: [HPComplex; 5] = std::array::from_fn(|i| HPComplex::from_rational(&t[i], p));
            three_f2_transform_check(id, &hp, p).map(|r| log2_abs(&r.abs()) / LOG2_10)
        });
        for (k, (t, r)) in tuples.iter().zip(&res).enumerate() {
            let excess_ok = appendix_min_excess(id, t) >= half;
            match r {
                Ok(e) if excess_ok && *e <= -18.0 => worst_res = worst_res.max(*e),
                Ok(e) => failures.push(format!("{}#{k}: {}", id.name(), sci(*e))),
                Err(e) => failures.push(format!("{}#{k}: {e}", id.name())),
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("3 x 50 tuples, worst residual {}; failures {failures:?}", sci(worst_res)),
    )
}

fn criterion_11() -> Outcome {
    let p = 256;
    let mut errs = Vec::new();
    for k in 0..20i64 {
        let re = 0.15 + 0.29 * k as f64;
        let im = ((k * 7) % 5 - 2) as f64 * 0.75;
        let s = HPComplex::from_f64(re, im, p);
        for id in [KummerId::A, KummerId::B, KummerId::C] {
            match (kummer_closed(id, &s), kummer_series(id, &s)) {
                (Ok(a), Ok(b)) => errs.push(rel10(&b, &a)),
                _ => return Outcome::new(false, format!("{id:?} at s = {s} errored")),
            }
        }
    }
    let w = worst(errs);
    Outcome::new(w <= -20.0, format!("20 points, Re s in (0, 6), worst {}", sci(w)))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("exact functional equation", criterion_1),
        ("critical-line zeros", criterion_2),
        ("special values M_n(1)", criterion_3),
        ("representation closure", criterion_4),
        ("difference equation", criterion_5),
        ("generating function", criterion_6),
        ("Hahn proportionality", criterion_7),
        ("fractional-part suite", criterion_8),
        ("I/J transforms", criterion_9),
        ("3F2 transformations", criterion_10),
        ("Kummer family", criterion_11),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{id:>2}] {name} ({secs:.1}s): {}", out.detail);
        match (&out.pinned, out.pass) {
            (_, true) => {}
            (Some(why), false) => println!("     pinned: {why}"),
            (None, false) => unexpected += 1,
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criterion(s) failed");
        std::process::exit(1);
    }
}
