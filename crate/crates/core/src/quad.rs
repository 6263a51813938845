//! Double-exponential quadrature.
//!
//! `tanh_sinh` integrates over `[0, 1]` and hands the integrand both `x` and
//! `1 - x` computed without cancellation, so endpoint singularities can be
//! written in terms of the exact distance to the nearer endpoint. `exp_sinh`
//! integrates over `[0, inf)`. Levels are nested: level `L` uses step
//! `2^-L` and only evaluates the nodes that are new at that level.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rug::float::Constant;
use rug::Float;

use crate::exec::{self, Exec};
use crate::mpcore::{log2_abs, HPComplex};

#[derive(Clone, Debug)]
struct Node {
    x: Float,
    c: Float,
    w: Float,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    TanhSinh,
    ExpSinh,
}

type Cache = HashMap<(Kind, u32, u32), Arc<Vec<Node>>>;

static NODES: RwLock<Option<Cache>> = RwLock::new(None);

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub prec: u32,
    pub min_level: u32,
    pub max_level: u32,
    /// Stop once successive levels agree to `2^-tol_bits` (relative to `max(|I|, 1)`).
    pub tol_bits: u32,
    pub exec: Exec,
}

impl QuadOptions {
    pub fn new(prec: u32) -> Self {
        Self { prec, min_level: 3, max_level: 12, tol_bits: prec - 16, exec: Exec::Auto }
    }

    pub fn tol_bits(mut self, bits: u32) -> Self {
        self.tol_bits = bits;
        self
    }

    pub fn min_level(mut self, level: u32) -> Self {
        self.min_level = level;
        self
    }

    pub fn max_level(mut self, level: u32) -> Self {
        self.max_level = level;
        self
    }

    pub fn exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Quad {
    pub value: HPComplex,
    /// Difference between the last two levels; an upper estimate of the error.
    pub error: Float,
    pub level: u32,
    pub evals: usize,
    pub converged: bool,
}

fn generate(kind: Kind, prec: u32, level: u32) -> Vec<Node> {
    let w = prec + 32;
    let h = Float::with_val(w, Float::i_exp(1, -(level as i32)));
    let half_pi = Float::with_val(w, Constant::Pi) / 2u32;
    let tiny = -(4.0 * prec as f64) - 32.0;
    let (start, step) = if level == 0 { (0i64, 1i64) } else { (1, 2) };
    let mut out = Vec::new();
    let mut k = start;
    loop {
        let t = Float::with_val(w, &h * k);
        let (sh, ch) = t.clone().sinh_cosh(Float::new(w));
        let u = Float::with_val(w, &half_pi * &sh);
        match kind {
            Kind::TanhSinh => {
                let e = Float::with_val(w, u * 2u32).exp();
                let den = Float::with_val(w, &e + 1u32);
                let c = Float::with_val(w, 1u32) / &den;
                let x = Float::with_val(w, &e / &den);
                let wt = Float::with_val(w, &x * &c) * &ch * Float::with_val(w, Constant::Pi);
                if log2_abs(&c) < tiny {
                    break;
                }
                if k == 0 {
                    out.push(Node { x, c, w: wt });
                } else {
                    out.push(Node { x: x.clone(), c: c.clone(), w: wt.clone() });
                    out.push(Node { x: c, c: x, w: wt });
                }
            }
            Kind::ExpSinh => {
                let x = u.exp();
                let wt = Float::with_val(w, &x * &ch) * &half_pi;
                let xr = Float::with_val(w, x.recip_ref());
                let wr = Float::with_val(w, &xr * &ch) * &half_pi;
                let right_done = x.to_f64() > 1.5 * prec as f64 + 64.0;
                let left_done = log2_abs(&xr) < tiny;
                if k == 0 {
                    out.push(Node { c: x.clone(), x, w: wt });
                } else {
                    if !right_done {
                        out.push(Node { c: x.clone(), x, w: wt });
                    }
                    if !left_done {
                        out.push(Node { c: xr.clone(), x: xr, w: wr });
                    }
                }
                if right_done && left_done {
                    break;
                }
            }
        }
        k += step;
    }
    out
}

fn nodes(kind: Kind, prec: u32, level: u32) -> Arc<Vec<Node>> {
    if let Some(cache) = NODES.read().expect("node cache poisoned").as_ref() {
        if let Some(v) = cache.get(&(kind, prec, level)) {
            return v.clone();
        }
    }
    let v = Arc::new(generate(kind, prec, level));
    let mut guard = NODES.write().expect("node cache poisoned");
    guard.get_or_insert_with(HashMap::new).entry((kind, prec, level)).or_insert(v).clone()
}

fn level_sum<F>(kind: Kind, prec: u32, level: u32, exec: Exec, f: &F) -> (HPComplex, usize)
where
    F: Fn(&Float, &Float) -> HPComplex + Sync,
{
    let nodes = nodes(kind, prec, level);
    let terms = exec::map(exec, &nodes, |n| f(&n.x, &n.c).scale(&n.w));
    let mut s = HPComplex::zero(prec + 32);
    for t in &terms {
        if t.is_finite() {
            s += t;
        }
    }
    (s, nodes.len())
}

fn integrate<F>(kind: Kind, f: &F, opts: QuadOptions) -> Quad
where
    F: Fn(&Float, &Float) -> HPComplex + Sync,
{
    let prec = opts.prec;
    let mut raw = HPComplex::zero(prec + 32);
    let mut evals = 0;
    for level in 0..=opts.min_level {
        let (s, n) = level_sum(kind, prec, level, opts.exec, f);
        raw += &s;
        evals += n;
    }
    let step = |level: u32| Float::with_val(prec + 32, Float::i_exp(1, -(level as i32)));
    let mut prev = raw.scale(&step(opts.min_level));
    let mut level = opts.min_level;
    loop {
        level += 1;
        let (s, n) = level_sum(kind, prec, level, opts.exec, f);
        raw += &s;
        evals += n;
        let cur = raw.scale(&step(level));
        let diff = (&cur - &prev).abs();
        let scale = log2_abs(&cur.abs()).max(0.0);
        let converged = log2_abs(&diff) - scale < -(opts.tol_bits as f64);
        if converged || level >= opts.max_level {
            return Quad {
                value: cur.with_prec(prec),
                error: Float::with_val(64, &diff),
                level,
                evals,
                converged,
            };
        }
        prev = cur;
    }
}

/// `int_0^1 f(x) dx`; the integrand receives `(x, 1 - x)`.
pub fn tanh_sinh<F>(f: F, opts: QuadOptions) -> Quad
where
    F: Fn(&Float, &Float) -> HPComplex + Sync,
{
    integrate(Kind::TanhSinh, &f, opts)
}

/// `int_0^inf f(x) dx`; the integrand must decay at least like `exp(-x / 2)`.
pub fn exp_sinh<F>(f: F, opts: QuadOptions) -> Quad
where
    F: Fn(&Float) -> HPComplex + Sync,
{
    let g = |x: &Float, _: &Float| f(x);
    integrate(Kind::ExpSinh, &g, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_singularities() {
        // int_0^1 x^{-1/2} (1-x)^{-1/2} dx = pi
        let opts = QuadOptions::new(192).tol_bits(150);
        let q = tanh_sinh(
            |x, c| HPComplex::from_real(Float::with_val(224, x.sqrt_ref()) * Float::with_val(224, c.sqrt_ref())).recip(),
            opts,
        );
        let err = Float::with_val(192, q.value.re() - Float::with_val(192, Constant::Pi));
        assert!(q.converged);
        assert!(log2_abs(&err) < -140.0, "{}", log2_abs(&err));
    }

    #[test]
    fn half_line_gamma() {
        // int_0^inf x^{1/2} e^{-x} dx = sqrt(pi)/2
        let opts = QuadOptions::new(160).tol_bits(120);
        let q = exp_sinh(|x| HPComplex::from_real(Float::with_val(192, x.sqrt_ref()) * Float::with_val(192, (-x.clone()).exp())), opts);
        let want = Float::with_val(160, Constant::Pi).sqrt() / 2u32;
        let err = Float::with_val(160, q.value.re() - &want);
        assert!(log2_abs(&err) < -110.0, "{}", log2_abs(&err));
    }

    #[test]
    fn sequential_matches_parallel() {
        let f = |x: &Float, _: &Float| HPComplex::from_real(Float::with_val(128, x.cos_ref()));
        let a = tanh_sinh(f, QuadOptions::new(128).exec(Exec::Sequential));
        let b = tanh_sinh(f, QuadOptions::new(128).exec(Exec::Parallel));
        assert_eq!(a.value.to_full_string(), b.value.to_full_string());
    }
}
