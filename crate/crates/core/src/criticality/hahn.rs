//! Continuous Hahn polynomials
//! `p_n(x; a, b, c, d) = i^n (a+c)_n (a+d)_n / n! 3F2(-n, n+a+b+c+d-1, a+ix; a+c, a+d; 1)`
//! and their proportionality to the even-index Mellin factors.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mellin::{eval_poly, poly_factor};
use crate::mpcore::{log2_abs, ComplexRational, HPComplex};
use crate::specfun::{hyp_pfq_exact_complex, pochhammer};

#[derive(Clone, Debug)]
pub struct HahnParams {
    pub a: HPComplex,
    pub b: HPComplex,
    pub c: HPComplex,
    pub d: HPComplex,
}

impl HahnParams {
    /// `(-n, 0, 1/2, 1/2 - n)`, the instance matching `p_{2n}`.
    pub fn mellin_instance(n: u32, prec: u32) -> Self {
        let ni = n as i64;
        Self {
            a: HPComplex::from_i64(-ni, prec),
            b: HPComplex::zero(prec),
            c: HPComplex::from_ratio(1, 2, prec),
            d: HPComplex::from_ratio(1 - 2 * ni, 2, prec),
        }
    }
}

fn i_pow(v: HPComplex, n: u32) -> HPComplex {
    let mut v = v;
    for _ in 0..n % 4 {
        v = v.mul_i();
    }
    v
}

/// Value and the largest term magnitude of the terminating sum (for zero detection).
fn hahn_sum(n: u32, x: &HPComplex, p: &HahnParams) -> (HPComplex, Float) {
    let w = x.prec();
    let ac = &p.a + &p.c;
    let ad = &p.a + &p.d;
    let top = (&(&(&p.a + &p.b) + &p.c) + &p.d).add_i64(n as i64 - 1);
    let third = &p.a + &x.mul_i();
    let num = [HPComplex::from_i64(-(n as i64), w), top, third];
    let den = [ac, ad];
    let mut t = HPComplex::one(w);
    let mut s = HPComplex::one(w);
    let mut big = Float::with_val(64, 1u32);
    for k in 0..n as i64 {
        for a in &num {
            t = &t * &a.add_i64(k);
        }
        for b in &den {
            t = &t / &b.add_i64(k);
        }
        t = t.div_i64(k + 1);
        big = big.max(&Float::with_val(64, t.abs()));
        s += &t;
    }
    (s, big)
}

pub fn hahn_eval(n: u32, x: &HPComplex, params: &HahnParams, prec: u32) -> Result<HPComplex> {
    Ok(hahn_eval_scaled(n, x, params, prec)?.0)
}

fn hahn_eval_scaled(n: u32, x: &HPComplex, params: &HahnParams, prec: u32) -> Result<(HPComplex, Float)> {
    let w = prec + 32;
    let xw = x.with_prec(w);
    let pw = HahnParams { a: params.a.with_prec(w), b: params.b.with_prec(w), c: params.c.with_prec(w), d: params.d.with_prec(w) };
    for b in [&pw.a + &pw.c, &pw.a + &pw.d] {
        if let Some(k) = b.as_nonpositive_integer() {
            if k < n as u64 {
                return Err(Error::Pole(format!("denominator parameter -{k} terminates before -{n}")));
            }
        }
    }
    let (sum, big) = hahn_sum(n, &xw, &pw);
    let pre = pochhammer(&(&pw.a + &pw.c), n as u64) * pochhammer(&(&pw.a + &pw.d), n as u64);
    let pre = pre.mul_rational(&Rational::from((1, Integer::from(Integer::factorial(n)))));
    let v = i_pow(pre.clone() * sum, n);
    let scale = Float::with_val(64, pre.abs() * big);
    Ok((v.with_prec(prec), scale))
}

/// Exact value for Gaussian-rational data.
pub fn hahn_eval_exact(n: u32, x: &ComplexRational, params: &[ComplexRational; 4]) -> Result<ComplexRational> {
    let [a, b, c, d] = params;
    let ac = a + c;
    let ad = a + d;
    let top = &(&(&(a + b) + c) + d) + &ComplexRational::from_i64(n as i64 - 1);
    let third = a + &(&ComplexRational::i() * x);
    let f = hyp_pfq_exact_complex(
        &[ComplexRational::from_i64(-(n as i64)), top, third],
        &[ac.clone(), ad.clone()],
        &ComplexRational::from_i64(1),
    )?;
    let mut pre = ComplexRational::from_i64(1);
    for k in 0..n as i64 {
        let kk = ComplexRational::from_i64(k);
        pre = &(&pre * &(&ac + &kk)) * &(&ad + &kk);
    }
    let pre = &pre / &ComplexRational::real(Rational::from(Integer::from(Integer::factorial(n))));
    Ok(&(&ComplexRational::i().pow(n) * &pre) * &f)
}

/// `p_{2n}(s) / p_n(-is/2; -n, 0, 1/2, 1/2-n)` at the given samples.
#[derive(Clone, Debug)]
pub struct HahnReport {
    pub n: u32,
    pub ratios: Vec<HPComplex>,
    /// `max |r_i - r_0|`
    pub spread: Float,
    /// `log2(spread / |r_0|)`
    pub relative_spread_log2: f64,
}

pub fn hahn_proportionality(n: u32, samples: &[HPComplex], prec: u32) -> Result<HahnReport> {
    if n == 0 {
        return Err(Error::Domain("Hahn proportionality needs n >= 1".into()));
    }
    if samples.is_empty() {
        return Err(Error::Domain("Hahn proportionality needs at least one sample".into()));
    }
    let w = prec + 32;
    let poly = poly_factor(2 * n, 0)?.poly;
    let params = HahnParams::mellin_instance(n, w);
    let mut ratios = Vec::with_capacity(samples.len());
    for s in samples {
        let sw = s.with_prec(w);
        let x = sw.mul_i().div_i64(-2);
        let (h, scale) = hahn_eval_scaled(n, &x, &params, w)?;
        if log2_abs(&h.abs()) - log2_abs(&scale) < -((prec - 24) as f64) {
            return Err(Error::Domain(format!("sample {s} is a zero of the Hahn polynomial")));
        }
        ratios.push((eval_poly(&poly, &sw) / h).with_prec(prec));
    }
    let mut spread = Float::with_val(64, 0u32);
    for r in &ratios[1..] {
        spread = spread.max(&Float::with_val(64, (r - &ratios[0]).abs()));
    }
    let relative_spread_log2 = log2_abs(&spread) - log2_abs(&ratios[0].abs());
    Ok(HahnReport { n, ratios, spread, relative_spread_log2 })
}

/// Exact constant `p_{2n}(s) / p_n(-is/2; ...)`, measured at `s = 3`.
pub fn hahn_constant_exact(n: u32) -> Result<ComplexRational> {
    let s = Rational::from(3);
    let poly = poly_factor(2 * n, 0)?.poly;
    let ni = n as i64;
    let params = [
        ComplexRational::from_i64(-ni),
        ComplexRational::from_i64(0),
        ComplexRational::real(Rational::from((1, 2))),
        ComplexRational::real(Rational::from((1 - 2 * ni, 2))),
    ];
    let x = ComplexRational::new(Rational::new(), Rational::from(-s.clone()) / 2u32);
    let h = hahn_eval_exact(n, &x, &params)?;
    if h.is_zero() {
        return Err(Error::Domain("s = 3 is a zero of the Hahn polynomial".into()));
    }
    Ok(&ComplexRational::real(poly.eval_rational(&s)) / &h)
}
