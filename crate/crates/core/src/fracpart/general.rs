//! `int_0^1 {1/t} t^(s-1) (1 - t^b)^(-alpha) dt` and its `alpha -> 1` limit.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::mpcore::{log2_abs, HPComplex};
use crate::quad::{tanh_sinh, QuadOptions};
use crate::specfun::{gamma, hurwitz_zeta, hyp_pfq, rgamma, HypergeometricSpec};

use super::moments::OracleResult;

/// Smallest `J` with `(J + 1)^-b <= 1/4`; the `1/j^b` expansions converge at least that fast past `J`.
fn split_index(b: &Float) -> Result<i64> {
    let j = (2.0 / b.to_f64()).exp2().ceil() as i64 - 1;
    if j > 4096 {
        return Err(Error::Convergence(format!("b = {b} needs more than 4096 direct terms")));
    }
    Ok(j.max(1))
}

fn check(s: &HPComplex, b: &Float, alpha: &HPComplex) -> Result<()> {
    if *s.re() <= 1 {
        return Err(Error::Domain(format!("needs Re s > 1, got {s}")));
    }
    if *b <= 0 {
        return Err(Error::Domain(format!("needs b > 0, got {b}")));
    }
    if *alpha.re() < 0 || *alpha.re() >= 1 {
        return Err(Error::Domain(format!("needs 0 <= Re alpha < 1, got {alpha}")));
    }
    Ok(())
}

/// `Gamma(1-a) Gamma((s+b-1)/b) / (Gamma((s+b-ab-1)/b) (s-1)) - (1/s) sum_j j^-s 2F1(a, s/b; 1+s/b; j^-b)`.
///
/// `j = 1` uses Gauss's sum, `2 <= j <= J` the hypergeometric engine, and
/// `j > J` the interchanged form `sum_l (a)_l/l! s/(s+bl) zeta(s+bl, J+1)`.
pub fn frac_general(s: &HPComplex, b: &Float, alpha: &HPComplex) -> Result<HPComplex> {
    check(s, b, alpha)?;
    let p = s.prec();
    let w = p + 24;
    let sw = s.with_prec(w);
    let a = alpha.with_prec(w);
    let bw = HPComplex::from_real(Float::with_val(w, b));
    let sb = &sw / &bw;
    let one_minus_a = (-&a).add_i64(1);

    let x = &sw.add_i64(-1) / &bw;
    let lead = gamma(&one_minus_a)? * gamma(&x.add_i64(1))? * rgamma(&(&x - &a).add_i64(1)) / sw.add_i64(-1);

    // j = 1: 2F1(a, c; 1 + c; 1) = Gamma(1 + c) Gamma(1 - a) / Gamma(1 + c - a)
    let mut sum = gamma(&sb.add_i64(1))? * gamma(&one_minus_a)? * rgamma(&(&sb - &a).add_i64(1));
    let jj = split_index(b)?;
    let head = exec::map_range(Exec::Auto, 2..jj as usize + 1, |j| -> Result<HPComplex> {
        let jf = Float::with_val(w, j as u32);
        let z = HPComplex::from_real(Float::with_val(w, (&jf).pow(Float::with_val(w, -b))));
        let spec = HypergeometricSpec { num: vec![a.clone(), sb.clone()], den: vec![sb.add_i64(1)], z };
        let f = hyp_pfq(&spec, w)?;
        let jpow = HPComplex::from_real(jf.clone()).pow(&-&sw);
        Ok(jpow * f)
    });
    for h in head {
        sum += &h?;
    }

    let start = HPComplex::from_i64(jj + 1, w);
    let mut coef = HPComplex::one(w);
    let mut l = 0i64;
    loop {
        let arg = &sw + &bw.mul_i64(l);
        let t = (&coef * &hurwitz_zeta(&arg, &start)?) * &sw / &arg;
        sum += &t;
        if log2_abs(&t.abs()) - log2_abs(&sum.abs()) < -(w as f64) {
            break;
        }
        l += 1;
        if l > 8 * w as i64 {
            return Err(Error::Convergence("j-series tail did not reach tolerance".into()));
        }
        coef = (&coef * &a.add_i64(l - 1)).div_i64(l);
    }
    Ok((lead - sum / sw).with_prec(p))
}

/// `(1/2) 2F1(a, 2; 3; x) = [1 - (x - 1)(a x - x - 1) / (1 - x)^a] / ((1 - a)(2 - a) x^2)`.
pub fn half_2f1_a23(alpha: &HPComplex, x: &HPComplex) -> HPComplex {
    let one_minus_x = (-x).add_i64(1);
    let num = (x.add_i64(-1) * (&(alpha * x) - x).add_i64(-1)) / one_minus_x.pow(alpha);
    let den = (-alpha).add_i64(1) * (-alpha).add_i64(2) * x.square();
    (-num).add_i64(1) / den
}

/// The `s = 2, b = 1, alpha -> 1` limit. Through the closed form above, the
/// `1/(1-a)` poles of the leading term and of the `j = 1` term cancel to `1`,
/// and each `j >= 2` term tends to `1/j + ln(1 - 1/j)`; that sum is evaluated as
/// `-sum_{r>=2} zeta(r, 2) / r`.
pub fn frac_general_alpha_one(s: &HPComplex, b: &Float, prec: u32) -> Result<HPComplex> {
    if s.as_integer() != Some(2) || *b != 1 {
        return Err(Error::Domain("the alpha -> 1 limit is available for s = 2, b = 1".into()));
    }
    let w = prec + 16;
    let two = HPComplex::from_i64(2, w);
    let mut sum = HPComplex::zero(w);
    for r in 2i64.. {
        let t = hurwitz_zeta(&HPComplex::from_i64(r, w), &two)?.div_i64(r);
        sum += &t;
        if log2_abs(&t.abs()) < -(w as f64) {
            break;
        }
    }
    Ok((-sum).add_i64(1).with_prec(prec))
}

/// Direct quadrature of the defining integral: `t = 1/v`, pieces
/// `int_0^1 u (u+k)^(-s-1) (1 - (u+k)^-b)^(-a) du` for `k <= K`, and for `k > K`
/// the expansion in `(u+k)^-b` with `int_0^1 u zeta(q, u + A) du = A^(2-q)/((q-1)(q-2)) - zeta(q-1, A+1)/(q-1)`.
pub fn frac_general_oracle(s: &HPComplex, b: &Float, alpha: &HPComplex, tol_bits: u32) -> Result<OracleResult> {
    check(s, b, alpha)?;
    let p = s.prec();
    let w = tol_bits + 32;
    let sw = s.with_prec(w);
    let a = alpha.with_prec(w);
    let bw = Float::with_val(w, b);
    let kk = split_index(b)?.max(8);
    let e = (-&sw).add_i64(-1);
    let na = -&a;
    let pieces = exec::map_range(Exec::Auto, 1..kk as usize + 1, |k| {
        tanh_sinh(
            |u, _| {
                let v = Float::with_val(w, u + k as u32);
                // 1 - v^-b = -expm1(-b ln v), kept accurate near v = 1
                let lv = Float::with_val(w, u + (k - 1) as u32).ln_1p();
                let g = -Float::with_val(w, -(&bw * lv)).exp_m1();
                let wt = HPComplex::from_real(g).pow(&na);
                HPComplex::from_real(Float::with_val(w, u)) * HPComplex::from_real(v).pow(&e) * wt
            },
            QuadOptions::new(w).tol_bits(tol_bits + 8).max_level(14).exec(Exec::Sequential),
        )
    });
    let mut head = HPComplex::zero(w);
    let mut error = Float::with_val(64, 0u32);
    for q in &pieces {
        if !q.converged {
            return Err(Error::Convergence(format!("oracle quadrature stopped at level {}", q.level)));
        }
        head += &q.value;
        error += &q.error;
    }
    let big_a = HPComplex::from_i64(kk + 1, w);
    let mut tail = HPComplex::zero(w);
    let mut coef = HPComplex::one(w);
    let mut l = 0i64;
    loop {
        let q = (&sw + &HPComplex::from_real(Float::with_val(w, &bw * l))).add_i64(1);
        let q1 = q.add_i64(-1);
        let m = &big_a.pow(&(-&q).add_i64(2)) / &(&q1 * &q.add_i64(-2)) - &(hurwitz_zeta(&q1, &big_a.add_i64(1))? / &q1);
        let t = &coef * &m;
        tail += &t;
        l += 1;
        if log2_abs(&t.abs()) - log2_abs(&tail.abs()) < -(w as f64) {
            error += Float::with_val(64, t.abs());
            break;
        }
        if l > 8 * w as i64 {
            return Err(Error::Convergence("oracle tail expansion did not settle".into()));
        }
        coef = (&coef * &a.add_i64(l - 1)).div_i64(l);
    }
    Ok(OracleResult {
        value: (&head + &tail).with_prec(p),
        error,
        tail: tail.with_prec(p),
        tail_bound: None,
        sandwich: None,
        terms: kk as usize + l as usize,
    })
}
