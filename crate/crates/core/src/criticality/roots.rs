//! Simultaneous (Aberth-Ehrlich) root finding for rational polynomials.

use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{log2_abs, HPComplex, RationalPolynomial};

/// Values of `p` and `p'` at `z` by Horner's rule.
fn eval_with_derivative(c: &[HPComplex], z: &HPComplex) -> (HPComplex, HPComplex) {
    let w = z.prec();
    let mut p = HPComplex::zero(w);
    let mut dp = HPComplex::zero(w);
    for a in c.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + a;
    }
    (p, dp)
}

/// Fujiwara bound on the moduli of the roots of `q`.
fn root_radius(q: &RationalPolynomial) -> f64 {
    let d = q.degree().unwrap_or(0);
    let lead = Float::with_val(64, q.leading().expect("nonzero polynomial")).abs();
    let mut r = 0.0f64;
    for k in 0..d {
        let c = Float::with_val(64, &q.coeffs()[k]).abs() / &lead;
        if c.is_zero() {
            continue;
        }
        let mut e = c.to_f64().ln() / (d - k) as f64;
        if k == 0 {
            e -= std::f64::consts::LN_2 / d as f64;
        }
        r = r.max(e.exp());
    }
    (2.0 * r).max(1.0)
}

/// A root with its Newton certificate `|p(r)| / |p'(r)|`.
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub root: HPComplex,
    /// The root at working precision, before rounding to `prec`.
    pub wide: HPComplex,
    pub residual: Float,
    pub newton_radius: Float,
}

/// All roots of `p` with Newton certificates at `2^-(prec/2)`.
pub fn find_roots_certified(p: &RationalPolynomial, prec: u32) -> Result<Vec<CertifiedRoot>> {
    let d = match p.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(d) => d,
    };
    let w = prec + 64;
    let lead = p.leading().expect("nonzero").clone();
    let monic: Vec<HPComplex> =
        p.coeffs().iter().map(|c| HPComplex::from_rational(&Rational::from(c / &lead), w)).collect();
    let center = HPComplex::from_ratio(1, 2, w);
    let radius = root_radius(&p.shift(&Rational::from((1, 2))));
    let two_pi = Float::with_val(w, Constant::Pi) * 2u32;
    let mut z: Vec<HPComplex> = (0..d)
        .map(|k| {
            let theta = Float::with_val(w, &two_pi * k as u32) / d as u32 + 0.4f64;
            let (s, c) = theta.sin_cos(Float::new(w));
            &center + &HPComplex::new(c * radius, s * radius)
        })
        .collect();

    let stop = -(prec as f64) - 16.0;
    let mut converged = false;
    for _ in 0..(200 + 20 * d) {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..d {
            let (pv, dv) = eval_with_derivative(&monic, &z[i]);
            if pv.is_zero() {
                continue;
            }
            let ratio = &pv / &dv;
            let mut sum = HPComplex::zero(w);
            for j in 0..d {
                if j != i {
                    sum += &(&z[i] - &z[j]).recip();
                }
            }
            let step = &ratio / &(&ratio * &sum).mul_i64(-1).add_i64(1);
            let scale = log2_abs(&z[i].abs()).max(0.0);
            worst = worst.max(log2_abs(&step.abs()) - scale);
            z[i] -= &step;
        }
        if worst < stop {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!("Aberth iteration did not settle for degree {d}")));
    }

    let mut out = Vec::with_capacity(d);
    for zi in &z {
        let mut r = zi.clone();
        for _ in 0..2 {
            let (pv, dv) = eval_with_derivative(&monic, &r);
            if pv.is_zero() {
                break;
            }
            r -= &(&pv / &dv);
        }
        let (pv, dv) = eval_with_derivative(&monic, &r);
        let newton_radius = Float::with_val(64, pv.abs() / dv.abs());
        out.push(CertifiedRoot {
            residual: Float::with_val(64, pv.abs()),
            newton_radius,
            root: r.with_prec(prec),
            wide: r,
        });
    }

    let cert = -((prec / 2) as f64);
    if let Some(bad) = out.iter().find(|c| log2_abs(&c.newton_radius) > cert) {
        return Err(Error::Convergence(format!("Newton certificate failed at {}", bad.root)));
    }
    for i in 0..d {
        for j in i + 1..d {
            let sep = out[i].root.dist(&out[j].root);
            let need = Float::with_val(64, &out[i].newton_radius + &out[j].newton_radius);
            if sep <= need {
                return Err(Error::Convergence("roots are not separated by their certificates".into()));
            }
        }
    }
    Ok(out)
}

/// All `deg p` roots; empty for constants.
pub fn find_roots(p: &RationalPolynomial, prec: u32) -> Result<Vec<HPComplex>> {
    Ok(find_roots_certified(p, prec)?.into_iter().map(|c| c.root).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let r = find_roots(&RationalPolynomial::from_i64s(&[-1, 2]), 128).unwrap();
        assert_eq!(r.len(), 1);
        assert!(log2_abs(&r[0].dist(&HPComplex::from_ratio(1, 2, 128))) < -120.0);

        let p = RationalPolynomial::new(vec![Rational::from((9, 2)), Rational::from(-4), Rational::from(4)]);
        let r = find_roots(&p, 128).unwrap();
        let im = Float::with_val(128, 14u32).sqrt() / 4u32;
        for z in &r {
            assert!(log2_abs(&Float::with_val(128, z.re() - 0.5f64)) < -120.0);
            assert!(log2_abs(&Float::with_val(128, z.im().clone().abs() - &im)) < -120.0);
        }
        assert!(find_roots(&RationalPolynomial::from_i64s(&[3]), 128).unwrap().is_empty());
    }

    #[test]
    fn cubic_with_real_roots() {
        // (s - 1)(s - 2)(s + 3)
        let p = RationalPolynomial::from_i64s(&[6, -7, 0, 1]);
        let mut r: Vec<f64> = find_roots(&p, 128).unwrap().iter().map(|z| z.re().to_f64()).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((r[0] + 3.0).abs() < 1e-30 && (r[1] - 1.0).abs() < 1e-30 && (r[2] - 2.0).abs() < 1e-30);
    }
}
