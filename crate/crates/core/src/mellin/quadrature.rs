//! Direct quadrature of the defining integrals.

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::mpcore::HPComplex;
use crate::quad::{exp_sinh, tanh_sinh, Quad, QuadOptions};

/// Ferrers `P_n^m(x)` (Condon-Shortley phase) given `x` and `sqrt(1 - x^2)`.
pub fn legendre_pnm(n: u32, m: u32, x: &Float, sin: &Float) -> Float {
    let p = x.prec();
    if m > n {
        return Float::with_val(p, 0u32);
    }
    let mut pmm = Float::with_val(p, 1u32);
    for k in 0..m {
        pmm *= -(2 * k as i64 + 1);
        pmm *= sin;
    }
    if n == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = Float::with_val(p, x * &prev) * (2 * m + 1);
    for nu in (m + 1)..n {
        let a = Float::with_val(p, x * &cur) * (2 * nu + 1);
        let b = Float::with_val(p, &prev * (nu + m));
        let next = (a - b) / (nu - m + 1);
        prev = cur;
        cur = next;
    }
    cur
}

fn real_pow(base: &Float, e: &HPComplex) -> HPComplex {
    let l = HPComplex::from_real(Float::with_val(base.prec(), base.ln_ref()));
    (e * &l).exp()
}

fn options(prec: u32) -> QuadOptions {
    QuadOptions::new(prec).tol_bits(prec / 2 + 24).max_level(14)
}

fn finish(q: Quad) -> Result<Quad> {
    if !q.converged {
        return Err(Error::Convergence(format!(
            "quadrature stalled at level {} with difference {:.3e}",
            q.level,
            q.error.to_f64()
        )));
    }
    Ok(q)
}

/// `int_0^{pi/2} cos^{s-1}(theta) P_n^m(cos theta) dtheta`, i.e. the defining
/// integral after `x = cos theta`.
pub fn mellin_quadrature(n: u32, m: u32, s: &HPComplex, prec: u32) -> Result<Quad> {
    mellin_quadrature_with(n, m, s, options(prec))
}

/// [`mellin_quadrature`] with explicit level and tolerance settings.
pub fn mellin_quadrature_with(n: u32, m: u32, s: &HPComplex, opts: QuadOptions) -> Result<Quad> {
    if *s.re() <= 0 {
        return Err(Error::Domain(format!("quadrature needs Re s > 0, got {s}")));
    }
    let w = opts.prec + 32;
    let sm1 = s.with_prec(w).add_i64(-1);
    let half_pi = Float::with_val(w, Constant::Pi) / 2u32;
    let f = |y: &Float, c: &Float| {
        // theta = pi y / 2; cos theta = sin(pi c / 2) keeps accuracy near theta = pi/2
        let cos_t = Float::with_val(w, &half_pi * c).sin();
        let sin_t = Float::with_val(w, &half_pi * y).sin();
        let leg = legendre_pnm(n, m, &cos_t, &sin_t);
        real_pow(&cos_t, &sm1).scale(&leg).scale(&half_pi)
    };
    finish(tanh_sinh(f, opts))
}

/// `int_0^inf tanh^{s-1}(u) P_n^m(tanh u) / cosh(u) du`.
pub fn tanh_quadrature(n: u32, m: u32, s: &HPComplex, prec: u32) -> Result<Quad> {
    if *s.re() <= 0 {
        return Err(Error::Domain(format!("quadrature needs Re s > 0, got {s}")));
    }
    let w = prec + 32;
    let sm1 = s.with_prec(w).add_i64(-1);
    let f = |u: &Float| {
        let th = Float::with_val(w, u.tanh_ref());
        let sech = Float::with_val(w, u.cosh_ref()).recip();
        let leg = legendre_pnm(n, m, &th, &sech);
        real_pow(&th, &sm1).scale(&Float::with_val(w, &leg * &sech))
    };
    finish(exp_sinh(f, options(prec)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::log2_abs;

    #[test]
    fn spec_examples() {
        let q = mellin_quadrature(0, 0, &HPComplex::from_i64(2, 128), 128).unwrap();
        assert!(log2_abs(&(q.value.add_i64(-1)).abs()) < -64.0);
        let q = mellin_quadrature(4, 0, &HPComplex::one(128), 128).unwrap();
        let want = HPComplex::pi(128).mul_i64(9).div_i64(128);
        assert!(log2_abs(&(&q.value - &want).abs()) < -64.0);
        let s = HPComplex::from_f64(1.0, 1.0, 128);
        let q = mellin_quadrature(0, 0, &s, 128).unwrap();
        let want = crate::mellin::mellin_closed(0, 0, &s).unwrap();
        assert!(log2_abs(&(&q.value - &want).abs()) < -64.0);
    }

    #[test]
    fn tanh_form() {
        let s = HPComplex::from_ratio(3, 4, 128);
        let q = tanh_quadrature(5, 2, &s, 128).unwrap();
        let want = crate::mellin::mellin_closed(5, 2, &s).unwrap();
        assert!(log2_abs(&(&q.value - &want).abs()) < -64.0);
    }

    #[test]
    fn associated_legendre_values() {
        // P_3^2(x) = 15 x (1 - x^2)
        let x = Float::with_val(64, 0.3);
        let sin = Float::with_val(64, 1.0 - 0.09f64).sqrt();
        let v = legendre_pnm(3, 2, &x, &sin).to_f64();
        assert!((v - 15.0 * 0.3 * 0.91).abs() < 1e-15);
        // P_1^1 = -sqrt(1 - x^2)
        assert!((legendre_pnm(1, 1, &x, &sin).to_f64() + sin.to_f64()).abs() < 1e-15);
    }
}
