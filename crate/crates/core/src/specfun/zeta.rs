use rug::ops::Pow;
use rug::{Float, Rational};

use super::bernoulli::even_bernoulli;
use super::gamma::{digamma, euler_gamma};
use crate::error::{Error, Result};
use crate::mpcore::{log2_abs, HPComplex};

#[derive(Clone, Debug, PartialEq)]
pub enum ZetaKind {
    Riemann,
    Hurwitz,
    /// `psi^{(j)}` with `j` the order.
    Polygamma(u32),
}

#[derive(Clone, Debug)]
pub struct ZetaRequest {
    pub kind: ZetaKind,
    /// Exponent `s` (ignored for polygamma).
    pub s: HPComplex,
    /// Hurwitz shift `a`, or the polygamma argument.
    pub shift: HPComplex,
}

impl ZetaRequest {
    pub fn riemann(s: HPComplex) -> Self {
        let p = s.prec();
        Self { kind: ZetaKind::Riemann, s, shift: HPComplex::one(p) }
    }

    pub fn hurwitz(s: HPComplex, a: HPComplex) -> Self {
        Self { kind: ZetaKind::Hurwitz, s, shift: a }
    }

    pub fn polygamma(order: u32, z: HPComplex) -> Self {
        let p = z.prec();
        Self { kind: ZetaKind::Polygamma(order), s: HPComplex::zero(p), shift: z }
    }
}

pub fn zeta_family(req: &ZetaRequest) -> Result<HPComplex> {
    match req.kind {
        ZetaKind::Riemann => riemann_zeta(&req.s),
        ZetaKind::Hurwitz => hurwitz_zeta(&req.s, &req.shift),
        ZetaKind::Polygamma(j) => polygamma(j, &req.shift),
    }
}

pub fn riemann_zeta(s: &HPComplex) -> Result<HPComplex> {
    hurwitz_zeta(s, &HPComplex::one(s.prec()))
}

/// `x^{-s}`, using real arithmetic when both are real and `x > 0`.
fn pow_neg(x: &HPComplex, s: &HPComplex) -> HPComplex {
    let p = x.prec().max(s.prec());
    if x.is_real() && s.is_real() && x.re().is_sign_positive() {
        if let Some(k) = s.as_integer() {
            let v = Float::with_val(p, x.re().pow(-k as i32));
            return HPComplex::from_real(v);
        }
        let e = Float::with_val(p, -s.re());
        let v = Float::with_val(p, x.re().pow(&e));
        return HPComplex::from_real(v);
    }
    x.pow(&-s)
}

/// Hurwitz zeta `zeta(s, a)` for `Re a > 0`, `s != 1`, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: &HPComplex, a: &HPComplex) -> Result<HPComplex> {
    if a.re().to_f64() <= 0.0 {
        return Err(Error::Domain("hurwitz zeta needs Re a > 0".into()));
    }
    if s.as_integer() == Some(1) {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    let p = s.prec().max(a.prec());
    let mut guard = 32u32;
    loop {
        let (val, loss) = hurwitz_em(s, a, p + guard);
        if loss + 16.0 < guard as f64 || guard > 8 * p {
            return Ok(val.with_prec(p));
        }
        guard = (loss as u32) + 48;
    }
}

/// One Euler-Maclaurin evaluation; returns the value and the bits lost to cancellation.
fn hurwitz_em(s: &HPComplex, a: &HPComplex, w: u32) -> (HPComplex, f64) {
    let s = s.with_prec(w);
    let a = a.with_prec(w);
    let sabs = s.abs_f64();
    let n = ((0.3 * w as f64 + sabs - a.re().to_f64()).ceil() as i64).max(8);

    let mut acc = HPComplex::zero(w);
    let mut max_mag = f64::NEG_INFINITY;
    for k in 0..n {
        let t = pow_neg(&a.add_i64(k), &s);
        max_mag = max_mag.max(log2_abs(&t.abs()));
        acc += &t;
    }
    let x = a.add_i64(n);
    let x_ms = pow_neg(&x, &s);
    let tail_int = (&x_ms * &x) / s.add_i64(-1);
    max_mag = max_mag.max(log2_abs(&tail_int.abs()));
    acc += &tail_int;
    acc += &x_ms.div_i64(2);

    // sum_j B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
    let inv = x.recip();
    let inv2 = inv.square();
    let mut poch = s.clone();
    let mut pw = &x_ms * &inv;
    let mut fact = Rational::from(2);
    let tol = -(w as f64) - 8.0;
    let mut bern = even_bernoulli(64);
    let mut j = 1usize;
    let mut prev = f64::INFINITY;
    loop {
        if j >= bern.len() {
            bern = even_bernoulli(bern.len() * 2);
        }
        let c = Float::with_val(w, &bern[j]) / Float::with_val(w, &fact);
        let term = (&poch * &pw).scale(&c);
        let mag = log2_abs(&term.abs());
        if mag > prev + 1.0 {
            break;
        }
        acc += &term;
        prev = mag;
        if mag - log2_abs(&acc.abs()) < tol || j > 4 * w as usize {
            break;
        }
        poch = &poch * &s.add_i64(2 * j as i64 - 1);
        poch = &poch * &s.add_i64(2 * j as i64);
        pw = &pw * &inv2;
        fact *= Rational::from((2 * j + 1) * (2 * j + 2));
        j += 1;
    }
    let loss = (max_mag - log2_abs(&acc.abs())).max(0.0);
    (acc, loss)
}

/// Polygamma `psi^{(j)}(z)`; `j = 0` is the digamma function.
pub fn polygamma(j: u32, z: &HPComplex) -> Result<HPComplex> {
    if j == 0 {
        return digamma(z);
    }
    if let Some(k) = z.as_nonpositive_integer() {
        return Err(Error::Pole(format!("polygamma at -{k}")));
    }
    let p = z.prec();
    let w = p + 16;
    let zz = z.with_prec(w);
    // reflect into Re z > 0 by the recurrence psi^{(j)}(z) = psi^{(j)}(z+1) - (-1)^j j! z^{-j-1}
    let shift = if zz.re().to_f64() > 0.5 { 0 } else { (1.0 - zz.re().to_f64()).ceil() as i64 };
    let mut fact = Float::with_val(w, 1u32);
    for k in 2..=j {
        fact *= k;
    }
    let order = HPComplex::from_i64(j as i64 + 1, w);
    let mut val = hurwitz_zeta(&order, &zz.add_i64(shift))?.scale(&fact);
    if j % 2 == 0 {
        val = -val;
    }
    let sign = if j % 2 == 0 { 1 } else { -1 };
    for k in 0..shift {
        let t = zz.add_i64(k).powi(-(j as i64) - 1).scale(&fact).mul_i64(sign);
        val -= &t;
    }
    Ok(val.with_prec(p))
}

/// `psi^{(l-1)}(1) = (-1)^l (l-1)! zeta(l)` for `l >= 2`, and `-gamma` for `l = 1`.
pub fn polygamma_at_one(l: u32, prec: u32) -> Float {
    if l == 1 {
        return -euler_gamma(prec);
    }
    let z = Float::with_val(prec, l).zeta();
    let mut fact = Float::with_val(prec, 1u32);
    for k in 2..l {
        fact *= k;
    }
    let v = z * fact;
    if l % 2 == 0 {
        v
    } else {
        -v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn c(re: f64, im: f64) -> HPComplex {
        HPComplex::from_f64(re, im, 256)
    }

    fn rel(a: &HPComplex, b: &HPComplex) -> f64 {
        log2_abs(&(a - b).abs()) - log2_abs(&b.abs())
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let z = riemann_zeta(&c(2.0, 0.0)).unwrap();
        let pi = Float::with_val(256, Constant::Pi);
        let want = HPComplex::from_real(Float::with_val(256, &pi * &pi) / 6u32);
        assert!(rel(&z, &want) < -246.0);
        assert!(matches!(riemann_zeta(&c(1.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn real_axis_matches_mpfr() {
        for x in [3.0, 2.5, 0.5, -1.0, -2.5, -7.0, 10.25, 40.0] {
            let z = riemann_zeta(&c(x, 0.0)).unwrap();
            let want = Float::with_val(256, x).zeta();
            if want.is_zero() {
                assert!(log2_abs(&z.abs()) < -240.0);
            } else {
                assert!(rel(&z, &HPComplex::from_real(want)) < -244.0, "s = {x}");
            }
        }
    }

    #[test]
    fn hurwitz_shift_identity() {
        for (s, a) in [((3.0, 0.0), (1.0, 0.0)), ((2.5, 1.0), (0.3, 0.0)), ((-1.5, 0.0), (2.25, 0.5))] {
            let s = c(s.0, s.1);
            let a = c(a.0, a.1);
            let lhs = hurwitz_zeta(&s, &a).unwrap() - hurwitz_zeta(&s, &a.add_i64(1)).unwrap();
            let rhs = a.pow(&-&s);
            assert!(rel(&lhs, &rhs) < -236.0);
        }
    }

    #[test]
    fn polygamma_values() {
        let d = zeta_family(&ZetaRequest::polygamma(0, c(1.0, 0.0))).unwrap();
        assert!(rel(&d, &HPComplex::from_real(-euler_gamma(256))) < -246.0);
        // psi'(1) = zeta(2)
        let t = polygamma(1, &c(1.0, 0.0)).unwrap();
        let want = HPComplex::from_real(polygamma_at_one(2, 256));
        assert!(rel(&t, &want) < -244.0);
        // recurrence psi''(z+1) = psi''(z) + 2/z^3
        let z = c(-0.4, 0.7);
        let a = polygamma(2, &z.add_i64(1)).unwrap();
        let b = polygamma(2, &z).unwrap() + z.powi(-3).mul_i64(2);
        assert!(rel(&a, &b) < -236.0);
    }
}
