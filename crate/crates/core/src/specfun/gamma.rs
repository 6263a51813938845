use rug::float::Constant;
use rug::Float;

use super::bernoulli::even_bernoulli;
use crate::error::{Error, Result};
use crate::mpcore::{log2_abs, HPComplex};

/// Radius beyond which the Stirling series is used directly.
fn stirling_radius(prec: u32) -> f64 {
    0.22 * prec as f64 + 8.0
}

/// `ln Gamma(w)` by the Stirling series; requires `Re w >= radius`.
fn ln_gamma_stirling(w: &HPComplex) -> HPComplex {
    let p = w.prec();
    let half = Float::with_val(p, 0.5);
    let ln_w = w.ln();
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    let half_ln_2pi = Float::with_val(p, two_pi.ln()) / 2u32;
    let mut acc = (&w.add_real(&-half) * &ln_w) - w;
    acc = acc.add_real(&half_ln_2pi);

    let inv = w.recip();
    let inv2 = inv.square();
    let mut pow = inv.clone();
    let tol = log2_abs(&acc.abs()) - p as f64 - 4.0;
    let mut k = 1usize;
    let mut bern = even_bernoulli(64);
    loop {
        if k >= bern.len() {
            bern = even_bernoulli(bern.len() * 2);
        }
        let c = Float::with_val(p, &bern[k]) / ((2 * k) as u64 * (2 * k - 1) as u64);
        let term = pow.scale(&c);
        let mag = log2_abs(&term.abs());
        acc += &term;
        if mag < tol || k > 4 * p as usize {
            break;
        }
        pow = &pow * &inv2;
        k += 1;
    }
    acc
}

/// Complex gamma function.
///
/// Stirling series after an upward shift, with reflection for `Re z < 1/2`.
pub fn gamma(z: &HPComplex) -> Result<HPComplex> {
    if let Some(k) = z.as_nonpositive_integer() {
        return Err(Error::Pole(format!("gamma at -{k}")));
    }
    let p = z.prec();
    Ok(gamma_work(z, p))
}

fn gamma_work(z: &HPComplex, p: u32) -> HPComplex {
    let zr = z.re().to_f64();
    if zr < 0.5 {
        // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
        let w = p + 16 + (zr.abs().max(1.0).log2() as u32) * 2;
        let zz = z.with_prec(w);
        let one_minus = (-&zz).add_i64(1);
        let g = gamma_work(&one_minus, w);
        let s = zz.sin_pi();
        return (HPComplex::pi(w) / (s * g)).with_prec(p);
    }
    let r = stirling_radius(p);
    let shift = if zr >= r { 0 } else { (r - zr).ceil() as i64 };
    let mag = (z.abs_f64() + shift as f64 + 2.0).log2();
    let w = p + 24 + (mag.max(1.0) * 2.0) as u32;
    let zz = z.with_prec(w);
    let shifted = zz.add_i64(shift);
    let lg = ln_gamma_stirling(&shifted);
    let mut g = lg.exp();
    if shift > 0 {
        let mut prod = zz.clone();
        for k in 1..shift {
            prod = &prod * &zz.add_i64(k);
        }
        g = g / prod;
    }
    g.with_prec(p)
}

/// Reciprocal gamma; exact zero at nonpositive integers.
pub fn rgamma(z: &HPComplex) -> HPComplex {
    if z.as_nonpositive_integer().is_some() {
        return HPComplex::zero(z.prec());
    }
    gamma_work(z, z.prec() + 8).recip().with_prec(z.prec())
}

/// `ln Gamma(z)` (principal branch of the Stirling continuation) for `Re z > 0`.
pub fn ln_gamma(z: &HPComplex) -> Result<HPComplex> {
    if z.re().to_f64() <= 0.0 {
        return Err(Error::Domain("ln_gamma needs Re z > 0".into()));
    }
    let p = z.prec();
    let r = stirling_radius(p);
    let zr = z.re().to_f64();
    let shift = if zr >= r { 0 } else { (r - zr).ceil() as i64 };
    let w = p + 24;
    let zz = z.with_prec(w);
    let mut acc = ln_gamma_stirling(&zz.add_i64(shift));
    for k in 0..shift {
        acc -= &zz.add_i64(k).ln();
    }
    Ok(acc.with_prec(p))
}

/// Digamma `psi(z)`.
pub fn digamma(z: &HPComplex) -> Result<HPComplex> {
    if let Some(k) = z.as_nonpositive_integer() {
        return Err(Error::Pole(format!("digamma at -{k}")));
    }
    let p = z.prec();
    let zr = z.re().to_f64();
    if zr < 0.5 {
        // psi(z) = psi(1 - z) - pi cot(pi z)
        let w = p + 16;
        let zz = z.with_prec(w);
        let a = digamma(&(-&zz).add_i64(1))?;
        let piz = zz.scale(&Float::with_val(w, Constant::Pi));
        let cot = piz.cos() / piz.sin();
        return Ok((a - HPComplex::pi(w) * cot).with_prec(p));
    }
    let r = stirling_radius(p);
    let shift = if zr >= r { 0 } else { (r - zr).ceil() as i64 };
    let w = p + 24;
    let zz = z.with_prec(w);
    let x = zz.add_i64(shift);
    let inv = x.recip();
    let inv2 = inv.square();
    let mut acc = x.ln() - inv.div_i64(2);
    let mut pow = inv2.clone();
    let tol = -(w as f64) - 4.0;
    let mut bern = even_bernoulli(64);
    let mut k = 1usize;
    loop {
        if k >= bern.len() {
            bern = even_bernoulli(bern.len() * 2);
        }
        let c = Float::with_val(w, &bern[k]) / (2 * k) as u64;
        let term = pow.scale(&c);
        let mag = log2_abs(&term.abs());
        acc -= &term;
        if mag < tol || k > 4 * w as usize {
            break;
        }
        pow = &pow * &inv2;
        k += 1;
    }
    for k in 0..shift {
        acc -= &zz.add_i64(k).recip();
    }
    Ok(acc.with_prec(p))
}

/// Euler's constant.
pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// Pochhammer `(a)_k` by direct product.
pub fn pochhammer(a: &HPComplex, k: u64) -> HPComplex {
    let mut acc = HPComplex::one(a.prec());
    for j in 0..k {
        acc = &acc * &a.add_i64(j as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> HPComplex {
        HPComplex::from_f64(re, im, 256)
    }

    fn rel(a: &HPComplex, b: &HPComplex) -> f64 {
        log2_abs(&(a - b).abs()) - log2_abs(&b.abs())
    }

    #[test]
    fn classical_values() {
        let g = gamma(&c(0.5, 0.0)).unwrap();
        let sp = Float::with_val(256, Constant::Pi).sqrt();
        assert!(rel(&g, &HPComplex::from_real(sp)) < -245.0);
        let g5 = gamma(&c(5.0, 0.0)).unwrap();
        assert!(rel(&g5, &c(24.0, 0.0)) < -245.0);
        assert!(rgamma(&c(-3.0, 0.0)).is_zero());
        assert!(matches!(gamma(&c(-2.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn real_axis_matches_mpfr() {
        for x in [0.1, 0.7, 1.5, 3.25, 17.0, 40.5, -0.5, -2.25, -7.75] {
            let g = gamma(&c(x, 0.0)).unwrap();
            let want = Float::with_val(256, x).gamma();
            assert!(rel(&g, &HPComplex::from_real(want)) < -244.0, "x = {x}");
        }
    }

    #[test]
    fn reflection_and_recurrence_complex() {
        for (x, y) in [(0.3, 2.0), (-1.7, 0.4), (4.0, -9.0), (0.5, 25.0)] {
            let z = c(x, y);
            let a = gamma(&z.add_i64(1)).unwrap();
            let b = &z * &gamma(&z).unwrap();
            assert!(rel(&a, &b) < -244.0);
            let refl = gamma(&z).unwrap() * gamma(&(-&z).add_i64(1)).unwrap() * z.sin_pi();
            assert!(rel(&refl, &HPComplex::pi(256)) < -240.0);
        }
    }

    #[test]
    fn digamma_values() {
        let g = digamma(&c(1.0, 0.0)).unwrap();
        let want = -euler_gamma(256);
        assert!(rel(&g, &HPComplex::from_real(want)) < -245.0);
        let a = digamma(&c(0.25, 1.5)).unwrap();
        let b = digamma(&c(1.25, 1.5)).unwrap() - c(0.25, 1.5).recip();
        assert!(rel(&a, &b) < -240.0);
        let d = digamma(&c(-2.5, 0.0)).unwrap();
        let e = digamma(&c(3.5, 0.0)).unwrap()
            - HPComplex::pi(256) * (c(-2.5, 0.0).scale(&Float::with_val(256, Constant::Pi)).cos()
                / c(-2.5, 0.0).scale(&Float::with_val(256, Constant::Pi)).sin());
        assert!(rel(&d, &e) < -236.0);
    }

    #[test]
    fn ln_gamma_consistent() {
        let z = c(2.5, 7.0);
        let a = ln_gamma(&z).unwrap().exp();
        let b = gamma(&z).unwrap();
        assert!(rel(&a, &b) < -236.0);
    }
}
