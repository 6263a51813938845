//! Generating function `G(t, s) = sum_k M_k(s) t^k` and the special values `M_n(1)`.

use rug::Rational;

use super::closed::mellin_closed;
use crate::error::{Error, Result};
use crate::mpcore::HPComplex;
use crate::specfun::{gamma, hyp_pfq, pochhammer, rgamma, HypergeometricSpec};

/// Partial sums and closed-form lines of the generating function.
#[derive(Clone, Debug)]
pub struct Genfun {
    /// `sum_{k <= N} M_k(s) t^k`
    pub partial: HPComplex,
    /// Both closed-form lines.
    pub closed: HPComplex,
    pub even_partial: HPComplex,
    pub even_line: HPComplex,
    pub odd_partial: HPComplex,
    pub odd_line: HPComplex,
    /// `C` in `|partial - closed| <= C |t|^(N+1)`; `C = M_0(Re s) / (1 - |t|)`.
    pub bound_constant: HPComplex,
    pub tail_bound: HPComplex,
}

fn half(a: i64, b: i64, w: u32) -> HPComplex {
    HPComplex::from_ratio(a, b, w)
}

/// Even and odd lines of the closed form. The odd line carries
/// `Gamma((s+1)/2) / (2 Gamma(s/2 + 1))`.
pub fn genfun_lines(t: &HPComplex, s: &HPComplex, prec: u32) -> Result<(HPComplex, HPComplex)> {
    let w = prec + 24;
    let (t, s) = (t.with_prec(w), s.with_prec(w));
    let t2p1 = t.square().add_i64(1);
    let x = t.square().mul_i64(4) / t2p1.square();
    let outer = HPComplex::pi(w).sqrt() / t2p1.sqrt();
    let s2 = s.div_i64(2);
    let s12 = s.add_i64(1).div_i64(2);

    let even = HypergeometricSpec::new(vec![half(1, 4, w), half(3, 4, w), s2.clone()], vec![half(1, 2, w), s12.clone()], x.clone());
    let even_line = &outer * gamma(&s2)? * rgamma(&s12) * hyp_pfq(&even, w)?;
    let even_line = even_line.div_i64(2);

    let odd = HypergeometricSpec::new(vec![half(3, 4, w), half(5, 4, w), s12.clone()], vec![half(3, 2, w), s2.add_i64(1)], x);
    let odd_line = &outer * (&t / &t2p1) * gamma(&s12)? * rgamma(&s2.add_i64(1)) * hyp_pfq(&odd, w)?;
    let odd_line = odd_line.div_i64(2);
    Ok((even_line.with_prec(prec), odd_line.with_prec(prec)))
}

pub fn genfun(t: &HPComplex, s: &HPComplex, nmax: u32, prec: u32) -> Result<Genfun> {
    if t.abs() >= 1 {
        return Err(Error::Domain(format!("generating function needs |t| < 1, got {t}")));
    }
    if *s.re() <= 0 {
        return Err(Error::Domain(format!("generating function needs Re s > 0, got {s}")));
    }
    let w = prec + 24;
    let sw = s.with_prec(w);
    let tw = t.with_prec(w);
    let mut even_partial = HPComplex::zero(w);
    let mut odd_partial = HPComplex::zero(w);
    let mut tk = HPComplex::one(w);
    for k in 0..=nmax {
        let term = mellin_closed(k, 0, &sw)? * &tk;
        if k % 2 == 0 {
            even_partial += &term;
        } else {
            odd_partial += &term;
        }
        tk = &tk * &tw;
    }
    let (even_line, odd_line) = genfun_lines(t, s, prec)?;
    let m0 = mellin_closed(0, 0, &HPComplex::from_real(sw.re().clone()))?;
    let abs_t = HPComplex::from_real(tw.abs());
    let c = m0 / (-&abs_t).add_i64(1);
    let tail_bound = &c * abs_t.powi(nmax as i64 + 1);
    Ok(Genfun {
        partial: (&even_partial + &odd_partial).with_prec(prec),
        closed: &even_line + &odd_line,
        even_partial: even_partial.with_prec(prec),
        even_line,
        odd_partial: odd_partial.with_prec(prec),
        odd_line,
        bound_constant: c.with_prec(prec),
        tail_bound: tail_bound.with_prec(prec),
    })
}

fn binom_half(alpha_num: i64, r: u32) -> Rational {
    // binom(alpha_num / 2, r)
    let alpha = Rational::from((alpha_num, 2));
    let mut acc = Rational::from(1);
    for i in 0..r {
        acc *= Rational::from(&alpha - i);
        acc /= i + 1;
    }
    acc
}

/// `M_n(s)` read off as the `t^n` coefficient of the closed form.
pub fn genfun_coefficient(n: u32, s: &HPComplex, prec: u32) -> Result<HPComplex> {
    let w = prec + 32 + n;
    let s = s.with_prec(w);
    let k = n / 2;
    let s2 = s.div_i64(2);
    let s12 = s.add_i64(1).div_i64(2);
    let sqrt_pi = HPComplex::pi(w).sqrt();
    let (params, den, pref, alpha0) = if n % 2 == 0 {
        (
            [half(1, 4, w), half(3, 4, w), s2.clone()],
            [half(1, 2, w), s12.clone()],
            sqrt_pi * gamma(&s2)? * rgamma(&s12),
            -1i64,
        )
    } else {
        (
            [half(3, 4, w), half(5, 4, w), s12.clone()],
            [half(3, 2, w), s2.add_i64(1)],
            sqrt_pi * gamma(&s12)? * rgamma(&s2.add_i64(1)),
            -3i64,
        )
    };
    let mut sum = HPComplex::zero(w);
    for j in 0..=k {
        let mut c = HPComplex::one(w);
        for a in &params {
            c = c * pochhammer(a, j as u64);
        }
        for b in &den {
            c = c / pochhammer(b, j as u64);
        }
        let mut scale = binom_half(alpha0 - 4 * j as i64, k - j);
        scale <<= 2 * j;
        for i in 1..=j {
            scale /= i;
        }
        sum += &c.mul_rational(&scale);
    }
    Ok((pref * sum).div_i64(2).with_prec(prec))
}

/// `M_n(1) = (-1)^n pi^2 / (2 Gamma((1-n)/2)^2 Gamma(n/2 + 1)^2)` for even `n`.
pub fn special_value_at_1(n: u32, prec: u32) -> Result<HPComplex> {
    if n % 2 == 1 {
        return Err(Error::Domain(format!("special value formula is exposed for even n only, got {n}")));
    }
    let w = prec + 16;
    let pi = HPComplex::pi(w);
    let a = rgamma(&HPComplex::from_ratio(1 - n as i64, 2, w));
    let b = rgamma(&HPComplex::from_i64(n as i64 / 2 + 1, w));
    Ok((pi.square() * (a * b).square()).div_i64(2).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::log2_abs;

    fn err(a: &HPComplex, b: &HPComplex) -> f64 {
        log2_abs(&(a - b).abs())
    }

    #[test]
    fn spec_example_t_tenth() {
        let g = genfun(&HPComplex::from_ratio(1, 10, 256), &HPComplex::from_i64(2, 256), 60, 256).unwrap();
        assert!(err(&g.partial, &g.closed) < -83.0);
        assert!(err(&g.even_partial, &g.even_line) < -83.0);
        assert!(err(&g.odd_partial, &g.odd_line) < -83.0);
    }

    #[test]
    fn zero_argument() {
        let s = HPComplex::from_f64(1.5, 0.5, 128);
        let g = genfun(&HPComplex::zero(128), &s, 5, 128).unwrap();
        let m0 = mellin_closed(0, 0, &s).unwrap();
        assert!(err(&g.closed, &m0) < -120.0);
        assert!(g.odd_line.is_zero());
    }

    #[test]
    fn printed_odd_line_is_off_by_s() {
        // the odd line written with Gamma((s+1)/2)/Gamma(s/2) equals s times the correct one
        let s = HPComplex::from_ratio(7, 3, 128);
        let t = HPComplex::from_ratio(1, 5, 128);
        let (_, odd) = genfun_lines(&t, &s, 128).unwrap();
        let g = genfun(&t, &s, 80, 128).unwrap();
        assert!(err(&g.odd_partial, &odd) < -100.0);
        let printed = &odd * &s;
        assert!(err(&g.odd_partial, &printed) > -4.0);
    }

    #[test]
    fn coefficients() {
        let s = HPComplex::from_f64(2.0, 3.0, 192);
        for n in 0..=12 {
            let a = genfun_coefficient(n, &s, 192).unwrap();
            let b = mellin_closed(n, 0, &s).unwrap();
            assert!(err(&a, &b) - log2_abs(&b.abs()).max(0.0) < -170.0, "n={n}");
        }
    }

    #[test]
    fn special_values() {
        let pi = HPComplex::pi(128);
        assert!(err(&special_value_at_1(0, 128).unwrap(), &pi.div_i64(2)) < -120.0);
        assert!(err(&special_value_at_1(2, 128).unwrap(), &pi.div_i64(8)) < -120.0);
        assert!(err(&special_value_at_1(4, 128).unwrap(), &pi.mul_i64(9).div_i64(128)) < -120.0);
        for n in (0..=20).step_by(2) {
            let a = special_value_at_1(n, 128).unwrap();
            let b = mellin_closed(n, 0, &HPComplex::one(128)).unwrap();
            assert!(err(&a, &b) < -110.0, "n={n}");
        }
        assert!(special_value_at_1(3, 128).is_err());
    }
}
