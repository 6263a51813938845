//! `I_j(s) = int_0^inf x^s / (e^x + 1)^j dx` and `J_j(s) = int_0^inf x^s / (e^x - 1)^j dx`.

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{log2_abs, HPComplex, RationalPolynomial};
use crate::specfun::tail::{sum_ratio_series, RatioSeries, Series};
use crate::specfun::{gamma, riemann_zeta};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistics {
    /// `I_j`, alternating series.
    Fermi,
    /// `J_j`, positive series.
    Bose,
}

fn check(j: u32, kind: Statistics, s: &HPComplex) -> Result<()> {
    if j == 0 {
        return Err(Error::Domain("needs j >= 1".into()));
    }
    let bound = match kind {
        Statistics::Fermi => -1,
        Statistics::Bose => j as i64 - 1,
    };
    if *s.re() <= bound {
        return Err(Error::Domain(format!("needs Re s > {bound}, got {s}")));
    }
    Ok(())
}

/// `Gamma(s+1) sum_n (+-1)^n (j)_n / n! (n+j)^-(s+1)`, with the asymptotic tail.
pub fn fermi_bose_series(j: u32, kind: Statistics, s: &HPComplex) -> Result<HPComplex> {
    check(j, kind, s)?;
    let p = s.prec();
    let s1 = s.add_i64(1);
    let jj = j as i64;
    let ratio = |n: u64, w: u32| {
        let n = n as i64;
        let a = HPComplex::from_ratio(n + jj, n + 1, w);
        let b = HPComplex::from_ratio(n + jj, n + jj + 1, w).pow(&s1.with_prec(w));
        a * b
    };
    let r_series = |len: usize, w: u32| {
        let jw = HPComplex::from_i64(jj, w);
        let j1 = HPComplex::from_i64(jj + 1, w);
        let lead = Series::one(len, w).mul_linear(&jw).div_linear(&HPComplex::one(w));
        let la = Series::log1p_linear(&jw, len);
        let lb = Series::log1p_linear(&j1, len);
        let diff = Series(la.0.iter().zip(&lb.0).map(|(x, y)| x - y).collect());
        lead.mul(&diff.scale(&s1.with_prec(w)).exp())
    };
    let z = match kind {
        Statistics::Fermi => HPComplex::from_i64(-1, p),
        Statistics::Bose => HPComplex::one(p),
    };
    let t0 = HPComplex::from_i64(jj, p).pow(&-&s1);
    let rs = RatioSeries { z, t0, ratio: &ratio, r_series: &r_series, scale: s.abs_f64() + j as f64 };
    let sum = sum_ratio_series(&rs, p + 16)?;
    Ok((gamma(&s1.with_prec(p + 16))? * sum).with_prec(p))
}

/// `(j)_n / n! = P(n + j)` with `P(m) = (m-1)(m-2)...(m-j+1) / (j-1)!`.
pub fn reduction_polynomial(j: u32) -> RationalPolynomial {
    let mut p = RationalPolynomial::from_i64s(&[1]);
    for i in 1..j as i64 {
        p = p.mul(&RationalPolynomial::from_i64s(&[-i, 1]));
    }
    p.scale(&Rational::from((1, Integer::from(Integer::factorial(j.saturating_sub(1))))))
}

/// `eta(x) = (1 - 2^(1-x)) zeta(x)`, with `eta(1) = ln 2`.
fn eta(x: &HPComplex) -> Result<HPComplex> {
    let w = x.prec();
    if x.as_integer() == Some(1) {
        return Ok(HPComplex::from_real(Float::with_val(w, Constant::Log2)));
    }
    let two = HPComplex::from_i64(2, w);
    let f = (-two.pow(&(-x).add_i64(1))).add_i64(1);
    Ok(f * riemann_zeta(x)?)
}

/// Zeta reduction for any `j`: with `P(m) = sum_i c_i m^i`,
/// `J_j = Gamma(s+1) sum_i c_i zeta(s+1-i)` and `I_j = (-1)^(j+1) Gamma(s+1) sum_i c_i eta(s+1-i)`.
pub fn fermi_bose_zeta(j: u32, kind: Statistics, s: &HPComplex) -> Result<HPComplex> {
    check(j, kind, s)?;
    let p = s.prec();
    let w = p + 16;
    let s1 = s.with_prec(w).add_i64(1);
    let poly = reduction_polynomial(j);
    let mut acc = HPComplex::zero(w);
    for (i, c) in poly.coeffs().iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let x = s1.add_i64(-(i as i64));
        let v = match kind {
            Statistics::Bose => riemann_zeta(&x)?,
            Statistics::Fermi => eta(&x)?,
        };
        acc += &v.mul_rational(c);
    }
    if kind == Statistics::Fermi && j % 2 == 0 {
        acc = -acc;
    }
    Ok((gamma(&s1)? * acc).with_prec(p))
}

/// Closed forms of `I_2` and `I_3`. At `s = 2` the removable
/// `(2^s - 4) zeta(s - 1)` of `I_3` takes its limit `4 ln 2`.
pub fn fermi_closed(j: u32, s: &HPComplex) -> Result<HPComplex> {
    check(j, Statistics::Fermi, s)?;
    let p = s.prec();
    let w = p + 16;
    let sw = s.with_prec(w);
    let two_s = HPComplex::from_i64(2, w).pow(&sw);
    let g = gamma(&sw.add_i64(1))?;
    let v = match j {
        // (1 - 2^-s) zeta(s+1) + (2^(1-s) - 1) zeta(s)
        2 => {
            let inv = two_s.recip();
            (-&inv).add_i64(1) * riemann_zeta(&sw.add_i64(1))? + (inv.mul_i64(2).add_i64(-1)) * riemann_zeta(&sw)?
        }
        // 2^(-s-1) [(2^s - 4) zeta(s-1) + 3(2 - 2^s) zeta(s) + 2(2^s - 1) zeta(s+1)]
        3 => {
            let first = if sw.as_integer() == Some(2) {
                HPComplex::from_real(Float::with_val(w, Constant::Log2) * 4u32)
            } else {
                two_s.add_i64(-4) * riemann_zeta(&sw.add_i64(-1))?
            };
            let mid = (-&two_s).add_i64(2).mul_i64(3) * riemann_zeta(&sw)?;
            let last = two_s.add_i64(-1).mul_i64(2) * riemann_zeta(&sw.add_i64(1))?;
            (first + mid + last) / two_s.mul_i64(2)
        }
        _ => return Err(Error::Domain(format!("closed form available for j in {{2, 3}}, got {j}"))),
    };
    Ok((g * v).with_prec(p))
}

#[derive(Clone, Debug)]
pub struct TransformValue {
    pub series: HPComplex,
    /// Explicit closed form (`I_2`, `I_3`) or the zeta reduction otherwise.
    pub closed: HPComplex,
    pub difference: Float,
}

pub fn fermi_bose_transform(j: u32, kind: Statistics, s: &HPComplex) -> Result<TransformValue> {
    let series = fermi_bose_series(j, kind, s)?;
    let closed = match (kind, j) {
        (Statistics::Fermi, 2 | 3) => fermi_closed(j, s)?,
        _ => fermi_bose_zeta(j, kind, s)?,
    };
    let difference = Float::with_val(64, (&series - &closed).abs());
    Ok(TransformValue { series, closed, difference })
}

impl TransformValue {
    pub fn relative_log2(&self) -> f64 {
        log2_abs(&self.difference) - log2_abs(&self.closed.abs()).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &HPComplex, b: &HPComplex, bits: f64) -> bool {
        log2_abs(&(a - b).abs()) < -bits
    }

    #[test]
    fn known_examples() {
        let p = 128;
        let s2 = HPComplex::from_i64(2, p);
        let z3 = riemann_zeta(&HPComplex::from_i64(3, p)).unwrap();
        let j1 = fermi_bose_series(1, Statistics::Bose, &s2).unwrap();
        assert!(close(&j1, &z3.mul_i64(2), 115.0));

        let z2 = riemann_zeta(&s2).unwrap();
        let want = &z3.mul_i64(3).div_i64(2) - &z2;
        assert!(close(&fermi_closed(2, &s2).unwrap(), &want, 115.0));
        assert!(close(&fermi_bose_series(2, Statistics::Fermi, &s2).unwrap(), &want, 110.0));
    }

    #[test]
    fn three_routes_agree() {
        let p = 128;
        for s in [HPComplex::from_ratio(3, 2, p), HPComplex::from_i64(2, p), HPComplex::from_ratio(13, 4, p)] {
            for j in [2u32, 3] {
                let t = fermi_bose_transform(j, Statistics::Fermi, &s).unwrap();
                assert!(t.relative_log2() < -100.0, "j={j} s={s}");
                let z = fermi_bose_zeta(j, Statistics::Fermi, &s).unwrap();
                assert!(close(&z, &t.closed, 110.0));
            }
        }
        let s = HPComplex::from_f64(3.5, 1.0, p);
        for j in 1..=3 {
            let t = fermi_bose_transform(j, Statistics::Bose, &s).unwrap();
            assert!(t.relative_log2() < -100.0, "bose j={j}");
        }
        let t = fermi_bose_transform(4, Statistics::Fermi, &HPComplex::from_ratio(1, 3, p)).unwrap();
        assert!(t.relative_log2() < -100.0);
    }

    #[test]
    fn domains() {
        let p = 64;
        assert!(fermi_bose_series(1, Statistics::Fermi, &HPComplex::from_i64(-1, p)).is_err());
        assert!(fermi_bose_series(3, Statistics::Bose, &HPComplex::from_i64(2, p)).is_err());
        assert!(fermi_closed(4, &HPComplex::from_i64(2, p)).is_err());
    }
}
