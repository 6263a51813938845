//! Functional and difference equations of the polynomial factors.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::mellin::{mellin_closed, poly_factor};
use crate::mpcore::{log2_abs, poly_reflect, poly_structural_equal, HPComplex, RationalPolynomial};

/// Sign used in `p(1 - s) = sign * p(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `(-1)^floor(n/2)` for every even `m`.
    #[default]
    Stated,
    /// `(-1)^deg p = (-1)^(floor(n/2) - m/2)`.
    Degree,
}

impl SignConvention {
    pub fn sign(self, n: u32, m: u32) -> i64 {
        let e = match self {
            SignConvention::Stated => n / 2,
            SignConvention::Degree => n / 2 - m / 2,
        };
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Exact check of `p_n^m(1 - s) = (-1)^floor(n/2) p_n^m(s)`.
pub fn functional_equation_check(n: u32, m: u32) -> Result<bool> {
    functional_equation_check_with(n, m, SignConvention::Stated)
}

pub fn functional_equation_check_with(n: u32, m: u32, sign: SignConvention) -> Result<bool> {
    let p = poly_factor(n, m)?.poly;
    let reflected = poly_reflect(&p).scale(&Rational::from(sign.sign(n, m)));
    Ok(poly_structural_equal(&reflected, &p))
}

/// Bracket coefficients `(A, B, C)` of `A M(s) + B M(s+2) + C M(s-2) = 0`.
fn brackets(n: u32, m: u32, s: &HPComplex) -> (HPComplex, HPComplex, HPComplex) {
    let (n, m) = (n as i64, m as i64);
    // A = n^2 - m^2 + n - 1 + 4s - 2s(s+1)
    let a = (s.mul_i64(4) - (s * &s.add_i64(1)).mul_i64(2)).add_i64(n * n - m * m + n - 1);
    // B = (s+2)(s+3) - (n^2 + n - 2) - 4(s+2)
    let b = (s.add_i64(2) * s.add_i64(3) - s.add_i64(2).mul_i64(4)).add_i64(-(n * n + n - 2));
    let c = s.add_i64(-1) * s.add_i64(-2);
    (a, b, c)
}

/// Residual of the three-term difference equation and the largest term.
#[derive(Clone, Debug)]
pub struct DiffEqResidual {
    pub residual: HPComplex,
    pub scale: Float,
}

impl DiffEqResidual {
    /// `log2(|residual| / scale)`.
    pub fn relative_log2(&self) -> f64 {
        log2_abs(&self.residual.abs()) - log2_abs(&self.scale)
    }
}

/// `A M_n^m(s) + B M_n^m(s+2) + C M_n^m(s-2)` evaluated numerically.
pub fn difference_equation_residual(n: u32, m: u32, s: &HPComplex, prec: u32) -> Result<DiffEqResidual> {
    if *s.re() <= 2 {
        return Err(Error::Domain(format!("difference equation needs Re s > 2, got {s}")));
    }
    let w = prec + 16;
    let sw = s.with_prec(w);
    let (a, b, c) = brackets(n, m, &sw);
    let t = [
        a * mellin_closed(n, m, &sw)?,
        b * mellin_closed(n, m, &sw.add_i64(2))?,
        c * mellin_closed(n, m, &sw.add_i64(-2))?,
    ];
    let scale = t.iter().map(|x| Float::with_val(64, x.abs())).fold(Float::with_val(64, 0u32), |acc, x| acc.max(&x));
    let residual = (&(&t[0] + &t[1]) + &t[2]).with_prec(prec);
    Ok(DiffEqResidual { residual, scale })
}

fn lin(a: (i64, i64), b: (i64, i64)) -> RationalPolynomial {
    RationalPolynomial::linear(Rational::from(a), Rational::from(b))
}

/// The difference equation moved onto `p_n^m` through the gamma prefactor:
/// `A ((s+e)/2 - 1)((s+n+1)/2) p(s) + B ((s+e)/2 - 1)((s+e)/2) p(s+2) + C ((s+n+1)/2)((s+n-1)/2) p(s-2)`.
/// Returns the (exactly zero) polynomial residual.
pub fn difference_equation_symbolic(n: u32, m: u32) -> Result<RationalPolynomial> {
    let p = poly_factor(n, m)?.poly;
    let (ni, mi) = (n as i64, m as i64);
    let e = ni % 2;
    let a = RationalPolynomial::from_i64s(&[ni * ni - mi * mi + ni - 1, 2, -2]);
    let b = RationalPolynomial::from_i64s(&[6 - 8 - (ni * ni + ni - 2), 1, 1]);
    let c = RationalPolynomial::from_i64s(&[2, -3, 1]);
    let g_em1 = lin((1, 2), (e - 2, 2));
    let g_e = lin((1, 2), (e, 2));
    let g_n1 = lin((1, 2), (ni + 1, 2));
    let g_nm1 = lin((1, 2), (ni - 1, 2));
    let t1 = a.mul(&g_em1).mul(&g_n1).mul(&p);
    let t2 = b.mul(&g_em1).mul(&g_e).mul(&p.shift(&Rational::from(2)));
    let t3 = c.mul(&g_n1).mul(&g_nm1).mul(&p.shift(&-Rational::from(2)));
    Ok(t1.add(&t2).add(&t3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert!(functional_equation_check(0, 0).unwrap());
        assert!(functional_equation_check(2, 0).unwrap());
        assert!(functional_equation_check(5, 0).unwrap());
        // p_4^2 = 90 s - 45 is odd about 1/2 while floor(4/2) is even
        assert!(!functional_equation_check(4, 2).unwrap());
        assert!(functional_equation_check_with(4, 2, SignConvention::Degree).unwrap());
        assert!(functional_equation_check(3, 1).is_err());
    }

    #[test]
    fn numeric_residuals() {
        for (n, s) in [(0u32, HPComplex::from_ratio(5, 2, 192)), (3, HPComplex::from_ratio(5, 2, 192))] {
            let r = difference_equation_residual(n, 0, &s, 192).unwrap();
            assert!(r.relative_log2() < -170.0, "n={n}");
        }
        let s = HPComplex::from_f64(3.0, 1.0, 192);
        for n in 0..=12 {
            for m in [0, 1, 2] {
                if m > n {
                    continue;
                }
                let r = difference_equation_residual(n, m, &s, 192).unwrap();
                assert!(r.relative_log2() < -170.0, "n={n} m={m}");
            }
        }
        assert!(difference_equation_residual(2, 0, &HPComplex::from_i64(2, 64), 64).is_err());
    }

    #[test]
    fn symbolic_residuals() {
        for n in 0..=20 {
            assert!(difference_equation_symbolic(n, 0).unwrap().is_zero(), "n={n}");
        }
        for n in 2..=12 {
            assert!(difference_equation_symbolic(n, 2).unwrap().is_zero(), "n={n}");
        }
    }
}
