use std::fmt;

use rug::{Float, Rational};

use super::complex::HPComplex;

pub type BigRational = Rational;

/// Dense univariate polynomial in `s` with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `s^i`. The zero polynomial is the empty
/// vector; otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rational::from(v)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `a*s + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| *c == 0) {
            self.coeffs.pop();
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs.last().map_or(true, |c| *c != 0)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| Rational::from(c * k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Self::new(out)
    }

    /// Exact `p(a*s + b)`.
    pub fn affine_substitute(&self, a: &Rational, b: &Rational) -> Self {
        let lin = Self::linear(a.clone(), b.clone());
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// `p(s + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        self.affine_substitute(&Rational::from(1), c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * i as u64))
                .collect(),
        )
    }

    pub fn eval_rational(&self, s: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= s;
            acc += c;
        }
        acc
    }

    /// Horner evaluation at the precision of `s`.
    pub fn eval_complex(&self, s: &HPComplex) -> HPComplex {
        let p = s.prec();
        let mut acc = HPComplex::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = (&acc * s).add_rational(c);
        }
        acc
    }

    pub fn eval_real(&self, s: &Float) -> Float {
        let p = s.prec();
        let mut acc = Float::new(p);
        for c in self.coeffs.iter().rev() {
            acc *= s;
            acc += c;
        }
        acc
    }

    /// Coefficients rendered as `"num/den"` (or `"num"` for integers).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }

    /// Exact Lagrange interpolation through `(x_i, y_i)`.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::constant(Rational::from(1));
            let mut denom = Rational::from(1);
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&Self::linear(Rational::from(1), Rational::from(-xj)));
                denom *= Rational::from(xi - xj);
            }
            acc = acc.add(&basis.scale(&Rational::from(yi / &denom)));
        }
        acc
    }
}

pub fn rational_string(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let d: rug::Integer = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational::from((n.trim().parse::<rug::Integer>().ok()?, d)))
        }
        None => Some(Rational::from(t.parse::<rug::Integer>().ok()?)),
    }
}

/// `p(1 - s)`.
pub fn poly_reflect(p: &RationalPolynomial) -> RationalPolynomial {
    p.affine_substitute(&Rational::from(-1), &Rational::from(1))
}

pub fn poly_affine_substitute(p: &RationalPolynomial, a: &Rational, b: &Rational) -> RationalPolynomial {
    p.affine_substitute(a, b)
}

pub fn poly_eval_complex(p: &RationalPolynomial, s: &HPComplex) -> HPComplex {
    p.eval_complex(s)
}

pub fn poly_structural_equal(p: &RationalPolynomial, r: &RationalPolynomial) -> bool {
    let mut a = p.clone();
    let mut b = r.clone();
    a.normalize();
    b.normalize();
    a == b
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag == 1 && i > 0;
            if !unit {
                f.write_str(&rational_string(&mag))?;
            }
            match i {
                0 => {}
                1 => f.write_str("s")?,
                _ => write!(f, "s^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn p4() -> RationalPolynomial {
        RationalPolynomial::new(vec![q(9, 2), q(-4, 1), q(4, 1)])
    }

    #[test]
    fn affine_examples() {
        let p = RationalPolynomial::from_i64s(&[-1, 2]);
        assert_eq!(
            p.affine_substitute(&q(-1, 1), &q(1, 1)),
            RationalPolynomial::from_i64s(&[1, -2])
        );
        assert_eq!(p.affine_substitute(&q(1, 1), &q(1, 2)), RationalPolynomial::from_i64s(&[0, 2]));
        assert_eq!(poly_reflect(&p4()), p4());
        assert_eq!(
            p.affine_substitute(&q(0, 1), &q(3, 1)),
            RationalPolynomial::from_i64s(&[5])
        );
    }

    #[test]
    fn structural_equality() {
        let p = RationalPolynomial::from_i64s(&[-1, 2]);
        assert!(poly_structural_equal(&p, &p));
        assert!(!poly_structural_equal(&p, &RationalPolynomial::from_i64s(&[1, -2])));
        assert!(poly_structural_equal(&p4(), &poly_reflect(&p4())));
    }

    #[test]
    fn eval_examples() {
        let p = RationalPolynomial::from_i64s(&[-1, 2]);
        assert!(p.eval_complex(&HPComplex::from_ratio(1, 2, 128)).is_zero());
        assert!(RationalPolynomial::zero()
            .eval_complex(&HPComplex::from_f64(1.5, 2.0, 128))
            .is_zero());
        let prec = 256;
        let r14 = Float::with_val(prec, 14u32).sqrt() / 4u32;
        let root = HPComplex::new(Float::with_val(prec, 0.5), r14);
        let v = p4().eval_complex(&root);
        let bound = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
        assert!(v.abs() <= bound);
    }

    #[test]
    fn display_and_strings() {
        assert_eq!(p4().to_string(), "4s^2 - 4s + 9/2");
        assert_eq!(p4().coeff_strings(), vec!["9/2", "-4", "4"]);
        assert_eq!(parse_rational("-3/6"), Some(q(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn interpolation_recovers() {
        let pts: Vec<_> = (0..3).map(|k| (q(k, 1), p4().eval_rational(&q(k, 1)))).collect();
        assert_eq!(RationalPolynomial::interpolate(&pts), p4());
    }
}
