use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::Rational;

use super::complex::HPComplex;

/// Exact complex rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::new() }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::real(Rational::from(v))
    }

    pub fn i() -> Self {
        Self::new(Rational::new(), Rational::from(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn norm_sqr(&self) -> Rational {
        Rational::from(self.re.square_ref()) + Rational::from(self.im.square_ref())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Rational::from(-&self.im))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::from_i64(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_hp(&self, prec: u32) -> HPComplex {
        HPComplex::new(
            rug::Float::with_val(prec, &self.re),
            rug::Float::with_val(prec, &self.im),
        )
    }

    /// Nonpositive integer test for Pochhammer termination.
    pub fn as_nonpositive_integer(&self) -> Option<u64> {
        if self.im == 0 && *self.re.denom() == 1 && self.re <= 0 {
            Rational::from(-&self.re).numer().to_u64()
        } else {
            None
        }
    }
}

impl Add<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational::new(Rational::from(&self.re + &o.re), Rational::from(&self.im + &o.im))
    }
}

impl Sub<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, o: &ComplexRational) -> ComplexRational {
        ComplexRational::new(Rational::from(&self.re - &o.re), Rational::from(&self.im - &o.im))
    }
}

impl Mul<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, o: &ComplexRational) -> ComplexRational {
        let re = Rational::from(&self.re * &o.re) - Rational::from(&self.im * &o.im);
        let im = Rational::from(&self.re * &o.im) + Rational::from(&self.im * &o.re);
        ComplexRational::new(re, im)
    }
}

impl Div<&ComplexRational> for &ComplexRational {
    type Output = ComplexRational;
    /// Panics on division by zero, like `Rational`.
    fn div(self, o: &ComplexRational) -> ComplexRational {
        let d = o.norm_sqr();
        let num = self * &o.conj();
        ComplexRational::new(Rational::from(&num.re / &d), Rational::from(&num.im / &d))
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = ComplexRational::new(Rational::from((1, 2)), Rational::from(3));
        let b = ComplexRational::new(Rational::from(-2), Rational::from((1, 3)));
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(ComplexRational::i().pow(2), ComplexRational::from_i64(-1));
        assert_eq!(ComplexRational::from_i64(-3).as_nonpositive_integer(), Some(3));
        assert_eq!(ComplexRational::real(Rational::from((-1, 2))).as_nonpositive_integer(), None);
    }
}
