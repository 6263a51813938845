use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Smallest precision accepted for any value.
pub const MIN_PREC: u32 = 64;

/// Default working precision in bits.
pub const DEFAULT_PREC: u32 = 256;

/// Arbitrary-precision complex number.
///
/// Both parts carry the same precision. Binary operations produce a result
/// at the larger of the two operand precisions.
#[derive(Clone, Debug, PartialEq)]
pub struct HPComplex {
    re: Float,
    im: Float,
}

fn fl(prec: u32) -> Float {
    Float::new(prec.max(MIN_PREC))
}

impl HPComplex {
    pub fn new(re: Float, im: Float) -> Self {
        let p = re.prec().max(im.prec()).max(MIN_PREC);
        Self {
            re: Float::with_val(p, re),
            im: Float::with_val(p, im),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(fl(prec), fl(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn i(prec: u32) -> Self {
        Self::new(fl(prec), Float::with_val(prec.max(MIN_PREC), 1))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::new(Float::with_val(prec.max(MIN_PREC), v), fl(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        let p = prec.max(MIN_PREC);
        Self::new(Float::with_val(p, re), Float::with_val(p, im))
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let p = prec.max(MIN_PREC);
        Self::new(Float::with_val(p, r), Float::new(p))
    }

    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::from_rational(&Rational::from((num, den)), prec)
    }

    pub fn from_real(re: Float) -> Self {
        let p = re.prec();
        Self::new(re, Float::new(p))
    }

    pub fn pi(prec: u32) -> Self {
        Self::from_real(Float::with_val(prec.max(MIN_PREC), Constant::Pi))
    }

    /// Parses `"3"`, `"-1/2"`, `"2.5"`, `"2+3i"`, `"1/2-i"`, `"3i"`.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Domain("empty complex literal".into()));
        }
        let bad = || Error::Domain(format!("cannot parse complex value `{text}`"));
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not an exponent sign or the leading sign
            let bytes = body.as_bytes();
            let mut split = None;
            for idx in (1..bytes.len()).rev() {
                let c = bytes[idx] as char;
                if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
                    split = Some(idx);
                    break;
                }
            }
            let (re_txt, im_txt) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im_txt = match im_txt {
                "" | "+" => "1",
                "-" => "-1",
                other => other,
            };
            let re = parse_real(re_txt, prec).ok_or_else(bad)?;
            let im = parse_real(im_txt, prec).ok_or_else(bad)?;
            Ok(Self::new(re, im))
        } else {
            let re = parse_real(&t, prec).ok_or_else(bad)?;
            Ok(Self::from_real(re))
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let p = prec.max(MIN_PREC);
        Self {
            re: Float::with_val(p, &self.re),
            im: Float::with_val(p, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Exact test for a real integer value.
    pub fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().and_then(|z| z.to_i64())
        } else {
            None
        }
    }

    /// `Some(k)` when the value is exactly `-k` for an integer `k >= 0`.
    pub fn as_nonpositive_integer(&self) -> Option<u64> {
        match self.as_integer() {
            Some(v) if v <= 0 => Some(v.unsigned_abs()),
            _ => None,
        }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let a = Float::with_val(p, self.re.square_ref());
        a + Float::with_val(p, self.im.square_ref())
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn mul_i(&self) -> Self {
        Self {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec().max(k.prec());
        Self {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re * k),
            im: Float::with_val(self.prec(), &self.im * k),
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re / k),
            im: Float::with_val(self.prec(), &self.im / k),
        }
    }

    pub fn add_i64(&self, k: i64) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re + k),
            im: self.im.clone(),
        }
    }

    pub fn add_real(&self, k: &Float) -> Self {
        let p = self.prec().max(k.prec());
        Self {
            re: Float::with_val(p, &self.re + k),
            im: Float::with_val(p, &self.im),
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re + r),
            im: self.im.clone(),
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re * r),
            im: Float::with_val(self.prec(), &self.im * r),
        }
    }

    pub fn mul_2si(&self, k: i32) -> Self {
        Self {
            re: Float::with_val(self.prec(), &self.re << k),
            im: Float::with_val(self.prec(), &self.im << k),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        Self {
            re: Float::with_val(p, &self.re / &d),
            im: Float::with_val(p, -Float::with_val(p, &self.im / &d)),
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self {
            re: Float::with_val(p, &r * &c),
            im: Float::with_val(p, &r * &s),
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, self.abs().ln_ref()),
            im: self.arg(),
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::zero(p);
        }
        if self.im.is_zero() {
            return if self.re.is_sign_negative() {
                Self::new(Float::new(p), Float::with_val(p, (-self.re.clone()).sqrt_ref()))
            } else {
                Self::new(Float::with_val(p, self.re.sqrt_ref()), Float::new(p))
            };
        }
        let a = self.abs();
        let t = Float::with_val(p, (a + self.re.clone().abs()) / 2u32).sqrt();
        let other = Float::with_val(p, &self.im / &t) / 2u32;
        if !self.re.is_sign_negative() {
            Self::new(t, other)
        } else {
            let other = other.abs();
            let t = if self.im.is_sign_negative() { -t } else { t };
            Self::new(other, t)
        }
    }

    /// `self^w` on the principal branch; `0^w = 0` for `Re w > 0`.
    pub fn pow(&self, w: &HPComplex) -> Self {
        let p = self.prec().max(w.prec());
        if self.is_zero() {
            return Self::zero(p);
        }
        if let Some(k) = w.as_integer() {
            if k.unsigned_abs() <= 1 << 20 {
                return self.with_prec(p).powi(k);
            }
        }
        (w.with_prec(p) * self.with_prec(p).ln()).exp()
    }

    pub fn powi(&self, k: i64) -> Self {
        let p = self.prec();
        let mut base = if k < 0 { self.recip() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        Self {
            re: Float::with_val(p, &s * &ch),
            im: Float::with_val(p, &c * &sh),
        }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        Self {
            re: Float::with_val(p, &c * &ch),
            im: -Float::with_val(p, &s * &sh),
        }
    }

    /// `sin(pi z)`, exact zero at integers.
    pub fn sin_pi(&self) -> Self {
        let p = self.prec();
        if self.as_integer().is_some() {
            return Self::zero(p);
        }
        self.scale(&Float::with_val(p + 16, Constant::Pi)).with_prec(p).sin()
    }

    pub fn dist(&self, other: &Self) -> Float {
        (self - other).abs()
    }

    /// `re±imi` with `digits` significant decimal digits per part.
    pub fn format_digits(&self, digits: usize) -> String {
        let re = fmt_real(&self.re, digits);
        let im = fmt_real(&Float::with_val(self.prec(), self.im.abs_ref()), digits);
        let sign = if self.im.is_sign_negative() && !self.im.is_zero() { '-' } else { '+' };
        format!("{re}{sign}{im}i")
    }

    /// Full precision decimal rendering.
    pub fn to_full_string(&self) -> String {
        self.format_digits(digits_for_prec(self.prec()))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Number of significant decimal digits carried by `prec` bits.
pub fn digits_for_prec(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor() as usize
}

pub fn fmt_real(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(1)))
}

fn parse_real(t: &str, prec: u32) -> Option<Float> {
    let p = prec.max(MIN_PREC);
    if let Some((n, d)) = t.split_once('/') {
        let r = Rational::from((
            n.parse::<rug::Integer>().ok()?,
            d.parse::<rug::Integer>().ok()?,
        ));
        return Some(Float::with_val(p, &r));
    }
    let f = Float::parse(t).ok()?;
    Some(Float::with_val(p, f))
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or_else(|| digits_for_prec(self.prec()));
        f.write_str(&self.format_digits(d))
    }
}

/// Compares two real magnitudes; NaN sorts last.
pub fn cmp_abs(a: &Float, b: &Float) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Greater)
}

fn add_ref(a: &HPComplex, b: &HPComplex) -> HPComplex {
    let p = a.prec().max(b.prec());
    HPComplex {
        re: Float::with_val(p, &a.re + &b.re),
        im: Float::with_val(p, &a.im + &b.im),
    }
}

fn sub_ref(a: &HPComplex, b: &HPComplex) -> HPComplex {
    let p = a.prec().max(b.prec());
    HPComplex {
        re: Float::with_val(p, &a.re - &b.re),
        im: Float::with_val(p, &a.im - &b.im),
    }
}

fn mul_ref(a: &HPComplex, b: &HPComplex) -> HPComplex {
    let p = a.prec().max(b.prec());
    if a.im.is_zero() && b.im.is_zero() {
        return HPComplex {
            re: Float::with_val(p, &a.re * &b.re),
            im: Float::new(p),
        };
    }
    let ac = Float::with_val(p + 8, &a.re * &b.re);
    let bd = Float::with_val(p + 8, &a.im * &b.im);
    let ad = Float::with_val(p + 8, &a.re * &b.im);
    let bc = Float::with_val(p + 8, &a.im * &b.re);
    HPComplex {
        re: Float::with_val(p, ac - bd),
        im: Float::with_val(p, ad + bc),
    }
}

fn div_ref(a: &HPComplex, b: &HPComplex) -> HPComplex {
    let p = a.prec().max(b.prec());
    if b.im.is_zero() {
        return HPComplex {
            re: Float::with_val(p, &a.re / &b.re),
            im: Float::with_val(p, &a.im / &b.re),
        };
    }
    let w = p + 16;
    let (a, b) = (a.with_prec(w), b.with_prec(w));
    mul_ref(&a, &b.recip()).with_prec(p)
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&HPComplex> for &HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: &HPComplex) -> HPComplex {
                $f(self, rhs)
            }
        }
        impl $tr<HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: HPComplex) -> HPComplex {
                $f(&self, &rhs)
            }
        }
        impl $tr<&HPComplex> for HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: &HPComplex) -> HPComplex {
                $f(&self, rhs)
            }
        }
        impl $tr<HPComplex> for &HPComplex {
            type Output = HPComplex;
            fn $m(self, rhs: HPComplex) -> HPComplex {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl AddAssign<&HPComplex> for HPComplex {
    fn add_assign(&mut self, rhs: &HPComplex) {
        *self = add_ref(self, rhs);
    }
}

impl AddAssign<HPComplex> for HPComplex {
    fn add_assign(&mut self, rhs: HPComplex) {
        *self = add_ref(self, &rhs);
    }
}

impl SubAssign<&HPComplex> for HPComplex {
    fn sub_assign(&mut self, rhs: &HPComplex) {
        *self = sub_ref(self, rhs);
    }
}

impl MulAssign<&HPComplex> for HPComplex {
    fn mul_assign(&mut self, rhs: &HPComplex) {
        *self = mul_ref(self, rhs);
    }
}

impl Neg for HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        HPComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &HPComplex {
    type Output = HPComplex;
    fn neg(self) -> HPComplex {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let z = HPComplex::parse("2+3i", 128).unwrap();
        assert_eq!(z.to_f64_pair(), (2.0, 3.0));
        let z = HPComplex::parse("1/2-i", 128).unwrap();
        assert_eq!(z.to_f64_pair(), (0.5, -1.0));
        let z = HPComplex::parse("-3i", 128).unwrap();
        assert_eq!(z.to_f64_pair(), (0.0, -3.0));
        let z = HPComplex::parse("1e-3+2e-2i", 128).unwrap();
        assert_eq!(z.to_f64_pair(), (1e-3, 2e-2));
        assert!(HPComplex::parse("x", 128).is_err());
    }

    #[test]
    fn sqrt_and_exp_roundtrip() {
        let z = HPComplex::from_f64(-3.0, 0.25, 200);
        let r = z.sqrt();
        assert!((&r * &r - &z).abs_f64() < 1e-55);
        let w = z.ln().exp();
        assert!((&w - &z).abs_f64() < 1e-55);
    }

    #[test]
    fn powi_matches_pow() {
        let z = HPComplex::from_f64(0.3, -1.2, 200);
        let a = z.powi(-7);
        let b = (HPComplex::from_i64(-7, 200) * z.ln()).exp();
        assert!((&a - &b).abs_f64() < 1e-50);
    }

    #[test]
    fn display_shape() {
        let z = HPComplex::from_f64(0.5, -0.25, 64);
        assert_eq!(z.format_digits(3), "5.00e-1-2.50e-1i");
        assert_eq!(HPComplex::from_i64(2, 64).format_digits(3), "2.00+0i");
    }
}
