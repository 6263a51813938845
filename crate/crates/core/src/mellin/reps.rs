//! Alternative representations of `M_n(s)` (and `M_n^m(s)` where they exist).

use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};

use super::genfun::genfun_coefficient;
use super::laplace::mellin_laplace;
use super::quadrature::{mellin_quadrature, tanh_quadrature};
use crate::error::{Error, Result};
use crate::mpcore::HPComplex;
use crate::quad::{tanh_sinh, QuadOptions};
use crate::specfun::{gamma, hyp_pfq, pochhammer, rgamma, HypergeometricSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepVariant {
    L2a,
    L2b,
    L2c,
    L2d,
    L2e,
    L3a,
    L3b,
    L3c,
    P1,
    P3,
    L8,
    CosQuad,
    TanhQuad,
    Genfun,
}

impl RepVariant {
    pub const ALL: [RepVariant; 14] = [
        RepVariant::L2a,
        RepVariant::L2b,
        RepVariant::L2c,
        RepVariant::L2d,
        RepVariant::L2e,
        RepVariant::L3a,
        RepVariant::L3b,
        RepVariant::L3c,
        RepVariant::P1,
        RepVariant::P3,
        RepVariant::L8,
        RepVariant::CosQuad,
        RepVariant::TanhQuad,
        RepVariant::Genfun,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepVariant::L2a => "L2a",
            RepVariant::L2b => "L2b",
            RepVariant::L2c => "L2c",
            RepVariant::L2d => "L2d",
            RepVariant::L2e => "L2e",
            RepVariant::L3a => "L3a",
            RepVariant::L3b => "L3b",
            RepVariant::L3c => "L3c",
            RepVariant::P1 => "P1",
            RepVariant::P3 => "P3",
            RepVariant::L8 => "L8",
            RepVariant::CosQuad => "COS_QUAD",
            RepVariant::TanhQuad => "TANH_QUAD",
            RepVariant::Genfun => "GENFUN",
        }
    }

    /// Numerically integrated variants get the looser tolerance.
    pub fn is_quadrature(self) -> bool {
        matches!(self, RepVariant::P1 | RepVariant::CosQuad | RepVariant::TanhQuad)
    }

    /// Accuracy target in bits at working precision `prec`.
    pub fn tolerance_bits(self, prec: u32) -> u32 {
        if self.is_quadrature() {
            prec / 2
        } else {
            prec - 16
        }
    }

    /// Parity and order constraints; the `s` domain is checked on evaluation.
    pub fn is_legal(self, n: u32, m: u32) -> bool {
        match self {
            RepVariant::L8 | RepVariant::CosQuad | RepVariant::TanhQuad => m <= n,
            _ if m != 0 => false,
            RepVariant::L2a | RepVariant::L2d => n % 2 == 1,
            RepVariant::L2b | RepVariant::L2c => n % 2 == 0,
            _ => true,
        }
    }
}

impl fmt::Display for RepVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepVariant {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        RepVariant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(text))
            .ok_or_else(|| Error::Domain(format!("unknown representation {text:?}")))
    }
}

fn q(a: i64, b: i64, w: u32) -> HPComplex {
    HPComplex::from_ratio(a, b, w)
}

fn f32(num: [HPComplex; 3], den: [HPComplex; 2], z: HPComplex, w: u32) -> Result<HPComplex> {
    hyp_pfq(&HypergeometricSpec::new(num.to_vec(), den.to_vec(), z), w)
}

fn double_factorial(k: i64) -> Integer {
    let mut acc = Integer::from(1);
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    acc
}

fn factorial(k: u32) -> Integer {
    Integer::from(Integer::factorial(k))
}

fn sign(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `M_n^m(s)` through the chosen representation.
pub fn mellin_rep(variant: RepVariant, n: u32, m: u32, s: &HPComplex, prec: u32) -> Result<HPComplex> {
    if !variant.is_legal(n, m) {
        return Err(Error::Domain(format!("{variant} is not defined for n={n}, m={m}")));
    }
    let l2_family = matches!(variant, RepVariant::L2a | RepVariant::L2b | RepVariant::L2c | RepVariant::L2d | RepVariant::L2e);
    let floor = if l2_family && n % 2 == 1 { -1 } else { 0 };
    if *s.re() <= floor {
        return Err(Error::Domain(format!("{variant} needs Re s > {floor}, got {s}")));
    }
    let w = prec + 32 + 2 * n;
    let sw = s.with_prec(w);
    let v = match variant {
        RepVariant::L2a => l2a(n, &sw, w)?,
        RepVariant::L2b => l2b(n, &sw, w)?,
        RepVariant::L2c => l2c(n, &sw, w)?,
        RepVariant::L2d => l2d(n, &sw, w)?,
        RepVariant::L2e => l2e(n, &sw, w)?,
        RepVariant::L3a => l3a(n, &sw)?,
        RepVariant::L3b => l3b(n, &sw, w)?,
        RepVariant::L3c => l3c(n, &sw, w)?,
        RepVariant::P1 => p1(n, &sw, prec)?,
        RepVariant::P3 => p3(n, &sw, w)?,
        RepVariant::L8 => mellin_laplace(n, m, &sw, w)?,
        RepVariant::CosQuad => mellin_quadrature(n, m, s, prec)?.value,
        RepVariant::TanhQuad => tanh_quadrature(n, m, s, prec)?.value,
        RepVariant::Genfun => genfun_coefficient(n, &sw, w)?,
    };
    Ok(v.with_prec(prec))
}

/// `M_{2k+1}`: `(-1)^k/2 ((2-s)/2)_k / ((s+1)/2)_{k+1} 3F2(1/2, (s+1)/2, s/2; s/2-k, s/2+k+3/2; 1)`.
fn l2a(n: u32, s: &HPComplex, w: u32) -> Result<HPComplex> {
    let k = (n - 1) / 2;
    let (s2, s12) = (s.div_i64(2), s.add_i64(1).div_i64(2));
    let pre = pochhammer(&(-&s2).add_i64(1), k as u64) / pochhammer(&s12, k as u64 + 1);
    let f = f32(
        [q(1, 2, w), s12.clone(), s2.clone()],
        [s2.add_i64(-(k as i64)), s2.add_rational(&Rational::from((2 * k as i64 + 3, 2)))],
        HPComplex::one(w),
        w,
    )?;
    Ok((pre * f).mul_i64(sign(k)).div_i64(2))
}

/// `M_{2k}`: `(-1)^k/2 ((1-s)/2)_k / (s/2)_{k+1} 3F2(1/2, (s+1)/2, s/2; s/2-k+1/2, s/2+k+1; 1)`.
fn l2b(n: u32, s: &HPComplex, w: u32) -> Result<HPComplex> {
    let k = n / 2;
    let (s2, s12) = (s.div_i64(2), s.add_i64(1).div_i64(2));
    let pre = pochhammer(&(-s).add_i64(1).div_i64(2), k as u64) / pochhammer(&s2, k as u64 + 1);
    let f = f32(
        [q(1, 2, w), s12.clone(), s2.clone()],
        [s2.add_rational(&Rational::from((1 - 2 * k as i64, 2))), s2.add_i64(k as i64 + 1)],
        HPComplex::one(w),
        w,
    )?;
    Ok((pre * f).mul_i64(sign(k)).div_i64(2))
}

/// `M_{2k}`: `(-1)^k (2k-1)!! / (2^{k+1} k!) sqrt(pi) Gamma(s/2)/Gamma((s+1)/2) 3F2(-k, k+1/2, s/2; 1/2, (s+1)/2; 1)`.
fn l2c(n: u32, s: &HPComplex, w: u32) -> Result<HPComplex> {
    let k = n / 2;
    let (s2, s12) = (s.div_i64(2), s.add_i64(1).div_i64(2));
    let c = Rational::from((double_factorial(2 * k as i64 - 1), factorial(k) << (k + 1)));
    let pre = HPComplex::pi(w).sqrt() * gamma(&s2)? * rgamma(&s12);
    let f = f32(
        [HPComplex::from_i64(-(k as i64), w), q(2 * k as i64 + 1, 2, w), s2.clone()],
        [q(1, 2, w), s12.clone()],
        HPComplex::one(w),
        w,
    )?;
    Ok((pre * f).mul_rational(&c).mul_i64(sign(k)))
}

/// `M_{2k+1}`: `(-1)^k (2k+1)!! / (2^k k!) sqrt(pi) Gamma((s+1)/2) / (s Gamma(s/2)) 3F2(-k, k+3/2, (s+1)/2; 3/2, s/2+1; 1)`.
fn l2d(n: u32, s: &HPComplex, w: u32) -> Result<HPComplex> {
    let k = (n - 1) / 2;
    let (s2, s12) = (s.div_i64(2), s.add_i64(1).div_i64(2));
    let c = Rational::from((double_factorial(2 * k as i64 + 1), factorial(k) << k));
    let pre = HPComplex::pi(w).sqrt() * gamma(&s12)? * rgamma(&s2) / s;
    let f = f32(
        [HPComplex::from_i64(-(k as i64), w), q(2 * k as i64 + 3, 2, w), s12.clone()],
        [q(3, 2, w), s2.add_i64(1)],
        HPComplex::one(w),
        w,
    )?;
    Ok((pre * f).mul_rational(&c).mul_i64(sign(k)))
}

/// `pi Gamma(s) (1/2)_n / (2^s n! Gamma((s+n+1)/2) Gamma((s-n+1)/2)) 3F2(-n, 1/2, (1-s-n)/2; 1/2-n, (s-n+1)/2; -1)`.
fn l2e(n: u32, s: &HPComplex, w: u32) -> Result<HPComplex> {
    let ni = n as i64;
    let b2 = s.add_i64(1 - ni).div_i64(2);
    if b2.as_nonpositive_integer().is_some() {
        return Err(Error::Domain(format!("L2e needs (s-n+1)/2 off the nonpositive integers, got s={s}")));
    }
    let half_n = pochhammer(&q(1, 2, w), n as u64);
    let pre = HPComplex::pi(w) * gamma(s)? * half_n / HPComplex::from_i64(2, w).pow(s)
        * rgamma(&s.add_i64(ni + 1).div_i64(2))
        * rgamma(&b2);
    let f = f32(
        [HPComplex::from_i64(-ni, w), q(1, 2, w), (-s).add_i64(1 - ni).div_i64(2)],
        [q(1 - 2 * ni, 2, w), b2],
        HPComplex::from_i64(-1, w),
        w,
    )?;
    Ok((pre * f).mul_rational(&Rational::from((1, factorial(n)))))
}

/// Finite Beta sum: `2^-(n+1) sum_k (-1)^k (2n-2k)! / (k! (n-k)! (n-2k)!) B((s+n)/2 - k, 1/2)`.
fn l3a(n: u32, s: &HPComplex) -> Result<HPComplex> {
    let w = s.prec();
    let sqrt_pi = HPComplex::pi(w).sqrt();
    let base = s.add_i64(n as i64).div_i64(2);
    let mut acc = HPComplex::zero(w);
    for k in 0..=n / 2 {
        let c = Rational::from((factorial(2 * n - 2 * k), factorial(k) * factorial(n - k) * factorial(n - 2 * k)));
        let a = base.add_i64(-(k as i64));
        let beta = &sqrt_pi * gamma(&a)? * rgamma(&a.add_rational(&Rational::from((1, 2))));
        let t = beta.mul_rational(&c);
        if k % 2 == 0 {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    Ok(acc.mul_2si(-(n as i32) - 1))
}

/// `2^{n-1} Gamma(n+1/2) Gamma((n+s)/2) / (n! Gamma((n+s+1)/2)) 3F2((1-n)/2, -n/2, (1-n-s)/2; 1/2-n, 1-(n+s)/2; 1)`.
fn l3b(n: u32, s: &HPComplex, w: u32) -> Result<HPComplex> {
    let ni = n as i64;
    let ns = s.add_i64(ni);
    let pre = gamma(&q(2 * ni + 1, 2, w))? * gamma(&ns.div_i64(2))? * rgamma(&ns.add_i64(1).div_i64(2));
    let f = f32(
        [q(1 - ni, 2, w), q(-ni, 2, w), (-&ns).add_i64(1).div_i64(2)],
        [q(1 - 2 * ni, 2, w), (-ns.div_i64(2)).add_i64(1)],
        HPComplex::one(w),
        w,
    )?;
    Ok((pre * f).mul_2si(ni as i32 - 1).mul_rational(&Rational::from((1, factorial(n)))))
}

/// `sqrt(pi)/2 Gamma((n+s)/2) / Gamma((n+s+1)/2) 3F2(1/2, (1-n)/2, -n/2; 1, 1-(n+s)/2; 1)`.
fn l3c(n: u32, s: &HPComplex, w: u32) -> Result<HPComplex> {
    let ni = n as i64;
    let ns = s.add_i64(ni);
    let pre = HPComplex::pi(w).sqrt() * gamma(&ns.div_i64(2))? * rgamma(&ns.add_i64(1).div_i64(2));
    let f = f32(
        [q(1, 2, w), q(1 - ni, 2, w), q(-ni, 2, w)],
        [HPComplex::one(w), (-ns.div_i64(2)).add_i64(1)],
        HPComplex::one(w),
        w,
    )?;
    Ok((pre * f).div_i64(2))
}

/// `Gamma((n+s)/2) / (sqrt(pi) Gamma((n+s+1)/2)) int_0^{pi/2} 2F1((1-n)/2, -n/2; 1-(n+s)/2; cos^2 phi) dphi`,
/// with the terminating `2F1` expanded once and the `phi` integral done by quadrature.
fn p1(n: u32, s: &HPComplex, prec: u32) -> Result<HPComplex> {
    let w = s.prec();
    let ni = n as i64;
    let ns = s.add_i64(ni);
    let c = (-ns.div_i64(2)).add_i64(1);
    let mut coeffs = vec![HPComplex::one(w)];
    for k in 0..(n / 2) as i64 {
        let ratio = Rational::from((1 - ni + 2 * k, 2)) * Rational::from((-ni + 2 * k, 2)) / Rational::from(k + 1);
        let den = c.add_i64(k);
        if den.is_zero() {
            return Err(Error::Pole(format!("P1 2F1 denominator vanishes at s={s}")));
        }
        let next = coeffs[k as usize].mul_rational(&ratio) / den;
        coeffs.push(next);
    }
    let half_pi = rug::Float::with_val(w, rug::float::Constant::Pi) / 2u32;
    let integrand = |_: &rug::Float, cc: &rug::Float| {
        // phi = pi y / 2, cos phi = sin(pi (1 - y) / 2)
        let cp = rug::Float::with_val(w, &half_pi * cc).sin();
        let x = HPComplex::from_real(rug::Float::with_val(w, cp.square_ref()));
        let mut acc = HPComplex::zero(w);
        for a in coeffs.iter().rev() {
            acc = &(&acc * &x) + a;
        }
        acc.scale(&half_pi)
    };
    let qd = tanh_sinh(integrand, QuadOptions::new(prec).tol_bits(prec / 2 + 24).max_level(14));
    if !qd.converged {
        return Err(Error::Convergence("P1 quadrature did not converge".into()));
    }
    let pre = gamma(&ns.div_i64(2))? * rgamma(&ns.add_i64(1).div_i64(2)) / HPComplex::pi(w).sqrt();
    Ok(pre * qd.value.with_prec(w))
}

/// `(n!)^2 / 2^n Gamma(s) sum_k (-1)^k / (k!^2 (n-k)!^2) Gamma(k+1/2)/Gamma(k+s+1/2) 2F1(1/2+k-n, s; 1/2+k+s; -1)`.
fn p3(n: u32, s: &HPComplex, w: u32) -> Result<HPComplex> {
    let mut acc = HPComplex::zero(w);
    let nf = factorial(n);
    for k in 0..=n {
        let ki = k as i64;
        let kh = s.add_rational(&Rational::from((2 * ki + 1, 2)));
        let c = Rational::from((nf.clone() * &nf, (factorial(k) * factorial(n - k)).square()));
        let g = gamma(&q(2 * ki + 1, 2, w))? * rgamma(&kh);
        let spec = HypergeometricSpec::new(
            vec![q(1 + 2 * ki - 2 * n as i64, 2, w), s.clone()],
            vec![kh],
            HPComplex::from_i64(-1, w),
        );
        let t = (g * hyp_pfq(&spec, w)?).mul_rational(&c);
        if k % 2 == 0 {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    Ok((gamma(s)? * acc).mul_2si(-(n as i32)))
}
