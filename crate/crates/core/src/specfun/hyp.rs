use rug::Rational;

use super::gamma::{gamma, rgamma};
use super::tail::{sum_ratio_series, RatioSeries, Series};
use crate::error::{Error, Result};
use crate::mpcore::{log2_abs, ComplexRational, HPComplex};

/// A `pFq` evaluation request.
#[derive(Clone, Debug)]
pub struct HypergeometricSpec {
    pub num: Vec<HPComplex>,
    pub den: Vec<HPComplex>,
    pub z: HPComplex,
}

/// How a unit-argument or `-1` series should be summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HypStrategy {
    /// Terminating sums, Gauss and Pfaff where they apply, else the series engine.
    #[default]
    Auto,
    /// Always sum the defining series (with the asymptotic tail on the unit circle).
    Direct,
}

impl HypergeometricSpec {
    pub fn new(num: Vec<HPComplex>, den: Vec<HPComplex>, z: HPComplex) -> Self {
        Self { num, den, z }
    }

    pub fn from_rationals(num: &[Rational], den: &[Rational], z: &Rational, prec: u32) -> Self {
        Self {
            num: num.iter().map(|r| HPComplex::from_rational(r, prec)).collect(),
            den: den.iter().map(|r| HPComplex::from_rational(r, prec)).collect(),
            z: HPComplex::from_rational(z, prec),
        }
    }

    /// Index of the last nonzero term for a terminating series.
    pub fn termination_index(&self) -> Option<u64> {
        self.num.iter().filter_map(|a| a.as_nonpositive_integer()).min()
    }

    /// `sum(den) - sum(num)`.
    pub fn excess(&self) -> HPComplex {
        let p = self.z.prec();
        let mut e = HPComplex::zero(p);
        for b in &self.den {
            e += b;
        }
        for a in &self.num {
            e -= a;
        }
        e
    }

    fn check_poles(&self) -> Result<Option<u64>> {
        let n = self.termination_index();
        for b in &self.den {
            if let Some(m) = b.as_nonpositive_integer() {
                match n {
                    Some(n) if n <= m => {}
                    _ => return Err(Error::Pole(format!("denominator parameter -{m} terminates first"))),
                }
            }
        }
        Ok(n)
    }

    fn scale(&self) -> f64 {
        self.num
            .iter()
            .chain(&self.den)
            .map(|x| x.abs_f64())
            .fold(1.0, f64::max)
    }

    fn with_prec(&self, prec: u32) -> Self {
        Self {
            num: self.num.iter().map(|x| x.with_prec(prec)).collect(),
            den: self.den.iter().map(|x| x.with_prec(prec)).collect(),
            z: self.z.with_prec(prec),
        }
    }

    /// `t_{k+1} / (z t_k)`.
    fn ratio(&self, k: u64, prec: u32) -> HPComplex {
        let mut numer = HPComplex::one(prec);
        for a in &self.num {
            numer = &numer * &a.with_prec(prec).add_i64(k as i64);
        }
        let mut denom = HPComplex::from_i64(k as i64 + 1, prec);
        for b in &self.den {
            denom = &denom * &b.with_prec(prec).add_i64(k as i64);
        }
        numer / denom
    }
}

pub fn hyp_pfq(spec: &HypergeometricSpec, prec: u32) -> Result<HPComplex> {
    hyp_pfq_with(spec, prec, HypStrategy::Auto)
}

pub fn hyp_pfq_with(spec: &HypergeometricSpec, prec: u32, strategy: HypStrategy) -> Result<HPComplex> {
    let spec = spec.with_prec(prec);
    if spec.num.iter().any(|a| a.is_zero()) || spec.z.is_zero() {
        return Ok(HPComplex::one(prec));
    }
    if let Some(n) = spec.check_poles()? {
        return sum_terminating(&spec, n, prec);
    }
    let p = spec.num.len();
    let q = spec.den.len();
    if p <= q {
        return sum_disk(&spec, prec);
    }
    if p > q + 1 {
        return Err(Error::Divergence(format!("{p}F{q} with nonterminating series")));
    }
    let zabs = spec.z.abs_f64();
    let on_circle = spec.z.abs().to_f64() == 1.0 || (zabs - 1.0).abs() < 1e-300;
    if zabs > 1.0 && !on_circle {
        return Err(Error::Divergence("|z| > 1 outside the supported transformations".into()));
    }
    if on_circle {
        // at z = 1 the series needs excess > 0; elsewhere on the circle excess > -1 suffices
        let floor = if spec.z.as_integer() == Some(1) { 0.0 } else { -1.0 };
        if spec.excess().re().to_f64() <= floor {
            return Err(Error::Divergence("convergence excess too small on |z| = 1".into()));
        }
    }
    if strategy == HypStrategy::Auto && p == 2 {
        if spec.z.as_integer() == Some(1) {
            return gauss_2f1(&spec, prec);
        }
        if spec.z.as_integer() == Some(-1) {
            return pfaff_minus_one(&spec, prec);
        }
    }
    if zabs < 0.75 {
        return sum_disk(&spec, prec);
    }
    sum_circle(&spec, prec)
}

/// `2F1(a, b; c; -1)` by its defining series, for cross-checking the Pfaff route.
pub fn hyp2f1_minus_one_direct(a: &HPComplex, b: &HPComplex, c: &HPComplex, prec: u32) -> Result<HPComplex> {
    let spec = HypergeometricSpec::new(vec![a.clone(), b.clone()], vec![c.clone()], HPComplex::from_i64(-1, prec));
    hyp_pfq_with(&spec, prec, HypStrategy::Direct)
}

fn gauss_2f1(spec: &HypergeometricSpec, prec: u32) -> Result<HPComplex> {
    let w = prec + 16;
    let (a, b, c) = (spec.num[0].with_prec(w), spec.num[1].with_prec(w), spec.den[0].with_prec(w));
    let sigma = &(&c - &a) - &b;
    let v = gamma(&c)? * gamma(&sigma)? * rgamma(&(&c - &a)) * rgamma(&(&c - &b));
    Ok(v.with_prec(prec))
}

fn pfaff_minus_one(spec: &HypergeometricSpec, prec: u32) -> Result<HPComplex> {
    // 2F1(a, b; c; -1) = 2^{-a} 2F1(a, c - b; c; 1/2)
    let w = prec + 16;
    let (a, b, c) = (spec.num[0].with_prec(w), spec.num[1].with_prec(w), spec.den[0].with_prec(w));
    let half = HPComplex::from_ratio(1, 2, w);
    let inner = HypergeometricSpec::new(vec![a.clone(), &c - &b], vec![c], half);
    let f = hyp_pfq(&inner, w)?;
    let two = HPComplex::from_i64(2, w);
    Ok((f * two.pow(&-&a)).with_prec(prec))
}

fn sum_terminating(spec: &HypergeometricSpec, n: u64, prec: u32) -> Result<HPComplex> {
    let mut guard = 32u32;
    loop {
        let w = prec + guard;
        let z = spec.z.with_prec(w);
        let mut t = HPComplex::one(w);
        let mut s = HPComplex::one(w);
        let mut max_mag = 0.0f64;
        for k in 0..n {
            t = &(&t * &z) * &spec.ratio(k, w);
            max_mag = max_mag.max(log2_abs(&t.abs()));
            s += &t;
        }
        let loss = max_mag - log2_abs(&s.abs());
        if s.is_zero() || loss + 16.0 < guard as f64 {
            return Ok(s.with_prec(prec));
        }
        if guard > 16 * prec {
            return Ok(s.with_prec(prec));
        }
        guard = loss as u32 + 48;
    }
}

/// Direct summation with the geometric majorant as stopping rule.
fn sum_disk(spec: &HypergeometricSpec, prec: u32) -> Result<HPComplex> {
    let zabs = spec.z.abs_f64();
    let a_abs: Vec<f64> = spec.num.iter().map(|x| x.abs_f64()).collect();
    let b_abs: Vec<f64> = spec.den.iter().map(|x| x.abs_f64()).collect();
    let bmax = b_abs.iter().cloned().fold(0.0, f64::max);
    // ratio bound valid for every index >= k
    let rho = |k: f64| -> f64 {
        let mut r = zabs;
        let mut dens = vec![k + 1.0];
        dens.extend(b_abs.iter().map(|b| k - b));
        for (i, d) in dens.iter().enumerate() {
            match a_abs.get(i) {
                Some(a) if i == 0 => r *= ((k + a) / d).max(1.0),
                Some(a) => r *= (k + a) / d,
                None => r /= d.max(1.0),
            }
        }
        for a in a_abs.iter().skip(dens.len()) {
            r *= k + a;
        }
        r
    };
    let budget = 200_000u64;
    let mut guard = 32u32;
    loop {
        let w = prec + guard;
        let z = spec.z.with_prec(w);
        let mut t = HPComplex::one(w);
        let mut s = HPComplex::one(w);
        let mut max_mag = 0.0f64;
        let mut k = 0u64;
        loop {
            t = &(&t * &z) * &spec.ratio(k, w);
            k += 1;
            s += &t;
            let mag = log2_abs(&t.abs());
            max_mag = max_mag.max(mag);
            if (k as f64) > bmax + 2.0 {
                let r = rho(k as f64);
                if r < 1.0 {
                    let bound = mag + (r / (1.0 - r)).log2();
                    if bound < log2_abs(&s.abs()) - w as f64 {
                        break;
                    }
                }
            }
            if t.is_zero() {
                break;
            }
            if k > budget {
                return Err(Error::Convergence("term budget exhausted".into()));
            }
        }
        let loss = max_mag - log2_abs(&s.abs());
        if loss + 16.0 < guard as f64 || guard > 16 * prec {
            return Ok(s.with_prec(prec));
        }
        guard = loss as u32 + 48;
    }
}

fn sum_circle(spec: &HypergeometricSpec, prec: u32) -> Result<HPComplex> {
    let ratio = |k: u64, w: u32| spec.ratio(k, w);
    let r_series = |len: usize, w: u32| hyp_r_series(spec, len, w);
    let rs = RatioSeries {
        z: spec.z.clone(),
        t0: HPComplex::one(prec),
        ratio: &ratio,
        r_series: &r_series,
        scale: spec.scale(),
    };
    sum_ratio_series(&rs, prec)
}

/// `R(u) = prod(1 + a u) / ((1 + u) prod(1 + b u))`.
fn hyp_r_series(spec: &HypergeometricSpec, len: usize, w: u32) -> Series {
    let mut r = Series::one(len, w);
    for a in &spec.num {
        r = r.mul_linear(&a.with_prec(w));
    }
    r = r.div_linear(&HPComplex::one(w));
    for b in &spec.den {
        r = r.div_linear(&b.with_prec(w));
    }
    r
}

fn nonpositive_int(r: &Rational) -> Option<u64> {
    if *r.denom() == 1 && *r.numer() <= 0 {
        r.numer().to_u64().or_else(|| (-r.numer().clone()).to_u64())
    } else {
        None
    }
}

/// Exact value of a terminating series with rational data.
pub fn hyp_pfq_exact(num: &[Rational], den: &[Rational], z: &Rational) -> Result<Rational> {
    let n = num
        .iter()
        .filter_map(nonpositive_int)
        .min()
        .ok_or_else(|| Error::Domain("exact path needs a terminating series".into()))?;
    for b in den {
        if let Some(m) = nonpositive_int(b) {
            if m < n {
                return Err(Error::Pole(format!("denominator parameter -{m} terminates first")));
            }
        }
    }
    let mut t = Rational::from(1);
    let mut s = Rational::from(1);
    for k in 0..n {
        for a in num {
            t *= Rational::from(a + k);
        }
        for b in den {
            t /= Rational::from(b + k);
        }
        t *= z;
        t /= k + 1;
        s += &t;
    }
    Ok(s)
}

/// Exact value of a terminating series with Gaussian-rational data.
pub fn hyp_pfq_exact_complex(
    num: &[ComplexRational],
    den: &[ComplexRational],
    z: &ComplexRational,
) -> Result<ComplexRational> {
    let n = num
        .iter()
        .filter_map(|a| a.as_nonpositive_integer())
        .min()
        .ok_or_else(|| Error::Domain("exact path needs a terminating series".into()))?;
    for b in den {
        if let Some(m) = b.as_nonpositive_integer() {
            if m < n {
                return Err(Error::Pole(format!("denominator parameter -{m} terminates first")));
            }
        }
    }
    let mut t = ComplexRational::from_i64(1);
    let mut s = ComplexRational::from_i64(1);
    for k in 0..n {
        let kk = ComplexRational::from_i64(k as i64);
        for a in num {
            t = &t * &(a + &kk);
        }
        for b in den {
            t = &t / &(b + &kk);
        }
        t = &(&t * z) / &ComplexRational::from_i64(k as i64 + 1);
        s = &s + &t;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;
    use rug::Float;

    fn c(re: f64, im: f64) -> HPComplex {
        HPComplex::from_f64(re, im, 256)
    }

    fn q(n: i64, d: i64) -> HPComplex {
        HPComplex::from_ratio(n, d, 256)
    }

    fn close(a: &HPComplex, b: &HPComplex, bits: f64) -> bool {
        log2_abs(&(a - b).abs()) - log2_abs(&b.abs()).max(0.0) < -bits
    }

    #[test]
    fn zero_parameter_gives_one() {
        let s = HypergeometricSpec::new(vec![q(0, 1), q(-1, 2), q(1, 2)], vec![q(1, 1), q(-3, 4)], q(1, 1));
        assert_eq!(hyp_pfq(&s, 256).unwrap().to_f64_pair(), (1.0, 0.0));
    }

    #[test]
    fn arctan_one() {
        // 2F1(1, 1/2; 3/2; -1) = pi / 4
        let s = HypergeometricSpec::new(vec![q(1, 1), q(1, 2)], vec![q(3, 2)], q(-1, 1));
        let want = HPComplex::from_real(Float::with_val(256, Constant::Pi) / 4u32);
        assert!(close(&hyp_pfq(&s, 256).unwrap(), &want, 244.0));
        let direct = hyp2f1_minus_one_direct(&q(1, 1), &q(1, 2), &q(3, 2), 256).unwrap();
        assert!(close(&direct, &want, 240.0));
    }

    #[test]
    fn gauss_matches_series_engine() {
        let s = HypergeometricSpec::new(vec![c(0.3, 0.2), c(-1.7, 0.0)], vec![c(2.1, -0.4)], q(1, 1));
        let a = hyp_pfq(&s, 256).unwrap();
        let b = hyp_pfq_with(&s, 256, HypStrategy::Direct).unwrap();
        assert!(close(&a, &b, 236.0));
    }

    #[test]
    fn saalschutz_balanced() {
        // 3F2(-n, a, b; c, 1 + a + b - c - n; 1) = (c - a)_n (c - b)_n / ((c)_n (c - a - b)_n)
        let (n, a, b, cc) = (5i64, Rational::from((1, 3)), Rational::from((2, 7)), Rational::from((5, 4)));
        let d = Rational::from(1 + &a) + &b - &cc - n;
        let num = [Rational::from(-n), a.clone(), b.clone()];
        let den = [cc.clone(), d];
        let exact = hyp_pfq_exact(&num, &den, &Rational::from(1)).unwrap();
        let poch = |x: &Rational| (0..n).fold(Rational::from(1), |acc, k| acc * Rational::from(x + k));
        let want = poch(&Rational::from(&cc - &a)) * poch(&Rational::from(&cc - &b))
            / (poch(&cc) * poch(&(Rational::from(&cc - &a) - &b)));
        assert_eq!(exact, want);
        let spec = HypergeometricSpec::from_rationals(&num, &den, &Rational::from(1), 256);
        let fl = hyp_pfq(&spec, 256).unwrap();
        assert!(close(&fl, &HPComplex::from_rational(&want, 256), 250.0));
    }

    #[test]
    fn poles_and_divergence() {
        let s = HypergeometricSpec::new(vec![q(-3, 1), q(1, 2)], vec![q(-1, 1)], q(1, 2));
        assert!(matches!(hyp_pfq(&s, 256), Err(Error::Pole(_))));
        let s = HypergeometricSpec::new(vec![q(1, 3), q(1, 2), q(1, 1)], vec![q(1, 1), q(1, 3)], q(1, 1));
        assert!(matches!(hyp_pfq(&s, 256), Err(Error::Divergence(_))));
        let s = HypergeometricSpec::new(vec![q(1, 3), q(1, 2), q(1, 1)], vec![q(1, 1)], q(1, 2));
        assert!(matches!(hyp_pfq(&s, 256), Err(Error::Divergence(_))));
    }

    #[test]
    fn three_f_two_unit_argument() {
        // Dixon: 3F2(a, b, c; 1+a-b, 1+a-c; 1) with a = 1/3, b = 1/5, c = 1/7 (excess 1/2 + ...)
        let (a, b, cc) = (q(1, 3), q(1, 5), q(1, 7));
        let s = HypergeometricSpec::new(
            vec![a.clone(), b.clone(), cc.clone()],
            vec![(&a - &b).add_i64(1), (&a - &cc).add_i64(1)],
            q(1, 1),
        );
        let g = |x: &HPComplex| gamma(x).unwrap();
        let half_a = a.div_i64(2);
        let want = g(&half_a.add_i64(1)) * g(&(&a - &b).add_i64(1)) * g(&(&a - &cc).add_i64(1))
            * g(&(&(&half_a - &b) - &cc).add_i64(1))
            / (g(&a.add_i64(1)) * g(&(&half_a - &b).add_i64(1)) * g(&(&half_a - &cc).add_i64(1))
                * g(&(&(&a - &b) - &cc).add_i64(1)));
        assert!(close(&hyp_pfq(&s, 256).unwrap(), &want, 236.0));
    }
}
