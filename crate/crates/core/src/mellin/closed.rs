//! Closed gamma-factor forms of `M_n^m(s)` and their exact polynomial factors.
//!
//! For `m` even, `M_n^m(s) = sqrt(pi) 2^-nu p_n^m(s) Gamma((s+eps)/2) / Gamma((s+n+1)/2)`
//! with `eps = n mod 2` and `nu = 2 floor(n/2) - m/2 + 1`. The factors `p_n^m`
//! are built exactly from the three-term recursion in `n`, seeded by
//! `p_m^m = (2m-1)!! (m-1)!!` and `p_{m+1}^m = (2m+1) p_m^m`.

use std::collections::HashMap;
use std::sync::RwLock;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{log2_abs, HPComplex, RationalPolynomial};
use crate::specfun::{gamma, rgamma};

/// `sqrt(pi)^sqrt_pi_power 2^two_power_exponent Gamma((s + numerator_shift)/2) / Gamma((s + denominator_shift)/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPrefactor {
    pub sqrt_pi_power: i32,
    pub two_power_exponent: i64,
    pub epsilon: u32,
    pub numerator_shift: u32,
    pub denominator_shift: u32,
}

impl GammaPrefactor {
    pub fn new(n: u32, m: u32) -> Self {
        let eps = n % 2;
        let nu = 2 * (n / 2) as i64 - (m / 2) as i64 + 1;
        Self {
            sqrt_pi_power: 1,
            two_power_exponent: -nu,
            epsilon: eps,
            numerator_shift: eps,
            denominator_shift: n + 1,
        }
    }

    pub fn eval(&self, s: &HPComplex) -> Result<HPComplex> {
        let p = s.prec();
        let num = gamma(&s.add_i64(self.numerator_shift as i64).div_i64(2))?;
        let den = rgamma(&s.add_i64(self.denominator_shift as i64).div_i64(2));
        let mut v = num * den;
        let sqrt_pi = HPComplex::pi(p).sqrt();
        for _ in 0..self.sqrt_pi_power {
            v = v * &sqrt_pi;
        }
        Ok(v.mul_2si(self.two_power_exponent as i32))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MellinClosedForm {
    pub prefactor: GammaPrefactor,
    pub poly: RationalPolynomial,
    pub n: u32,
    pub m: u32,
}

impl MellinClosedForm {
    pub fn eval(&self, s: &HPComplex) -> Result<HPComplex> {
        let p = s.prec();
        let w = p + 16;
        let sw = s.with_prec(w);
        let pref = self.prefactor.eval(&sw)?;
        Ok((pref * eval_poly(&self.poly, &sw)).with_prec(p))
    }
}

/// Horner evaluation that raises the working precision when the sum cancels.
pub fn eval_poly(poly: &RationalPolynomial, s: &HPComplex) -> HPComplex {
    let p = s.prec();
    let mut w = p + 24;
    for _ in 0..3 {
        let v = poly.eval_complex(&s.with_prec(w));
        let mut bound = Float::with_val(64, 0u32);
        let r = s.abs();
        let mut rk = Float::with_val(64, 1u32);
        for c in poly.coeffs() {
            bound += Float::with_val(64, c).abs() * &rk;
            rk *= &r;
        }
        let loss = log2_abs(&bound) - log2_abs(&v.abs());
        if loss + 8.0 < (w - p) as f64 || v.is_zero() && poly.is_zero() {
            return v.with_prec(p);
        }
        w = p + loss.max(0.0) as u32 + 32;
    }
    poly.eval_complex(&s.with_prec(w)).with_prec(p)
}

type Chains = HashMap<u32, Vec<RationalPolynomial>>;

static CHAINS: RwLock<Option<Chains>> = RwLock::new(None);

fn double_factorial(k: i64) -> Integer {
    let mut acc = Integer::from(1);
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    acc
}

fn next_poly(chain: &[RationalPolynomial], n: u32, m: u32) -> RationalPolynomial {
    let i = (n - m) as usize;
    let prev = &chain[i - 1];
    let prev2 = &chain[i - 2];
    let one = Rational::from(1);
    let nm = Rational::from(n - m);
    // (s + n - 1) p_{n-2}(s)
    let lin = RationalPolynomial::linear(one.clone(), Rational::from(n as i64 - 1));
    let back = lin.mul(prev2).scale(&Rational::from(n + m - 1));
    let fwd = prev.shift(&one).scale(&Rational::from(2 * n - 1));
    if n % 2 == 0 {
        let s = RationalPolynomial::linear(one, Rational::new());
        s.mul(&fwd).sub(&back).scale(&(Rational::from(2) / nm))
    } else {
        fwd.sub(&back.scale(&Rational::from(2))).scale(&(Rational::from(1) / nm))
    }
}

fn chain_poly(n: u32, m: u32) -> RationalPolynomial {
    let idx = (n - m) as usize;
    if let Some(chains) = CHAINS.read().expect("poly memo poisoned").as_ref() {
        if let Some(c) = chains.get(&m) {
            if c.len() > idx {
                return c[idx].clone();
            }
        }
    }
    let mut guard = CHAINS.write().expect("poly memo poisoned");
    let chain = guard.get_or_insert_with(HashMap::new).entry(m).or_insert_with(|| {
        let base = Rational::from(double_factorial(2 * m as i64 - 1) * double_factorial(m as i64 - 1));
        let b0 = RationalPolynomial::constant(base.clone());
        let b1 = RationalPolynomial::constant(base * (2 * m + 1));
        vec![b0, b1]
    });
    while chain.len() <= idx {
        let n_next = m + chain.len() as u32;
        let p = next_poly(chain, n_next, m);
        chain.push(p);
    }
    chain[idx].clone()
}

/// Exact factorization `M_n^m = prefactor * p_n^m` for even `m <= n`.
pub fn poly_factor(n: u32, m: u32) -> Result<MellinClosedForm> {
    if m % 2 == 1 {
        return Err(Error::Domain(format!("poly_factor needs even m, got {m}")));
    }
    if m > n {
        return Err(Error::Domain(format!("poly_factor needs m <= n, got m={m}, n={n}")));
    }
    Ok(MellinClosedForm { prefactor: GammaPrefactor::new(n, m), poly: chain_poly(n, m), n, m })
}

fn check_domain(s: &HPComplex) -> Result<()> {
    if *s.re() <= 0 {
        return Err(Error::Domain(format!("Mellin transform needs Re s > 0, got {s}")));
    }
    Ok(())
}

/// `M_n^m(s)`: prefactor times exact polynomial for even `m`, the three-term
/// recursion for odd `m`, exact zero for `m > n`.
pub fn mellin_closed(n: u32, m: u32, s: &HPComplex) -> Result<HPComplex> {
    if m > n {
        return Ok(HPComplex::zero(s.prec()));
    }
    check_domain(s)?;
    if m % 2 == 0 {
        poly_factor(n, m)?.eval(s)
    } else {
        recursion_table(n, m, s)
    }
}

/// `M_m^m(s) = (-1)^m (2m-1)!! Gamma(s/2) Gamma((m+1)/2) / (2 Gamma((s+m+1)/2))`.
pub fn mellin_diagonal(m: u32, s: &HPComplex) -> Result<HPComplex> {
    let p = s.prec();
    let df = HPComplex::from_real(Float::with_val(p, double_factorial(2 * m as i64 - 1)));
    let g = gamma(&s.div_i64(2))? * gamma(&HPComplex::from_ratio(m as i64 + 1, 2, p))?
        * rgamma(&s.add_i64(m as i64 + 1).div_i64(2));
    let v = (df * g).div_i64(2);
    Ok(if m % 2 == 1 { -v } else { v })
}

/// `M_n^m(s)` from the three-term recursion in `n`, seeded by the diagonal
/// closed form; used for odd `m` and as an oracle for the polynomial route.
pub fn mellin_recursive(n: u32, m: u32, s: &HPComplex) -> Result<HPComplex> {
    if m > n {
        return Ok(HPComplex::zero(s.prec()));
    }
    check_domain(s)?;
    recursion_table(n, m, s)
}

fn recursion_table(n: u32, m: u32, s: &HPComplex) -> Result<HPComplex> {
    let p = s.prec();
    let w = p + 32 + 2 * n;
    let sw = s.with_prec(w);
    let span = (n - m) as usize;
    // rows[j] holds M_k^m(s + j) for the current k
    let diag: Vec<HPComplex> =
        (0..=span + 1).map(|j| mellin_diagonal(m, &sw.add_i64(j as i64))).collect::<Result<_>>()?;
    let mut older = diag.clone();
    let mut cur: Vec<HPComplex> = (0..=span).map(|j| diag[j + 1].mul_i64(2 * m as i64 + 1)).collect();
    if span == 0 {
        return Ok(older[0].with_prec(p));
    }
    for k in (m + 2)..=n {
        let len = (n - k) as usize + 1;
        let next: Vec<HPComplex> = (0..len)
            .map(|j| {
                let a = cur[j + 1].mul_i64(2 * k as i64 - 1);
                let b = older[j].mul_i64((k + m - 1) as i64);
                (a - b).div_i64((k - m) as i64)
            })
            .collect();
        older = cur;
        cur = next;
    }
    Ok(cur[0].with_prec(p))
}

/// Gamma-ratio form of `M_n^1(s)`:
/// `Gamma(s/2) Gamma((s+1)/2) / (Gamma((s-n)/2) Gamma((s+n+1)/2)) - 1`.
pub fn m1_gamma_ratio(n: u32, s: &HPComplex) -> Result<HPComplex> {
    check_domain(s)?;
    let p = s.prec();
    let w = p + 16;
    let sw = s.with_prec(w);
    let v = gamma(&sw.div_i64(2))? * gamma(&sw.add_i64(1).div_i64(2))?
        * rgamma(&sw.add_i64(-(n as i64)).div_i64(2))
        * rgamma(&sw.add_i64(n as i64 + 1).div_i64(2));
    Ok(v.add_i64(-1).with_prec(p))
}

fn rising(a: &RationalPolynomial, k: u32) -> RationalPolynomial {
    let mut acc = RationalPolynomial::constant(Rational::from(1));
    for j in 0..k {
        acc = acc.mul(&a.add(&RationalPolynomial::constant(Rational::from(j))));
    }
    acc
}

/// `(num, den)` with `M_n^1 = num / den`, read off the gamma-ratio form as
/// Pochhammer products.
pub fn m1_rational_function(n: u32) -> (RationalPolynomial, RationalPolynomial) {
    let half = Rational::from((1, 2));
    let lin = |b: i64| RationalPolynomial::linear(half.clone(), Rational::from((b, 2)));
    let (num, den) = if n % 2 == 0 {
        // Gamma(s/2)/Gamma((s-n)/2) = ((s-n)/2)_{n/2}; Gamma((s+1)/2)/Gamma((s+n+1)/2) = 1/((s+1)/2)_{n/2}
        (rising(&lin(-(n as i64)), n / 2), rising(&lin(1), n / 2))
    } else {
        let h = (n + 1) / 2;
        (rising(&lin(-(n as i64)), h), rising(&lin(0), h))
    };
    (num.sub(&den), den)
}

/// Exact `M_n^1(s)` at rational `s > 0` from the recursion seeded by
/// `M_1^1 = -1/s` and `M_2^1(s) = 3 M_1^1(s+1)`.
pub fn m1_exact(n: u32, s: &Rational) -> Rational {
    if n == 0 {
        return Rational::new();
    }
    let span = (n - 1) as usize;
    let diag = |j: usize| -Rational::from(1) / Rational::from(s + j as u32);
    let mut older: Vec<Rational> = (0..=span + 1).map(diag).collect();
    let mut cur: Vec<Rational> = (0..=span).map(|j| diag(j + 1) * 3u32).collect();
    if n == 1 {
        return older.swap_remove(0);
    }
    for k in 3..=n {
        let len = (n - k) as usize + 1;
        let next: Vec<Rational> = (0..len)
            .map(|j| {
                let a = Rational::from(&cur[j + 1] * (2 * k - 1));
                let b = Rational::from(&older[j] * k);
                (a - b) / (k - 1)
            })
            .collect();
        older = cur;
        cur = next;
    }
    cur.swap_remove(0)
}

/// Outcome of the exact rationality check for `M_n^1`.
#[derive(Clone, Debug)]
pub struct M1Rationality {
    pub n: u32,
    /// Numerator recovered by interpolating `den(s) M_n^1(s)` at `deg + 1` points.
    pub interpolated: RationalPolynomial,
    pub matches_gamma_form: bool,
    pub matches_extra_points: bool,
}

impl M1Rationality {
    pub fn passed(&self) -> bool {
        self.matches_gamma_form && self.matches_extra_points
    }
}

/// Interpolates `den(s) M_n^1(s)` from exact recursion values and checks the
/// result against the gamma-ratio numerator and at ten further points.
pub fn m1_rationality(n: u32) -> M1Rationality {
    let (num, den) = m1_rational_function(n);
    let deg = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
    let at = |k: usize| Rational::from((2 * k as i64 + 3, 2));
    let pts: Vec<(Rational, Rational)> = (0..=deg)
        .map(|k| {
            let s = at(k);
            let y = m1_exact(n, &s) * den.eval_rational(&s);
            (s, y)
        })
        .collect();
    let interp = RationalPolynomial::interpolate(&pts);
    let extra = (deg + 1..deg + 11).all(|k| {
        let s = at(k);
        interp.eval_rational(&s) == m1_exact(n, &s) * den.eval_rational(&s)
    });
    M1Rationality { n, matches_gamma_form: interp == num, matches_extra_points: extra, interpolated: interp }
}
