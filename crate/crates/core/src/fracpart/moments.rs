//! `int_0^1 {1/t}^a [1/t]^b t^(s-1) dt`: zeta closed forms and the k-sum oracle.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::mpcore::{log2_abs, HPComplex};
use crate::quad::{tanh_sinh, QuadOptions};
use crate::specfun::{hurwitz_zeta, riemann_zeta};

use super::zeta_comb::{basic_combination, moment_c, moment_c_limit, moment_d, moment_d_limit};

/// Parameters of `int_0^1 {1/t}^alpha [1/t]^beta t^(s-1) (1 - t^b)^(-alpha_denom) dt`.
#[derive(Clone, Debug)]
pub struct FracIntegralSpec {
    pub alpha: HPComplex,
    pub beta: u32,
    pub s: HPComplex,
    pub b: Float,
    pub alpha_denom: HPComplex,
}

impl FracIntegralSpec {
    /// No `(1 - t^b)` weight.
    pub fn moment(alpha: HPComplex, beta: u32, s: HPComplex) -> Self {
        let p = s.prec();
        Self { alpha, beta, s, b: Float::with_val(p, 1u32), alpha_denom: HPComplex::zero(p) }
    }

    pub fn weighted(s: HPComplex, b: Float, alpha_denom: HPComplex) -> Self {
        let p = s.prec();
        Self { alpha: HPComplex::one(p), beta: 0, s, b, alpha_denom }
    }

    pub fn prec(&self) -> u32 {
        self.s.prec()
    }
}

/// `int_0^1 {1/t} t^(s-1) dt = 1/(s-1) - zeta(s)/s`.
pub fn frac_basic(s: &HPComplex) -> Result<HPComplex> {
    if *s.re() <= 1 {
        return Err(Error::Domain(format!("needs Re s > 1, got {s}")));
    }
    let w = s.prec() + 16;
    let sw = s.with_prec(w);
    let v = sw.add_i64(-1).recip() - riemann_zeta(&sw)? / &sw;
    Ok(v.with_prec(s.prec()))
}

/// Closed forms for `alpha` in `{1, 2}`. At the boundary integers `s = beta + 1`
/// (`alpha = 1`) and `s = beta + 2` (`alpha = 2`) the explicit limit formulas are used.
pub fn frac_int_moments(spec: &FracIntegralSpec) -> Result<HPComplex> {
    let s = &spec.s;
    let beta = spec.beta;
    match spec.alpha.as_integer() {
        Some(1) => {
            if *s.re() <= beta {
                return Err(Error::Domain(format!("needs Re s > {beta}, got {s}")));
            }
            if beta == 0 {
                return frac_basic(s);
            }
            if s.as_integer() == Some(beta as i64 + 1) {
                return moment_c_limit(beta, s.prec());
            }
            moment_c(beta)?.eval(s)
        }
        Some(2) => {
            if *s.re() <= beta + 1 {
                return Err(Error::Domain(format!("needs Re s > {}, got {s}", beta + 1)));
            }
            if beta > 0 && s.as_integer() == Some(beta as i64 + 2) {
                return moment_d_limit(beta, s.prec());
            }
            moment_d(beta).eval(s)
        }
        _ => Err(Error::Domain(format!("closed forms exist for alpha in {{1, 2}}, got {}", spec.alpha))),
    }
}

/// The zeta combination behind [`frac_int_moments`] (for exact comparisons).
pub fn frac_int_combination(alpha: u32, beta: u32) -> Result<super::ZetaCombination> {
    match (alpha, beta) {
        (1, 0) => Ok(basic_combination()),
        (1, n) => moment_c(n),
        (2, n) => Ok(moment_d(n)),
        _ => Err(Error::Domain(format!("closed forms exist for alpha in {{1, 2}}, got {alpha}"))),
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub value: HPComplex,
    /// Quadrature error estimates plus the truncation of the tail expansion.
    pub error: Float,
    /// Contribution of `k > K`.
    pub tail: HPComplex,
    /// Comparison bound `sum_{k > K} k^(beta - s - 1) / (alpha + 1)` on the tail (real data).
    pub tail_bound: Option<Float>,
    /// `(1/(alpha+1)) sum k^beta / (k+1)^(s+1)` and `(1/(alpha+1)) zeta(s + 1 - beta)` (real data).
    pub sandwich: Option<(Float, Float)>,
    pub terms: usize,
}

impl OracleResult {
    pub fn within_sandwich(&self) -> Option<bool> {
        self.sandwich.as_ref().map(|(lo, hi)| {
            let v = self.value.re();
            *lo < *v && *v < *hi
        })
    }
}

/// `int_a^b v^(-p) dv`.
fn pow_integral(p: &HPComplex, a: i64, b: i64) -> HPComplex {
    let w = p.prec();
    let (fa, fb) = (HPComplex::from_i64(a, w), HPComplex::from_i64(b, w));
    if p.as_integer() == Some(1) {
        return HPComplex::from_real(Float::with_val(w, fb.re().ln_ref()) - Float::with_val(w, fa.re().ln_ref()));
    }
    let e = (-p).add_i64(1);
    (&fb.pow(&e) - &fa.pow(&e)) / e
}

/// `int_0^1 u^alpha (u + k)^(-s-1) du` for `alpha` in `{1, 2}` via `v = u + k`.
fn inner_exact(alpha: i64, k: i64, s: &HPComplex) -> HPComplex {
    let p = |off: i64| s.add_i64(off);
    let (a, b) = (k, k + 1);
    match alpha {
        // int (v - k) v^(-s-1)
        1 => &pow_integral(&p(0), a, b) - &pow_integral(&p(1), a, b).mul_i64(k),
        // int (v - k)^2 v^(-s-1)
        _ => {
            &(&pow_integral(&p(-1), a, b) - &pow_integral(&p(0), a, b).mul_i64(2 * k))
                + &pow_integral(&p(1), a, b).mul_i64(k * k)
        }
    }
}

fn u_pow(u: &Float, a: &HPComplex, w: u32) -> HPComplex {
    if let Some(k) = a.as_integer() {
        return HPComplex::from_real(Float::with_val(w, u.pow(k as i32)));
    }
    (a * &HPComplex::from_real(Float::with_val(w, u.ln_ref()))).exp()
}

fn inner_quad(alpha: &HPComplex, k: i64, s: &HPComplex, w: u32) -> (HPComplex, Float) {
    let e = (-s).add_i64(-1);
    let q = tanh_sinh(
        |u, _| {
            let v = HPComplex::from_real(Float::with_val(w, u + k));
            u_pow(u, alpha, w) * v.pow(&e)
        },
        QuadOptions::new(w).tol_bits(w - 24).max_level(14).exec(Exec::Sequential),
    );
    (q.value, q.error)
}

/// `sum_k k^beta int_0^1 u^alpha (u + k)^(-s-1) du`: inner integrals exact for
/// `alpha` in `{1, 2}` and by quadrature otherwise, summed for `k <= K`; the
/// remainder expands `(u + k)^(-s-1)` in `u / k`, giving
/// `sum_r binom(-s-1, r) / (alpha + r + 1) zeta(s + 1 + r - beta, K + 1)`.
pub fn numeric_fracpart_oracle(spec: &FracIntegralSpec, tol_bits: u32) -> Result<OracleResult> {
    if !spec.alpha_denom.is_zero() {
        return super::general::frac_general_oracle(&spec.s, &spec.b, &spec.alpha_denom, tol_bits);
    }
    let s = &spec.s;
    let beta = spec.beta as i64;
    if *spec.alpha.re() <= -1 {
        return Err(Error::Domain(format!("needs Re alpha > -1, got {}", spec.alpha)));
    }
    if *s.re() <= beta {
        return Err(Error::Domain(format!("needs Re s > {beta}, got {s}")));
    }
    let w = tol_bits + 32;
    let sw = s.with_prec(w);
    let alpha = spec.alpha.with_prec(w);
    let kk: i64 = 32;
    let exact = matches!(alpha.as_integer(), Some(1) | Some(2));
    let pieces = exec::map_range(Exec::Auto, 1..kk as usize + 1, |k| {
        let k = k as i64;
        let (v, e) = if exact {
            (inner_exact(alpha.as_integer().unwrap_or(1), k, &sw), Float::with_val(64, 0u32))
        } else {
            inner_quad(&alpha, k, &sw, w)
        };
        let kb = HPComplex::from_real(Float::with_val(w, Float::with_val(w, k).pow(beta as i32)));
        let e = Float::with_val(64, &e * kb.re());
        (v * kb, e)
    });
    let mut head = HPComplex::zero(w);
    let mut error = Float::with_val(64, 0u32);
    for (v, e) in &pieces {
        head += v;
        error += e;
    }

    let a = HPComplex::from_i64(kk + 1, w);
    let mut tail = HPComplex::zero(w);
    let mut binom = HPComplex::one(w);
    let ms1 = (-&sw).add_i64(-1);
    let mut r = 0i64;
    loop {
        let z = hurwitz_zeta(&sw.add_i64(1 + r - beta), &a)?;
        let t = &binom * &z / alpha.add_i64(r + 1);
        let mag = log2_abs(&t.abs());
        tail += &t;
        r += 1;
        if mag - log2_abs(&tail.abs()) < -(w as f64) {
            error += Float::with_val(64, t.abs());
            break;
        }
        if r > 4 * w as i64 {
            return Err(Error::Convergence("oracle tail expansion did not settle".into()));
        }
        binom = (&binom * &ms1.add_i64(-(r - 1))).div_i64(r);
    }
    let value = &head + &tail;
    let p = spec.prec();

    let real = s.is_real() && alpha.is_real();
    let (tail_bound, sandwich) = if real {
        let a1 = Float::with_val(w, alpha.re() + 1u32);
        let ub = hurwitz_zeta(&sw.add_i64(1 - beta), &a)?;
        let tb = Float::with_val(64, ub.re() / &a1);
        // sum_{k>=1} k^beta (k+1)^(-s-1) = sum_i C(beta,i)(-1)^(beta-i) (zeta(s+1-i) - 1)
        let mut lo = Float::with_val(w, 0u32);
        for i in 0..=beta {
            let c = rug::Integer::from(rug::Integer::binomial_u(beta as u32, i as u32));
            let z = hurwitz_zeta(&sw.add_i64(1 - i), &HPComplex::from_i64(2, w))?;
            let term = Float::with_val(w, z.re() * &c);
            if (beta - i) % 2 == 0 {
                lo += term;
            } else {
                lo -= term;
            }
        }
        let hi = riemann_zeta(&sw.add_i64(1 - beta))?;
        (Some(tb), Some((Float::with_val(p, lo / &a1), Float::with_val(p, hi.re() / &a1))))
    } else {
        (None, None)
    };
    Ok(OracleResult {
        value: value.with_prec(p),
        error,
        tail: tail.with_prec(p),
        tail_bound,
        sandwich,
        terms: kk as usize + r as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::riemann_zeta;

    fn close(a: &HPComplex, b: &HPComplex, bits: f64) -> bool {
        log2_abs(&(a - b).abs()) < -bits
    }

    #[test]
    fn basic_examples() {
        let p = 128;
        let s2 = HPComplex::from_i64(2, p);
        let pi2 = HPComplex::pi(p).square();
        let want = (-pi2.div_i64(12)).add_i64(1);
        assert!(close(&frac_basic(&s2).unwrap(), &want, 120.0));
        let s3 = HPComplex::from_i64(3, p);
        let want = &HPComplex::from_ratio(1, 2, p) - &riemann_zeta(&s3).unwrap().div_i64(3);
        assert!(close(&frac_basic(&s3).unwrap(), &want, 120.0));
        assert!(frac_basic(&HPComplex::from_i64(1, p)).is_err());

        let s = HPComplex::from_ratio(5, 2, p);
        let o = numeric_fracpart_oracle(&FracIntegralSpec::moment(HPComplex::one(p), 0, s.clone()), 100).unwrap();
        assert!(close(&o.value, &frac_basic(&s).unwrap(), 90.0));
    }

    #[test]
    fn moments_match_oracle() {
        let p = 128;
        for (alpha, beta, s) in [(1, 1, (2, 1)), (1, 1, (5, 2)), (1, 2, (3, 1)), (1, 3, (9, 2)), (2, 0, (5, 2)), (2, 1, (3, 1)), (2, 2, (9, 2)), (2, 3, (5, 1))] {
            let spec = FracIntegralSpec::moment(HPComplex::from_i64(alpha, p), beta, HPComplex::from_ratio(s.0, s.1, p));
            let c = frac_int_moments(&spec).unwrap();
            let o = numeric_fracpart_oracle(&spec, 100).unwrap();
            assert!(close(&c, &o.value, 90.0), "alpha={alpha} beta={beta} s={s:?}");
            assert_eq!(o.within_sandwich(), Some(true));
        }
    }

    #[test]
    fn fractional_alpha_oracle() {
        // alpha = 1/2, beta = 0: compare quadrature inner integrals with alpha = 1 scaled sandwich
        let p = 96;
        let spec = FracIntegralSpec::moment(HPComplex::from_ratio(1, 2, p), 1, HPComplex::from_i64(3, p));
        let o = numeric_fracpart_oracle(&spec, 64).unwrap();
        assert_eq!(o.within_sandwich(), Some(true));
        assert!(log2_abs(&o.error) < -50.0);
    }

    #[test]
    fn domain_errors() {
        let p = 64;
        let spec = FracIntegralSpec::moment(HPComplex::one(p), 2, HPComplex::from_i64(2, p));
        assert!(frac_int_moments(&spec).is_err());
        let spec = FracIntegralSpec::moment(HPComplex::from_i64(2, p), 1, HPComplex::from_i64(2, p));
        assert!(frac_int_moments(&spec).is_err());
    }
}
