//! `int_0^1 {1/x} {1/(1-x)} x^(s-1) dx` for integer `s >= 1`.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::mpcore::{log2_abs, HPComplex};
use crate::quad::{tanh_sinh, Quad, QuadOptions};
use crate::specfun::{hurwitz_zeta, polygamma, polygamma_at_one};

/// `S_n(u) = sum_{k>=2} (u+k)^-(n+1) (u+k-1)^-1`.
#[derive(Clone, Debug)]
pub struct Sublemma {
    pub order: u32,
    pub u: HPComplex,
}

impl Sublemma {
    pub fn new(order: u32, u: HPComplex) -> Result<Self> {
        if *u.re() <= -1 {
            return Err(Error::Domain(format!("needs Re u > -1, got {u}")));
        }
        Ok(Self { order, u })
    }

    /// `sum_{l=0}^n (-1)^l / l! psi^(l)(u+2) - psi(u+1)`.
    pub fn polygamma_form(&self) -> Result<HPComplex> {
        let w = self.u.prec() + 16;
        let u = self.u.with_prec(w);
        let u2 = u.add_i64(2);
        let mut acc = -polygamma(0, &u.add_i64(1))?;
        let mut fact = Float::with_val(w, 1u32);
        for l in 0..=self.order {
            if l > 0 {
                fact *= l;
            }
            let t = polygamma(l, &u2)?.scale(&Float::with_val(w, fact.recip_ref()));
            if l % 2 == 0 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        Ok(acc.with_prec(self.u.prec()))
    }

    /// `1/(1+u) - sum_{k=0}^{n-1} zeta(k+2, u+2)`.
    pub fn zeta_form(&self) -> Result<HPComplex> {
        let w = self.u.prec() + 16;
        let u = self.u.with_prec(w);
        let mut acc = u.add_i64(1).recip();
        for k in 0..self.order as i64 {
            acc -= &hurwitz_zeta(&HPComplex::from_i64(k + 2, w), &u.add_i64(2))?;
        }
        Ok(acc.with_prec(self.u.prec()))
    }

    /// Direct summation to `K`, then `(x-1)^-1 = sum_j x^-(j+1)` under the sum.
    pub fn series(&self) -> Result<HPComplex> {
        let w = self.u.prec() + 16;
        let u = self.u.with_prec(w);
        let kk = 16i64;
        let n1 = self.order as i64 + 1;
        let mut acc = HPComplex::zero(w);
        for k in 2..=kk {
            let x = u.add_i64(k);
            acc += &(x.powi(-n1) * x.add_i64(-1).recip());
        }
        let a = u.add_i64(kk + 1);
        let mut j = 0i64;
        loop {
            let t = hurwitz_zeta(&HPComplex::from_i64(n1 + 1 + j, w), &a)?;
            acc += &t;
            j += 1;
            if log2_abs(&t.abs()) - log2_abs(&acc.abs()) < -(w as f64) {
                break;
            }
        }
        Ok(acc.with_prec(self.u.prec()))
    }
}

/// `B(s) = sum_{l=1}^s (-1)^l / l! psi^(l-1)(1) + 1/2 - H_s + (1 - s 2^(s-1)) / (s 2^s)`.
fn constant_part(s: u32, w: u32) -> HPComplex {
    let mut acc = Float::with_val(w, 0u32);
    let mut fact = Integer::from(1);
    for l in 1..=s {
        fact *= l;
        let t = polygamma_at_one(l, w) / Float::with_val(w, &fact);
        if l % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    let mut h = Rational::new();
    for k in 1..=s {
        h += Rational::from((1, k));
    }
    let two_s = Integer::from(Integer::u_pow_u(2, s));
    let tail = Rational::from((Integer::from(1) - Integer::from(s) * Integer::from(&two_s >> 1), Integer::from(s) * two_s));
    let r = Rational::from((1, 2)) - h + tail;
    HPComplex::from_real(acc + Float::with_val(w, &r))
}

/// `int_0^1 u (u + A)^-q` summed over the expansion of `(1 + 1/x)^(-s-1)`:
/// `sum_{k>=A} int_0^1 u (u+k)^(s-2) (u+k+1)^(-s-1) du`.
fn pair_tail(s: u32, a: i64, w: u32) -> Result<HPComplex> {
    let fa = HPComplex::from_i64(a, w);
    let mut acc = HPComplex::zero(w);
    let mut binom = Rational::from(1);
    let e = -(s as i64) - 1;
    for j in 0i64.. {
        let q = 3 + j;
        // int_0^1 u zeta(q, u + A) du = A^(2-q)/((q-1)(q-2)) - zeta(q-1, A+1)/(q-1)
        let m = fa.powi(2 - q).div_i64((q - 1) * (q - 2)) - hurwitz_zeta(&HPComplex::from_i64(q - 1, w), &fa.add_i64(1))?.div_i64(q - 1);
        let t = m.mul_rational(&binom);
        acc += &t;
        if !t.is_zero() && log2_abs(&t.abs()) - log2_abs(&acc.abs()) < -(w as f64) {
            break;
        }
        if j > 16 * w as i64 {
            return Err(Error::Convergence("pair-integral tail did not settle".into()));
        }
        binom = binom * Rational::from(e - j) / Rational::from(j + 1);
    }
    Ok(acc)
}

fn quad_opts(w: u32) -> QuadOptions {
    QuadOptions::new(w).tol_bits(w - 24).max_level(14).exec(Exec::Sequential)
}

fn converged(q: Quad) -> Result<Quad> {
    if q.converged {
        Ok(q)
    } else {
        Err(Error::Convergence(format!("quadrature stopped at level {}", q.level)))
    }
}

/// Assembled value `B(s) + A(s)`,
/// `A(s) = sum_{k>=1} int_0^1 u (u+k)^(s-2) (u+k+1)^(-s-1) du`
/// (pieces by quadrature for `k <= 8`, the rest through Hurwitz moments).
pub fn frac_pair_integral(s: u32, prec: u32) -> Result<HPComplex> {
    if s == 0 {
        return Err(Error::Domain("needs integer s >= 1".into()));
    }
    let w = prec + 32;
    let kk = 8usize;
    let si = s as i64;
    let pieces = exec::map_range(Exec::Auto, 1..kk + 1, |k| {
        converged(tanh_sinh(
            |u, _| {
                let x = HPComplex::from_real(Float::with_val(w, u + k as u32));
                HPComplex::from_real(u.clone()) * x.powi(si - 2) * x.add_i64(1).powi(-si - 1)
            },
            quad_opts(w),
        ))
    });
    let mut a = pair_tail(s, kk as i64 + 1, w)?;
    for q in pieces {
        a += &q?.value;
    }
    Ok((constant_part(s, w) + a).with_prec(prec))
}

#[derive(Clone, Debug)]
pub struct PairOracle {
    pub value: HPComplex,
    /// Quadrature differences plus the size of the last Euler-Maclaurin correction.
    pub error: Float,
}

/// Direct quadrature of the defining integral, split at `x = 1/2`:
/// on `(0, 1/2]` with `v = 1/x`, on `[1/2, 1)` with `w = 1/(1-x)`; both become
/// `sum_{k>=2} int_0^1 u g(u + k) du` with
/// `g(v) = v^(-s-1) / (v - 1) + v^-3 (1 - 1/v)^(s-2)`.
/// Pieces `k <= K` by tanh-sinh; the rest by the midpoint Euler-Maclaurin rule
/// `sum_{k>K} H(k) = int_{K+1/2}^inf H + H'(K+1/2)/24 + ...`.
pub fn frac_pair_oracle(s: u32, prec: u32) -> Result<PairOracle> {
    if s == 0 {
        return Err(Error::Domain("needs integer s >= 1".into()));
    }
    let w = prec + 32;
    let si = s as i64;
    let g = move |v: &HPComplex| -> HPComplex {
        let inv = v.recip();
        v.powi(-si - 1) / v.add_i64(-1) + inv.powi(3) * (-&inv).add_i64(1).powi(si - 2)
    };
    let dg = move |v: &HPComplex| -> HPComplex {
        let inv = v.recip();
        let vm1 = v.add_i64(-1);
        let one_minus = (-&inv).add_i64(1);
        let a = v.powi(-si - 2).mul_i64(-si - 1) / &vm1 - v.powi(-si - 1) / vm1.square();
        let b = inv.powi(4).mul_i64(-3) * one_minus.powi(si - 2) + inv.powi(5) * one_minus.powi(si - 3).mul_i64(si - 2);
        a + b
    };
    let h = |k: &Float, f: &(dyn Fn(&HPComplex) -> HPComplex + Sync)| -> Result<Quad> {
        converged(tanh_sinh(
            |u, _| HPComplex::from_real(u.clone()) * f(&HPComplex::from_real(Float::with_val(w, u + k))),
            quad_opts(w),
        ))
    };
    let kk = 200usize;
    let pieces = exec::map_range(Exec::Auto, 2..kk + 1, |k| h(&Float::with_val(w, k as u32), &g));
    let mut value = HPComplex::zero(w);
    let mut error = Float::with_val(64, 0u32);
    for q in pieces {
        let q = q?;
        value += &q.value;
        error += &q.error;
    }
    // int_{c}^inf H(k) dk with k = c / t
    let c = Float::with_val(w, kk as f64 + 0.5);
    let tail = converged(tanh_sinh(
        |t, _| {
            if t.is_zero() {
                return HPComplex::zero(w);
            }
            let k = Float::with_val(w, &c / t);
            let inner = h(&k, &g).map(|q| q.value).unwrap_or_else(|_| HPComplex::zero(w));
            inner.scale(&Float::with_val(w, &k / t))
        },
        QuadOptions::new(w).tol_bits(w / 2).max_level(10).exec(Exec::Auto),
    ))?;
    let corr = h(&c, &dg)?.value.div_i64(24);
    value += &tail.value;
    value += &corr;
    error += &tail.error;
    error += Float::with_val(64, corr.abs()) >> 6;
    Ok(PairOracle { value: value.with_prec(prec), error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::euler_gamma;

    fn close(a: &HPComplex, b: &HPComplex, bits: f64) -> bool {
        log2_abs(&(a - b).abs()) < -bits
    }

    #[test]
    fn sublemma_forms_agree() {
        let p = 128;
        let s1 = Sublemma::new(1, HPComplex::zero(p)).unwrap();
        let pi = HPComplex::pi(p);
        let want = (-pi.square().div_i64(6)).add_i64(2);
        assert!(close(&s1.polygamma_form().unwrap(), &want, 120.0));
        for n in 1..=6 {
            for u in [HPComplex::zero(p), HPComplex::from_ratio(1, 2, p), HPComplex::one(p)] {
                let sl = Sublemma::new(n, u.clone()).unwrap();
                let a = sl.polygamma_form().unwrap();
                assert!(close(&a, &sl.zeta_form().unwrap(), 115.0), "n={n}");
                assert!(close(&a, &sl.series().unwrap(), 115.0), "n={n}");
                // S_n = S_{n-1} - zeta(n+1, u+2), with S_0 = 1/(1+u)
                let prev = Sublemma::new(n - 1, u.clone()).unwrap().zeta_form().unwrap();
                let z = hurwitz_zeta(&HPComplex::from_i64(n as i64 + 1, p), &u.add_i64(2)).unwrap();
                assert!(close(&a, &(prev - z), 115.0), "n={n}");
            }
        }
    }

    #[test]
    fn pair_values() {
        let p = 128;
        let g = HPComplex::from_real(euler_gamma(p));
        let v1 = frac_pair_integral(1, p).unwrap();
        assert!(close(&v1, &g.mul_i64(2).add_i64(-1), 110.0));
        let v2 = frac_pair_integral(2, p).unwrap();
        assert!(close(&v2, &(&g - &HPComplex::from_ratio(1, 2, p)), 110.0));
        let frozen = HPComplex::parse("0.0452536003412623842063375310902", p).unwrap();
        assert!(close(&frac_pair_integral(3, p).unwrap(), &frozen, 95.0));
    }

    #[test]
    fn pair_oracle_matches() {
        for s in [1u32, 2] {
            let o = frac_pair_oracle(s, 96).unwrap();
            let v = frac_pair_integral(s, 96).unwrap();
            let d = log2_abs(&(&o.value - &v).abs());
            assert!(d < -30.0, "s={s} diff 2^{d}");
        }
    }
}
