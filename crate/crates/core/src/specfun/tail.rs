//! Summation of slowly convergent series whose term ratio is `z R(1/k)`.
//!
//! The series is summed directly up to an index `K` and the remainder is
//! written as `t_K K^e Phi(1/K)`, with `e = 1` when `z = 1` and `e = 0`
//! otherwise. The coefficients of `Phi` follow from the telescoping relation
//! `T_K - T_{K+1} = t_K` matched order by order in `u = 1/K`.

use rug::Float;

use crate::error::{Error, Result};
use crate::mpcore::{log2_abs, HPComplex};

/// Truncated power series in one variable.
#[derive(Clone, Debug)]
pub(crate) struct Series(pub Vec<HPComplex>);

impl Series {
    pub fn one(len: usize, prec: u32) -> Self {
        let mut v = vec![HPComplex::zero(prec); len];
        v[0] = HPComplex::one(prec);
        Series(v)
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.0.len().min(other.0.len());
        let p = self.0[0].prec();
        let mut out = vec![HPComplex::zero(p); n];
        for (i, a) in self.0.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate().take(n - i) {
                out[i + j] += &(a * b);
            }
        }
        Series(out)
    }

    /// Multiply by `1 + c u`.
    pub fn mul_linear(&self, c: &HPComplex) -> Series {
        let mut out = self.0.clone();
        for k in (1..out.len()).rev() {
            let t = &self.0[k - 1] * c;
            out[k] += &t;
        }
        Series(out)
    }

    /// Divide by `1 + c u`.
    pub fn div_linear(&self, c: &HPComplex) -> Series {
        let mut out = self.0.clone();
        for k in 1..out.len() {
            let t = &out[k - 1] * c;
            out[k] -= &t;
        }
        Series(out)
    }

    /// `log(1 + c u)`.
    pub fn log1p_linear(c: &HPComplex, len: usize) -> Series {
        let p = c.prec();
        let mut v = vec![HPComplex::zero(p); len];
        let mut pw = c.clone();
        for (k, slot) in v.iter_mut().enumerate().skip(1) {
            let t = pw.div_i64(k as i64);
            *slot = if k % 2 == 1 { t } else { -t };
            pw = &pw * c;
        }
        Series(v)
    }

    /// `exp(f)` for a series with zero constant term.
    pub fn exp(&self) -> Series {
        let n = self.0.len();
        let p = self.0[0].prec();
        let mut g = vec![HPComplex::zero(p); n];
        g[0] = HPComplex::one(p);
        // g' = f' g
        for k in 1..n {
            let mut acc = HPComplex::zero(p);
            for j in 1..=k {
                acc += &(&self.0[j].mul_i64(j as i64) * &g[k - j]);
            }
            g[k] = acc.div_i64(k as i64);
        }
        Series(g)
    }

    pub fn scale(&self, c: &HPComplex) -> Series {
        Series(self.0.iter().map(|x| x * c).collect())
    }
}

/// Description of a series `sum_k t_k` with `t_{k+1} = t_k z ratio(k)` and
/// `ratio(k) = R(1/k)` for `k >= 1`.
pub(crate) struct RatioSeries<'a> {
    pub z: HPComplex,
    pub t0: HPComplex,
    /// `ratio(k, prec)`: exact ratio `t_{k+1} / (z t_k)`.
    pub ratio: &'a (dyn Fn(u64, u32) -> HPComplex + Sync),
    /// Coefficients of `R(u)` through order `len - 1` at the given precision.
    pub r_series: &'a (dyn Fn(usize, u32) -> Series + Sync),
    /// Rough magnitude of the parameters; sets the switch-over index.
    pub scale: f64,
}

/// Coefficients of `Phi` up to the point where `phi_n K^{-n}` is negligible.
/// Returns `None` if the asymptotic series starts growing before converging.
fn tail_factor(q: &[HPComplex], z_is_one: bool, kk: u64, tol: f64) -> Option<HPComplex> {
    let m_max = q.len() - 2;
    let p = q[0].prec();
    let one_minus_z = (-&q[0]).add_i64(1);
    // v[n] = sum over known m of phi_m C[m][n]; w[n] is final once phi_n is known.
    let mut v = vec![HPComplex::zero(p); m_max + 2];
    let inv_k = HPComplex::from_real(Float::with_val(p, 1u32) / Float::with_val(p, kk));
    let mut upow = HPComplex::one(p);
    let mut total = HPComplex::zero(p);
    let mut least = f64::INFINITY;
    let mut small = 0;

    for n in 0..=m_max {
        let phi_n = if z_is_one {
            // phi_n (n - q_1) = [n = 0] + v[n+1] + q_1 v[n] + sum_{j>=2} q_j w[n+1-j]
            let mut rhs = &v[n + 1] + &(&q[1] * &v[n]);
            if n == 0 {
                rhs = rhs.add_i64(1);
            }
            for j in 2..=n + 1 {
                rhs += &(&q[j] * &v[n + 1 - j]);
            }
            let den = (-&q[1]).add_i64(n as i64);
            rhs / den
        } else {
            // (1 - z) phi_n = [n = 0] + q_0 v[n] + sum_{j>=1} q_j w[n-j]
            let mut rhs = &q[0] * &v[n];
            if n == 0 {
                rhs = rhs.add_i64(1);
            }
            for j in 1..=n {
                rhs += &(&q[j] * &v[n - j]);
            }
            rhs / &one_minus_z
        };
        // C[n][nn] = binom(-n, nn - n), advanced by C[n][nn+1] = -nn C[n][nn] / (nn + 1 - n)
        if n == 0 {
            v[0] += &phi_n;
        } else {
            let mut c = Float::with_val(p, 1u32);
            for nn in n..v.len() {
                v[nn] += &phi_n.scale(&c);
                c *= -(nn as i64);
                c /= (nn + 1 - n) as u64;
            }
        }
        let term = &phi_n * &upow;
        let mag = log2_abs(&term.abs());
        total += &term;
        // single coefficients can vanish exactly; require two in a row
        if mag < log2_abs(&total.abs()) + tol {
            small += 1;
            if small == 2 {
                return Some(total);
            }
        } else {
            small = 0;
        }
        if n > 8 && mag > least + 8.0 {
            return None;
        }
        if !term.is_zero() {
            least = least.min(mag);
        }
        upow = &upow * &inv_k;
    }
    None
}

/// Sums the series to relative accuracy `2^-prec`.
pub(crate) fn sum_ratio_series(rs: &RatioSeries, prec: u32) -> Result<HPComplex> {
    let z_is_one = rs.z.as_integer() == Some(1);
    let mut guard = 32u32;
    for _ in 0..4 {
        let w = prec + guard;
        let z = rs.z.with_prec(w);
        let mut kk = (prec as f64 + 24.0 * rs.scale).ceil() as u64;
        let mut t = rs.t0.with_prec(w);
        let mut s = HPComplex::zero(w);
        let mut k = 0u64;
        let mut max_mag = f64::NEG_INFINITY;
        let m_len = (prec as usize / 3).max(48);
        let ew = w + 2 * m_len as u32;
        let r = (rs.r_series)(m_len + 2, ew);
        let mut q = r.scale(&z.with_prec(ew));
        if z_is_one {
            q = q.mul_linear(&HPComplex::one(ew));
        }
        let mut result = None;
        for _ in 0..6 {
            while k < kk {
                max_mag = max_mag.max(log2_abs(&t.abs()));
                s += &t;
                t = &(&t * &z) * &(rs.ratio)(k, w);
                k += 1;
            }
            if t.is_zero() {
                result = Some(s.clone());
                break;
            }
            let tol = -(w as f64) - 4.0;
            if let Some(phi) = tail_factor(&q.0, z_is_one, kk, tol) {
                let mut tail = &t * &phi.with_prec(w);
                if z_is_one {
                    tail = tail.mul_i64(kk as i64);
                }
                max_mag = max_mag.max(log2_abs(&tail.abs()));
                result = Some(&s + &tail);
                break;
            }
            kk *= 4;
        }
        let Some(val) = result else {
            return Err(Error::Convergence("asymptotic tail did not settle".into()));
        };
        let loss = (max_mag - log2_abs(&val.abs())).max(0.0);
        if loss + 16.0 < guard as f64 {
            return Ok(val.with_prec(prec));
        }
        guard = loss as u32 + 48;
    }
    Err(Error::Convergence("cancellation exceeded the guard budget".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    #[test]
    fn basel_and_alternating() {
        // sum 1/(k+1)^2 : ratio ((k+1)/(k+2))^2 = (1/(1+u))^2 * ... with u = 1/k:
        // (k+1)/(k+2) = (1+u)/(1+2u)
        let ratio = |k: u64, p: u32| {
            let a = Float::with_val(p, k + 1) / Float::with_val(p, k + 2);
            HPComplex::from_real(Float::with_val(p, &a * &a))
        };
        let rser = |len: usize, p: u32| {
            let one = HPComplex::one(p);
            let two = HPComplex::from_i64(2, p);
            let f = Series::one(len, p).mul_linear(&one).div_linear(&two);
            f.mul(&f)
        };
        let rs = RatioSeries {
            z: HPComplex::one(256),
            t0: HPComplex::one(256),
            ratio: &ratio,
            r_series: &rser,
            scale: 1.0,
        };
        let v = sum_ratio_series(&rs, 256).unwrap();
        let pi = Float::with_val(256, Constant::Pi);
        let want = Float::with_val(256, &pi * &pi) / 6u32;
        let err = Float::with_val(256, v.re() - &want);
        assert!(log2_abs(&err) < -240.0);

        let rs = RatioSeries { z: HPComplex::from_i64(-1, 256), ..rs };
        let v = sum_ratio_series(&rs, 256).unwrap();
        let want = Float::with_val(256, &pi * &pi) / 12u32;
        let err = Float::with_val(256, v.re() - &want);
        assert!(log2_abs(&err) < -240.0);
    }

    #[test]
    fn series_exp_log() {
        let c = HPComplex::from_f64(0.3, 0.1, 128);
        let l = Series::log1p_linear(&c, 12);
        let e = l.exp();
        let want = Series::one(12, 128).mul_linear(&c);
        for (a, b) in e.0.iter().zip(&want.0) {
            assert!(log2_abs(&(a - b).abs()) < -120.0);
        }
    }
}
