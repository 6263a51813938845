//! Closed forms of `int_0^1 {1/t}^a [1/t]^n t^(s-1) dt` as exact combinations
//! `(const(s) + sum_l c_l(s) zeta(s - l)) / den(s)` with rational polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::{HPComplex, RationalPolynomial};
use crate::specfun::riemann_zeta;

#[derive(Clone, Debug)]
pub struct ZetaCombination {
    /// `shift -> c(s)` for the term `c(s) zeta(s - shift)`.
    pub terms: BTreeMap<i64, RationalPolynomial>,
    pub constant: RationalPolynomial,
    pub denominator: RationalPolynomial,
}

fn poly(c: &[i64]) -> RationalPolynomial {
    RationalPolynomial::from_i64s(c)
}

fn binom(n: u32, k: u32) -> i64 {
    if k > n {
        0
    } else {
        Integer::from(Integer::binomial_u(n, k)).to_i64().expect("small binomial")
    }
}

fn sign(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

impl ZetaCombination {
    pub fn new(denominator: RationalPolynomial) -> Self {
        Self { terms: BTreeMap::new(), constant: RationalPolynomial::zero(), denominator }
    }

    pub fn add_zeta(&mut self, shift: i64, c: &RationalPolynomial) {
        let e = self.terms.entry(shift).or_insert_with(RationalPolynomial::zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&shift);
        }
    }

    pub fn add_constant(&mut self, c: &RationalPolynomial) {
        self.constant = self.constant.add(c);
    }

    /// Same rational function of `s` and the zeta symbols (denominators cross-multiplied).
    pub fn equivalent(&self, other: &Self) -> bool {
        let cross = |a: &RationalPolynomial, b: &RationalPolynomial| {
            a.mul(&other.denominator).sub(&b.mul(&self.denominator)).is_zero()
        };
        let zero = RationalPolynomial::zero();
        let shifts: std::collections::BTreeSet<i64> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        cross(&self.constant, &other.constant)
            && shifts.iter().all(|k| cross(self.terms.get(k).unwrap_or(&zero), other.terms.get(k).unwrap_or(&zero)))
    }

    /// Value at `s`. Where `zeta(s - l)` sits on its pole with a vanishing
    /// coefficient, the removable limit `c'(s)` is used.
    pub fn eval(&self, s: &HPComplex) -> Result<HPComplex> {
        let w = s.prec() + 16;
        let sw = s.with_prec(w);
        let den = self.denominator.eval_complex(&sw);
        if den.is_zero() {
            return Err(Error::Pole(format!("closed form denominator vanishes at s = {s}")));
        }
        let exact_s = sw.as_integer();
        let mut num = self.constant.eval_complex(&sw);
        for (shift, c) in &self.terms {
            if exact_s == Some(shift + 1) {
                let s0 = Rational::from(shift + 1);
                if c.eval_rational(&s0) != 0 {
                    return Err(Error::Pole(format!("zeta(s - {shift}) pole at s = {s}")));
                }
                num += &HPComplex::from_rational(&c.derivative().eval_rational(&s0), w);
                continue;
            }
            let z = riemann_zeta(&sw.add_i64(-shift))?;
            num += &(c.eval_complex(&sw) * z);
        }
        Ok((num / den).with_prec(s.prec()))
    }
}

impl fmt::Display for ZetaCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "({})", self.constant)?;
            first = false;
        }
        for (shift, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match shift {
                0 => write!(f, "({c}) zeta(s)")?,
                k => write!(f, "({c}) zeta(s - {k})")?,
            }
        }
        write!(f, "] / ({})", self.denominator)
    }
}

/// `1/(s-1) - zeta(s)/s`.
pub fn basic_combination() -> ZetaCombination {
    let mut z = ZetaCombination::new(poly(&[0, -1, 1]));
    z.add_constant(&poly(&[0, 1]));
    z.add_zeta(0, &poly(&[1, -1]));
    z
}

/// `int {1/t}[1/t] t^(s-1)` in the unreduced form
/// `{s - 1 - s zeta(s-1) + 2 zeta(s-1) + (s-1)[zeta(s) - 1]} / (s(s-1))`.
pub fn moment_a() -> ZetaCombination {
    let mut z = ZetaCombination::new(poly(&[0, -1, 1]));
    z.add_constant(&poly(&[-1, 1]));
    z.add_zeta(1, &poly(&[0, -1]));
    z.add_zeta(1, &poly(&[2]));
    z.add_zeta(0, &poly(&[-1, 1]));
    z.add_constant(&poly(&[1, -1]));
    z
}

/// `int {1/t}[1/t]^2 t^(s-1) = [(3-s) zeta(s-2) + (2s-3) zeta(s-1) + (1-s) zeta(s)] / (s(s-1))`.
pub fn moment_b() -> ZetaCombination {
    let mut z = ZetaCombination::new(poly(&[0, -1, 1]));
    z.add_zeta(2, &poly(&[3, -1]));
    z.add_zeta(1, &poly(&[-3, 2]));
    z.add_zeta(0, &poly(&[1, -1]));
    z
}

/// `int {1/t}[1/t]^n t^(s-1)` for `n >= 1`, `Re s > n`.
pub fn moment_c(n: u32) -> Result<ZetaCombination> {
    if n == 0 {
        return Err(Error::Domain("the general [1/t]^n form needs n >= 1".into()));
    }
    let mut z = ZetaCombination::new(poly(&[0, -1, 1]));
    for l in 0..n {
        // -(-1)^(n-l) [C(n,l) - C(n,l+1)(s-1)] zeta(s-l-1)
        let (a, b) = (binom(n, l), binom(n, l + 1));
        let sg = -sign(n - l);
        z.add_zeta(l as i64 + 1, &poly(&[sg * (a + b), -sg * b]));
    }
    z.add_zeta(0, &poly(&[-sign(n + 1), sign(n + 1)]));
    Ok(z)
}

/// `int {1/t}^2 [1/t]^n t^(s-1)`, `Re s > n + 1`. For `n = 0` the general
/// form drops a constant; the `n = 0` case is
/// `[s(s-1) - 2(s-2) zeta(s-1) - (s-1)(s-2) zeta(s)] / (s(s-1)(s-2))`.
pub fn moment_d(n: u32) -> ZetaCombination {
    if n == 0 {
        let mut z = ZetaCombination::new(poly(&[0, 2, -3, 1]));
        z.add_constant(&poly(&[0, -1, 1]));
        z.add_zeta(1, &poly(&[4, -2]));
        z.add_zeta(0, &poly(&[-2, 3, -1]));
        return z;
    }
    let mut z = ZetaCombination::new(poly(&[0, -2, 3, -1]));
    let s2 = poly(&[-2, 1]);
    let s1s2 = poly(&[2, -3, 1]);
    for l in 0..n {
        let c = Rational::from(sign(n - l) * binom(n, l));
        let l = l as i64;
        z.add_zeta(l + 2, &poly(&[2]).scale(&c));
        z.add_zeta(l + 1, &s2.scale(&(c.clone() * 2u32)));
        z.add_zeta(l, &s1s2.scale(&c));
    }
    z.add_zeta(n as i64 + 1, &s2.scale(&Rational::from(2)));
    z.add_zeta(n as i64, &s1s2);
    z
}

fn zeta_int(k: i64, prec: u32) -> Result<HPComplex> {
    riemann_zeta(&HPComplex::from_i64(k, prec))
}

/// Closed value of `int {1/t}[1/t]^n t^n dt` (the `s -> n+1` limit).
pub fn moment_c_limit(n: u32, prec: u32) -> Result<HPComplex> {
    if n == 0 {
        return Err(Error::Domain("limit formula needs n >= 1".into()));
    }
    let w = prec + 16;
    let ni = n as i64;
    let mut acc = HPComplex::from_i64(-1, w);
    for l in 0..n.saturating_sub(1) {
        let c = binom(n, l) - binom(n, l + 1) * ni;
        acc -= &zeta_int(ni - l as i64, w)?.mul_i64(sign(n - l) * c);
    }
    acc += &zeta_int(ni + 1, w)?.mul_i64(sign(n + 1) * ni);
    Ok(acc.div_i64(ni * (ni + 1)).with_prec(prec))
}

/// Closed `s -> n+2` value of `int {1/t}^2 [1/t]^n t^(s-1) dt`.
pub fn moment_d_limit(n: u32, prec: u32) -> Result<HPComplex> {
    if n == 0 {
        return Err(Error::Domain("limit formula needs n >= 1".into()));
    }
    let w = prec + 16;
    let ni = n as i64;
    let mut acc = HPComplex::from_i64(2, w);
    for l in 0..n.saturating_sub(1) {
        let k = ni - l as i64;
        let t = zeta_int(k, w)?.mul_i64(2) + zeta_int(k + 1, w)?.mul_i64(2 * ni) + zeta_int(k + 2, w)?.mul_i64(ni * (ni + 1));
        acc += &t.mul_i64(sign(n - l) * binom(n, l));
    }
    acc -= &zeta_int(2, w)?.mul_i64(ni * (ni - 1));
    acc -= &zeta_int(3, w)?.mul_i64(ni * ni * (ni + 1));
    Ok(acc.div_i64(-ni * (ni + 1) * (ni + 2)).with_prec(prec))
}

/// `lim_{h -> 0} f(s0 + h)` by Richardson extrapolation on `h = 2^-k`, `k = 1..=kmax`.
pub fn numeric_limit<F>(f: F, s0: &HPComplex, kmax: u32) -> Result<HPComplex>
where
    F: Fn(&HPComplex) -> Result<HPComplex>,
{
    let w = s0.prec();
    // row[j] = T_{k,j}; T_{k,j} = T_{k,j-1} + (T_{k,j-1} - T_{k-1,j-1}) / (2^j - 1)
    let mut row: Vec<HPComplex> = Vec::new();
    for k in 1..=kmax {
        let h = HPComplex::from_real(rug::Float::with_val(w, 1u32) >> k);
        let mut next = vec![f(&(s0 + &h))?];
        for (j, prev) in row.iter().enumerate() {
            let t = &next[j];
            let d = (t - prev).div_i64((1i64 << (j + 1)) - 1);
            next.push(t + &d);
        }
        row = next;
    }
    row.pop().ok_or_else(|| Error::Domain("numeric limit needs kmax >= 1".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::log2_abs;

    fn close(a: &HPComplex, b: &HPComplex, bits: f64) -> bool {
        log2_abs(&(a - b).abs()) < -bits
    }

    #[test]
    fn general_form_reduces_exactly() {
        assert!(moment_c(1).unwrap().equivalent(&moment_a()));
        assert!(moment_c(2).unwrap().equivalent(&moment_b()));
        assert!(!moment_c(2).unwrap().equivalent(&moment_a()));
    }

    #[test]
    fn known_values() {
        let p = 192;
        let z2 = zeta_int(2, p).unwrap();
        let z3 = zeta_int(3, p).unwrap();
        let want = z2.add_i64(-1).div_i64(2);
        assert!(close(&moment_a().eval(&HPComplex::from_i64(2, p)).unwrap(), &want, 180.0));
        let want = &z2.div_i64(2) - &z3.div_i64(3);
        let want = &want - &HPComplex::from_ratio(1, 6, p);
        assert!(close(&moment_b().eval(&HPComplex::from_i64(3, p)).unwrap(), &want, 180.0));
    }

    #[test]
    fn limit_formulas_match_removable_limits() {
        let p = 192;
        for n in 1..=6u32 {
            let s = HPComplex::from_i64(n as i64 + 1, p);
            let generic = moment_c(n).unwrap().eval(&s).unwrap();
            assert!(close(&generic, &moment_c_limit(n, p).unwrap(), 170.0), "c n={n}");
            let s = HPComplex::from_i64(n as i64 + 2, p);
            let generic = moment_d(n).eval(&s).unwrap();
            assert!(close(&generic, &moment_d_limit(n, p).unwrap(), 170.0), "d n={n}");
        }
    }

    #[test]
    fn richardson_limit() {
        let p = 256;
        for n in 1..=4u32 {
            let c = moment_c(n).unwrap();
            let s0 = HPComplex::from_i64(n as i64 + 1, p);
            let v = numeric_limit(|s| c.eval(s), &s0, 20).unwrap();
            assert!(close(&v, &moment_c_limit(n, p).unwrap(), 100.0), "n={n}");
        }
    }
}
