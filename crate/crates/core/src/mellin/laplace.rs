//! The Laplace-integral form of `M_n^m(s)`: two terminating `4F3(1)` lines
//! with parity-selecting reciprocal gammas.
//!
//! At integer `m` several `1/Gamma` factors vanish while the matching `4F3`
//! denominators `1 -+ m/2`, `(3 -+ m)/2` hit nonpositive integers. Both sides
//! are expanded to first order in `m -> m + d`; each line is the coefficient
//! of `d^0` in the product.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::mpcore::HPComplex;
use crate::specfun::{gamma, rgamma};

/// An argument `at0 + slope * d`.
#[derive(Clone, Debug)]
struct Lin {
    at0: Rational,
    slope: Rational,
}

fn lin(at0: Rational, slope: (i64, i64)) -> Lin {
    Lin { at0, slope: Rational::from(slope) }
}

fn nonpositive_integer(r: &Rational) -> Option<u32> {
    (*r.denom() == 1 && *r <= 0).then(|| (-r.numer().clone()).to_u32().expect("small index"))
}

/// Leading coefficient and order in `d` of `1/Gamma(arg)`.
fn rgamma_lead(arg: &Lin, w: u32) -> (HPComplex, u32) {
    if let Some(nn) = nonpositive_integer(&arg.at0) {
        // 1/Gamma(-N + e) = (-1)^N N! e + O(e^2)
        let mut c = Rational::from(Integer::from(Integer::factorial(nn))) * &arg.slope;
        if nn % 2 == 1 {
            c = -c;
        }
        (HPComplex::from_rational(&c, w), 1)
    } else {
        (rgamma(&HPComplex::from_rational(&arg.at0, w)), 0)
    }
}

/// Terms of a terminating `4F3(1)` as `(coefficient, order of the pole in d)`.
fn laurent_terms(num: &[Rational; 4], den: &[Lin; 2], den_c: &HPComplex) -> Result<Vec<(HPComplex, u32)>> {
    let w = den_c.prec();
    let mut out = Vec::new();
    let mut t = HPComplex::one(w);
    let mut order = 0u32;
    for k in 0u32.. {
        out.push((t.clone(), order));
        let mut ratio = Rational::from(1) / Rational::from(k + 1);
        for a in num {
            let f = Rational::from(a + k);
            if f == 0 {
                return Ok(out);
            }
            ratio *= f;
        }
        for b in den {
            let f = Rational::from(&b.at0 + k);
            if f == 0 {
                ratio /= &b.slope;
                order += 1;
            } else {
                ratio /= f;
            }
        }
        let fc = den_c.add_i64(k as i64);
        if fc.is_zero() {
            return Err(Error::Pole(format!("4F3 denominator vanishes at term {k}")));
        }
        t = t.mul_rational(&ratio) / fc;
    }
    unreachable!()
}

fn line(rg: &[Lin; 4], num: &[Rational; 4], den: &[Lin; 2], den_c: &HPComplex) -> Result<HPComplex> {
    let w = den_c.prec();
    let mut lead = HPComplex::one(w);
    let mut zeros = 0;
    for a in rg {
        let (c, o) = rgamma_lead(a, w);
        lead = lead * c;
        zeros += o;
    }
    let mut sum = HPComplex::zero(w);
    for (c, d) in laurent_terms(num, den, den_c)? {
        if d > zeros {
            return Err(Error::Divergence(format!("Laplace line has a pole of order {}", d - zeros)));
        }
        if d == zeros {
            sum += &c;
        }
    }
    Ok(lead * sum)
}

/// `M_n^m(s)` from the Laplace-integral representation, multiplied by `i^m`.
pub fn mellin_laplace(n: u32, m: u32, s: &HPComplex, prec: u32) -> Result<HPComplex> {
    if m > n {
        return Err(Error::Domain(format!("Laplace form needs m <= n, got m={m}, n={n}")));
    }
    if *s.re() <= 0 {
        return Err(Error::Domain(format!("Laplace form needs Re s > 0, got {s}")));
    }
    let w = prec + 32 + 2 * n;
    let s = s.with_prec(w);
    let (ni, mi) = (n as i64, m as i64);
    let r = |a: i64, b: i64| Rational::from((a, b));
    let ns = s.add_i64(ni);

    let rg1 = [lin(r(1 - mi, 2), (-1, 2)), lin(r(1 - mi, 1), (-1, 1)), lin(r(1 + mi, 2), (1, 2)), lin(r(mi + 1, 1), (1, 1))];
    let num1 = [r(1, 2), r(1, 1), r(1 - ni, 2), r(-ni, 2)];
    let den1 = [lin(r(2 - mi, 2), (-1, 2)), lin(r(2 + mi, 2), (1, 2))];
    let c1 = (-ns.div_i64(2)).add_i64(1);
    let mut total = HPComplex::pi(w).sqrt() * gamma(&ns.div_i64(2))? * line(&rg1, &num1, &den1, &c1)?;

    if n > 0 {
        let rg2 = [lin(r(2 - mi, 1), (-1, 1)), lin(r(-mi, 2), (-1, 2)), lin(r(mi, 2), (1, 2)), lin(r(mi + 2, 1), (1, 1))];
        let num2 = [r(1, 1), r(1, 1), r(1 - ni, 2), r(2 - ni, 2)];
        let den2 = [lin(r(3 - mi, 2), (-1, 2)), lin(r(3 + mi, 2), (1, 2))];
        let c2 = (-&ns).add_i64(3).div_i64(2);
        let coef = HPComplex::i(w).mul_i64(-2 * ni) * gamma(&ns.add_i64(-1).div_i64(2))?;
        total += &(coef * line(&rg2, &num2, &den2, &c2)?);
    }

    let mut p = Integer::from(1);
    for j in 1..=m {
        p *= n + j;
    }
    let pref = HPComplex::pi(w).scale(&rug::Float::with_val(w, &p)) * rgamma(&ns.add_i64(1).div_i64(2));
    let mut v = pref.div_i64(2) * total;
    for _ in 0..m % 4 {
        v = v.mul_i();
    }
    Ok(v.with_prec(prec))
}
