//! Unit-argument `3F2` transformations and the `2F1(-1)` Kummer family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use super::gamma::{gamma, rgamma};
use super::hyp::{hyp_pfq, HypergeometricSpec};
use crate::error::Result;
use crate::mpcore::HPComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AppendixId {
    A1,
    A2,
    A3,
}

impl AppendixId {
    pub const ALL: [AppendixId; 3] = [AppendixId::A1, AppendixId::A2, AppendixId::A3];

    pub fn name(self) -> &'static str {
        match self {
            AppendixId::A1 => "A1",
            AppendixId::A2 => "A2",
            AppendixId::A3 => "A3",
        }
    }
}

fn f32_unit(a: &HPComplex, b: &HPComplex, c: &HPComplex, d: &HPComplex, e: &HPComplex, prec: u32) -> Result<HPComplex> {
    let spec = HypergeometricSpec::new(
        vec![a.clone(), b.clone(), c.clone()],
        vec![d.clone(), e.clone()],
        HPComplex::one(prec),
    );
    hyp_pfq(&spec, prec)
}

/// The two right-hand terms of the first transformation, before they are added.
pub fn a1_terms(p: &[HPComplex; 5], prec: u32) -> Result<(HPComplex, HPComplex)> {
    let [a, b, c, d, e] = p;
    let g = gamma;
    let one = |x: HPComplex| x.add_i64(1);
    let t1 = g(&(&(e - a) - b))? * g(e)? * rgamma(&(e - a)) * rgamma(&(e - b))
        * f32_unit(a, b, &(d - c), d, &one(&(a + b) - e), prec)?;
    let dea_b = &(&(d + e) - a) - b;
    let t2 = g(&(&(a + b) - e))? * g(d)? * g(e)? * g(&(&dea_b - c))?
        * rgamma(a)
        * rgamma(b)
        * rgamma(&(d - c))
        * rgamma(&dea_b)
        * f32_unit(&(e - a), &(e - b), &(&dea_b - c), &one(&(e - a) - b), &dea_b, prec)?;
    Ok((t1, t2))
}

fn first_term(p: &[HPComplex; 5], prec: u32) -> Result<HPComplex> {
    let [a, b, c, d, e] = p;
    let s1 = |x: &HPComplex| (x - d).add_i64(1);
    let two_d = (-d).add_i64(2);
    let pref = gamma(&s1(a))? * gamma(&s1(b))? * gamma(&s1(c))? * gamma(d)? * gamma(e)?
        * rgamma(a)
        * rgamma(b)
        * rgamma(c)
        * rgamma(&s1(e))
        * rgamma(&two_d);
    Ok(pref * f32_unit(&s1(a), &s1(b), &s1(c), &s1(e), &two_d, prec)?)
}

/// Right-hand side of the chosen transformation of `3F2(a, b, c; d, e; 1)`.
pub fn appendix_rhs(id: AppendixId, p: &[HPComplex; 5], prec: u32) -> Result<HPComplex> {
    let [a, b, c, d, e] = p;
    let one_m_d = (-d).add_i64(1);
    match id {
        AppendixId::A1 => {
            let (t1, t2) = a1_terms(p, prec)?;
            Ok(t1 + t2)
        }
        AppendixId::A2 => {
            let ac = (&(a + c) - d).add_i64(1);
            let second = gamma(&(a - d).add_i64(1))? * gamma(&(c - d).add_i64(1))?
                * rgamma(&one_m_d)
                * rgamma(&ac)
                * f32_unit(a, c, &(e - b), &ac, e, prec)?;
            Ok(first_term(p, prec)? + second)
        }
        AppendixId::A3 => {
            let ab = (&(a + b) - d).add_i64(1);
            let ac = (&(a + c) - d).add_i64(1);
            let third = gamma(&(a - d).add_i64(1))? * gamma(&(b - d).add_i64(1))? * gamma(&(c - d).add_i64(1))?
                * gamma(e)?
                * rgamma(&one_m_d)
                * rgamma(&ab)
                * rgamma(&ac)
                * rgamma(&(e - a))
                * f32_unit(a, &(a - d).add_i64(1), &(&(&ab + c) - e), &ab, &ac, prec)?;
            Ok(first_term(p, prec)? + third)
        }
    }
}

/// `3F2(a, b, c; d, e; 1)` minus the transformed expression.
pub fn three_f2_transform_check(id: AppendixId, p: &[HPComplex; 5], prec: u32) -> Result<HPComplex> {
    let w = prec + 32;
    let q: [HPComplex; 5] = std::array::from_fn(|i| p[i].with_prec(w));
    let lhs = f32_unit(&q[0], &q[1], &q[2], &q[3], &q[4], w)?;
    let rhs = appendix_rhs(id, &q, w)?;
    Ok((lhs - rhs).with_prec(prec))
}

/// Smallest convergence excess among the `3F2(1)` series used by `id`.
pub fn appendix_min_excess(id: AppendixId, p: &[Rational; 5]) -> Rational {
    let [a, b, c, d, e] = p;
    let sigma = Rational::from(d + e) - a - b - c;
    let other = match id {
        AppendixId::A1 => Rational::from(1 + c) - e,
        AppendixId::A2 => Rational::from(1 + b) - d,
        AppendixId::A3 => Rational::from(e - a),
    };
    sigma.min(other)
}

fn frac_dist(x: &Rational) -> f64 {
    let f = x.to_f64();
    (f - f.round()).abs()
}

/// Seeded random parameter tuples with every excess at least 1/2 and every
/// gamma argument kept away from the integers.
pub fn appendix_tuples(id: AppendixId, count: usize, seed: u64) -> Vec<[Rational; 5]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let den = 97i64;
    let pick = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| {
        let n = rng.gen_range((lo * den as f64) as i64..=(hi * den as f64) as i64);
        Rational::from((n, den))
    };
    let half = Rational::from((1, 2));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = pick(&mut rng, -0.9, 1.4);
        let b = pick(&mut rng, -0.9, 1.4);
        let c = pick(&mut rng, -0.9, 1.4);
        let d = pick(&mut rng, 0.2, 2.8);
        let e = pick(&mut rng, 0.2, 3.2);
        let p = [a, b, c, d, e];
        if appendix_min_excess(id, &p) < half {
            continue;
        }
        let [a, b, c, d, e] = &p;
        let one = Rational::from(1);
        let probes = [
            a.clone(),
            b.clone(),
            c.clone(),
            d.clone(),
            e.clone(),
            Rational::from(e - a),
            Rational::from(e - b),
            Rational::from(d - c),
            Rational::from(e - a) - b,
            Rational::from(d + e) - a - b,
            Rational::from(d + e) - a - b - c,
            Rational::from(a - d),
            Rational::from(b - d),
            Rational::from(c - d),
            Rational::from(e - d),
            Rational::from(a + b) - d,
            Rational::from(a + c) - d,
            Rational::from(&one - d),
        ];
        if probes.iter().all(|x| frac_dist(x) > 0.04) {
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KummerId {
    /// `2F1(s, 1/2; s + 1/2; -1)`
    A,
    /// `2F1(s, -1/2; s + 1/2; -1)`
    B,
    /// `2F1(s, 1/2; s + 3/2; -1)`
    C,
}

/// Gamma-function side of the Kummer family at `s`.
pub fn kummer_closed(id: KummerId, s: &HPComplex) -> Result<HPComplex> {
    let p = s.prec();
    let sqrt_pi = HPComplex::pi(p).sqrt();
    let two_s = HPComplex::from_i64(2, p).pow(s);
    let h1 = s.add_rational(&Rational::from((1, 2)));
    let sp1_2 = s.add_i64(1).div_i64(2);
    let r2 = |x: &HPComplex| rgamma(x).square();
    match id {
        KummerId::A => Ok(&sqrt_pi / &two_s * gamma(&h1)? * r2(&sp1_2)),
        KummerId::B => {
            let s2p1 = s.div_i64(2).add_i64(1);
            let inner = r2(&sp1_2) + s.div_i64(2) * r2(&s2p1);
            Ok(&sqrt_pi / &two_s * gamma(&h1)? * inner)
        }
        KummerId::C => {
            let h3 = s.add_rational(&Rational::from((3, 2)));
            let inner = s.recip().mul_i64(2) * r2(&s.div_i64(2)) - r2(&sp1_2);
            Ok(-(&sqrt_pi * &two_s.recip().mul_i64(2) * gamma(&h3)? * inner))
        }
    }
}

/// Hypergeometric side of the Kummer family (Pfaff route).
pub fn kummer_series(id: KummerId, s: &HPComplex) -> Result<HPComplex> {
    let p = s.prec();
    let (b, c) = match id {
        KummerId::A => (Rational::from((1, 2)), Rational::from((1, 2))),
        KummerId::B => (Rational::from((-1, 2)), Rational::from((1, 2))),
        KummerId::C => (Rational::from((1, 2)), Rational::from((3, 2))),
    };
    let spec = HypergeometricSpec::new(
        vec![s.clone(), HPComplex::from_rational(&b, p)],
        vec![s.add_rational(&c)],
        HPComplex::from_i64(-1, p),
    );
    hyp_pfq(&spec, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::log2_abs;

    fn hp(p: &[Rational; 5]) -> [HPComplex; 5] {
        std::array::from_fn(|i| HPComplex::from_rational(&p[i], 256))
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn spec_examples() {
        // terminating a = -2
        let p = [r(-2, 1), r(3, 10), r(7, 10), r(6, 5), r(7, 5)];
        let res = three_f2_transform_check(AppendixId::A1, &hp(&p), 256).unwrap();
        assert!(log2_abs(&res.abs()) < -200.0);
        let p = [r(1, 3), r(1, 3), r(1, 3), r(3, 2), r(3, 2)];
        let res = three_f2_transform_check(AppendixId::A3, &hp(&p), 256).unwrap();
        assert!(log2_abs(&res.abs()) < -120.0);
        let p = [r(3, 10), r(1, 5), r(9, 20), r(9, 20), r(21, 10)];
        let res = three_f2_transform_check(AppendixId::A2, &hp(&p), 256).unwrap();
        assert!(log2_abs(&res.abs()) < -120.0);
    }

    #[test]
    fn a1_requires_plus_sign() {
        let p = hp(&[r(1, 10), r(9, 10), r(6, 5), r(13, 10), r(8, 5)]);
        let (t1, t2) = a1_terms(&p, 256).unwrap();
        let lhs = f32_unit(&p[0], &p[1], &p[2], &p[3], &p[4], 256).unwrap();
        assert!(log2_abs(&(&lhs - &(&t1 + &t2)).abs()) < -120.0);
        assert!(log2_abs(&(&lhs - &(&t1 - &t2)).abs()) > -20.0);
    }

    #[test]
    fn tuples_are_seeded_and_admissible() {
        for id in AppendixId::ALL {
            let a = appendix_tuples(id, 10, 7);
            let b = appendix_tuples(id, 10, 7);
            assert_eq!(a, b);
            for p in &a {
                assert!(appendix_min_excess(id, p) >= r(1, 2));
            }
        }
    }

    #[test]
    fn kummer_at_one() {
        let s = HPComplex::one(256);
        for id in [KummerId::A, KummerId::B, KummerId::C] {
            let d = kummer_series(id, &s).unwrap() - kummer_closed(id, &s).unwrap();
            assert!(log2_abs(&d.abs()) < -240.0, "{id:?}");
        }
    }
}
