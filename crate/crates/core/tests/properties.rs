use mellin_core::criticality::critical_line_report;
use mellin_core::fracpart::{fermi_bose_series, fermi_bose_zeta, frac_basic, frac_general, Statistics};
use mellin_core::mellin::{mellin_closed, poly_factor};
use mellin_core::mpcore::{log2_abs, poly_eval_complex, HPComplex, RationalPolynomial};
use mellin_core::specfun::{gamma, hurwitz_zeta, hyp_pfq, hyp_pfq_exact, HypergeometricSpec};
use proptest::prelude::*;
use rug::{Float, Rational};

const P: u32 = 160;

fn rel(a: &HPComplex, b: &HPComplex) -> f64 {
    log2_abs(&(a - b).abs()) - log2_abs(&b.abs())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::from((n, d)))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != 0)
}

fn poly() -> impl Strategy<Value = RationalPolynomial> {
    prop::collection::vec(rational(), 0..8).prop_map(RationalPolynomial::new)
}

fn point(lo: f64, hi: f64) -> impl Strategy<Value = HPComplex> {
    (lo..hi, -4.0f64..4.0).prop_map(|(re, im)| HPComplex::from_f64(re, im, P))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn affine_roundtrip(p in poly(), a in nonzero_rational(), b in rational()) {
        let inv_a = Rational::from(1) / a.clone();
        let inv_b = -Rational::from(&b * &inv_a);
        prop_assert_eq!(p.affine_substitute(&a, &b).affine_substitute(&inv_a, &inv_b), p);
    }

    #[test]
    fn product_evaluation(p in poly(), q in poly(), s in point(-3.0, 3.0)) {
        let lhs = poly_eval_complex(&p.mul(&q), &s);
        let rhs = poly_eval_complex(&p, &s) * poly_eval_complex(&q, &s);
        let scale = log2_abs(&lhs.abs()).max(log2_abs(&rhs.abs())).max(0.0);
        prop_assert!(log2_abs(&(&lhs - &rhs).abs()) - scale < -(P as f64) + 24.0);
    }

    #[test]
    fn normalize_idempotent(mut c in prop::collection::vec(rational(), 0..6), zeros in 0usize..4) {
        c.extend(std::iter::repeat(Rational::new()).take(zeros));
        let mut once = RationalPolynomial::new(c);
        once.normalize();
        let mut twice = once.clone();
        twice.normalize();
        prop_assert!(once.is_normalized());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn gamma_recurrence(z in point(-5.3, 6.0)) {
        prop_assume!(z.im().clone().abs() > 0.05 || (z.re().to_f64() - z.re().to_f64().round()).abs() > 0.05);
        let g = gamma(&z).unwrap();
        let g1 = gamma(&z.add_i64(1)).unwrap();
        prop_assert!(rel(&(&z * &g), &g1) < -(P as f64) + 8.0);
    }

    #[test]
    fn gamma_duplication(s in point(0.1, 8.0)) {
        let lhs = gamma(&s.div_i64(2)).unwrap() * gamma(&s.add_i64(1).div_i64(2)).unwrap();
        let two = HPComplex::from_i64(2, P).pow(&(-&s).add_i64(1));
        let rhs = HPComplex::pi(P).sqrt() * two * gamma(&s).unwrap();
        prop_assert!(rel(&lhs, &rhs) < -(P as f64) + 8.0);
    }

    #[test]
    fn gamma_reflection(z in point(-3.0, 4.0)) {
        prop_assume!(z.im().clone().abs() > 0.05 || (z.re().to_f64() - z.re().to_f64().round()).abs() > 0.05);
        let v = gamma(&z).unwrap() * gamma(&(-&z).add_i64(1)).unwrap() * z.sin_pi();
        prop_assert!(rel(&v, &HPComplex::pi(P)) < -(P as f64) + 8.0);
    }

    #[test]
    fn hurwitz_shift(s in point(1.2, 6.0), a in 0.1f64..3.0) {
        let a = HPComplex::from_f64(a, 0.0, P);
        let d = hurwitz_zeta(&s, &a).unwrap() - hurwitz_zeta(&s, &a.add_i64(1)).unwrap();
        prop_assert!(rel(&d, &a.pow(&-&s)) < -(P as f64) + 16.0);
    }

    #[test]
    fn terminating_pfq_exact(k in 1i64..8, b in nonzero_rational(), c in rational(), z in rational()) {
        let d = Rational::from(&c + Rational::from((1, 3)));
        prop_assume!(d > 0);
        let num = [Rational::from(-k), b.clone()];
        let exact = hyp_pfq_exact(&num, &[d.clone()], &z).unwrap();
        let spec = HypergeometricSpec::new(
            num.iter().map(|r| HPComplex::from_rational(r, P)).collect(),
            vec![HPComplex::from_rational(&d, P)],
            HPComplex::from_rational(&z, P),
        );
        let float = hyp_pfq(&spec, P).unwrap();
        let want = HPComplex::from_rational(&exact, P);
        let err = log2_abs(&(&float - &want).abs()) - log2_abs(&want.abs()).max(0.0);
        prop_assert!(err < -(P as f64) + 40.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn vanishing_above_diagonal(n in 0u32..10, extra in 1u32..5, s in point(0.2, 5.0)) {
        prop_assert!(mellin_closed(n, n + extra, &s).unwrap().is_zero());
    }

    #[test]
    fn first_order_degenerates(s in point(0.2, 6.0)) {
        let m1 = mellin_closed(1, 0, &s).unwrap();
        let m0 = mellin_closed(0, 0, &s.add_i64(1)).unwrap();
        prop_assert!(rel(&m1, &m0) < -(P as f64) + 16.0);
    }

    #[test]
    fn factorization(n in 0u32..=40, half_m in 0u32..=20, s in point(0.1, 5.0)) {
        let m = 2 * half_m;
        prop_assume!(m <= n);
        let form = poly_factor(n, m).unwrap();
        let lhs = form.prefactor.eval(&s).unwrap() * poly_eval_complex(&form.poly, &s);
        let rhs = mellin_closed(n, m, &s).unwrap();
        let err = log2_abs(&(&lhs - &rhs).abs()) - log2_abs(&rhs.abs()).max(0.0);
        prop_assert!(err < -(P as f64) + 20.0);
    }

    #[test]
    fn leading_coefficient(n in 0u32..=200) {
        let p = poly_factor(n, 0).unwrap().poly;
        prop_assert_eq!(p.degree(), Some((n / 2) as usize));
        prop_assert_eq!(p.leading().cloned(), Some(Rational::from(rug::Integer::from(1) << (n / 2))));
    }

    #[test]
    fn zeros_on_line(n in 2u32..=30) {
        let r = critical_line_report(n, 0, 192).unwrap();
        prop_assert!(r.deviation_log10() < -25.0);
        prop_assert!(r.shift_match);
    }

    #[test]
    fn general_at_alpha_zero(s in 1.1f64..6.0, b in 0.5f64..3.0) {
        let s = HPComplex::from_f64(s, 0.0, 128);
        let v = frac_general(&s, &Float::with_val(128, b), &HPComplex::zero(128)).unwrap();
        prop_assert!(log2_abs(&(&v - &frac_basic(&s).unwrap()).abs()) < -110.0);
    }

    #[test]
    fn transform_routes(j in 1u32..=4, re in 0.2f64..4.0, im in -2.0f64..2.0, bose in any::<bool>()) {
        let kind = if bose { Statistics::Bose } else { Statistics::Fermi };
        let s = HPComplex::from_f64(re + if bose { j as f64 } else { 0.0 }, im, 128);
        let a = fermi_bose_series(j, kind, &s).unwrap();
        let b = fermi_bose_zeta(j, kind, &s).unwrap();
        prop_assert!(log2_abs(&(&a - &b).abs()) - log2_abs(&b.abs()).max(0.0) < -100.0);
    }
}
