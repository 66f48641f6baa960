//! Digamma, polygamma and Hurwitz zeta against direct summation.

mod common;

use num_complex::Complex64 as C;
use proptest::prelude::*;
use su3corr::specfun::{bernoulli, digamma, digamma_difference, hurwitz_zeta, polygamma};
use su3corr::Error;

#[test]
fn digamma_matches_series_on_grid() {
    for re in [-3.7, -1.2, -0.5, 0.3, 1.0, 2.5, 7.9, 15.0] {
        for im in [-6.0, -0.8, 0.0, 0.4, 3.0] {
            let z = C::new(re, im);
            let got = digamma(z).unwrap().value;
            let want = common::digamma(z);
            assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "{z}: {got} vs {want}");
        }
    }
}

#[test]
fn zeta_three_at_one_by_direct_sum() {
    let got = hurwitz_zeta(3, C::new(1.0, 0.0)).unwrap().value.re;
    assert!((got - common::hurwitz(3.0, 1.0)).abs() < 1e-14);
    for s in 2..=11u32 {
        for a in [1.0, 4.0 / 3.0, 0.25, 3.5] {
            let got = hurwitz_zeta(s, C::new(a, 0.0)).unwrap().value.re;
            let want = common::hurwitz(s as f64, a);
            assert!((got - want).abs() < 1e-13 * want.abs(), "s={s} a={a}: {got} vs {want}");
        }
    }
}

#[test]
fn polygamma_is_derivative_of_hurwitz_zeta() {
    // ψ_m(z) = (−1)^{m+1} m! ζ(m+1, z)
    let z = C::new(1.7, 0.6);
    let mut fact = 1.0;
    for m in 1..=5usize {
        fact *= m as f64;
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let want = hurwitz_zeta(m as u32 + 1, z).unwrap().value * (sign * fact);
        let got = polygamma(m, z).unwrap().value;
        assert!((got - want).norm() < 1e-12 * want.norm(), "m={m}");
    }
}

#[test]
fn digamma_difference_matches_series() {
    for z in [C::new(0.0, 0.0), C::new(0.9, -0.3), C::new(-0.6, 2.0), C::new(5.0, 5.0)] {
        let got = digamma_difference(0, 4.0 / 3.0, 1.0, z).unwrap().value;
        let want = common::psi_diff(z + 4.0 / 3.0, z + 1.0);
        assert!((got - want).norm() < 1e-13, "{z}");
    }
}

#[test]
fn bernoulli_numbers() {
    let b = bernoulli();
    assert_eq!(b[0], 1.0);
    assert_eq!(b[1], -0.5);
    assert_eq!(b[2], 1.0 / 6.0);
    assert_eq!(b[3], 0.0);
    assert!((b[12] + 691.0 / 2730.0).abs() < 1e-16);
}

#[test]
fn poles_are_reported() {
    assert!(matches!(digamma(C::new(0.0, 0.0)), Err(Error::PoleProximity { .. })));
    assert!(matches!(digamma(C::new(-3.0, 1e-10)), Err(Error::PoleProximity { .. })));
    assert!(hurwitz_zeta(3, C::new(-2.0, 0.0)).is_err());
    assert!(hurwitz_zeta(1, C::new(1.0, 0.0)).is_err());
}

proptest! {
    #[test]
    fn digamma_recurrence(re in -8.0..8.0f64, im in 0.05..6.0f64) {
        let z = C::new(re, im);
        let d = digamma(z + 1.0).unwrap().value - digamma(z).unwrap().value - 1.0 / z;
        prop_assert!(d.norm() < 1e-13 * (1.0 / z).norm().max(1.0));
    }

    #[test]
    fn asymptotic_and_lifted_agree(re in 10.5..30.0f64, im in -20.0..20.0f64) {
        let z = C::new(re, im);
        let lifted = digamma(z - 6.0).unwrap().value + (0..6).map(|k| 1.0 / (z - 6.0 + k as f64)).sum::<C>();
        prop_assert!((digamma(z).unwrap().value - lifted).norm() < 1e-13);
    }

    #[test]
    fn hurwitz_telescopes(s in 2u32..9, re in 0.2..4.0f64, im in -2.0..2.0f64) {
        let a = C::new(re, im);
        let d = hurwitz_zeta(s, a).unwrap().value - hurwitz_zeta(s, a + 1.0).unwrap().value;
        let want = a.powi(-(s as i32));
        prop_assert!((d - want).norm() < 1e-13 * want.norm().max(1.0));
    }

    #[test]
    fn digamma_reflection(x in 0.05..0.95f64, im in -1.0..1.0f64) {
        // ψ(1−z) − ψ(z) = π cot(πz)
        let z = C::new(x, im);
        let pi = std::f64::consts::PI;
        let lhs = digamma(1.0 - z).unwrap().value - digamma(z).unwrap().value;
        let rhs = pi * (pi * z).cos() / (pi * z).sin();
        prop_assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0));
    }
}
