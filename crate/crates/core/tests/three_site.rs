//! Kernels, the decoupled recursions and input validation of the
//! three-site solution.

mod common;

use num_complex::Complex64 as C;
use su3corr::three_site::{
    density3_split, functional_equation_residual, h_kernel, inverse_decoupling, kernel, phi, solve_g, w, Convolution,
    Source, ThreeSiteProblem,
};
use su3corr::Error;

#[test]
fn h_kernel_matches_fourier_integral() {
    for l in [0, 1, -1] {
        for z in [C::new(0.7, -0.5), C::new(-1.3, -0.3), C::new(0.1, -0.75), C::new(2.4, -0.6)] {
            let got = h_kernel(l, z).unwrap();
            let want = common::h_integral(l, z);
            assert!((got - want).norm() < 1e-10, "l={l} z={z}: {got} vs {want}");
        }
    }
    assert!(matches!(h_kernel(0, C::new(0.0, 2.0)), Err(Error::PoleProximity { .. })));
    assert!(h_kernel(2, C::new(0.3, -0.5)).is_err());
}

#[test]
fn kernel_derivatives_by_differences() {
    let h = 1e-5;
    for a in [0.0, 1.0 / 3.0, 2.0 / 3.0] {
        for u in [C::new(0.3, 0.8), C::new(-0.2, -1.5), C::new(0.45, 0.05)] {
            let d1 = (kernel(a, u + h, 0) - kernel(a, u - h, 0)) / (2.0 * h);
            let d2 = (kernel(a, u + h, 0) - 2.0 * kernel(a, u, 0) + kernel(a, u - h, 0)) / (h * h);
            assert!((kernel(a, u, 1) - d1).norm() < 1e-7 * d1.norm().max(1.0));
            assert!((kernel(a, u, 2) - d2).norm() < 1e-3 * d2.norm().max(1.0));
        }
    }
}

#[test]
fn kernel_solves_the_shift_equation() {
    // K_a(u) − e^{−2πia}K_a(u+1)... with w^l = e^{2πi l/3}: g − w^l g(·+1) picks the residue at u = 0
    for (l, a) in [(0, 0.0), (1, 1.0 / 3.0), (-1, 2.0 / 3.0)] {
        let wl = C::from_polar(1.0, 2.0 * std::f64::consts::PI * l as f64 / 3.0);
        let u = C::new(0.37, 0.9);
        let diff = kernel(a, u, 0) - wl * kernel(a, u + 1.0, 0);
        assert!(diff.norm() < 1e-13, "l={l}: {diff}");
    }
}

#[test]
fn recursions_hold_off_the_contour() {
    let p = ThreeSiteProblem::default();
    for l in [0, 1, -1] {
        for lam in [C::new(-0.5, 0.7), C::new(-0.5, -1.3), C::new(-0.5, 3.0)] {
            let r = functional_equation_residual(&p, l, lam).unwrap();
            assert!(r < 1e-8, "l={l} λ={lam}: {r}");
        }
    }
    assert!(functional_equation_residual(&p, 0, C::new(0.2, 0.0)).is_err());
}

#[test]
fn decoupling_round_trip() {
    let g = [C::new(0.3, 0.1), C::new(-1.2, 0.5), C::new(0.7, -0.4)];
    let big = inverse_decoupling(g, C::new(0.0, 0.0));
    let w = w();
    // g_l = G1 + w^{l} G2 + w^{-l} G3
    let back = [big[0] + big[1] + big[2], big[0] + w * big[1] + big[2] / w, big[0] + big[1] / w + w * big[2]];
    for k in 0..3 {
        assert!((back[k] - g[k]).norm() < 1e-15);
    }
    assert!((w * w * w - 1.0).norm() < 1e-15);
}

#[test]
fn invalid_inputs() {
    let bad = ThreeSiteProblem { delta: 1.2, ..ThreeSiteProblem::default() };
    assert!(matches!(bad.validate(), Err(Error::InvalidArgument(_))));
    assert!(ThreeSiteProblem { step: 0.0, ..ThreeSiteProblem::default() }.validate().is_err());
    assert!(ThreeSiteProblem { half_width: f64::INFINITY, ..ThreeSiteProblem::default() }.validate().is_err());
    let p = ThreeSiteProblem::default();
    assert!(solve_g(&p, 0, C::new(0.8, 0.0)).is_err());
    assert!(density3_split(&p, 0.0).is_err());
    assert!(density3_split(&p, 0.4).is_err());
    assert!(matches!(phi(C::new(1.0, 0.0)), Err(Error::PoleProximity { .. })));
}

#[test]
fn quadrature_error_estimate_is_small() {
    let conv = Convolution::new(ThreeSiteProblem::default(), Source::Homogeneous).unwrap();
    for l in [0, 1, -1] {
        let v = conv.g(l, C::new(0.0, 0.0), 0).unwrap();
        assert!(v.error < 1e-6, "l={l}: {}", v.error);
    }
    assert_eq!(conv.node_count() % 2, 1);
}
