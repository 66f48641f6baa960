//! Singlet bases, Gram matrices and the matrices A^[2], A^[3] against the
//! printed ones.

use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use su3corr::integrable::sample_params;
use su3corr::reference::{a2_printed, a3_printed, GRAM2, GRAM3};
use su3corr::singlet_basis::{a_matrix, a_matrix_from_args, build_basis, named_operator, reduce_to_physical};
use su3corr::Error;

fn max_abs(m: &DMatrix<C>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn gram_matrices_equal_printed() {
    let g2 = build_basis(2).unwrap().gram();
    let g3 = build_basis(3).unwrap().gram();
    for (i, row) in GRAM2.iter().enumerate() {
        assert_eq!(&g2[i][..], &row[..]);
    }
    for (i, row) in GRAM3.iter().enumerate() {
        assert_eq!(&g3[i][..], &row[..], "row {i}");
    }
}

#[test]
fn exact_inverse_is_exact() {
    for m in [2, 3] {
        let b = build_basis(m).unwrap();
        let (g, inv) = (b.gram(), b.gram_inverse());
        let d = b.dim();
        for (i, gi) in g.iter().enumerate() {
            for j in 0..d {
                let mut acc = BigRational::zero();
                for (k, gik) in gi.iter().enumerate() {
                    acc += BigRational::from_integer((*gik).into()) * &inv[k][j];
                }
                let want = if i == j { BigRational::one() } else { BigRational::zero() };
                assert_eq!(acc, want);
            }
        }
    }
}

#[test]
fn a2_at_twenty_random_points() {
    for l in sample_params(11, 20) {
        let a = a_matrix(2, &[l, C::new(0.0, 0.0)]).unwrap();
        assert!(max_abs(&(&a.matrix - a2_printed(l))) < 1e-10, "λ = {l}");
        assert!(a.eigen_defect < 1e-12);
    }
}

#[test]
fn a3_at_twenty_rational_points() {
    let mut zeros = 0;
    for k in 0..20 {
        let x = C::new((k as f64 + 1.0) / 7.0 + 0.5, 0.0);
        let y = C::new(-((3 * k) % 11) as f64 / 5.0 - 0.3, 0.0);
        let a = a_matrix_from_args(3, &[x, y]).unwrap();
        let p = a3_printed(x, y);
        assert!(max_abs(&(&a.matrix - &p)) < 1e-10, "x={x} y={y}");
        for (got, want) in a.matrix.iter().zip(p.iter()) {
            if *want == C::new(0.0, 0.0) {
                zeros += 1;
                assert!(got.norm() < 1e-10);
            }
        }
    }
    assert!(zeros > 0);
}

#[test]
fn a3_sample_entry() {
    let (x, y) = (C::new(2.0, 0.0), C::new(5.0, 0.0));
    let a = a_matrix_from_args(3, &[x, y]).unwrap();
    assert!((a.matrix[(8, 7)] - a3_printed(x, y)[(8, 7)]).norm() < 1e-12);
    assert!((a.matrix[(8, 7)].re + 0.15).abs() < 1e-12);
    // the discarded gauge factor is x(x+3)y(y+3)
    assert!((a.factor - C::new(400.0, 0.0)).norm() < 1e-9);
}

#[test]
fn singular_arguments() {
    let z = C::new(0.0, 0.0);
    assert!(matches!(a_matrix(2, &[z, z]), Err(Error::Singular(_))));
    assert!(matches!(a_matrix(2, &[C::new(-3.0, 0.0), z]), Err(Error::Singular(_))));
    assert!(matches!(a_matrix(3, &[C::new(0.5, 0.0), C::new(0.5, 0.0), z]), Err(Error::Singular(_))));
    assert!(a_matrix(4, &[z; 4]).is_err());
    assert!(named_operator("P99").is_err());
}

#[test]
fn reduction_of_identity_and_permutations() {
    // ρ = M⁻¹ f with f = (1, 0, ...) gives a trace-one operator
    let b = build_basis(2).unwrap();
    let rho = b.rho_from_f(&[C::new(1.0, 0.0), C::new(-0.3, 0.0), C::new(0.2, 0.0)]).unwrap();
    let d = reduce_to_physical(2, &rho).unwrap();
    assert!((d.trace() - 1.0).norm() < 1e-14);
    let p12 = named_operator("P12").unwrap();
    assert!(max_abs(&(&p12 * &p12 - DMatrix::identity(27, 27))) < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalization_row_is_left_eigenvector(re in -2.0..2.0f64, im in 0.2..2.0f64, re2 in -2.0..2.0f64) {
        let l = C::new(re, im);
        for (m, args) in [(2, vec![l]), (3, vec![l, C::new(re2, -im)])] {
            let a = a_matrix_from_args(m, &args).unwrap();
            let row = build_basis(m).unwrap().normalization_row();
            for k in 0..row.len() {
                let v: C = (0..row.len()).map(|i| a.matrix[(i, k)] * row[i]).sum();
                prop_assert!((v - row[k]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn a2_matches_printed(re in -3.0..3.0f64, im in 0.1..3.0f64) {
        let l = C::new(re, im);
        let a = a_matrix_from_args(2, &[l]).unwrap();
        prop_assert!(max_abs(&(&a.matrix - a2_printed(l))) < 1e-10);
    }
}
