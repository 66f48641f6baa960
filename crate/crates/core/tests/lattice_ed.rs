//! Exact diagonalization against independent dense diagonalizations.

mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;
use su3corr::lattice_ed::{
    build_hamiltonian, ground_state, ground_state_seeded, lanczos, observables, ChainSpec, HamiltonianForm, Method,
    Observable, Sector,
};
use su3corr::Error;

fn spec(l: usize) -> ChainSpec {
    ChainSpec::new(l).unwrap()
}

fn counts(s: usize, l: usize) -> [usize; 3] {
    let mut c = [0; 3];
    for j in 0..l {
        c[(s / 3usize.pow(j as u32)) % 3] += 1;
    }
    c
}

#[test]
fn spin1_form_differs_by_constant() {
    for l in [3, 4] {
        let p = build_hamiltonian(spec(l), HamiltonianForm::Permutation).dense().unwrap();
        let s = build_hamiltonian(spec(l), HamiltonianForm::Spin1).dense().unwrap();
        let d = s - p - DMatrix::identity(3usize.pow(l as u32), 3usize.pow(l as u32)) * l as f64;
        assert!(d.abs().max() < 1e-14, "L={l}");
    }
}

#[test]
fn dense_matches_oracle_and_conserves_colors() {
    let h = build_hamiltonian(spec(4), HamiltonianForm::Permutation).dense().unwrap();
    assert_eq!(h, common::dense_chain(4));
    for i in 0..81 {
        for j in 0..81 {
            if h[(i, j)] != 0.0 {
                assert_eq!(counts(i, 4), counts(j, 4));
            }
        }
    }
}

#[test]
fn sector_dimensions() {
    assert_eq!(Sector::balanced(spec(3)).dim(), 6);
    assert_eq!(Sector::balanced(spec(6)).dim(), 90);
    assert_eq!(Sector::balanced(spec(9)).dim(), 1680);
    assert_eq!(Sector::balanced(spec(4)).counts, [2, 1, 1]);
}

#[test]
fn three_sites_form_a_singlet() {
    let gs = ground_state(spec(3)).unwrap();
    assert_eq!(gs.vectors.len(), 1);
    assert!((gs.energy + 3.0).abs() < 1e-14);
    let v = &gs.vectors[0];
    // P12 ψ = −ψ amplitude by amplitude
    for (i, &s) in gs.sector.states.iter().enumerate() {
        let (a, b, c) = (s % 3, (s / 3) % 3, s / 9);
        let t = b + 3 * a + 9 * c;
        let j = gs.sector.index(t).unwrap();
        assert!((v[j] + v[i]).abs() < 1e-14);
    }
    let o = observables(&gs, &[Observable::P12, Observable::P12P23]);
    assert!((o.p12.unwrap() + 1.0).abs() < 1e-14);
    assert!((o.p12p23.unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn small_chains_against_full_spectrum() {
    for l in [4, 5, 6] {
        let (e, _) = common::lowest(&common::dense_chain(l));
        let gs = ground_state(spec(l)).unwrap();
        assert_eq!(gs.method, Method::Dense);
        assert!((gs.energy - e).abs() < 1e-11, "L={l}: {} vs {e}", gs.energy);
        assert!(gs.global_gap.unwrap() > -1e-10);
    }
    let (e6, p6) = common::sector_ed(6);
    let gs = ground_state(spec(6)).unwrap();
    let o = observables(&gs, &[Observable::P12P23]);
    assert!((gs.energy_per_site() - e6).abs() < 1e-13);
    assert!((o.p12p23.unwrap() - p6).abs() < 1e-12);
}

#[test]
fn nine_sites_lanczos_against_dense_sector() {
    let (e9, p9) = common::sector_ed(9);
    let gs = ground_state(spec(9)).unwrap();
    assert_eq!(gs.method, Method::Lanczos);
    assert!(gs.residual < 1e-10);
    let o = observables(&gs, &[Observable::P12, Observable::P12P23, Observable::Rdm2, Observable::Rdm3]);
    assert!((gs.energy_per_site() - e9).abs() < 1e-12);
    assert!((o.p12p23.unwrap() - p9).abs() < 1e-10);
    assert!(o.translation_defect.unwrap() < 1e-12);

    let rho = o.rdm2.unwrap();
    assert!((rho.trace() - 1.0).abs() < 1e-12);
    assert!(rho.clone().symmetric_eigenvalues().min() > -1e-12);
    let p = DMatrix::from_fn(9, 9, |i, j| if i == 3 * (j % 3) + j / 3 { 1.0 } else { 0.0 });
    assert!(((&rho * p).trace() - o.p12.unwrap()).abs() < 1e-12);

    // tracing the third site of rdm3 gives rdm2
    let r3 = o.rdm3.unwrap();
    let traced = DMatrix::from_fn(9, 9, |i, j| (0..3).map(|c| r3[(3 * i + c, 3 * j + c)]).sum::<f64>());
    assert!((traced - rho).abs().max() < 1e-12);
}

#[test]
fn seeds_do_not_matter() {
    let a = ground_state_seeded(spec(7), 1).unwrap();
    let b = ground_state_seeded(spec(7), 99).unwrap();
    assert!((a.energy - b.energy).abs() < 1e-11);
}

#[test]
fn finite_size_trend() {
    let w = su3corr::two_site::omega(su3corr::c64(0.0, 0.0)).unwrap().re;
    let e: Vec<f64> = [3, 6, 9].iter().map(|&l| ground_state(spec(l)).unwrap().energy_per_site()).collect();
    assert!(e[0] < e[1] && e[1] < e[2] && e[2] < w);
}

#[test]
fn lanczos_deflation_and_failure() {
    let diag: Vec<f64> = (0..40).map(|i| (i / 2) as f64).collect();
    let apply = |v: &[f64]| v.iter().zip(&diag).map(|(x, d)| x * d).collect::<Vec<_>>();
    let first = lanczos(apply, 40, &[], 3).unwrap();
    assert!(first.value.abs() < 1e-12);
    let second = lanczos(apply, 40, std::slice::from_ref(&first.vector), 4).unwrap();
    assert!(second.value.abs() < 1e-12);
    let third = lanczos(apply, 40, &[first.vector, second.vector], 5).unwrap();
    assert!((third.value - 1.0).abs() < 1e-12);

    // not a linear operator: no Ritz vector can satisfy the residual test
    let broken = |v: &[f64]| v.iter().enumerate().map(|(i, x)| x * x + i as f64).collect::<Vec<_>>();
    assert!(matches!(lanczos(broken, 30, &[], 1), Err(Error::NonConvergence { .. })));
}

#[test]
fn size_limits() {
    assert!(matches!(ChainSpec::new(13), Err(Error::SizeOverflow(_))));
    assert!(build_hamiltonian(spec(7), HamiltonianForm::Spin1).dense().is_err());
    assert!(build_hamiltonian(spec(3), HamiltonianForm::Spin1).apply(&[0.0; 5]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hamiltonian_is_symmetric(u in prop::collection::vec(-1.0..1.0f64, 81), v in prop::collection::vec(-1.0..1.0f64, 81)) {
        for form in [HamiltonianForm::Permutation, HamiltonianForm::Spin1] {
            let h = build_hamiltonian(spec(4), form);
            let hu = h.apply(&u).unwrap();
            let hv = h.apply(&v).unwrap();
            let a: f64 = hu.iter().zip(&v).map(|(x, y)| x * y).sum();
            let b: f64 = u.iter().zip(&hv).map(|(x, y)| x * y).sum();
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}
