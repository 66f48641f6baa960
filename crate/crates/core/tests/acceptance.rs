//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every check is evaluated and printed. The process fails if any check
//! fails other than those listed in `KNOWN_DEVIATIONS`, or if a listed one
//! unexpectedly passes.

mod common;

use num_complex::Complex64 as C;
use std::time::Instant;
use su3corr::integrable::{identity_suite, sample_params};
use su3corr::lattice_ed::{ground_state, observables, ChainSpec, Observable};
use su3corr::reference::{self, FINITE_CHAINS, GRAM2, GRAM3};
use su3corr::singlet_basis::{a_matrix_from_args, build_basis};
use su3corr::three_site::{
    density3_homogeneous, density_checks, functional_equation_residual, partial_trace_gaps, three_site_correlator,
    ThreeSiteProblem,
};
use su3corr::two_site::{alpha, check_qkz_two_site, density2, omega, three_term_residual, zeta_expansion};

/// The printed L = 9 energy per site lies 3.4e−5 below the ground energy
/// found by both Lanczos and an independent dense diagonalization.
const KNOWN_DEVIATIONS: &[&str] = &["L=9 E0/L vs printed"];

type Criterion = (&'static str, fn() -> Vec<Check>);

struct Check {
    name: String,
    value: f64,
    tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, tolerance }
    }
    fn ok(&self) -> bool {
        self.value <= self.tolerance
    }
}

fn max_abs(m: &nalgebra::DMatrix<C>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

const ZERO: C = C::new(0.0, 0.0);

fn criterion1() -> Vec<Check> {
    let w = omega(ZERO).unwrap().re;
    let a = alpha(ZERO).unwrap().re;
    let closed = 1.0 - std::f64::consts::PI / (3.0 * 3f64.sqrt()) - 3f64.ln();
    vec![
        Check::new("omega33(0) vs printed", (w - reference::OMEGA_HOMOGENEOUS).abs(), 1e-12),
        Check::new("omega33(0) vs 1 - pi/(3 sqrt 3) - ln 3", (w - closed).abs(), 1e-12),
        Check::new("omega33(0) vs direct digamma series", (w - common::omega(ZERO).re).abs(), 1e-12),
        Check::new("alpha33(0) vs printed", (a - reference::ALPHA_HOMOGENEOUS).abs(), 1e-12),
    ]
}

fn criterion2() -> Vec<Check> {
    let start = Instant::now();
    let p = ThreeSiteProblem::default();
    let coarse = three_site_correlator(&p).unwrap();
    let fine = three_site_correlator(&p.refined()).unwrap();
    let secs = start.elapsed().as_secs_f64();
    println!("    <P12 P23> = {:.15} (grid doubled: {:.15}), {secs:.1} s", coarse.p12p23, fine.p12p23);
    vec![
        Check::new("<P12 P23> vs printed", (coarse.p12p23 - reference::P12P23_INFINITE).abs(), 1e-6),
        Check::new("drift under grid doubling", (fine.p12p23 - coarse.p12p23).abs(), 1e-7),
        Check::new("runtime in seconds", secs, 300.0),
    ]
}

fn criterion3() -> Vec<Check> {
    let mut out = Vec::new();
    for (l, e_printed, p_printed) in FINITE_CHAINS {
        let start = Instant::now();
        let gs = ground_state(ChainSpec::new(l).unwrap()).unwrap();
        let o = observables(&gs, &[Observable::P12P23]);
        let secs = start.elapsed().as_secs_f64();
        let (e, p) = (gs.energy_per_site(), o.p12p23.unwrap());
        println!("    L={l}: E0/L = {e:.15}, <P12 P23> = {p:.15}, {:?}, {secs:.2} s", gs.method);
        let tol = match l {
            3 => 1e-14,
            6 => 1e-10,
            _ => 1e-8,
        };
        out.push(Check::new(format!("L={l} E0/L vs printed"), (e - e_printed).abs(), tol));
        out.push(Check::new(format!("L={l} <P12 P23> vs printed"), (p - p_printed).abs(), tol));
        if l == 9 {
            out.push(Check::new("L=9 runtime in seconds", secs, 60.0));
        }
    }
    out
}

fn criterion4() -> Vec<Check> {
    let g2 = build_basis(2).unwrap().gram();
    let g3 = build_basis(3).unwrap().gram();
    let wrong2 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|&(i, j)| g2[i][j] != GRAM2[i][j]).count();
    let wrong3 =
        (0..11).flat_map(|i| (0..11).map(move |j| (i, j))).filter(|&(i, j)| g3[i][j] != GRAM3[i][j]).count();
    let mut a2 = 0.0f64;
    for l in sample_params(21, 20) {
        let a = a_matrix_from_args(2, &[l]).unwrap();
        a2 = a2.max(max_abs(&(&a.matrix - reference::a2_printed(l))));
    }
    let (mut a3, mut zeros, mut zero_dev) = (0.0f64, 0usize, 0.0f64);
    let xy = sample_params(22, 40);
    for k in 0..20 {
        let (x, y) = (xy[2 * k], xy[2 * k + 1]);
        let a = a_matrix_from_args(3, &[x, y]).unwrap();
        let p = reference::a3_printed(x, y);
        a3 = a3.max(max_abs(&(&a.matrix - &p)));
        for (got, want) in a.matrix.iter().zip(p.iter()) {
            if *want == ZERO {
                zeros += 1;
                zero_dev = zero_dev.max(got.norm());
            }
        }
    }
    println!("    {zeros} printed zero entries compared over 20 points");
    vec![
        Check::new("Gram m=2 entries differing", wrong2 as f64, 0.0),
        Check::new("Gram m=3 entries differing", wrong3 as f64, 0.0),
        Check::new("A^[2] at 20 random points", a2, 1e-10),
        Check::new("A^[3] at 20 random points", a3, 1e-10),
        Check::new("A^[3] printed zeros", zero_dev, 1e-10),
    ]
}

fn criterion5() -> Vec<Check> {
    identity_suite(7, 50).unwrap().into_iter().map(|r| Check::new(r.name, r.max_residual, 1e-12)).collect()
}

fn criterion6() -> Vec<Check> {
    let (mut q1, mut q2, mut t) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..10 {
        for j in 0..10 {
            let l = C::new(-2.3 + 0.47 * i as f64, -1.9 + 0.41 * j as f64);
            let (a, b) = check_qkz_two_site(l).unwrap();
            q1 = q1.max(a);
            q2 = q2.max(b);
            t = t.max(three_term_residual(l).unwrap());
        }
    }
    let mut out = vec![
        Check::new("two-site qKZ1 on 100 points", q1, 1e-11),
        Check::new("two-site qKZ2 on 100 points", q2, 1e-11),
        Check::new("three-term relation on 100 points", t, 1e-11),
    ];
    let p = ThreeSiteProblem::default();
    for l in [0, 1, -1] {
        let worst = (0..10)
            .map(|k| functional_equation_residual(&p, l, C::new(-0.5, -3.0 + 6.0 * k as f64 / 9.0)).unwrap())
            .fold(0.0, f64::max);
        out.push(Check::new(format!("g_{l} recursion at 10 contour points"), worst, 1e-8));
    }
    out
}

fn criterion7() -> Vec<Check> {
    let d2 = density2(ZERO).unwrap();
    let c2 = density_checks(&d2);
    let d3 = density3_homogeneous(&ThreeSiteProblem::default()).unwrap();
    let c3 = density_checks(&d3.matrix);
    let (gap_last, gap_first) = partial_trace_gaps(&d3.matrix).unwrap();
    let zeta = zeta_expansion(5).unwrap();
    let taylor = common::taylor(common::g, 10, 1.5, 256);
    let zeta_dev = (1..=5).map(|k| (zeta[k] - taylor[2 * k].re).abs()).fold(0.0, f64::max);
    println!("    min eigenvalues: D2 {:.4e}, D3 {:.4e}", c2.min_eigenvalue, c3.min_eigenvalue);
    vec![
        Check::new("D2 trace", (c2.trace - 1.0).norm(), 1e-10),
        Check::new("D2 hermiticity", c2.hermiticity, 1e-10),
        Check::new("D2 min eigenvalue above -1e-8", (-c2.min_eigenvalue - 1e-8).max(0.0), 0.0),
        Check::new("D3 trace", (c3.trace - 1.0).norm(), 1e-10),
        Check::new("D3 hermiticity", c3.hermiticity, 1e-10),
        Check::new("D3 min eigenvalue above -1e-8", (-c3.min_eigenvalue - 1e-8).max(0.0), 0.0),
        Check::new("tr_3 D3 = D2", gap_last, 1e-5),
        Check::new("tr_1 D3 = D2", gap_first, 1e-5),
        Check::new("zeta coefficients k=1..5 vs Cauchy Taylor", zeta_dev, 1e-8),
    ]
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("homogeneous two-site values", criterion1),
        ("thermodynamic <P12 P23> with self-convergence", criterion2),
        ("finite-chain table", criterion3),
        ("Gram and A matrices", criterion4),
        ("R-matrix identity suite", criterion5),
        ("functional-equation residuals", criterion6),
        ("density matrices and zeta expansion", criterion7),
    ];
    let mut unexpected = Vec::new();
    for (n, (title, run)) in criteria.iter().enumerate() {
        let checks = run();
        let failed: Vec<&Check> = checks.iter().filter(|c| !c.ok()).collect();
        for c in &checks {
            let known = KNOWN_DEVIATIONS.contains(&c.name.as_str());
            if c.ok() == known {
                unexpected.push(format!("{} ({:.3e}, tol {:.1e})", c.name, c.value, c.tolerance));
            }
        }
        if failed.is_empty() {
            println!("PASS criterion {}: {title} ({} checks)", n + 1, checks.len());
        } else {
            let names: Vec<String> =
                failed.iter().map(|c| format!("{} = {:.3e} > {:.1e}", c.name, c.value, c.tolerance)).collect();
            println!("FAIL criterion {}: {title}: {}", n + 1, names.join("; "));
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome: {}", unexpected.join(", "));
        std::process::exit(1);
    }
    println!("acceptance: all outcomes as recorded ({} known deviation)", KNOWN_DEVIATIONS.len());
}
