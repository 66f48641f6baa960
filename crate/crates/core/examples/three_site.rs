//! ⟨P12 P23⟩ in the thermodynamic limit from the convolution solution,
//! with its self-convergence under grid doubling.

use su3corr::three_site::{three_site_correlator, ThreeSiteProblem};

fn main() -> su3corr::Result<()> {
    let problem = ThreeSiteProblem::default();
    let sol = three_site_correlator(&problem)?;
    let fine = three_site_correlator(&problem.refined())?;
    println!("F1 = {:.15}  F2 = {:.15}  F3 = {:.15}", sol.f1, sol.f2, sol.f3);
    println!("<P12 P23> = {:.15}", sol.p12p23);
    println!("drift under grid doubling = {:.1e}", (fine.p12p23 - sol.p12p23).abs());
    let d = &sol.diagnostics;
    println!("nodes {}, quadrature error {:.1e}, g0 constant {:.6}", d.node_count, d.quadrature_error, d.g0_constant);
    println!(
        "G1/λ² at 0.1+0.1i: naive series {:.3e}, convolution {:.6}",
        d.naive_g1_over_lambda2, d.convolution_g1_over_lambda2
    );
    Ok(())
}
