//! Reduced density matrices D2(0) and D3(0,0,0) and their consistency.

use su3corr::c64;
use su3corr::three_site::{density3_homogeneous, density_checks, partial_trace_gaps, ThreeSiteProblem};
use su3corr::two_site::density2;

fn main() -> su3corr::Result<()> {
    let d2 = density2(c64(0.0, 0.0))?;
    let c2 = density_checks(&d2);
    println!("D2: trace {:.3}, min eigenvalue {:.6}", c2.trace.re, c2.min_eigenvalue);

    let d3 = density3_homogeneous(&ThreeSiteProblem::default())?;
    let c3 = density_checks(&d3.matrix);
    println!(
        "D3: trace {:.12}, hermiticity {:.1e}, min eigenvalue {:.3e}, extrapolation error {:.1e}",
        c3.trace.re, c3.hermiticity, c3.min_eigenvalue, d3.extrapolation_error
    );
    let (last, first) = partial_trace_gaps(&d3.matrix)?;
    println!("|tr_3 D3 − D2| = {last:.1e}, |tr_1 D3 − D2| = {first:.1e}");
    Ok(())
}
