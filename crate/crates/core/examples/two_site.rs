//! The two-site functions along the real axis, their homogeneous values
//! and the Hurwitz-zeta expansion of G.

use su3corr::c64;
use su3corr::two_site::{alpha, check_qkz_two_site, omega, omega_bar, zeta_expansion};

fn main() -> su3corr::Result<()> {
    println!("omega33(0) = {:.15}", omega(c64(0.0, 0.0))?.re);
    println!("alpha33(0) = {:.14}", alpha(c64(0.0, 0.0))?.re);
    println!("\n  lambda     omega33        omega33_bar");
    for k in -4..=4 {
        let l = c64(0.45 * k as f64 + 0.05, 0.0);
        println!("  {:6.2}  {:13.10}  {:13.10}", l.re, omega(l)?.re, omega_bar(l)?.re);
    }
    let (r1, r2) = check_qkz_two_site(c64(0.3, 0.4))?;
    println!("\nqKZ residuals at 0.3+0.4i: {r1:.1e}, {r2:.1e}");
    println!("G(λ) = Σ c_k λ^2k, c_k = {:?}", zeta_expansion(5)?);
    Ok(())
}
