//! Digamma, polygamma and Hurwitz zeta with their error estimates.

use su3corr::c64;
use su3corr::specfun::{digamma, hurwitz_zeta, polygamma};

fn main() -> su3corr::Result<()> {
    let one = c64(1.0, 0.0);
    let psi = digamma(one)?;
    println!("psi(1)      = {:.16} ± {:.1e}", psi.value.re, psi.error);
    println!("psi_1(1)    = {:.16}", polygamma(1, one)?.value.re);
    println!("zeta(3, 1)  = {:.16}", hurwitz_zeta(3, one)?.value.re);
    println!("psi(2+3i)   = {:.16}", digamma(c64(2.0, 3.0))?.value);
    match digamma(c64(-2.0, 0.0)) {
        Err(e) => println!("psi(-2): {e}"),
        Ok(v) => println!("psi(-2) = {}", v.value),
    }
    Ok(())
}
