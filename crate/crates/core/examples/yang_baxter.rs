//! Runs the identity suite of the rational R-matrices and prints the
//! worst residual of each identity.

use su3corr::integrable::{check_unitarity, identity_suite, Unitarity};
use su3corr::c64;

fn main() -> su3corr::Result<()> {
    for rec in identity_suite(7, 50)? {
        println!("{:<48} {:>3} samples  max residual {:.2e}", rec.name, rec.samples, rec.max_residual);
    }
    let (res, scalar) = check_unitarity(Unitarity::Special1, 3, c64(0.4, 0.3), c64(-0.2, 0.1))?;
    println!("special unitarity at λ=0.4+0.3i, μ=−0.2+0.1i: factor {scalar:.6}, residual {res:.1e}");
    Ok(())
}
