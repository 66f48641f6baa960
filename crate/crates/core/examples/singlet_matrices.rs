//! Gram matrices of the singlet bases and the matrices A^[2], A^[3].

use su3corr::singlet_basis::{a_matrix, a_matrix_from_args, build_basis};
use su3corr::c64;

fn main() -> su3corr::Result<()> {
    for m in [2, 3] {
        let b = build_basis(m)?;
        println!("m = {m}: {} basis elements, Gram matrix", b.dim());
        for row in b.gram() {
            println!("  {row:?}");
        }
    }
    let a2 = a_matrix(2, &[c64(0.7, 0.0), c64(0.0, 0.0)])?;
    println!("A^[2](0.7) =\n{:.6}", a2.matrix.map(|z| z.re));
    let a3 = a_matrix_from_args(3, &[c64(2.0, 0.0), c64(5.0, 0.0)])?;
    println!("A^[3](x=2, y=5): gauge factor {:.3}, entry (9,8) = {:.4}", a3.factor, a3.matrix[(8, 7)].re);
    Ok(())
}
