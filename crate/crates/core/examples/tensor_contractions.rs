//! Builds ε and δ tensors with oriented legs and contracts them.

use su3corr::tensor_kernel::{contract, delta3, epsilon3};

fn main() -> su3corr::Result<()> {
    let lower = epsilon3("i", "j", "k");
    let upper = lower.dual();
    let full = contract(&lower, &upper, &[("i", "i"), ("j", "j"), ("k", "k")])?;
    println!("eps_ijk eps^ijk = {}", full.scalar_value().unwrap());

    let partial = contract(&lower, &epsilon3("j", "k", "l").dual(), &[("j", "j"), ("k", "k")])?;
    println!("eps_ijk eps^jkl legs: {:?}", partial.labels());
    let two_delta = delta3("i", "l").scale(su3corr::c64(2.0, 0.0));
    println!("|eps eps - 2 delta| = {:e}", partial.max_abs_diff(&two_delta)?);
    Ok(())
}
