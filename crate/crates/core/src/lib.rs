//! Short-range ground-state correlators of the integrable SU(3) chain
//! `H = Σ P_{j,j+1}`, obtained from discrete functional equations for the
//! (mixed) reduced density operators, together with verifiers for the
//! underlying Yang–Baxter algebra and an exact-diagonalization cross-check.
//!
//! Modules, bottom-up:
//!
//! - [`tensor_kernel`]: dense complex tensors with oriented, labeled legs.
//! - [`integrable`]: rational R-matrices and identity checks.
//! - [`singlet_basis`]: invariant bases, Gram matrices, the matrices `A^[m]`.
//! - [`specfun`]: digamma, polygamma, Hurwitz zeta.
//! - [`two_site`]: closed-form two-site solution.
//! - [`three_site`]: convolution solution of the three-site equations.
//! - [`lattice_ed`]: exact diagonalization of finite periodic chains.
//! - [`cli`]: the `su3corr` command-line front end.

pub mod cli;
pub mod error;
pub mod integrable;
pub mod lattice_ed;
pub mod linalg;
pub mod reference;
pub mod singlet_basis;
pub mod specfun;
pub mod tensor_kernel;
pub mod three_site;
pub mod two_site;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// `re + i·im`.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
