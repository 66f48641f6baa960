//! Zero-temperature two-site solution: `σ`, `ω₃₃`, `ω̄₃₃`, `α₃₃`, the
//! generating function `G` and its Hurwitz-zeta expansion.
//!
//! All functions depend on the difference `λ = λ₁ − λ₂` only. The digamma
//! part
//!
//! ```text
//! G(λ) = (1/3)[ψ(1−λ/3) − ψ(4/3−λ/3) + ψ(1+λ/3) − ψ(4/3+λ/3)]
//! ```
//!
//! is the building block: `σ = G − 1/(λ²−1)` and `ω₃₃ = (λ²−1)G − 1`.

use crate::singlet_basis::{build_basis, reduce_to_physical};
use crate::specfun::{digamma, digamma_difference, hurwitz_zeta};
use crate::{c64, Error, Result, C64};
use nalgebra::DMatrix;

const A: f64 = 4.0 / 3.0;

fn near(function: &'static str, l: C64, at: f64) -> Result<()> {
    let d = (l - at).norm();
    if d < 1e-8 {
        return Err(Error::PoleProximity { function, z: format!("{l}"), distance: d });
    }
    Ok(())
}

/// `G(λ)`, the digamma combination above.
pub fn g(l: C64) -> Result<C64> {
    let z = l / 3.0;
    let p = digamma_difference(0, A, 1.0, z)?.value;
    let m = digamma_difference(0, A, 1.0, -z)?.value;
    Ok(-(p + m) / 3.0)
}

/// `G′(λ)`.
pub fn g_prime(l: C64) -> Result<C64> {
    let z = l / 3.0;
    let p = digamma_difference(1, A, 1.0, z)?.value;
    let m = digamma_difference(1, A, 1.0, -z)?.value;
    Ok(-(p - m) / 9.0)
}

/// `σ(λ) = ω₃₃(λ)/((λ−1)(λ+1))`.
pub fn sigma(l: C64) -> Result<C64> {
    near("sigma", l, 1.0)?;
    near("sigma", l, -1.0)?;
    Ok(g(l)? - 1.0 / (l * l - 1.0))
}

/// `σ′(λ)`.
pub fn sigma_prime(l: C64) -> Result<C64> {
    near("sigma_prime", l, 1.0)?;
    near("sigma_prime", l, -1.0)?;
    let d = l * l - 1.0;
    Ok(g_prime(l)? + 2.0 * l / (d * d))
}

/// `ω₃₃(λ)`.
pub fn omega(l: C64) -> Result<C64> {
    Ok((l * l - 1.0) * g(l)? - 1.0)
}

/// `ω₃₃′(λ)`.
pub fn omega_prime(l: C64) -> Result<C64> {
    Ok(2.0 * l * g(l)? + (l * l - 1.0) * g_prime(l)?)
}

/// `ω̄₃₃(λ)`, solved from the first functional equation:
/// `(λω₃₃ − 1)(λ+3)/(λ²−1) = [λ(λ−1)G − 1](λ+3)/(λ−1)`.
/// The second form is regular at `λ = 0` and `λ = −1`.
pub fn omega_bar(l: C64) -> Result<C64> {
    near("omega_bar", l, 1.0)?;
    Ok((l * (l - 1.0) * g(l)? - 1.0) * (l + 3.0) / (l - 1.0))
}

/// `α₃₃ = (ω₃₃ − 1/3)/8`.
pub fn alpha(l: C64) -> Result<C64> {
    Ok((omega(l)? - 1.0 / 3.0) / 8.0)
}

/// All two-site quantities at one point.
#[derive(Clone, Copy, Debug)]
pub struct TwoSiteValues {
    pub omega: C64,
    pub omega_bar: Option<C64>,
    pub alpha: C64,
    pub g: C64,
    pub sigma: Option<C64>,
}

pub fn evaluate(l: C64) -> Result<TwoSiteValues> {
    Ok(TwoSiteValues {
        omega: omega(l)?,
        omega_bar: omega_bar(l).ok(),
        alpha: alpha(l)?,
        g: g(l)?,
        sigma: sigma(l).ok(),
    })
}

/// Taylor coefficients `c_0..c_K` of `G(λ) = Σ c_k λ^{2k}`:
/// `c_0 = (2/3)[ψ(1) − ψ(4/3)]`,
/// `c_k = −(2/3)[ζ(2k+1, 1) − ζ(2k+1, 4/3)]/3^{2k}`.
pub fn zeta_expansion(k_max: usize) -> Result<Vec<f64>> {
    if k_max > 20 {
        return Err(Error::InvalidArgument(format!("zeta_expansion supports K ≤ 20, got {k_max}")));
    }
    let one = c64(1.0, 0.0);
    let a = c64(A, 0.0);
    let mut out = vec![(2.0 / 3.0) * (digamma(one)?.value - digamma(a)?.value).re];
    for k in 1..=k_max {
        let s = 2 * k as u32 + 1;
        let d = hurwitz_zeta(s, one)?.value - hurwitz_zeta(s, a)?.value;
        out.push(-(2.0 / 3.0) * d.re / 9f64.powi(k as i32));
    }
    Ok(out)
}

/// Residuals of the two functional equations at `λ₁ = λ`, `λ₂ = 0`.
pub fn check_qkz_two_site(l: C64) -> Result<(f64, f64)> {
    let den = l * (l + 3.0);
    let r1 = omega(l)? - ((l - 1.0) * (l + 1.0) / den * omega_bar(l)? + 1.0 / l);
    let rhs2 = -(l - 1.0) * (l + 3.0) / den * omega(l + 1.0)? - (l - 1.0) * (l + 2.0) / den * omega_bar(l)?
        + (l - 1.0) / l;
    let r2 = omega_bar(l - 1.0)? - rhs2;
    Ok((r1.norm(), r2.norm()))
}

/// `σ(λ+1) + σ(λ) + σ(λ−1) − (λ²+2)/((λ²−4)(λ²−1))`.
pub fn three_term_residual(l: C64) -> Result<f64> {
    let l2 = l * l;
    let lhs = sigma(l + 1.0)? + sigma(l)? + sigma(l - 1.0)?;
    Ok((lhs - (l2 + 2.0) / ((l2 - 4.0) * (l2 - 1.0))).norm())
}

/// `f = (1, ω₃₃(λ), ω̄₃₃(λ−1))`, the two-site singlet data.
pub fn f_vector(l: C64) -> Result<[C64; 3]> {
    Ok([c64(1.0, 0.0), omega(l)?, omega_bar(l - 1.0)?])
}

/// `D₂(λ₁, λ₂)` on ℂ³⊗ℂ³ with `λ = λ₁ − λ₂`.
pub fn density2(l: C64) -> Result<DMatrix<C64>> {
    let rho = build_basis(2)?.rho_from_f(&f_vector(l)?)?;
    reduce_to_physical(2, &rho)
}

/// `D₂` from `ω₃₃` alone: `((3−ω)/24) I + ((3ω−1)/24) P`.
pub fn density2_from_omega(w: C64) -> DMatrix<C64> {
    let p = crate::singlet_basis::permutation_operator(&[1, 0]);
    let id = DMatrix::<C64>::identity(9, 9);
    id * ((3.0 - w) / 24.0) + p * ((3.0 * w - 1.0) / 24.0)
}
