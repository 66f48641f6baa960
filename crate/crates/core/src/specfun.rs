//! Digamma, polygamma and Hurwitz zeta for complex arguments, plus
//! log-free differences `ψ⁽ᵐ⁾(z+a) − ψ⁽ᵐ⁾(z+b)`.
//!
//! Everything is upward recurrence into the region `|z| ≥ 10` followed by
//! an asymptotic series with Bernoulli coefficients. No reflection formula
//! is used.

use crate::{c64, Error, Result, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::sync::OnceLock;

/// A value together with an estimate of its absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialValue {
    pub value: C64,
    pub error: f64,
}

const POLE_TOL: f64 = 1e-8;
const ASYMPTOTIC_RADIUS: f64 = 10.0;
const DIFF_RADIUS: f64 = 12.0;
const EPS: f64 = f64::EPSILON;

/// Bernoulli numbers `B_0..=B_40` with `B_1 = −1/2`, computed exactly.
pub fn bernoulli() -> &'static [f64] {
    static B: OnceLock<Vec<f64>> = OnceLock::new();
    B.get_or_init(|| {
        let n = 40;
        let mut b: Vec<BigRational> = vec![BigRational::from_integer(1.into())];
        for m in 1..=n {
            let mut s = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                s += BigRational::from_integer(binomial_big(m + 1, k)) * bk;
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b.iter().map(|x| x.to_f64().unwrap()).collect()
    })
}

fn binomial_big(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::from(1);
    for j in 0..k {
        r = r * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    r
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |a, k| a * k as f64)
}

/// Bernoulli polynomial `B_k(x)`.
pub fn bernoulli_poly(k: usize, x: f64) -> f64 {
    let b = bernoulli();
    (0..=k).map(|j| binomial(k, j) * b[j] * x.powi((k - j) as i32)).sum()
}

fn check_pole(function: &'static str, z: C64) -> Result<()> {
    if z.re < 0.5 {
        let nearest = z.re.round().min(0.0);
        let d = (z - nearest).norm();
        if d < POLE_TOL {
            return Err(Error::PoleProximity { function, z: format!("{z}"), distance: d });
        }
    }
    Ok(())
}

/// True once `z` is far enough from the negative real axis and the origin
/// for the asymptotic series.
fn in_asymptotic_region(z: C64, radius: f64) -> bool {
    z.norm() >= radius && z.re >= -z.im.abs()
}

/// `ψ(z)`.
pub fn digamma(z: C64) -> Result<SpecialValue> {
    check_pole("digamma", z)?;
    let mut z = z;
    let mut acc = c64(0.0, 0.0);
    let mut steps = 0usize;
    while !in_asymptotic_region(z, ASYMPTOTIC_RADIUS) {
        acc -= 1.0 / z;
        z += 1.0;
        steps += 1;
    }
    let b = bernoulli();
    let z2 = z * z;
    let mut zp = z2;
    let mut series = z.ln() - 0.5 / z;
    let mut last = 0.0;
    for k in 1..=15 {
        let t = b[2 * k] / (2 * k) as f64 / zp;
        series -= t;
        last = t.norm();
        zp *= z2;
    }
    let value = series + acc;
    Ok(SpecialValue { value, error: last + EPS * (steps + 4) as f64 * (series.norm() + acc.norm()) })
}

/// `ψ_m(z) = dᵐψ/dzᵐ` for `1 ≤ m ≤ 6`.
pub fn polygamma(m: usize, z: C64) -> Result<SpecialValue> {
    if !(1..=6).contains(&m) {
        return Err(Error::InvalidArgument(format!("polygamma order {m} outside 1..=6")));
    }
    check_pole("polygamma", z)?;
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let mf = factorial(m);
    let mut z = z;
    let mut acc = c64(0.0, 0.0);
    let mut steps = 0usize;
    // ψ_m(z) = ψ_m(z+1) + (−1)^{m+1} m! / z^{m+1}
    while !in_asymptotic_region(z, ASYMPTOTIC_RADIUS) {
        acc += sign * mf / z.powu(m as u32 + 1);
        z += 1.0;
        steps += 1;
    }
    let b = bernoulli();
    let mut series = factorial(m - 1) / z.powu(m as u32) + 0.5 * mf / z.powu(m as u32 + 1);
    let z2 = z * z;
    let mut zp = z.powu(m as u32) * z2;
    let mut last = 0.0;
    for k in 1..=15 {
        let t = b[2 * k] * factorial(2 * k + m - 1) / factorial(2 * k) / zp;
        series += t;
        last = t.norm();
        zp *= z2;
    }
    let value = sign * series + acc;
    Ok(SpecialValue { value, error: last + EPS * (steps + 4) as f64 * (series.norm() + acc.norm()) })
}

/// `ζ(s, a) = Σ_{k≥0} (k+a)^{−s}` for integer `s ≥ 2`, by Euler–Maclaurin
/// summation.
pub fn hurwitz_zeta(s: u32, a: C64) -> Result<SpecialValue> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("hurwitz_zeta needs s ≥ 2, got {s}")));
    }
    check_pole("hurwitz_zeta", a)?;
    let n = 12usize + (-a.re).max(0.0).ceil() as usize;
    let mut sum = c64(0.0, 0.0);
    for k in 0..n {
        sum += (a + k as f64).powu(s).inv();
    }
    let x = a + n as f64;
    let sf = s as f64;
    sum += x.powf(1.0 - sf) / (sf - 1.0) + 0.5 * x.powf(-sf);
    let b = bernoulli();
    // B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let mut rising = sf;
    let mut last = 0.0;
    for j in 1..=15 {
        let t = b[2 * j] / factorial(2 * j) * rising * x.powf(-sf - 2.0 * j as f64 + 1.0);
        sum += t;
        last = t.norm();
        rising *= (sf + 2.0 * j as f64 - 1.0) * (sf + 2.0 * j as f64);
    }
    Ok(SpecialValue { value: sum, error: last + EPS * n as f64 * sum.norm() })
}

/// `ψ⁽ᵐ⁾(z+a) − ψ⁽ᵐ⁾(z+b)` for real shifts `a, b` and order `m ≥ 0`.
///
/// The asymptotic series of the difference has no logarithm,
/// `Σ_k (−1)^{k+1} (B_k(a) − B_k(b)) / (k z^k)` differentiated `m` times, so
/// the result keeps its relative accuracy even when the two terms nearly
/// cancel at large `|z|`.
pub fn digamma_difference(m: usize, a: f64, b: f64, z: C64) -> Result<SpecialValue> {
    check_pole("digamma_difference", z + a)?;
    check_pole("digamma_difference", z + b)?;
    let mut z = z;
    let mut acc = c64(0.0, 0.0);
    let dm = if m.is_multiple_of(2) { 1.0 } else { -1.0 } * factorial(m);
    // f(z) = f(z+1) − [g(z+a) − g(z+b)], with g = dᵐ/dzᵐ of 1/z
    while !in_asymptotic_region(z, DIFF_RADIUS) {
        let t = dm * ((z + a).powu(m as u32 + 1).inv() - (z + b).powu(m as u32 + 1).inv());
        acc -= t;
        z += 1.0;
    }
    let mut series = c64(0.0, 0.0);
    let mut last = 0.0;
    for k in 1..=20usize {
        let sgn = if k % 2 == 1 { 1.0 } else { -1.0 };
        let c = sgn * (bernoulli_poly(k, a) - bernoulli_poly(k, b)) / k as f64;
        // dᵐ/dzᵐ z^{−k} = (−k)(−k−1)…(−k−m+1) z^{−k−m}
        let f: f64 = (0..m).map(|j| -((k + j) as f64)).product();
        let t = c * f * z.powu((k + m) as u32).inv();
        series += t;
        last = t.norm();
    }
    let value = series + acc;
    Ok(SpecialValue { value, error: last + 10.0 * EPS * (series.norm() + acc.norm()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli();
        assert_eq!(b[1], -0.5);
        assert!((b[2] - 1.0 / 6.0).abs() < 1e-16);
        assert!((b[12] + 691.0 / 2730.0).abs() < 1e-15);
        assert_eq!(b[13], 0.0);
    }

    #[test]
    fn digamma_at_one() {
        let v = digamma(c64(1.0, 0.0)).unwrap().value;
        assert!((v.re + 0.5772156649015329).abs() < 1e-14);
    }

    #[test]
    fn pole_rejected() {
        assert!(matches!(digamma(c64(-2.0, 1e-10)), Err(Error::PoleProximity { .. })));
        assert!(polygamma(7, c64(1.0, 0.0)).is_err());
        assert!(hurwitz_zeta(1, c64(1.0, 0.0)).is_err());
    }
}
