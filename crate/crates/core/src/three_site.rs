//! Three-site solution. The decoupled recursions
//! `g_l(λ) − w^l g_l(λ+1) = φ(λ)`, `w = e^{2πi/3}`, `l ∈ {0, 1, −1}`, are
//! solved by a convolution
//!
//! ```text
//! g_l(λ) = ∫ K_l(λ−μ) φ(μ) dμ,   K_l(u) = −e^{−2πi a_l u}/(e^{−2πiu} − 1)
//! ```
//!
//! along the line `Re μ = −δ`, with `a_0 = 0`, `a_1 = 1/3`, `a_{−1} = 2/3`.
//! `K_l(u) = h_l(−iu)/(2πi)`, where `h_l` is the Fourier kernel
//! [`h_kernel`]; in the rotated variable `μ = iν` the line is `Im ν = δ`.
//! `g_l` is analytic in the strip `−δ < Re λ < 1−δ`, which contains the
//! homogeneous point, so values and derivatives are taken there directly.
//!
//! The `l = 0` recursion fixes `g_0` only up to a constant; it is pinned by
//! the zero of `G_1` at `y = λ₁ − λ₂ = 0`.
//!
//! Quadrature: trapezoid rule in `τ` with `Im μ = sinh τ`, which is
//! spectrally accurate for these analytic, algebraically decaying
//! integrands. Node values of `φ` are computed in parallel and summed in
//! node order, so results do not depend on the thread count.

use crate::linalg::{hermitian_eigenvalues, hermiticity_defect, richardson, solve};
use crate::singlet_basis::{build_basis, reduce_to_physical};
use crate::specfun::SpecialValue;
use crate::two_site::{self, g as g2, g_prime as g2_prime, omega, omega_bar};
use crate::{c64, Error, Result, C64};
use nalgebra::DMatrix;
use rayon::prelude::*;
use std::f64::consts::PI;

/// `w = e^{2πi/3}`.
pub fn w() -> C64 {
    C64::from_polar(1.0, 2.0 * PI / 3.0)
}

fn w_pow(l: i32) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * l as f64 / 3.0)
}

fn shift_a(l: i32) -> Result<f64> {
    match l {
        0 => Ok(0.0),
        1 => Ok(1.0 / 3.0),
        -1 => Ok(2.0 / 3.0),
        _ => Err(Error::InvalidArgument(format!("l must be −1, 0 or 1, got {l}"))),
    }
}

/// Contour, truncation and grid of the convolution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeSiteProblem {
    /// The contour is `Re μ = −δ`, `0 < δ < 1`.
    pub delta: f64,
    /// Trapezoid spacing in `τ`, where `Im μ = sinh τ`.
    pub step: f64,
    /// Truncation `|Im μ| ≤ Λ`.
    pub half_width: f64,
}

impl Default for ThreeSiteProblem {
    fn default() -> Self {
        ThreeSiteProblem { delta: 0.5, step: 0.05, half_width: 1e12 }
    }
}

impl ThreeSiteProblem {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidArgument(format!("δ = {} outside (0, 1)", self.delta)));
        }
        if !(self.step > 0.0 && self.step < 1.0) {
            return Err(Error::InvalidArgument(format!("grid spacing {} outside (0, 1)", self.step)));
        }
        if !(self.half_width > 10.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidArgument(format!("Λ = {} must exceed 10", self.half_width)));
        }
        Ok(())
    }

    /// Halved spacing and doubled `Λ`.
    pub fn refined(&self) -> Self {
        ThreeSiteProblem { step: self.step / 2.0, half_width: self.half_width * 2.0, ..*self }
    }
}

/// `K_a(u)` and its first two `u`-derivatives, evaluated in the form that
/// never exponentiates a growing argument.
pub fn kernel(a: f64, u: C64, derivative: usize) -> C64 {
    let k = c64(0.0, -2.0 * PI);
    let (f, q) = if u.im > 0.0 {
        let e = (-k * u).exp();
        (-(k * (a - 1.0) * u).exp() / (1.0 - e), 1.0 / (1.0 - e))
    } else {
        let e = (k * u).exp();
        (-(k * a * u).exp() / (e - 1.0), e / (e - 1.0))
    };
    let l1 = k * a - k * q;
    match derivative {
        0 => f,
        1 => f * l1,
        _ => f * (l1 * l1 + k * k * q * (q - 1.0)),
    }
}

/// `h_l(z) = ∫_{ℝ+i0} e^{ikz}/(1 − w^l e^k) dk` in closed form,
/// `−2πi e^{2π b z}/(e^{2πz} − 1)` with `b = 0, 1/3, 2/3` for
/// `l = 0, 1, −1`.
pub fn h_kernel(l: i32, z: C64) -> Result<C64> {
    let a = shift_a(l)?;
    let m = z.im.round();
    let d = (z - c64(0.0, m)).norm();
    if d < 1e-8 {
        return Err(Error::PoleProximity { function: "h_kernel", z: format!("{z}"), distance: d });
    }
    Ok(c64(0.0, 2.0 * PI) * kernel(a, c64(0.0, 1.0) * z, 0))
}

/// `φ(λ)`, the inhomogeneity of the homogeneous-limit recursion:
/// `−12ω/(λ²−1) − 2ω′/(λ²−1)² + 4λω(0)/(λ²−1)² + 2(4λ⁴+6λ³−λ²−6λ−1)/(λ²(λ²−1)²)`.
pub fn phi(l: C64) -> Result<C64> {
    for p in [0.0, 1.0, -1.0] {
        let d = (l - p).norm();
        if d < 1e-8 {
            return Err(Error::PoleProximity { function: "phi", z: format!("{l}"), distance: d });
        }
    }
    let d = l * l - 1.0;
    let gv = g2(l)?;
    let gp = g2_prime(l)?;
    let w0 = omega(c64(0.0, 0.0))?;
    // ω/d = G − 1/d,  ω′ = 2λG + dG′
    let rational = 2.0 * (4.0 * l.powu(4) + 6.0 * l.powu(3) - l * l - 6.0 * l - 1.0) / (l * l * d * d);
    Ok(-12.0 * (gv - 1.0 / d) - 2.0 * (2.0 * l * gv + d * gp) / (d * d) + 4.0 * l * w0 / (d * d) + rational)
}

/// `r(λ₁, λ₂, λ₃)` in terms of `x = λ₁−λ₃`, `y = λ₁−λ₂`.
pub fn r_inhom(l1: C64, l2: C64, l3: C64) -> Result<C64> {
    r_xy(l1 - l3, l1 - l2)
}

fn r_xy(x: C64, y: C64) -> Result<C64> {
    for (name, v, at) in [
        ("x", x, 0.0),
        ("x", x, 1.0),
        ("x", x, -1.0),
        ("x", x, -3.0),
        ("y", y, 0.0),
        ("y", y, 1.0),
        ("y", y, -1.0),
        ("y", y, -3.0),
        ("x−y", x - y, 0.0),
    ] {
        if (v - at).norm() < 1e-12 {
            return Err(Error::Singular(format!("{name} = {at}")));
        }
    }
    let (x2, y2) = (x * x, y * y);
    let dxy = (x2 - 1.0) * (y2 - 1.0);
    let t1 = 2.0 * (-1.0 + 2.0 * x2 + 2.0 * y2) / dxy;
    let t2 = 2.0 * (x + y) / dxy * omega(x - y)?;
    let n3 = -1.0 + 3.0 * x + x2 - 3.0 * y - 2.0 * x * y + y2 - 3.0 * x * y2 + 3.0 * y2 * y;
    let t3 = 2.0 * n3 / (x * (x + 3.0) * (x - y) * (y2 - 1.0)) * omega_bar(x)?;
    let n4 = -1.0 - 3.0 * x + x2 + 3.0 * x2 * x + 3.0 * y - 2.0 * x * y - 3.0 * x2 * y + y2;
    let t4 = 2.0 * n4 / ((x2 - 1.0) * (x - y) * y * (y + 3.0)) * omega_bar(y)?;
    Ok(t1 + t2 + t3 - t4)
}

/// Inhomogeneity of the recursion in `λ₁`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Source {
    /// `φ(λ)`: `λ₂ = λ₃ = 0`.
    Homogeneous,
    /// `r(λ, t, −t)`: `λ₂ = t`, `λ₃ = −t`.
    Split(f64),
}

impl Source {
    pub fn eval(&self, l: C64) -> Result<C64> {
        match *self {
            Source::Homogeneous => phi(l),
            Source::Split(t) => r_xy(l + t, l - t),
        }
    }
}

/// Source sampled on the quadrature nodes of one contour.
#[derive(Clone, Debug)]
pub struct Convolution {
    problem: ThreeSiteProblem,
    source: Source,
    mu: Vec<C64>,
    /// `dμ` weights times source values, fine grid.
    fine: Vec<C64>,
    /// Same on every other node with doubled weight.
    coarse: Vec<C64>,
    tail: C64,
}

impl Convolution {
    pub fn new(problem: ThreeSiteProblem, source: Source) -> Result<Self> {
        problem.validate()?;
        let tau_max = problem.half_width.asinh();
        let mut n = (2.0 * tau_max / problem.step).ceil() as usize;
        n += n % 2;
        let h = 2.0 * tau_max / n as f64;
        let c = -problem.delta;
        let nodes: Vec<(C64, C64)> = (0..=n)
            .into_par_iter()
            .map(|j| {
                let tau = -tau_max + j as f64 * h;
                let mu = c64(c, tau.sinh());
                let dmu = c64(0.0, tau.cosh());
                source.eval(mu).map(|v| (mu, dmu * v))
            })
            .collect::<Result<Vec<_>>>()?;
        let end = |j: usize| if j == 0 || j == n { 0.5 } else { 1.0 };
        let mu = nodes.iter().map(|p| p.0).collect();
        let fine = nodes.iter().enumerate().map(|(j, p)| p.1 * (h * end(j))).collect();
        let coarse = nodes
            .iter()
            .enumerate()
            .map(|(j, p)| if j % 2 == 0 { p.1 * (2.0 * h * end(j)) } else { c64(0.0, 0.0) })
            .collect();
        // beyond Λ the source is 4/μ² and only K_0 tends to a constant (1, as Im μ → +∞)
        let tail = c64(0.0, -4.0 / problem.half_width);
        Ok(Convolution { problem, source, mu, fine, coarse, tail })
    }

    pub fn problem(&self) -> &ThreeSiteProblem {
        &self.problem
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn node_count(&self) -> usize {
        self.mu.len()
    }

    /// `d^k g_l/dλ^k` at `λ` (`k ≤ 2`), without the `l = 0` constant. The
    /// error estimate is the difference to the rule on every other node.
    pub fn g(&self, l: i32, lambda: C64, derivative: usize) -> Result<SpecialValue> {
        let a = shift_a(l)?;
        let c = -self.problem.delta;
        let off = lambda.re - c;
        if !(off > 1e-6 && off < 1.0 - 1e-6) {
            return Err(Error::InvalidArgument(format!(
                "λ = {lambda} outside the analyticity strip ({c}, {}) of this contour",
                c + 1.0
            )));
        }
        let mut fine = c64(0.0, 0.0);
        let mut coarse = c64(0.0, 0.0);
        for ((mu, wf), wc) in self.mu.iter().zip(&self.fine).zip(&self.coarse) {
            let k = kernel(a, lambda - mu, derivative);
            fine += k * wf;
            coarse += k * wc;
        }
        if l == 0 && derivative == 0 {
            fine += self.tail;
            coarse += self.tail;
        }
        Ok(SpecialValue { value: fine, error: (fine - coarse).norm() })
    }

    /// `(g_0, g_1, g_{−1})` at `λ`.
    pub fn g_all(&self, lambda: C64, derivative: usize) -> Result<[C64; 3]> {
        Ok([
            self.g(0, lambda, derivative)?.value,
            self.g(1, lambda, derivative)?.value,
            self.g(-1, lambda, derivative)?.value,
        ])
    }
}

/// `g_l(λ)` for the homogeneous source, without the `l = 0` constant.
pub fn solve_g(problem: &ThreeSiteProblem, l: i32, lambda: C64) -> Result<SpecialValue> {
    Convolution::new(*problem, Source::Homogeneous)?.g(l, lambda, 0)
}

/// `G_1, G_2, G_3` from `g_0 + shift, g_1, g_{−1}`.
pub fn inverse_decoupling(g: [C64; 3], shift: C64) -> [C64; 3] {
    let w = w();
    let g0 = g[0] + shift;
    [(g0 + g[1] + g[2]) / 3.0, (g0 + g[1] / w + g[2] * w) / 3.0, (g0 + g[1] * w + g[2] / w) / 3.0]
}

/// `|g_l(λ) − w^l g_l(λ+1) − φ(λ)|` for `−1 < Re λ < 0`. The two values
/// come from contours placed midway inside their own analyticity strips,
/// so the residual tests the recursion rather than the quadrature identity.
/// Both contours lie `min(−Re λ, 1 + Re λ)/2` from poles of the integrand,
/// so accuracy is best at `Re λ = −1/2`. The kernel poles sit at height
/// `Im λ`, where the sinh map stretches the nodes by `√(1 + (Im λ)²)`; the
/// step is shrunk by that factor.
pub fn functional_equation_residual(problem: &ThreeSiteProblem, l: i32, lambda: C64) -> Result<f64> {
    if !(lambda.re > -1.0 && lambda.re < 0.0) {
        return Err(Error::InvalidArgument(format!("need −1 < Re λ < 0, got {lambda}")));
    }
    let step = problem.step / (1.0 + lambda.im * lambda.im).sqrt();
    let left = ThreeSiteProblem { delta: (1.0 - lambda.re) / 2.0, step, ..*problem };
    let right = ThreeSiteProblem { delta: -lambda.re / 2.0, step, ..*problem };
    let a = Convolution::new(left, Source::Homogeneous)?.g(l, lambda, 0)?.value;
    let b = Convolution::new(right, Source::Homogeneous)?.g(l, lambda + 1.0, 0)?.value;
    Ok((a - w_pow(l) * b - phi(lambda)?).norm())
}

/// Diagnostic only: the one-sided series `Σ_{k≥0} w^{lk} φ(λ+k)`, a
/// solution of the same recursion with the wrong asymptotics.
pub fn naive_series_g(l: i32, lambda: C64, terms: usize) -> Result<C64> {
    let wl = w_pow(l);
    let mut acc = c64(0.0, 0.0);
    let mut wk = c64(1.0, 0.0);
    for k in 0..terms {
        acc += wk * phi(lambda + k as f64)?;
        wk *= wl;
    }
    if l == 0 {
        // Σ_{k≥K} 4/(λ+k)²
        acc += 4.0 / (lambda + terms as f64 - 0.5);
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct ThreeSiteDiagnostics {
    /// Constant added to `g_0` so that `G_1(0) = 0`.
    pub g0_constant: C64,
    /// `max |Im F_k|` before discarding.
    pub imaginary_leakage: f64,
    /// `G_1′(0)`, zero for the correct solution.
    pub g1_slope: f64,
    /// Largest every-other-node quadrature error over the `g_l` used.
    pub quadrature_error: f64,
    /// Richardson limit of `F_k(λ,0,0)` as `λ → 0` minus the direct value.
    pub extrapolation_gap: [f64; 3],
    pub extrapolation_error: f64,
    /// `G_1(λ)/λ²` at `λ = 0.1 + 0.1i` from the naive series; the
    /// convolution gives a finite value, the series does not.
    pub naive_g1_over_lambda2: f64,
    pub convolution_g1_over_lambda2: f64,
    pub node_count: usize,
}

#[derive(Clone, Debug)]
pub struct ThreeSiteSolution {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    /// `⟨P₁₂P₂₃⟩ = F₁/8`.
    pub p12p23: f64,
    pub diagnostics: ThreeSiteDiagnostics,
}

fn f_from_g(l: C64, g: [C64; 3]) -> [C64; 3] {
    let (x, y) = (l, l);
    let base = (x * x - 1.0) * (y * y - 1.0);
    [g[0] * base * (x + 2.0) * (y + 2.0) / (x * y), g[1] * base * (x + 2.0) * (y + 2.0) / ((x + 1.0) * (y + 1.0)), g[2] * base]
}

/// `F₁, F₂, F₃` at the homogeneous point and `⟨P₁₂P₂₃⟩`.
pub fn three_site_correlator(problem: &ThreeSiteProblem) -> Result<ThreeSiteSolution> {
    let conv = Convolution::new(*problem, Source::Homogeneous)?;
    let zero = c64(0.0, 0.0);
    let mut qerr = 0.0f64;
    let mut gs = |lambda: C64, d: usize| -> Result<[C64; 3]> {
        let mut out = [zero; 3];
        for (slot, l) in out.iter_mut().zip([0, 1, -1]) {
            let v = conv.g(l, lambda, d)?;
            qerr = qerr.max(v.error);
            *slot = v.value;
        }
        Ok(out)
    };
    let g0 = gs(zero, 0)?;
    let g1 = gs(zero, 1)?;
    let g2 = gs(zero, 2)?;
    let shift = -(g0[0] + g0[1] + g0[2]);
    let big_g = inverse_decoupling(g0, shift);
    let slope = inverse_decoupling(g1, zero)[0];
    let curv = inverse_decoupling(g2, zero)[0];
    let f = [2.0 * curv, 4.0 * big_g[1], big_g[2]];
    let leak = f.iter().map(|z| z.im.abs()).fold(0.0, f64::max);

    // λ → 0 cross-check from F_k(λ, 0, 0) at λ = (0.02+0.02i)·2^{-j}
    let mut samples: Vec<DMatrix<C64>> = Vec::new();
    for j in 0..5 {
        let l = c64(0.02, 0.02) / 2f64.powi(j);
        let gl = inverse_decoupling(gs(l, 0)?, shift);
        let fl = f_from_g(l, gl);
        samples.push(DMatrix::from_row_slice(3, 1, &fl));
    }
    let (lim, ext_err) = richardson(&samples, 1)?;
    let gap = [(lim[0] - f[0]).norm(), (lim[1] - f[1]).norm(), (lim[2] - f[2]).norm()];

    let probe = c64(0.1, 0.1);
    let naive = [naive_series_g(0, probe, 4000)?, naive_series_g(1, probe, 4000)?, naive_series_g(-1, probe, 4000)?];
    let naive_g1 = (naive[0] + naive[1] + naive[2]) / 3.0;
    let conv_g1 = inverse_decoupling(gs(probe, 0)?, shift)[0];

    Ok(ThreeSiteSolution {
        f1: f[0].re,
        f2: f[1].re,
        f3: f[2].re,
        p12p23: f[0].re / 8.0,
        diagnostics: ThreeSiteDiagnostics {
            g0_constant: shift,
            imaginary_leakage: leak,
            g1_slope: slope.norm(),
            quadrature_error: qerr,
            extrapolation_gap: gap,
            extrapolation_error: ext_err,
            naive_g1_over_lambda2: (naive_g1 / (probe * probe)).norm(),
            convolution_g1_over_lambda2: (conv_g1 / (probe * probe)).norm(),
            node_count: conv.node_count(),
        },
    })
}

/// Coefficient matrix `R(x, y)` of the linear system `R f = k` that links
/// the eleven singlet components `f = Mρ` to the two-site functions and
/// `F₁, F₂, F₃`.
pub fn inter_matrix(x: C64, y: C64) -> DMatrix<C64> {
    let mut r = DMatrix::<C64>::zeros(11, 11);
    let one = c64(1.0, 0.0);
    let set = |r: &mut DMatrix<C64>, i: usize, cols: &[usize], vals: &[C64]| {
        for (c, v) in cols.iter().zip(vals) {
            r[(i, *c)] = *v;
        }
    };
    let (x2, y2) = (x * x, y * y);
    let xy = x - y;
    r[(0, 0)] = one;
    r[(1, 1)] = one;
    r[(2, 6)] = one;
    set(&mut r, 3, &[2, 5, 4, 3], &[one, y, -y, -y2]);
    set(&mut r, 4, &[6, 9, 10, 8], &[one, -(y + 2.0), y - 1.0, -(y - 1.0) * (y + 2.0)]);
    set(
        &mut r,
        5,
        &[2, 3, 4, 5, 1],
        &[
            1.0 - xy * xy,
            x * (x - 2.0 * y),
            x * (-1.0 + x * y - y2),
            x * (1.0 - x * y + y2),
            x * xy * (-2.0 + x2 - x * y),
        ],
    );
    set(
        &mut r,
        6,
        &[6, 8, 9, 10],
        &[
            1.0 - (x - 1.0) * xy - (x + 2.0) * xy + (x - 1.0) * (x + 2.0) * xy * xy,
            2.0 - y - y2,
            (2.0 + y) * (-1.0 + x2 + y - x * (1.0 + y)),
            (y - 1.0) * (1.0 - x2 + x * (y - 2.0) + 2.0 * y),
        ],
    );
    r[(7, 2)] = one;
    set(
        &mut r,
        8,
        &[0, 1, 3, 4],
        &[
            2.0 * x * (2.0 + x) * y * (2.0 + y),
            2.0 * x * (2.0 + x) * (2.0 + y),
            2.0 * (2.0 + x) * y * (2.0 + y),
            2.0 * (2.0 + x) * (2.0 + y),
        ],
    );
    let row9 = [
        2.0 * (-2.0 - y - x * (2.0 + y) + x * (2.0 + x) * y * (2.0 + y)),
        -2.0 * (-1.0 + x + x2) * (2.0 + y),
        2.0 * (1.0 + x) * (2.0 + y),
        2.0 * (1.0 + x + (2.0 + x) * y - (2.0 + x) * y * (2.0 + y)),
        -2.0 * (1.0 + x + 2.0 * y + x * y),
        2.0 * (2.0 + y),
        -2.0 * (-2.0 - y + x * y + x2 * (1.0 + y)),
        2.0 * (1.0 + x - y),
        -2.0 * (1.0 + x) * (-2.0 + y + y2),
        -2.0 * (1.0 + x) * (2.0 + y),
        -2.0 * x,
    ];
    for (c, v) in row9.iter().enumerate() {
        r[(9, c)] = *v;
    }
    set(
        &mut r,
        10,
        &[0, 6, 8, 9],
        &[2.0 * (x2 - 1.0) * (y2 - 1.0), 2.0 * (x2 - 1.0) * (1.0 + y), 2.0 * (1.0 + x) * (y2 - 1.0), 2.0 * (1.0 + x) * (1.0 + y)],
    );
    r
}

/// Right-hand side `k(x, y)` of the same system, with
/// `F₁ = G₁(x²−1)(y²−1)(x+2)(y+2)/(xy)`, `F₂ = G₂(x²−1)(y²−1)(x+2)(y+2)/((x+1)(y+1))`,
/// `F₃ = G₃(x²−1)(y²−1)`.
pub fn inter_rhs(x: C64, y: C64, big_g: [C64; 3]) -> Result<Vec<C64>> {
    let base = (x * x - 1.0) * (y * y - 1.0);
    let f1 = big_g[0] * base * (x + 2.0) * (y + 2.0) / (x * y);
    let f2 = big_g[1] * base * (x + 2.0) * (y + 2.0) / ((x + 1.0) * (y + 1.0));
    let f3 = big_g[2] * base;
    let xy2 = (x - y) * (x - y);
    Ok(vec![
        c64(1.0, 0.0),
        omega(y)?,
        omega_bar(y - 1.0)?,
        omega(x)? * (1.0 - y * y),
        omega_bar(x - 1.0)? * (1.0 - y) * (2.0 + y),
        omega(y)? * (1.0 - x * x) * (1.0 - xy2),
        omega_bar(y - 1.0)? * (1.0 - x) * (2.0 + x) * (1.0 - xy2),
        omega(x - y)?,
        f1,
        f2,
        f3,
    ])
}

/// `D₃(0, t, −t)` with the constants used to pin `g_0`.
#[derive(Clone, Debug)]
pub struct SplitDensity {
    pub matrix: DMatrix<C64>,
    /// `g_0` constants from `G_1 = 0` at `y = 0` and at `x = 0`.
    pub constants: [C64; 2],
}

/// `D₃(λ₁, λ₂, λ₃)` at `λ₁ = 0`, `λ₂ = t`, `λ₃ = −t`, `t ≠ 0`.
pub fn density3_split(problem: &ThreeSiteProblem, t: f64) -> Result<SplitDensity> {
    if t.abs() < 1e-6 || t.abs() > problem.delta / 2.0 {
        return Err(Error::InvalidArgument(format!("split t = {t} must satisfy 0 < |t| ≤ δ/2")));
    }
    let conv = Convolution::new(*problem, Source::Split(t))?;
    let sum = |g: [C64; 3]| g[0] + g[1] + g[2];
    let c_y = -sum(conv.g_all(c64(t, 0.0), 0)?);
    let c_x = -sum(conv.g_all(c64(-t, 0.0), 0)?);
    let big_g = inverse_decoupling(conv.g_all(c64(0.0, 0.0), 0)?, c_y);
    let (x, y) = (c64(t, 0.0), c64(-t, 0.0));
    let f = solve(&inter_matrix(x, y), &inter_rhs(x, y, big_g)?)?;
    let rho = build_basis(3)?.rho_from_f(&f)?;
    Ok(SplitDensity { matrix: reduce_to_physical(3, &rho)?, constants: [c_y, c_x] })
}

#[derive(Clone, Debug)]
pub struct Density3 {
    pub matrix: DMatrix<C64>,
    pub extrapolation_error: f64,
    /// Largest `|c_y − c_x|` between the two determinations of the `g_0`
    /// constant over the splits used.
    pub constant_mismatch: f64,
    /// Largest `|D₃(t) − D₃(−t)|` at the smallest split.
    pub odd_part: f64,
}

/// Splits used for the homogeneous limit.
pub const SPLITS: [f64; 4] = [0.16, 0.08, 0.04, 0.02];

/// `D₃(0,0,0)`. On the line `λ₂ = λ₃` the linear system loses rank, so
/// `D₃(0, t, −t)` is symmetrized in `t` and extrapolated in `t²`.
pub fn density3_homogeneous(problem: &ThreeSiteProblem) -> Result<Density3> {
    density3_with_splits(problem, &SPLITS)
}

/// [`density3_homogeneous`] with explicit splits, each half the previous.
pub fn density3_with_splits(problem: &ThreeSiteProblem, splits: &[f64]) -> Result<Density3> {
    if splits.len() < 2 {
        return Err(Error::InvalidArgument("need at least two splits".into()));
    }
    let mut samples = Vec::new();
    let mut mismatch = 0.0f64;
    let mut odd = 0.0;
    for &t in splits {
        let a = density3_split(problem, t)?;
        let b = density3_split(problem, -t)?;
        for s in [&a, &b] {
            mismatch = mismatch.max((s.constants[0] - s.constants[1]).norm());
        }
        odd = crate::linalg::max_abs(&(&a.matrix - &b.matrix));
        samples.push((a.matrix + b.matrix) * c64(0.5, 0.0));
    }
    let (matrix, err) = richardson(&samples, 2)?;
    Ok(Density3 { matrix, extrapolation_error: err, constant_mismatch: mismatch, odd_part: odd })
}

/// Trace over the last site of an operator on `sites` copies of ℂ³.
pub fn trace_last(d: &DMatrix<C64>, sites: usize) -> DMatrix<C64> {
    let n = 3usize.pow(sites as u32 - 1);
    DMatrix::from_fn(n, n, |i, j| (0..3).map(|c| d[(3 * i + c, 3 * j + c)]).sum())
}

/// Trace over the first site.
pub fn trace_first(d: &DMatrix<C64>, sites: usize) -> DMatrix<C64> {
    let n = 3usize.pow(sites as u32 - 1);
    DMatrix::from_fn(n, n, |i, j| (0..3).map(|c| d[(c * n + i, c * n + j)]).sum())
}

/// Trace, Hermiticity defect and smallest eigenvalue of a density matrix.
#[derive(Clone, Copy, Debug)]
pub struct DensityChecks {
    pub trace: C64,
    pub hermiticity: f64,
    pub min_eigenvalue: f64,
}

pub fn density_checks(d: &DMatrix<C64>) -> DensityChecks {
    DensityChecks {
        trace: d.trace(),
        hermiticity: hermiticity_defect(d),
        min_eigenvalue: hermitian_eigenvalues(d)[0],
    }
}

/// `max |tr₃ D₃ − D₂(0)|` and `max |tr₁ D₃ − D₂(0)|`.
pub fn partial_trace_gaps(d3: &DMatrix<C64>) -> Result<(f64, f64)> {
    let d2 = two_site::density2(c64(0.0, 0.0))?;
    Ok((crate::linalg::max_abs(&(trace_last(d3, 3) - &d2)), crate::linalg::max_abs(&(trace_first(d3, 3) - &d2))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_branches_agree() {
        for u in [c64(0.3, 0.2), c64(0.3, -0.2), c64(-0.7, 1e-3)] {
            let direct = -(c64(0.0, -2.0 * PI) * (1.0 / 3.0) * u).exp() / ((c64(0.0, -2.0 * PI) * u).exp() - 1.0);
            assert!((kernel(1.0 / 3.0, u, 0) - direct).norm() < 1e-13);
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(h_kernel(2, c64(0.5, 0.0)).is_err());
        assert!(h_kernel(0, c64(0.0, 0.0)).is_err());
        assert!(r_inhom(c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)).is_err());
        let p = ThreeSiteProblem { delta: 1.5, ..Default::default() };
        assert!(p.validate().is_err());
        assert!(solve_g(&ThreeSiteProblem::default(), 0, c64(0.7, 0.0)).is_err());
    }
}
