//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's numerical routines.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C;
use std::collections::HashMap;
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `ψ(z) − ψ(w) = Σ_n [1/(n+w) − 1/(n+z)]`, summed directly to `N` with an
/// Euler–Maclaurin tail.
pub fn psi_diff(z: C, w: C) -> C {
    const N: usize = 2000;
    let mut s = C::new(0.0, 0.0);
    for n in 0..N {
        let n = n as f64;
        s += 1.0 / (n + w) - 1.0 / (n + z);
    }
    let x = N as f64;
    let f = 1.0 / (x + w) - 1.0 / (x + z);
    let f1 = -1.0 / ((x + w) * (x + w)) + 1.0 / ((x + z) * (x + z));
    let f3 = -6.0 / (x + w).powi(4) + 6.0 / (x + z).powi(4);
    s + ((x + z) / (x + w)).ln() + f / 2.0 - f1 / 12.0 + f3 / 720.0
}

pub fn digamma(z: C) -> C {
    C::new(-EULER_GAMMA, 0.0) + psi_diff(z, C::new(1.0, 0.0))
}

/// `ζ(s, a) = Σ (n+a)^{−s}` with an Euler–Maclaurin tail.
pub fn hurwitz(s: f64, a: f64) -> f64 {
    const N: usize = 2000;
    let mut acc = 0.0;
    for n in (0..N).rev() {
        acc += (n as f64 + a).powf(-s);
    }
    let x = N as f64 + a;
    acc + x.powf(1.0 - s) / (s - 1.0) + x.powf(-s) / 2.0 + s * x.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * x.powf(-s - 3.0) / 720.0
}

/// `G(λ) = −(1/3)[ψ(4/3+z) − ψ(1+z) + ψ(4/3−z) − ψ(1−z)]`, `z = λ/3`.
pub fn g(l: C) -> C {
    let z = l / 3.0;
    let one = C::new(1.0, 0.0);
    let a = C::new(4.0 / 3.0, 0.0);
    -(psi_diff(a + z, one + z) + psi_diff(a - z, one - z)) / 3.0
}

/// `ω₃₃(λ) = (λ²−1)G(λ) − 1`.
pub fn omega(l: C) -> C {
    (l * l - 1.0) * g(l) - 1.0
}

/// Taylor coefficients of an analytic `f` at 0 by the Cauchy integral on
/// a circle of radius `r` with `m` trapezoid nodes.
pub fn taylor(f: impl Fn(C) -> C, order: usize, r: f64, m: usize) -> Vec<C> {
    let vals: Vec<(C, C)> = (0..m)
        .map(|j| {
            let z = C::from_polar(r, 2.0 * PI * j as f64 / m as f64);
            (z, f(z))
        })
        .collect();
    (0..=order).map(|k| vals.iter().map(|(z, v)| v / z.powu(k as u32)).sum::<C>() / m as f64).collect()
}

/// `∫ e^{ikz}/(1 − w^l e^k) dk` along `Im k = 0.3`, trapezoid in `Re k`.
/// Needs `−1 < Im z < 0`.
pub fn h_integral(l: i32, z: C) -> C {
    let wl = C::from_polar(1.0, 2.0 * PI * l as f64 / 3.0);
    let (t_max, h) = (200.0, 0.004);
    let n = (2.0 * t_max / h) as usize;
    let mut acc = C::new(0.0, 0.0);
    for j in 0..=n {
        let k = C::new(-t_max + j as f64 * h, 0.3);
        let v = (C::i() * k * z).exp() / (1.0 - wl * k.exp());
        acc += if j == 0 || j == n { v * 0.5 } else { v };
    }
    acc * h
}

/// `I + λP` on ℂ³⊗ℂ³, index `3a + b`.
pub fn r_perm(l: C) -> DMatrix<C> {
    DMatrix::from_fn(9, 9, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        let p = if i == 3 * (j % 3) + j / 3 { 1.0 } else { 0.0 };
        C::new(id, 0.0) + l * p
    })
}

/// `uI + P`, which satisfies the Yang–Baxter equation in difference form.
pub fn r_yang(u: C) -> DMatrix<C> {
    let p = r_perm(C::new(1.0, 0.0)) - DMatrix::identity(9, 9);
    DMatrix::identity(9, 9) * u + p
}

/// Operator on ℂ³^{⊗3} acting with the 9×9 `m` on sites `a < b`.
pub fn embed(m: &DMatrix<C>, a: usize, b: usize) -> DMatrix<C> {
    let digits = |x: usize| [x / 9, (x / 3) % 3, x % 3];
    DMatrix::from_fn(27, 27, |i, j| {
        let (di, dj) = (digits(i), digits(j));
        let c = 3 - a - b;
        if di[c] != dj[c] {
            return C::new(0.0, 0.0);
        }
        m[(3 * di[a] + di[b], 3 * dj[a] + dj[b])]
    })
}

/// Dense Hamiltonian `Σ P_{j,j+1}` on the full space, site 0 least
/// significant.
pub fn dense_chain(l: usize) -> DMatrix<f64> {
    let dim = 3usize.pow(l as u32);
    let mut h = DMatrix::zeros(dim, dim);
    for s in 0..dim {
        let mut d: Vec<usize> = (0..l).map(|j| (s / 3usize.pow(j as u32)) % 3).collect();
        for j in 0..l {
            let k = (j + 1) % l;
            d.swap(j, k);
            let t: usize = d.iter().enumerate().map(|(j, &x)| x * 3usize.pow(j as u32)).sum();
            h[(t, s)] += 1.0;
            d.swap(j, k);
        }
    }
    h
}

/// Lowest eigenvalue and eigenvector of a dense symmetric matrix.
pub fn lowest(h: &DMatrix<f64>) -> (f64, Vec<f64>) {
    let e = SymmetricEigen::new(h.clone());
    let i = (0..h.nrows()).min_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b])).unwrap();
    (e.eigenvalues[i], e.eigenvectors.column(i).iter().copied().collect())
}

/// `(E₀/L, ⟨P₁₂P₂₃⟩)` from a dense diagonalization of the sector with `L/3`
/// sites of each color, built from digit tuples.
pub fn sector_ed(l: usize) -> (f64, f64) {
    let mut states: Vec<Vec<u8>> = Vec::new();
    let mut cur = vec![0u8; l];
    loop {
        if (0..3u8).all(|c| cur.iter().filter(|&&x| x == c).count() == l / 3) {
            states.push(cur.clone());
        }
        let mut j = 0;
        while j < l && cur[j] == 2 {
            cur[j] = 0;
            j += 1;
        }
        if j == l {
            break;
        }
        cur[j] += 1;
    }
    let index: HashMap<Vec<u8>, usize> = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let n = states.len();
    let mut h = DMatrix::zeros(n, n);
    for (i, s) in states.iter().enumerate() {
        for j in 0..l {
            let mut t = s.clone();
            t.swap(j, (j + 1) % l);
            h[(index[&t], i)] += 1.0;
        }
    }
    let (e0, v) = lowest(&h);
    let mut p = 0.0;
    for (i, s) in states.iter().enumerate() {
        let mut t = s.clone();
        t.swap(1, 2);
        t.swap(0, 1);
        p += v[i] * v[index[&t]];
    }
    (e0 / l as f64, p)
}
