//! Exact diagonalization of the periodic SU(3) chain `H = Σ_j P_{j,j+1}`.
//!
//! Product states are base-3 integers, site `j` being digit `j` (site 0
//! least significant). The Hamiltonian conserves the number of sites of
//! each color, so the ground state is searched in the most balanced color
//! sector: dense diagonalization for small sectors, Lanczos with full
//! reorthogonalization otherwise. For `L ≤ 6` every other sector is
//! diagonalized too, to confirm the balanced sector holds the global
//! minimum.

use crate::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const DEGENERACY_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-10;
const DENSE_LIMIT: usize = 6;

/// Periodic chain of `length` sites with local dimension 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub length: usize,
}

impl ChainSpec {
    pub fn new(length: usize) -> Result<Self> {
        if !(3..=12).contains(&length) {
            return Err(Error::SizeOverflow(format!("chain length {length} outside 3..=12")));
        }
        Ok(ChainSpec { length })
    }

    pub fn hilbert_dim(&self) -> usize {
        3usize.pow(self.length as u32)
    }

    /// Bonds `(j, j+1 mod L)`.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        (0..self.length).map(|j| (j, (j + 1) % self.length)).collect()
    }
}

fn digit(s: u32, j: usize) -> u32 {
    (s / 3u32.pow(j as u32)) % 3
}

fn with_digit(s: u32, j: usize, v: u32) -> u32 {
    let p = 3u32.pow(j as u32);
    s - digit(s, j) * p + v * p
}

fn swap_sites(s: u32, a: usize, b: usize) -> u32 {
    let (da, db) = (digit(s, a), digit(s, b));
    with_digit(with_digit(s, a, db), b, da)
}

fn color_counts(s: u32, length: usize) -> [usize; 3] {
    let mut c = [0; 3];
    for j in 0..length {
        c[digit(s, j) as usize] += 1;
    }
    c
}

/// Product states with fixed color counts, sorted.
#[derive(Clone, Debug)]
pub struct Sector {
    pub counts: [usize; 3],
    pub states: Vec<u32>,
}

impl Sector {
    pub fn new(spec: ChainSpec, counts: [usize; 3]) -> Self {
        let states =
            (0..spec.hilbert_dim() as u32).filter(|&s| color_counts(s, spec.length) == counts).collect();
        Sector { counts, states }
    }

    /// `L/3` of each color when divisible, otherwise as even as possible.
    pub fn balanced(spec: ChainSpec) -> Self {
        let q = spec.length / 3;
        let r = spec.length % 3;
        let counts = [q + usize::from(r > 0), q + usize::from(r > 1), q];
        Self::new(spec, counts)
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index(&self, s: u32) -> Option<usize> {
        self.states.binary_search(&s).ok()
    }
}

/// Form of the Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianForm {
    /// `Σ P_{j,j+1}`
    Permutation,
    /// `Σ [S_j·S_{j+1} + (S_j·S_{j+1})²]` with spin-1 matrices.
    Spin1,
}

/// Two-site block `S·S + (S·S)²` on ℂ³⊗ℂ³ (index `3a + b`), built from
/// the spin-1 matrices in the `S_z` basis `m = 1, 0, −1`.
pub fn spin1_bond() -> DMatrix<f64> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // S± as real matrices; S·S = Sz⊗Sz + (S+⊗S− + S−⊗S+)/2
    let sz = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
    let sp = DMatrix::from_row_slice(3, 3, &[0.0, 2.0 * r, 0.0, 0.0, 0.0, 2.0 * r, 0.0, 0.0, 0.0]);
    let sm = sp.transpose();
    let ss = sz.kronecker(&sz) + (sp.kronecker(&sm) + sm.kronecker(&sp)) * 0.5;
    &ss + &ss * &ss
}

fn permutation_bond() -> DMatrix<f64> {
    DMatrix::from_fn(9, 9, |i, j| if i == 3 * (j % 3) + j / 3 { 1.0 } else { 0.0 })
}

/// Hamiltonian as a bond operator applied around the ring.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    pub spec: ChainSpec,
    pub form: HamiltonianForm,
    bond: DMatrix<f64>,
}

pub fn build_hamiltonian(spec: ChainSpec, form: HamiltonianForm) -> Hamiltonian {
    let bond = match form {
        HamiltonianForm::Permutation => permutation_bond(),
        HamiltonianForm::Spin1 => spin1_bond(),
    };
    Hamiltonian { spec, form, bond }
}

impl Hamiltonian {
    /// Matrix-free action on the full product space.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let dim = self.spec.hilbert_dim();
        if v.len() != dim {
            return Err(Error::InvalidArgument(format!("vector length {} ≠ {dim}", v.len())));
        }
        let bonds = self.spec.bonds();
        let out = (0..dim as u32)
            .into_par_iter()
            .map(|s| {
                let mut acc = 0.0;
                for &(a, b) in &bonds {
                    let row = 3 * digit(s, a) as usize + digit(s, b) as usize;
                    for col in 0..9 {
                        let h = self.bond[(row, col)];
                        if h != 0.0 {
                            let t = with_digit(with_digit(s, a, (col / 3) as u32), b, (col % 3) as u32);
                            acc += h * v[t as usize];
                        }
                    }
                }
                acc
            })
            .collect();
        Ok(out)
    }

    /// Dense matrix on the full space, `L ≤ 6` only.
    pub fn dense(&self) -> Result<DMatrix<f64>> {
        if self.spec.length > DENSE_LIMIT {
            return Err(Error::SizeOverflow(format!(
                "dense Hamiltonian for L = {} exceeds L = {DENSE_LIMIT}",
                self.spec.length
            )));
        }
        let dim = self.spec.hilbert_dim();
        let mut m = DMatrix::zeros(dim, dim);
        let mut e = vec![0.0; dim];
        for j in 0..dim {
            e[j] = 1.0;
            let col = self.apply(&e)?;
            m.set_column(j, &nalgebra::DVector::from_vec(col));
            e[j] = 0.0;
        }
        Ok(m)
    }
}

/// Neighbor table of the permutation Hamiltonian inside one sector:
/// `table[b][i]` is the index of the state `i` with bond `b` swapped.
fn sector_table(spec: ChainSpec, sector: &Sector) -> Vec<Vec<u32>> {
    spec.bonds()
        .iter()
        .map(|&(a, b)| {
            sector.states.iter().map(|&s| sector.index(swap_sites(s, a, b)).unwrap() as u32).collect()
        })
        .collect()
}

fn sector_apply(table: &[Vec<u32>], v: &[f64]) -> Vec<f64> {
    (0..v.len()).into_par_iter().map(|i| table.iter().map(|t| v[t[i] as usize]).sum()).collect()
}

fn sector_dense(table: &[Vec<u32>], dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    for t in table {
        for (i, &j) in t.iter().enumerate() {
            m[(i, j as usize)] += 1.0;
        }
    }
    m
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    for x in v.iter_mut() {
        *x /= n;
    }
    n
}

/// Result of one Lanczos run.
#[derive(Clone, Debug)]
pub struct LanczosResult {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Lowest eigenpair of a real symmetric operator, in the orthogonal
/// complement of `deflate`. Full reorthogonalization; converged when the
/// lowest Ritz value moves by less than `1e−13` and the Ritz residual is
/// below `1e−10`.
pub fn lanczos(
    apply: impl Fn(&[f64]) -> Vec<f64>,
    dim: usize,
    deflate: &[Vec<f64>],
    seed: u64,
) -> Result<LanczosResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for d in deflate {
        let c = dot(d, &q);
        axpy(&mut q, -c, d);
    }
    normalize(&mut q);
    let max_iter = dim.saturating_sub(deflate.len()).clamp(1, 500);
    let mut basis: Vec<Vec<f64>> = vec![q];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut prev = f64::INFINITY;
    let mut ritz = (0.0, Vec::new());
    let mut iterations = 0;
    let mut converged = false;
    for m in 0..max_iter {
        iterations = m + 1;
        let mut w = apply(&basis[m]);
        let a = dot(&basis[m], &w);
        alpha.push(a);
        for _ in 0..2 {
            for v in basis.iter().chain(deflate) {
                let c = dot(v, &w);
                axpy(&mut w, -c, v);
            }
        }
        let b = dot(&w, &w).sqrt();
        let k = alpha.len();
        let t = DMatrix::from_fn(k, k, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j || j + 1 == i {
                beta[i.min(j)]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(t);
        let (imin, &theta) =
            eig.eigenvalues.iter().enumerate().min_by(|x, y| x.1.total_cmp(y.1)).unwrap();
        let s: Vec<f64> = eig.eigenvectors.column(imin).iter().copied().collect();
        let ritz_res = b * s[k - 1].abs();
        ritz = (theta, s);
        if ((theta - prev).abs() < 1e-13 && ritz_res < 1e-11) || b < 1e-12 {
            converged = true;
            break;
        }
        prev = theta;
        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }
    let (value, s) = ritz;
    let mut vector = vec![0.0; dim];
    for (c, v) in s.iter().zip(&basis) {
        axpy(&mut vector, *c, v);
    }
    normalize(&mut vector);
    let hv = apply(&vector);
    let residual = hv.iter().zip(&vector).map(|(h, v)| (h - value * v).powi(2)).sum::<f64>().sqrt();
    if !converged || residual > RESIDUAL_TOL {
        return Err(Error::NonConvergence { iterations, residual });
    }
    Ok(LanczosResult { value, vector, iterations, residual })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Dense,
    Lanczos,
}

/// Ground space of the permutation Hamiltonian in the balanced sector.
#[derive(Clone, Debug)]
pub struct GroundState {
    pub spec: ChainSpec,
    pub sector: Sector,
    pub energy: f64,
    pub method: Method,
    /// Orthonormal basis of the ground space, sector amplitudes.
    pub vectors: Vec<Vec<f64>>,
    /// `max ‖Hv − E₀v‖` over the returned vectors.
    pub residual: f64,
    pub iterations: usize,
    /// For `L ≤ 6`: lowest eigenvalue over all sectors minus `E₀`.
    pub global_gap: Option<f64>,
}

impl GroundState {
    pub fn energy_per_site(&self) -> f64 {
        self.energy / self.spec.length as f64
    }
}

fn dense_sector_lowest(spec: ChainSpec, sector: &Sector) -> (Vec<f64>, DMatrix<f64>) {
    let table = sector_table(spec, sector);
    let eig = SymmetricEigen::new(sector_dense(&table, sector.dim()));
    let mut order: Vec<usize> = (0..sector.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(sector.dim(), sector.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

fn all_counts(length: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..=length {
        for b in 0..=length - a {
            out.push([a, b, length - a - b]);
        }
    }
    out
}

/// Ground state with a fixed Lanczos seed.
pub fn ground_state(spec: ChainSpec) -> Result<GroundState> {
    ground_state_seeded(spec, 0x5eed)
}

pub fn ground_state_seeded(spec: ChainSpec, seed: u64) -> Result<GroundState> {
    let sector = Sector::balanced(spec);
    let table = sector_table(spec, &sector);
    let apply = |v: &[f64]| sector_apply(&table, v);
    let dim = sector.dim();
    let (energy, vectors, method, iterations) = if spec.length <= DENSE_LIMIT {
        let (values, vecs) = dense_sector_lowest(spec, &sector);
        let e0 = values[0];
        let ground: Vec<Vec<f64>> = values
            .iter()
            .enumerate()
            .take_while(|(_, &v)| v - e0 < DEGENERACY_TOL)
            .map(|(c, _)| vecs.column(c).iter().copied().collect())
            .collect();
        (e0, ground, Method::Dense, 0)
    } else {
        let first = lanczos(apply, dim, &[], seed)?;
        let e0 = first.value;
        let mut iters = first.iterations;
        let mut ground = vec![first.vector];
        while ground.len() < dim {
            let next = lanczos(apply, dim, &ground, seed.wrapping_add(ground.len() as u64))?;
            iters += next.iterations;
            if next.value - e0 >= DEGENERACY_TOL {
                break;
            }
            ground.push(next.vector);
        }
        (e0, ground, Method::Lanczos, iters)
    };
    let residual = vectors
        .iter()
        .map(|v| {
            let hv = apply(v);
            hv.iter().zip(v).map(|(h, x)| (h - energy * x).powi(2)).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max);
    if residual > RESIDUAL_TOL {
        return Err(Error::NonConvergence { iterations, residual });
    }
    let global_gap = if spec.length <= DENSE_LIMIT {
        let lowest = all_counts(spec.length)
            .into_iter()
            .map(|c| dense_sector_lowest(spec, &Sector::new(spec, c)).0[0])
            .fold(f64::INFINITY, f64::min);
        Some(lowest - energy)
    } else {
        None
    };
    Ok(GroundState { spec, sector, energy, method, vectors, residual, iterations, global_gap })
}

/// Expectation values requested from [`observables`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Observable {
    P12,
    P12P23,
    Rdm2,
    Rdm3,
}

/// Ground-space averages. Reduced density matrices are on sites `1..=k`
/// with site 1 the most significant index, `ρ_{xy} = Σ ψ(x, rest)ψ(y, rest)`.
#[derive(Clone, Debug, Default)]
pub struct Observables {
    pub p12: Option<f64>,
    pub p12p23: Option<f64>,
    pub p13: Option<f64>,
    pub rdm2: Option<DMatrix<f64>>,
    pub rdm3: Option<DMatrix<f64>>,
    /// `|⟨P₁₂⟩ − E₀/L|`, zero by translation invariance.
    pub translation_defect: Option<f64>,
}

fn expectation(gs: &GroundState, op: impl Fn(u32) -> u32) -> f64 {
    let mut total = 0.0;
    for v in &gs.vectors {
        for (i, &s) in gs.sector.states.iter().enumerate() {
            let j = gs.sector.index(op(s)).unwrap();
            total += v[i] * v[j];
        }
    }
    total / gs.vectors.len() as f64
}

fn rdm(gs: &GroundState, k: usize) -> DMatrix<f64> {
    let n = 3usize.pow(k as u32);
    let mut rho = DMatrix::zeros(n, n);
    let local = |s: u32| (0..k).fold(0usize, |acc, j| acc * 3 + digit(s, j) as usize);
    for v in &gs.vectors {
        for (i, &s) in gs.sector.states.iter().enumerate() {
            let x = local(s);
            for y in 0..n {
                let mut t = s;
                let mut rest = y;
                for j in (0..k).rev() {
                    t = with_digit(t, j, (rest % 3) as u32);
                    rest /= 3;
                }
                if let Some(jx) = gs.sector.index(t) {
                    rho[(x, y)] += v[i] * v[jx];
                }
            }
        }
    }
    rho / gs.vectors.len() as f64
}

pub fn observables(gs: &GroundState, which: &[Observable]) -> Observables {
    let mut out = Observables::default();
    let l = gs.spec.length;
    for w in which {
        match w {
            Observable::P12 => {
                let p = expectation(gs, |s| swap_sites(s, 0, 1));
                out.p12 = Some(p);
                out.translation_defect = Some((p - gs.energy / l as f64).abs());
            }
            Observable::P12P23 => {
                out.p12p23 = Some(expectation(gs, |s| swap_sites(swap_sites(s, 1, 2 % l), 0, 1)));
                out.p13 = Some(expectation(gs, |s| swap_sites(s, 0, 2 % l)));
            }
            Observable::Rdm2 => out.rdm2 = Some(rdm(gs, 2)),
            Observable::Rdm3 => out.rdm3 = Some(rdm(gs, 3)),
        }
    }
    out
}
