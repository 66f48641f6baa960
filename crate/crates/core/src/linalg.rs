//! Small dense linear-algebra helpers: exact rational inversion of integer
//! matrices, complex solves, Hermitian spectra, Richardson tables.

use crate::{Error, Result, C64};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact inverse of a square integer matrix by Gauss–Jordan over ℚ.
pub fn exact_inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<BigRational>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Singular("integer matrix".into()))?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rational_to_f64(m: &[Vec<BigRational>]) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, m.first().map_or(0, |r| r.len()), |i, j| m[i][j].to_f64().unwrap_or(f64::NAN))
}

pub fn int_to_c64(m: &[Vec<i64>]) -> DMatrix<C64> {
    DMatrix::from_fn(m.len(), m[0].len(), |i, j| C64::new(m[i][j] as f64, 0.0))
}

/// Solves `a x = b` by LU with partial pivoting.
pub fn solve(a: &DMatrix<C64>, b: &[C64]) -> Result<Vec<C64>> {
    let rhs = nalgebra::DVector::from_column_slice(b);
    a.clone()
        .lu()
        .solve(&rhs)
        .map(|x| x.iter().copied().collect())
        .ok_or_else(|| Error::Singular("linear system".into()))
}

/// `max |a_ij|`.
pub fn max_abs(a: &DMatrix<C64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Ratio of largest to smallest singular value.
pub fn condition_number(a: &DMatrix<C64>) -> f64 {
    let sv = a.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

/// Eigenvalues of the Hermitian part of `a`, ascending.
pub fn hermitian_eigenvalues(a: &DMatrix<C64>) -> Vec<f64> {
    let h = (a + a.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// `max |a − a†|`.
pub fn hermiticity_defect(a: &DMatrix<C64>) -> f64 {
    (a - a.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Richardson table for samples taken at steps `h, h/2, h/4, ...` of a
/// quantity with an expansion in powers of `h^p`. Returns the most
/// extrapolated value and the difference between the last two diagonal
/// entries as an error estimate.
pub fn richardson<T: Extrapolable>(samples: &[T], p: u32) -> Result<(T, f64)> {
    if samples.len() < 2 {
        return Err(Error::Extrapolation("need at least two samples".into()));
    }
    let mut table: Vec<T> = samples.to_vec();
    let mut prev_diag = table[table.len() - 1].clone();
    let mut last_err = f64::INFINITY;
    for level in 1..samples.len() {
        let f = 1.0 / (2f64.powi((p * level as u32) as i32) - 1.0);
        let next: Vec<T> = (0..table.len() - 1).map(|k| T::extrapolate(&table[k], &table[k + 1], f)).collect();
        let diag = next[next.len() - 1].clone();
        last_err = T::distance(&diag, &prev_diag);
        prev_diag = diag;
        table = next;
    }
    Ok((table.pop().unwrap(), last_err))
}

/// Values a Richardson table can combine.
pub trait Extrapolable: Clone {
    /// `fine + (fine − coarse)·f`
    fn extrapolate(coarse: &Self, fine: &Self, f: f64) -> Self;
    fn distance(a: &Self, b: &Self) -> f64;
}

impl Extrapolable for f64 {
    fn extrapolate(coarse: &Self, fine: &Self, f: f64) -> Self {
        fine + (fine - coarse) * f
    }
    fn distance(a: &Self, b: &Self) -> f64 {
        (a - b).abs()
    }
}

impl Extrapolable for C64 {
    fn extrapolate(coarse: &Self, fine: &Self, f: f64) -> Self {
        fine + (fine - coarse) * f
    }
    fn distance(a: &Self, b: &Self) -> f64 {
        (a - b).norm()
    }
}

impl Extrapolable for DMatrix<C64> {
    fn extrapolate(coarse: &Self, fine: &Self, f: f64) -> Self {
        fine + (fine - coarse) * C64::new(f, 0.0)
    }
    fn distance(a: &Self, b: &Self) -> f64 {
        max_abs(&(a - b))
    }
}
