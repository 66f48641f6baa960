//! Singlet bases of the mixed density operators, their Gram matrices, the
//! functional-equation matrices `A^[m]` and the reduction to ordinary
//! density operators on `m` sites.
//!
//! Leg labels are `i1 i2 i3` for the three lines of the antisymmetrized
//! bunch, `r1 r2` for the incoming physical lines and `s1 s2` for the
//! outgoing ones. `i*` and `r*` are lower indices, `s*` upper.
//!
//! Element order (the Gram and `A` matrices depend on it):
//!
//! | k | m = 2 | m = 3 |
//! |---|-------|-------|
//! | 1 | ε(i1 i2 i3) δ(r1 s1) | ε(i1 i2 i3) δ(r1 s1) δ(r2 s2) |
//! | 2 | ε(r1 i2 i3) δ(i1 s1) | ε(r1 i2 i3) δ(i1 s1) δ(r2 s2) |
//! | 3 | ε(i1 i2 r1) δ(i3 s1) | ε(i1 i2 i3) δ(r1 s2) δ(r2 s1) |
//! | 4 | | ε(r2 i2 i3) δ(i1 s2) δ(r1 s1) |
//! | 5 | | ε(r1 i2 i3) δ(i1 s2) δ(r2 s1) |
//! | 6 | | ε(r2 i2 i3) δ(i1 s1) δ(r1 s2) |
//! | 7 | | ε(i1 i2 r1) δ(i3 s1) δ(r2 s2) |
//! | 8 | | ε(i3 r2 r1) δ(i2 s1) δ(i1 s2) |
//! | 9 | | ε(i1 i2 r2) δ(i3 s2) δ(r1 s1) |
//! | 10 | | ε(i1 i2 r1) δ(i3 s2) δ(r2 s1) |
//! | 11 | | ε(i1 i2 r2) δ(i3 s1) δ(r1 s2) |

use crate::integrable::{intertwiner, r_matrix, RKind};
use crate::linalg::{exact_inverse, rational_to_f64};
use crate::tensor_kernel::{contract, delta3, epsilon3, full_contract, LabeledTensor};
use crate::{c64, Error, Result, C64};
use nalgebra::DMatrix;
use num_rational::BigRational;
use std::sync::OnceLock;

const LEGS2: [&str; 5] = ["i1", "i2", "i3", "r1", "s1"];
const LEGS3: [&str; 7] = ["i1", "i2", "i3", "r1", "r2", "s1", "s2"];

type Diagram = ([&'static str; 3], &'static [(&'static str, &'static str)]);

const DIAGRAMS2: [Diagram; 3] = [
    (["i1", "i2", "i3"], &[("r1", "s1")]),
    (["r1", "i2", "i3"], &[("i1", "s1")]),
    (["i1", "i2", "r1"], &[("i3", "s1")]),
];

const DIAGRAMS3: [Diagram; 11] = [
    (["i1", "i2", "i3"], &[("r1", "s1"), ("r2", "s2")]),
    (["r1", "i2", "i3"], &[("i1", "s1"), ("r2", "s2")]),
    (["i1", "i2", "i3"], &[("r1", "s2"), ("r2", "s1")]),
    (["r2", "i2", "i3"], &[("i1", "s2"), ("r1", "s1")]),
    (["r1", "i2", "i3"], &[("i1", "s2"), ("r2", "s1")]),
    (["r2", "i2", "i3"], &[("i1", "s1"), ("r1", "s2")]),
    (["i1", "i2", "r1"], &[("i3", "s1"), ("r2", "s2")]),
    (["i3", "r2", "r1"], &[("i2", "s1"), ("i1", "s2")]),
    (["i1", "i2", "r2"], &[("i3", "s2"), ("r1", "s1")]),
    (["i1", "i2", "r1"], &[("i3", "s2"), ("r2", "s1")]),
    (["i1", "i2", "r2"], &[("i3", "s1"), ("r1", "s2")]),
];

/// Ordered singlet basis for `m = 2` (3 elements) or `m = 3` (11 elements).
#[derive(Clone, Debug)]
pub struct SingletBasis {
    m: usize,
    elements: Vec<LabeledTensor>,
    gram: Vec<Vec<i64>>,
    gram_inverse: Vec<Vec<BigRational>>,
    reduced: Vec<DMatrix<C64>>,
}

fn diagram(d: &Diagram, order: &[&str]) -> Result<LabeledTensor> {
    let mut t = epsilon3(d.0[0], d.0[1], d.0[2]);
    for (lo, up) in d.1 {
        t = contract(&t, &delta3(lo, up), &[])?;
    }
    t.permuted(order)
}

impl SingletBasis {
    fn construct(m: usize) -> Result<Self> {
        let elements: Vec<LabeledTensor> = match m {
            2 => DIAGRAMS2.iter().map(|d| diagram(d, &LEGS2)).collect::<Result<_>>()?,
            3 => DIAGRAMS3.iter().map(|d| diagram(d, &LEGS3)).collect::<Result<_>>()?,
            _ => return Err(Error::InvalidArgument(format!("singlet bases exist for m = 2, 3; got {m}"))),
        };
        let mut gram = vec![vec![0i64; elements.len()]; elements.len()];
        for (i, a) in elements.iter().enumerate() {
            for (k, b) in elements.iter().enumerate() {
                let v = full_contract(&a.conj().dual(), b)?;
                let r = v.re.round();
                if (v - r).norm() > 1e-9 {
                    return Err(Error::InvalidArgument(format!("Gram entry ({i},{k}) = {v} is not an integer")));
                }
                gram[i][k] = r as i64;
            }
        }
        let gram_inverse = exact_inverse(&gram)?;
        let reduced = elements.iter().map(|p| reduce_element(m, p)).collect::<Result<_>>()?;
        Ok(SingletBasis { m, elements, gram, gram_inverse, reduced })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[LabeledTensor] {
        &self.elements
    }

    /// `M_ik = ⟨P_i, P_k⟩`, exact.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &[Vec<BigRational>] {
        &self.gram_inverse
    }

    /// First row of the Gram matrix: maps `ρ` to the normalization `f₁`.
    pub fn normalization_row(&self) -> Vec<f64> {
        self.gram[0].iter().map(|&x| x as f64).collect()
    }

    /// Ordinary operator on `m` sites that element `k` (0-based) reduces to.
    pub fn reduced_element(&self, k: usize) -> &DMatrix<C64> {
        &self.reduced[k]
    }

    /// Solves `M ρ = f`.
    pub fn rho_from_f(&self, f: &[C64]) -> Result<Vec<C64>> {
        if f.len() != self.dim() {
            return Err(Error::InvalidArgument(format!("expected {} components, got {}", self.dim(), f.len())));
        }
        let inv = rational_to_f64(&self.gram_inverse);
        Ok((0..self.dim()).map(|i| (0..self.dim()).map(|k| f[k] * inv[(i, k)]).sum()).collect())
    }
}

/// Memoized basis for `m ∈ {2, 3}`.
pub fn build_basis(m: usize) -> Result<&'static SingletBasis> {
    static B2: OnceLock<SingletBasis> = OnceLock::new();
    static B3: OnceLock<SingletBasis> = OnceLock::new();
    let cell = match m {
        2 => &B2,
        3 => &B3,
        _ => return Err(Error::InvalidArgument(format!("singlet bases exist for m = 2, 3; got {m}"))),
    };
    if let Some(b) = cell.get() {
        return Ok(b);
    }
    let b = SingletBasis::construct(m)?;
    Ok(cell.get_or_init(|| b))
}

/// Applies the product of R-matrices that moves the top bunch line around
/// the open bonds. `m = 2` uses `Ř^{FF}(λ)` and the intertwiner at `λ+3`;
/// `m = 3` uses `Ř^{FF}(y)`, `Ř^{FF}(x)` and intertwiners at `x+3`, `y+3`.
pub fn apply_frak_a(m: usize, p: &LabeledTensor, args: &[C64]) -> Result<LabeledTensor> {
    let three = c64(3.0, 0.0);
    match m {
        2 => {
            let l = args[0];
            let r1 = r_matrix(RKind::FF, 3, l)?.relabel(&[("i", "o_i1"), ("k", "o_r1"), ("j", "q"), ("l", "a")])?;
            let r2 =
                intertwiner(RKind::FA, 3, l + three)?.relabel(&[("i", "a"), ("k", "o_s1"), ("j", "p"), ("l", "o")])?;
            let inner = p.relabel(&[("i1", "o_i2"), ("i2", "o_i3"), ("i3", "o"), ("r1", "q"), ("s1", "p")])?;
            let t = contract(&r1, &r2, &[("a", "a")])?;
            let t = contract(&t, &inner, &[("q", "q"), ("p", "p"), ("o", "o")])?;
            t.relabel(&[("o_i1", "i1"), ("o_i2", "i2"), ("o_i3", "i3"), ("o_r1", "r1"), ("o_s1", "s1")])?
                .permuted(&LEGS2)
        }
        3 => {
            let (x, y) = (args[0], args[1]);
            let r1 = r_matrix(RKind::FF, 3, y)?.relabel(&[("i", "o_i1"), ("k", "o_r1"), ("j", "q"), ("l", "a")])?;
            let r2 = r_matrix(RKind::FF, 3, x)?.relabel(&[("i", "a"), ("k", "o_r2"), ("j", "c"), ("l", "b")])?;
            let r3 =
                intertwiner(RKind::FA, 3, x + three)?.relabel(&[("i", "b"), ("k", "o_s2"), ("j", "d"), ("l", "e")])?;
            let r4 =
                intertwiner(RKind::FA, 3, y + three)?.relabel(&[("i", "e"), ("k", "o_s1"), ("j", "w"), ("l", "o")])?;
            let inner = p.relabel(&[
                ("i1", "o_i2"),
                ("i2", "o_i3"),
                ("i3", "o"),
                ("r1", "q"),
                ("r2", "c"),
                ("s1", "w"),
                ("s2", "d"),
            ])?;
            let t = contract(&r1, &r2, &[("a", "a")])?;
            let t = contract(&t, &r3, &[("b", "b")])?;
            let t = contract(&t, &r4, &[("e", "e")])?;
            let t = contract(&t, &inner, &[("q", "q"), ("c", "c"), ("d", "d"), ("w", "w"), ("o", "o")])?;
            t.relabel(&[
                ("o_i1", "i1"),
                ("o_i2", "i2"),
                ("o_i3", "i3"),
                ("o_r1", "r1"),
                ("o_r2", "r2"),
                ("o_s1", "s1"),
                ("o_s2", "s2"),
            ])?
            .permuted(&LEGS3)
        }
        _ => Err(Error::InvalidArgument(format!("m must be 2 or 3, got {m}"))),
    }
}

/// `A^[m]` together with the gauge factor that was divided out.
#[derive(Clone, Debug)]
pub struct AMatrix {
    pub matrix: DMatrix<C64>,
    /// Eigenvalue of the normalization row under `M⁻¹W` before rescaling.
    pub factor: C64,
    /// `max |row·(M⁻¹W) − factor·row|`, relative to the row.
    pub eigen_defect: f64,
}

fn reject_near(name: &str, v: C64, at: f64) -> Result<()> {
    if (v - at).norm() < 1e-10 {
        return Err(Error::Singular(format!("{name} = {at}")));
    }
    Ok(())
}

/// `A^[m]` for spectral parameters `λ₁..λ_m` (`λ = λ₁−λ₂` for m = 2;
/// `x = λ₁−λ₃`, `y = λ₁−λ₂` for m = 3), computed as `M⁻¹W` with
/// `W_ik = ⟨P_i, 𝔄 P_k⟩` and rescaled so that the normalization row is a
/// left eigenvector with eigenvalue 1.
pub fn a_matrix(m: usize, lambdas: &[C64]) -> Result<AMatrix> {
    if lambdas.len() != m {
        return Err(Error::InvalidArgument(format!("A^[{m}] needs {m} spectral parameters")));
    }
    let args = match m {
        2 => {
            let l = lambdas[0] - lambdas[1];
            reject_near("λ₁−λ₂", l, 0.0)?;
            reject_near("λ₁−λ₂", l, -3.0)?;
            vec![l]
        }
        3 => {
            let x = lambdas[0] - lambdas[2];
            let y = lambdas[0] - lambdas[1];
            reject_near("x = λ₁−λ₃", x, 0.0)?;
            reject_near("x = λ₁−λ₃", x, -3.0)?;
            reject_near("y = λ₁−λ₂", y, 0.0)?;
            reject_near("y = λ₁−λ₂", y, -3.0)?;
            reject_near("x−y = λ₂−λ₃", x - y, 0.0)?;
            vec![x, y]
        }
        _ => return Err(Error::InvalidArgument(format!("m must be 2 or 3, got {m}"))),
    };
    a_matrix_from_args(m, &args)
}

/// Same as [`a_matrix`] but in the difference variables: `[λ]` or `[x, y]`.
pub fn a_matrix_from_args(m: usize, args: &[C64]) -> Result<AMatrix> {
    let basis = build_basis(m)?;
    let d = basis.dim();
    let images: Vec<LabeledTensor> =
        basis.elements().iter().map(|p| apply_frak_a(m, p, args)).collect::<Result<_>>()?;
    let mut w = DMatrix::<C64>::zeros(d, d);
    for (i, pi) in basis.elements().iter().enumerate() {
        let dual = pi.conj().dual();
        for (k, img) in images.iter().enumerate() {
            w[(i, k)] = full_contract(&dual, img)?;
        }
    }
    let minv = rational_to_f64(basis.gram_inverse()).map(|x| c64(x, 0.0));
    let raw = minv * w;
    let row = basis.normalization_row();
    let image: Vec<C64> = (0..d).map(|k| (0..d).map(|i| raw[(i, k)] * row[i]).sum()).collect();
    let rr: f64 = row.iter().map(|x| x * x).sum();
    let factor = image.iter().zip(&row).map(|(v, r)| v * r).sum::<C64>() / rr;
    if factor.norm() < 1e-300 {
        return Err(Error::Singular("normalization eigenvalue".into()));
    }
    let rmax = row.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let eigen_defect =
        image.iter().zip(&row).map(|(v, r)| (v - factor * r).norm()).fold(0.0, f64::max) / (factor.norm() * rmax);
    Ok(AMatrix { matrix: raw / factor, factor, eigen_defect })
}

/// Contracts the bunch lines `i2, i3` with `ε^{a i2 i3}`; the result is the
/// ordinary operator with input legs `i1, r1, ..` (rows) and output legs
/// `a, s1, ..` (columns). Site 1 carries `i1`/`a`.
fn reduce_element(m: usize, p: &LabeledTensor) -> Result<DMatrix<C64>> {
    let eps = epsilon3("a", "i2", "i3").dual();
    let t = contract(&eps, p, &[("i2", "i2"), ("i3", "i3")])?;
    match m {
        2 => t.to_matrix(&["i1", "r1"], &["a", "s1"]),
        3 => t.to_matrix(&["i1", "r1", "r2"], &["a", "s1", "s2"]),
        _ => unreachable!(),
    }
}

/// `D_m = Σ_k ρ_k · red(P_k)` as a dense `3^m × 3^m` matrix.
pub fn reduce_to_physical(m: usize, rho: &[C64]) -> Result<DMatrix<C64>> {
    let basis = build_basis(m)?;
    if rho.len() != basis.dim() {
        return Err(Error::InvalidArgument(format!("ρ has {} components, expected {}", rho.len(), basis.dim())));
    }
    let n = 3usize.pow(m as u32);
    let mut d = DMatrix::<C64>::zeros(n, n);
    for (k, r) in rho.iter().enumerate() {
        d += basis.reduced_element(k) * *r;
    }
    Ok(d)
}

/// Permutation operator on `sites` copies of ℂ³: `(O x)_k = x_{perm[k]}`
/// on product basis states, site 1 most significant.
pub fn permutation_operator(perm: &[usize]) -> DMatrix<C64> {
    let sites = perm.len();
    let n = 3usize.pow(sites as u32);
    let mut o = DMatrix::<C64>::zeros(n, n);
    let digits = |mut x: usize| {
        let mut d = vec![0; sites];
        for k in (0..sites).rev() {
            d[k] = x % 3;
            x /= 3;
        }
        d
    };
    for col in 0..n {
        let inp = digits(col);
        let row = perm.iter().fold(0, |acc, &p| acc * 3 + inp[p]);
        o[(row, col)] = c64(1.0, 0.0);
    }
    o
}

/// Coefficients of `D₂` on `{I, P₁₂}`:
/// `(2ρ₁+ρ₃, 2ρ₂−ρ₃)`.
pub fn physical_coefficients2(rho: &[C64]) -> [(&'static str, C64); 2] {
    [("I", 2.0 * rho[0] + rho[2]), ("P12", 2.0 * rho[1] - rho[2])]
}

/// Coefficients of `D₃` on `{I, P₁₂, P₂₃, P₁₃, P₁₂P₂₃, P₂₃P₁₂}` read off
/// the reduced basis elements.
pub fn physical_coefficients3(r: &[C64]) -> [(&'static str, C64); 6] {
    [
        ("I", 2.0 * r[0] + r[6] + r[8]),
        ("P12", 2.0 * r[1] - r[6]),
        ("P23", 2.0 * r[2] + r[9] + r[10]),
        ("P13", 2.0 * r[3] + r[7] - r[8]),
        ("P12P23", 2.0 * r[4] - r[7] - r[9]),
        ("P23P12", 2.0 * r[5] - r[10]),
    ]
}

/// The operators named in [`physical_coefficients3`], as matrices.
pub fn named_operator(name: &str) -> Result<DMatrix<C64>> {
    let p12 = permutation_operator(&[1, 0, 2]);
    let p23 = permutation_operator(&[0, 2, 1]);
    Ok(match name {
        "I" => permutation_operator(&[0, 1, 2]),
        "P12" => p12,
        "P23" => p23,
        "P13" => permutation_operator(&[2, 1, 0]),
        "P12P23" => &p12 * &p23,
        "P23P12" => &p23 * &p12,
        _ => return Err(Error::UnknownLabel(name.into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(build_basis(2).unwrap().dim(), 3);
        assert_eq!(build_basis(3).unwrap().dim(), 11);
        assert!(build_basis(4).is_err());
    }

    #[test]
    fn singular_arguments_rejected() {
        let z = c64(0.0, 0.0);
        assert!(matches!(a_matrix(2, &[z, z]), Err(Error::Singular(_))));
        assert!(a_matrix(3, &[c64(1.0, 0.0), z, z]).is_err());
    }
}
