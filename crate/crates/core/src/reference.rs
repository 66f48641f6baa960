//! Numbers and closed forms printed in the paper, kept verbatim so the
//! computed values can be compared against them without the paper at hand.

use crate::C64;
use nalgebra::DMatrix;

/// `ω₃₃(0,0) = 1 − π/(3√3) − log 3`, the ground-state energy per site.
pub const OMEGA_HOMOGENEOUS: f64 = -0.703212076746182;

/// `α₃₃(0,0) = (2 − π/√3 − 3 log 3)/24`.
pub const ALPHA_HOMOGENEOUS: f64 = -0.12956817625994;

/// Thermodynamic `⟨P₁₂P₂₃⟩`.
pub const P12P23_INFINITE: f64 = 0.191368820116674;

/// Finite periodic chains: `(L, E₀/L, ⟨P₁₂P₂₃⟩)`.
pub const FINITE_CHAINS: [(usize, f64, f64); 3] = [
    (3, -1.0, 1.0),
    (6, -0.767591879243998, 0.309579305659537),
    (9, -0.731082881703061, 0.239661721591669),
];

/// Gram matrix of the three two-site singlet diagrams.
pub const GRAM2: [[i64; 3]; 3] = [[18, 6, 6], [6, 18, -6], [6, -6, 18]];

/// Gram matrix `M` of the eleven three-site singlet diagrams.
pub const GRAM3: [[i64; 11]; 11] = [
    [54, 18, 18, 18, 6, 6, 18, 6, 18, 6, 6],
    [18, 54, 6, 6, 18, 18, -18, -6, 6, -6, -6],
    [18, 6, 54, 6, 18, 18, 6, -6, 6, 18, 18],
    [18, 6, 6, 54, 18, 18, 6, 18, -18, -6, -6],
    [6, 18, 18, 18, 54, 6, -6, -18, -6, -18, 6],
    [6, 18, 18, 18, 6, 54, -6, 6, -6, 6, -18],
    [18, -18, 6, 6, -6, -6, 54, -6, 6, 18, 18],
    [6, -6, -6, 18, -18, 6, -6, 54, -6, 6, 6],
    [18, 6, 6, -18, -6, -6, 6, -6, 54, 18, 18],
    [6, -6, 18, -6, -18, 6, 18, 6, 18, 54, 6],
    [6, -6, 18, -6, 6, -18, 18, 6, 18, 6, 54],
];

/// The printed `A^[2](λ)`.
pub fn a2_printed(l: C64) -> DMatrix<C64> {
    let den = l * (l + 3.0);
    let z = C64::new(0.0, 0.0);
    DMatrix::from_row_slice(
        3,
        3,
        &[
            (-1.0 + 3.0 * l + l * l) / den,
            (-2.0 + 2.0 * l + l * l) / den,
            1.0 / (l + 3.0),
            3.0 / den,
            -(-3.0 + l + l * l) / den,
            l / (l + 3.0),
            z,
            -(l - 1.0) / l,
            z,
        ],
    )
}

/// The printed `A^[3](x, y)`; entries not listed there are zero.
#[allow(clippy::neg_multiply)]
pub fn a3_printed(x: C64, y: C64) -> DMatrix<C64> {
    let mut a = DMatrix::<C64>::zeros(11, 11);
    let x2 = x * x;
    let y2 = y * y;
    let d = x * (3.0 + x) * y * (3.0 + y);
    a[(0, 0)] = (-1.0+3.0*x+x2)*(-1.0+3.0*y+y2)/d;
    a[(0, 1)] = (-1.0+3.0*x+x2)*(-2.0+2.0*y+y2)/d;
    a[(0, 2)] = -3.0/d;
    a[(0, 3)] = (1.0+y)*(-8.0+3.0*x+2.0*x2-2.0*y+2.0*x*y+x2*y)/d;
    a[(0, 4)] = (1.0+y)*(-7.0+x2-3.0*y-x*y)/d;
    a[(0, 5)] = (-3.0+y+y2)/d;
    a[(0, 6)] = (-1.0+3.0*x+x2)/(x*(3.0+x)*(3.0+y));
    a[(0, 7)] = (-1.0+3.0*x+x2+y+3.0*x*y+x2*y)/d;
    a[(0, 8)] = (1.0+3.0*x+x*y)/(x*(3.0+x)*(3.0+y));
    a[(0, 9)] = -(-1.0+x2-x*y)/d;
    a[(0, 10)] = -y/(x*(3.0+x)*(3.0+y));
    a[(1, 0)] = 3.0*(-1.0+3.0*x+x2)/d;
    a[(1, 1)] = -(-1.0+3.0*x+x2)*(-3.0+y+y2)/d;
    a[(1, 2)] = -(-1.0+3.0*y+y2)/d;
    a[(1, 3)] = 2.0*(1.0+y)/d;
    a[(1, 4)] = (1.0+y)*(1.0+y)/d;
    a[(1, 5)] = -(-2.0+2.0*y+y2)/d;
    a[(1, 6)] = (-1.0+3.0*x+x2)*y/(x*(3.0+x)*(3.0+y));
    a[(1, 7)] = -(-1.0+y)/d;
    a[(1, 8)] = (1.0+3.0*x+x*y)/d;
    a[(1, 9)] = -(-1.0+x2-x*y)/(x*(3.0+x)*(3.0+y));
    a[(1, 10)] = -1.0/(x*(3.0+x)*(3.0+y));
    a[(2, 0)] = -3.0/d;
    a[(2, 1)] = -3.0*(2.0+y)/d;
    a[(2, 2)] = (-3.0*x-3.0*y+7.0*x*y+3.0*x2*y+3.0*x*y2+x2*y2)/d;
    a[(2, 3)] = -(-6.0+6.0*x+3.0*x2-6.0*y-2.0*x*y)/d;
    a[(2, 4)] = (3.0-6.0*x-3.0*x2+6.0*y+6.0*x*y+x2*y+3.0*y2+4.0*x*y2+x2*y2)/d;
    a[(2, 5)] = (-3.0*x-6.0*y+6.0*x*y+3.0*x2*y-3.0*y2+2.0*x*y2+x2*y2)/d;
    a[(2, 6)] = 3.0/(x*(3.0+x)*(3.0+y));
    a[(2, 7)] = -(-3.0+3.0*y+4.0*x*y+x2*y)/d;
    a[(2, 8)] = -1.0/(x*(3.0+y));
    a[(2, 9)] = (-3.0+3.0*x2+x2*y)/d;
    a[(2, 10)] = y/(x*(3.0+y));
    a[(3, 0)] = 3.0/(x*(3.0+x));
    a[(3, 2)] = -(-9.0+x2-3.0*y-2.0*x*y)/d;
    a[(3, 3)] = -(-3.0*x-x2-9.0*y+3.0*x*y+3.0*x2*y-3.0*y2+x*y2+x2*y2)/d;
    a[(3, 4)] = -(-3.0+x-y)/(x*y*(3.0+y));
    a[(3, 5)] = (3.0+x-y)/((3.0+x)*y*(3.0+y));
    a[(3, 7)] = -(9.0-3.0*x-2.0*x2-6.0*y+x*y+2.0*x2*y-3.0*y2+x*y2+x2*y2)/d;
    a[(3, 8)] = (-3.0-x+y+3.0*x*y+x*y2)/((3.0+x)*y*(3.0+y));
    a[(3, 10)] = (3.0+x-y)/((3.0+x)*(3.0+y));
    a[(4, 0)] = -3.0/(x*(3.0+x)*(3.0+y));
    a[(4, 1)] = 3.0/(x*(3.0+x)*(3.0+y));
    a[(4, 2)] = (-3.0+8.0*x+3.0*x2+x2*y-x*y2)/d;
    a[(4, 3)] = -(-1.0+y)/(x*y*(3.0+y));
    a[(4, 4)] = -(3.0-8.0*x-3.0*x2-3.0*y+2.0*x*y+2.0*x2*y+2.0*x*y2+x2*y2)/d;
    a[(4, 5)] = 1.0/(x*y*(3.0+y));
    a[(4, 6)] = 3.0*y/(x*(3.0+x)*(3.0+y));
    a[(4, 7)] = (6.0-7.0*x-3.0*x2-3.0*y+2.0*x*y+2.0*x2*y-3.0*y2+x*y2+x2*y2)/d;
    a[(4, 8)] = -1.0/(x*y*(3.0+y));
    a[(4, 9)] = (-3.0+3.0*x2+x2*y)/(x*(3.0+x)*(3.0+y));
    a[(4, 10)] = 1.0/(x*(3.0+y));
    a[(5, 0)] = 3.0/(x*(3.0+x)*y);
    a[(5, 1)] = 3.0/(x*(3.0+x)*y);
    a[(5, 2)] = -(-x-9.0*y+x2*y-3.0*y2-x*y2)/d;
    a[(5, 3)] = (2.0+y)/((3.0+x)*y*(3.0+y));
    a[(5, 4)] = 1.0/((3.0+x)*y*(3.0+y));
    a[(5, 5)] = -(-2.0*x-9.0*y+2.0*x*y+2.0*x2*y-3.0*y2+2.0*x*y2+x2*y2)/d;
    a[(5, 7)] = 1.0/((3.0+x)*y*(3.0+y));
    a[(5, 8)] = (1.0+3.0*x-3.0*y)/((3.0+x)*y*(3.0+y));
    a[(5, 10)] = (-1.0+3.0*y+x*y)/((3.0+x)*(3.0+y));
    a[(6, 1)] = -(-1.0+3.0*x+x2)*(-1.0+y)/(x*(3.0+x)*y);
    a[(6, 3)] = -(-8.0+6.0*x+3.0*x2-4.0*y-x*y)/d;
    a[(6, 4)] = -(-1.0-8.0*y+x2*y-3.0*y2-x*y2)/d;
    a[(6, 5)] = -(-1.0+y)/(x*(3.0+x)*y);
    a[(6, 7)] = (7.0-6.0*x-3.0*x2-5.0*y+x*y+x2*y-2.0*y2+2.0*x*y2+x2*y2)/d;
    a[(7, 1)] = 3.0/(x*(3.0+x));
    a[(7, 3)] = -3.0*(-3.0+2.0*x+x2-y)/d;
    a[(7, 4)] = -(-9.0-x+x2-3.0*y-x*y)/(x*(3.0+x)*(3.0+y));
    a[(7, 5)] = -(-3.0+2.0*x+x2-x*y)/(x*(3.0+x)*y);
    a[(7, 7)] = (9.0-6.0*x-3.0*x2-6.0*y-x*y+x2*y-3.0*y2+x*y2+x2*y2)/d;
    a[(8, 3)] = (1.0+y)*(3.0-2.0*x+y-x*y)/(x*y*(3.0+y));
    a[(8, 4)] = (3.0-x+y)*(1.0+y)/(x*y*(3.0+y));
    a[(8, 7)] = -(1.0+y)/(y*(3.0+y));
    a[(9, 3)] = (-2.0+3.0*x-2.0*y)/(x*y*(3.0+y));
    a[(9, 4)] = -(1.0-3.0*x+2.0*y+x*y+y2+x*y2)/(x*y*(3.0+y));
    a[(9, 7)] = (-1.0+y+x*y)/(x*y*(3.0+y));
    a[(10, 1)] = 3.0/(x*(3.0+x)*y);
    a[(10, 3)] = (-9.0+5.0*x+3.0*x2-3.0*y-x*y)/d;
    a[(10, 4)] = (x-9.0*y+x2*y-3.0*y2-x*y2)/d;
    a[(10, 5)] = -(-x-3.0*y+2.0*x*y+x2*y)/(x*(3.0+x)*y);
    a[(10, 7)] = -(9.0-4.0*x-3.0*x2-6.0*y+2.0*x*y+x2*y-3.0*y2+2.0*x*y2+x2*y2)/d;
    a
}
