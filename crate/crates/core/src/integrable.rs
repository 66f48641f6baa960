//! Rational R-matrices for `[n]` and `[n̄]` lines and executable checks of
//! their algebra: Yang–Baxter (standard and shifted), unitarity (standard
//! and special) and the fusion of an antisymmetrized bunch of three lines.
//!
//! `r_matrix` returns the printed tensors `I + λP` and `E + λP` entry for
//! entry. Products in the identities are built by [`OperatorChain`], which
//! composes check-matrices slot by slot in the order they act. In that
//! composition the mixed intertwiner is `r_matrix(FA, n, −u)`, see
//! [`intertwiner`].

use crate::tensor_kernel::{contract, epsilon3, structural_tensor, LabeledTensor, Leg, StructuralKind};
use crate::{c64, Error, Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Representation carried by a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rep {
    /// `[n]`
    Fund,
    /// `[n̄]`
    Anti,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RKind {
    FF,
    FA,
    AF,
    AA,
}

impl RKind {
    pub fn from_reps(a: Rep, b: Rep) -> Self {
        match (a, b) {
            (Rep::Fund, Rep::Fund) => RKind::FF,
            (Rep::Fund, Rep::Anti) => RKind::FA,
            (Rep::Anti, Rep::Fund) => RKind::AF,
            (Rep::Anti, Rep::Anti) => RKind::AA,
        }
    }

    pub fn reps(self) -> (Rep, Rep) {
        match self {
            RKind::FF => (Rep::Fund, Rep::Fund),
            RKind::FA => (Rep::Fund, Rep::Anti),
            RKind::AF => (Rep::Anti, Rep::Fund),
            RKind::AA => (Rep::Anti, Rep::Anti),
        }
    }

    pub fn is_mixed(self) -> bool {
        matches!(self, RKind::FA | RKind::AF)
    }
}

/// Orientation of an operator leg: an incoming `[n]` line is a lower index,
/// an incoming `[n̄]` line an upper one, and the reverse for outgoing lines.
fn leg_for(rep: Rep, incoming: bool, n: usize, label: &str) -> Leg {
    match (rep, incoming) {
        (Rep::Fund, true) | (Rep::Anti, false) => Leg::down(n, label),
        (Rep::Fund, false) | (Rep::Anti, true) => Leg::up(n, label),
    }
}

/// `Ř^{(r1,r2)}(λ)` with legs `i, k` (incoming, spaces r1 and r2) and
/// `j, l` (outgoing, spaces r2 and r1). FF/AA give `I + λP`, FA/AF give
/// `E + λP`.
pub fn r_matrix(kind: RKind, n: usize, lambda: C64) -> Result<LabeledTensor> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("R-matrices need n ≥ 2, got {n}")));
    }
    let (r1, r2) = kind.reps();
    let legs = vec![
        leg_for(r1, true, n, "i"),
        leg_for(r2, true, n, "k"),
        leg_for(r2, false, n, "j"),
        leg_for(r1, false, n, "l"),
    ];
    let first = if kind.is_mixed() {
        structural_tensor(StructuralKind::TemperleyLieb, n)?
    } else {
        structural_tensor(StructuralKind::Identity, n)?
    };
    let p = structural_tensor(StructuralKind::Permutation, n)?;
    let data = first.data().iter().zip(p.data()).map(|(a, b)| a + lambda * b).collect();
    LabeledTensor::new(legs, data)
}

/// The check-matrix that enters the Yang–Baxter, unitarity and fusion
/// relations at spectral argument `u`: `r_matrix(kind, n, u)` for FF/AA
/// and `r_matrix(kind, n, −u)` for the mixed kinds.
pub fn intertwiner(kind: RKind, n: usize, u: C64) -> Result<LabeledTensor> {
    if kind.is_mixed() {
        r_matrix(kind, n, -u)
    } else {
        r_matrix(kind, n, u)
    }
}

/// Product of check-matrices acting on a row of slots, composed in the
/// order of application. Open legs are `in{p}` and `out{p}` per slot.
#[derive(Clone, Debug)]
pub struct OperatorChain {
    n: usize,
    reps: Vec<Rep>,
    tensor: LabeledTensor,
}

impl OperatorChain {
    /// Identity on slots carrying the given representations.
    pub fn identity(n: usize, reps: &[Rep]) -> Result<Self> {
        let mut t = LabeledTensor::scalar(c64(1.0, 0.0));
        for (p, rep) in reps.iter().enumerate() {
            let d = LabeledTensor::from_fn(
                vec![leg_for(*rep, true, n, &format!("in{p}")), leg_for(*rep, false, n, &format!("out{p}"))],
                |x| if x[0] == x[1] { c64(1.0, 0.0) } else { c64(0.0, 0.0) },
            )?;
            t = contract(&t, &d, &[])?;
        }
        Ok(OperatorChain { n, reps: reps.to_vec(), tensor: t })
    }

    pub fn reps(&self) -> &[Rep] {
        &self.reps
    }

    pub fn tensor(&self) -> &LabeledTensor {
        &self.tensor
    }

    /// Applies the intertwiner of the representations currently in slots
    /// `p, p+1` at argument `u`, and swaps those slots.
    pub fn apply(&mut self, p: usize, u: C64) -> Result<&mut Self> {
        if p + 1 >= self.reps.len() {
            return Err(Error::InvalidArgument(format!("no slot pair ({p}, {})", p + 1)));
        }
        let kind = RKind::from_reps(self.reps[p], self.reps[p + 1]);
        let r = intertwiner(kind, self.n, u)?;
        let (o1, o2) = (format!("out{p}"), format!("out{}", p + 1));
        let joined = contract(&self.tensor, &r, &[(&o1, "i"), (&o2, "k")])?;
        self.tensor = joined.relabel(&[("j", &o1), ("l", &o2)])?;
        self.reps.swap(p, p + 1);
        Ok(self)
    }

    /// Same as [`apply`](Self::apply) but first asserts the kind the caller
    /// expects to act, so a misplaced superscript is caught.
    pub fn apply_kind(&mut self, kind: RKind, p: usize, u: C64) -> Result<&mut Self> {
        let actual = RKind::from_reps(self.reps[p], self.reps[p + 1]);
        if actual != kind {
            return Err(Error::InvalidArgument(format!(
                "slots ({p}, {}) carry {actual:?}, not {kind:?}",
                p + 1
            )));
        }
        self.apply(p, u)
    }
}

fn is_special(r: [Rep; 3]) -> bool {
    r == [Rep::Fund, Rep::Anti, Rep::Fund] || r == [Rep::Anti, Rep::Fund, Rep::Anti]
}

/// Max-abs difference between the two sides of
/// `Ř12(λ−μ+s) Ř23(λ−ν) Ř12(μ−ν) = Ř23(μ−ν) Ř12(λ−ν) Ř23(λ−μ+s)`
/// (factors listed in order of action) with an explicit shift `s` on the
/// `(r1, r2)` intertwiner. Use [`check_yang_baxter`] for the relation as
/// it holds; this form exists to show what happens without the shift.
pub fn yang_baxter_residual(
    n: usize,
    r: [Rep; 3],
    lambda: C64,
    mu: C64,
    nu: C64,
    shift: C64,
) -> Result<f64> {
    let k12 = RKind::from_reps(r[0], r[1]);
    let k13 = RKind::from_reps(r[0], r[2]);
    let k23 = RKind::from_reps(r[1], r[2]);
    let mut lhs = OperatorChain::identity(n, &r)?;
    lhs.apply_kind(k12, 0, lambda - mu + shift)?
        .apply_kind(k13, 1, lambda - nu)?
        .apply_kind(k23, 0, mu - nu)?;
    let mut rhs = OperatorChain::identity(n, &r)?;
    rhs.apply_kind(k23, 1, mu - nu)?
        .apply_kind(k13, 0, lambda - nu)?
        .apply_kind(k12, 1, lambda - mu + shift)?;
    lhs.tensor.max_abs_diff(&rhs.tensor)
}

/// Yang–Baxter residual for any of the eight representation assignments;
/// the two special ones `(n, n̄, n)` and `(n̄, n, n̄)` receive the shift `+n`
/// on the `(r1, r2)` intertwiner.
pub fn check_yang_baxter(n: usize, r: [Rep; 3], lambda: C64, mu: C64, nu: C64) -> Result<f64> {
    let shift = if is_special(r) { c64(n as f64, 0.0) } else { c64(0.0, 0.0) };
    yang_baxter_residual(n, r, lambda, mu, nu, shift)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unitarity {
    /// `Ř^{(n,n)}_{12}(λ−μ) Ř^{(n,n)}_{21}(μ−λ) = (1−(λ−μ)²) I`
    Standard,
    /// `Ř^{(n,n̄)}_{12}(λ−μ+n) Ř^{(n̄,n)}_{21}(μ−λ) = (μ−λ)(λ−μ+n) I`
    Special1,
    /// `Ř^{(n̄,n)}_{12}(λ−μ) Ř^{(n,n̄)}_{21}(μ−λ+n) = (λ−μ)(μ−λ+n) I`
    Special2,
}

/// Returns `(residual, scalar)`: the max-abs deviation of the product from
/// `scalar · I`, and the printed scalar itself.
pub fn check_unitarity(kind: Unitarity, n: usize, lambda: C64, mu: C64) -> Result<(f64, C64)> {
    let nn = c64(n as f64, 0.0);
    let d = lambda - mu;
    let (reps, a1, a2, scalar) = match kind {
        Unitarity::Standard => ([Rep::Fund, Rep::Fund], d, -d, 1.0 - d * d),
        Unitarity::Special1 => ([Rep::Fund, Rep::Anti], d + nn, -d, (-d) * (d + nn)),
        Unitarity::Special2 => ([Rep::Anti, Rep::Fund], d, -d + nn, d * (-d + nn)),
    };
    let mut chain = OperatorChain::identity(n, &reps)?;
    chain.apply(0, a1)?.apply(0, a2)?;
    let id = OperatorChain::identity(n, &reps)?;
    Ok((chain.tensor.max_abs_diff(&id.tensor.scale(scalar))?, scalar))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FusionDirection {
    Up,
    Down,
}

/// A `[n]` line at `μ` crossing three `[n̄]` lines at `λ, λ+1, λ+2` that
/// are antisymmetrized by `ε`. The crossing lines pass through unchanged
/// up to a scalar; returns `(residual, scalar)` with the printed scalar
/// `(λ+2−μ)(1−(λ−μ)²)` for `Up` and `(μ−λ)(1−(λ+2−μ)²)` for `Down`.
///
/// `Up` moves the `[n]` line rightwards past `λ, λ+1, λ+2` with vertices
/// at `λ_k − μ`; `Down` moves it leftwards past `λ+2, λ+1, λ` with vertices
/// at `μ − λ_k`.
pub fn check_fusion(n: usize, lambda: C64, mu: C64, dir: FusionDirection) -> Result<(f64, C64)> {
    if n != 3 {
        return Err(Error::InvalidArgument(format!("fusion check is written for n = 3, got {n}")));
    }
    let one = c64(1.0, 0.0);
    let two = c64(2.0, 0.0);
    let (reps, scalar, bunch_in, bunch_out, v_in, v_out) = match dir {
        FusionDirection::Up => (
            [Rep::Fund, Rep::Anti, Rep::Anti, Rep::Anti],
            (lambda + two - mu) * (one - (lambda - mu) * (lambda - mu)),
            ["in1", "in2", "in3"],
            ["out0", "out1", "out2"],
            "in0",
            "out3",
        ),
        FusionDirection::Down => (
            [Rep::Anti, Rep::Anti, Rep::Anti, Rep::Fund],
            (mu - lambda) * (one - (lambda + two - mu) * (lambda + two - mu)),
            ["in0", "in1", "in2"],
            ["out1", "out2", "out3"],
            "in3",
            "out0",
        ),
    };
    let mut chain = OperatorChain::identity(n, &reps)?;
    match dir {
        FusionDirection::Up => {
            for p in 0..3 {
                chain.apply_kind(RKind::FA, p, lambda + c64(p as f64, 0.0) - mu)?;
            }
        }
        FusionDirection::Down => {
            for p in (0..3).rev() {
                chain.apply_kind(RKind::AF, p, mu - lambda - c64(p as f64, 0.0))?;
            }
        }
    }
    let eps = epsilon3("e0", "e1", "e2");
    let fused = contract(
        chain.tensor(),
        &eps,
        &[(bunch_in[0], "e0"), (bunch_in[1], "e1"), (bunch_in[2], "e2")],
    )?;
    let expected = contract(
        &epsilon3(bunch_out[0], bunch_out[1], bunch_out[2]),
        &crate::tensor_kernel::delta3(v_in, v_out),
        &[],
    )?
    .scale(scalar);
    Ok((fused.max_abs_diff(&expected)?, scalar))
}

/// Deterministic parameter sample: `count` complex numbers with real and
/// imaginary parts uniform in `[−2, 2]`.
pub fn sample_params(seed: u64, count: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| c64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect()
}

/// Rational edge points where scalar factors of the identities vanish.
pub fn edge_points() -> Vec<C64> {
    [0.0, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0].iter().map(|&x| c64(x, 0.0)).collect()
}

/// One named identity with its worst residual over the sampled points.
#[derive(Clone, Debug, serde::Serialize)]
pub struct IdentityRecord {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
}

fn record(name: String, residuals: impl IntoIterator<Item = Result<f64>>) -> Result<IdentityRecord> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for r in residuals {
        worst = worst.max(r?);
        count += 1;
    }
    Ok(IdentityRecord { name, samples: count, max_residual: worst })
}

/// Tensor identities for ε and δ at n = 3. Returns residuals of
/// `ε_{ijk}ε^{ijk} = 6`, `δ_ii = 3`, `ε_{ijk}ε^{klm} = δ_il δ_jm − δ_im δ_jl`
/// and `ε_{ijk}ε^{jkl} = 2δ_il`.
pub fn epsilon_delta_residuals() -> Result<Vec<(String, f64)>> {
    let lo = epsilon3("i", "j", "k");
    let six = contract(&lo, &lo.dual(), &[("i", "i"), ("j", "j"), ("k", "k")])?;
    let trace = crate::tensor_kernel::delta3("i", "j").trace_pair("i", "j")?;

    let up = epsilon3("k", "l", "m").dual();
    let two_index = contract(&lo, &up, &[("k", "k")])?;
    let want = LabeledTensor::from_fn(
        vec![Leg::down(3, "i"), Leg::down(3, "j"), Leg::up(3, "l"), Leg::up(3, "m")],
        |x| {
            let (i, j, l, m) = (x[0], x[1], x[2], x[3]);
            c64(((i == l && j == m) as i32 - (i == m && j == l) as i32) as f64, 0.0)
        },
    )?;

    let up2 = epsilon3("j", "k", "l").dual();
    let one_index = contract(&lo, &up2, &[("j", "j"), ("k", "k")])?;
    let want2 = crate::tensor_kernel::delta3("i", "l").scale(c64(2.0, 0.0));

    Ok(vec![
        ("eps_ijk eps^ijk = 6".into(), (six.scalar_value().unwrap() - 6.0).norm()),
        ("delta_ii = 3".into(), (trace.scalar_value().unwrap() - 3.0).norm()),
        ("eps_ijk eps^klm = d_il d_jm - d_im d_jl".into(), two_index.max_abs_diff(&want)?),
        ("eps_ijk eps^jkl = 2 d_il".into(), one_index.max_abs_diff(&want2)?),
    ])
}

/// Runs every identity over `random` seeded samples plus the edge points.
pub fn identity_suite(seed: u64, random: usize) -> Result<Vec<IdentityRecord>> {
    let n = 3;
    let pool = sample_params(seed, 3 * random);
    let mut triples: Vec<(C64, C64, C64)> =
        (0..random).map(|s| (pool[3 * s], pool[3 * s + 1], pool[3 * s + 2])).collect();
    let edges = edge_points();
    for (a, &e) in edges.iter().enumerate() {
        triples.push((e, edges[(a + 1) % edges.len()], edges[(a + 3) % edges.len()]));
        triples.push((e, e, e));
    }

    let mut out = Vec::new();
    for r in [
        [Rep::Fund, Rep::Fund, Rep::Fund],
        [Rep::Anti, Rep::Anti, Rep::Anti],
        [Rep::Fund, Rep::Fund, Rep::Anti],
        [Rep::Anti, Rep::Fund, Rep::Fund],
        [Rep::Fund, Rep::Anti, Rep::Anti],
        [Rep::Anti, Rep::Anti, Rep::Fund],
        [Rep::Fund, Rep::Anti, Rep::Fund],
        [Rep::Anti, Rep::Fund, Rep::Anti],
    ] {
        let tag: String = r.iter().map(|x| if *x == Rep::Fund { "n" } else { "nbar" }).collect::<Vec<_>>().join(",");
        let kind = if is_special(r) { "special YBE" } else { "YBE" };
        out.push(record(
            format!("{kind} ({tag})"),
            triples.iter().map(|&(l, m, v)| check_yang_baxter(n, r, l, m, v)),
        )?);
    }
    for (kind, name) in [
        (Unitarity::Standard, "standard unitarity"),
        (Unitarity::Special1, "special unitarity 1"),
        (Unitarity::Special2, "special unitarity 2"),
    ] {
        out.push(record(
            name.into(),
            triples.iter().map(|&(l, m, _)| check_unitarity(kind, n, l, m).map(|x| x.0)),
        )?);
    }
    for (dir, name) in [(FusionDirection::Up, "fusion up"), (FusionDirection::Down, "fusion down")] {
        out.push(record(
            name.into(),
            triples.iter().map(|&(l, m, _)| check_fusion(n, l, m, dir).map(|x| x.0)),
        )?);
    }
    for (name, res) in epsilon_delta_residuals()? {
        out.push(IdentityRecord { name, samples: 1, max_residual: res });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regularity() {
        let r = r_matrix(RKind::FF, 3, c64(0.0, 0.0)).unwrap();
        let id = structural_tensor(StructuralKind::Identity, 3).unwrap();
        assert_eq!(r.data(), id.data());
    }

    #[test]
    fn printed_entries() {
        let r = r_matrix(RKind::FF, 3, c64(2.0, 0.0)).unwrap();
        assert_eq!(r.get(&[0, 1, 1, 0]).re, 2.0);
        assert_eq!(r.get(&[0, 1, 0, 1]).re, 1.0);
        let m = r_matrix(RKind::FA, 3, c64(1.0, 0.0)).unwrap();
        assert_eq!(m.get(&[0, 0, 1, 1]).re, 1.0);
        assert_eq!(m.get(&[0, 1, 1, 0]).re, 1.0);
    }

    #[test]
    fn unshifted_special_fails() {
        let z = c64(0.0, 0.0);
        let r = yang_baxter_residual(3, [Rep::Fund, Rep::Anti, Rep::Fund], c64(0.7, 0.0), c64(-0.3, 0.0), c64(1.1, 0.0), z)
            .unwrap();
        assert!(r > 0.1, "{r}");
    }
}
