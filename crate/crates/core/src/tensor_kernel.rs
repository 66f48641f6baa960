//! Dense complex tensors with labeled, oriented legs.
//!
//! A leg is either [`Orientation::Fundamental`] (an upper index, the arrow
//! head of a line in [n]) or [`Orientation::Antifundamental`] (a lower index).
//! Contraction only joins a fundamental leg with an antifundamental leg of
//! the same dimension; anything else is a transcription error in a diagram
//! and is reported as such.
//!
//! Storage is row-major with the first leg varying slowest.

use crate::{Error, Result, C64};
use nalgebra::DMatrix;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Fundamental,
    Antifundamental,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Fundamental => Orientation::Antifundamental,
            Orientation::Antifundamental => Orientation::Fundamental,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Orientation::Fundamental => "fundamental",
            Orientation::Antifundamental => "antifundamental",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub dim: usize,
    pub orientation: Orientation,
    pub label: String,
}

impl Leg {
    pub fn new(dim: usize, orientation: Orientation, label: impl Into<String>) -> Self {
        Leg { dim, orientation, label: label.into() }
    }

    /// Upper index.
    pub fn up(dim: usize, label: impl Into<String>) -> Self {
        Leg::new(dim, Orientation::Fundamental, label)
    }

    /// Lower index.
    pub fn down(dim: usize, label: impl Into<String>) -> Self {
        Leg::new(dim, Orientation::Antifundamental, label)
    }
}

#[derive(Clone, Debug)]
pub struct LabeledTensor {
    legs: Vec<Leg>,
    data: Vec<C64>,
}

fn check_labels(legs: &[Leg]) -> Result<()> {
    for (i, a) in legs.iter().enumerate() {
        if a.dim == 0 {
            return Err(Error::InvalidArgument(format!("leg `{}` has dimension 0", a.label)));
        }
        if legs[..i].iter().any(|b| b.label == a.label) {
            return Err(Error::DuplicateLabel(a.label.clone()));
        }
    }
    Ok(())
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for d in (0..dims.len().saturating_sub(1)).rev() {
        s[d] = s[d + 1] * dims[d + 1];
    }
    s
}

/// Reorders axes: axis `d` of the result is axis `perm[d]` of the source.
fn permute_data(dims: &[usize], data: &[C64], perm: &[usize]) -> Vec<C64> {
    if perm.iter().enumerate().all(|(d, &p)| d == p) {
        return data.to_vec();
    }
    let src_strides = strides(dims);
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let step: Vec<usize> = perm.iter().map(|&p| src_strides[p]).collect();
    let mut out = Vec::with_capacity(data.len());
    let mut idx = vec![0usize; perm.len()];
    let mut offset = 0usize;
    for _ in 0..data.len() {
        out.push(data[offset]);
        for d in (0..idx.len()).rev() {
            idx[d] += 1;
            offset += step[d];
            if idx[d] < new_dims[d] {
                break;
            }
            offset -= step[d] * new_dims[d];
            idx[d] = 0;
        }
    }
    out
}

impl LabeledTensor {
    pub fn new(legs: Vec<Leg>, data: Vec<C64>) -> Result<Self> {
        check_labels(&legs)?;
        let n: usize = legs.iter().map(|l| l.dim).product();
        if n != data.len() {
            return Err(Error::InvalidArgument(format!(
                "{} entries supplied for a tensor with {} entries",
                data.len(),
                n
            )));
        }
        Ok(LabeledTensor { legs, data })
    }

    pub fn zeros(legs: Vec<Leg>) -> Result<Self> {
        let n: usize = legs.iter().map(|l| l.dim).product();
        Self::new(legs, vec![C64::zero(); n])
    }

    /// Builds a tensor entry by entry from its multi-index.
    pub fn from_fn(legs: Vec<Leg>, mut f: impl FnMut(&[usize]) -> C64) -> Result<Self> {
        check_labels(&legs)?;
        let dims: Vec<usize> = legs.iter().map(|l| l.dim).collect();
        let n: usize = dims.iter().product();
        let mut data = Vec::with_capacity(n);
        let mut idx = vec![0usize; dims.len()];
        for _ in 0..n {
            data.push(f(&idx));
            for d in (0..dims.len()).rev() {
                idx[d] += 1;
                if idx[d] < dims[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        Ok(LabeledTensor { legs, data })
    }

    pub fn scalar(v: C64) -> Self {
        LabeledTensor { legs: Vec::new(), data: vec![v] }
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.legs.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.legs.iter().map(|l| l.dim).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.legs.iter().map(|l| l.label.as_str()).collect()
    }

    /// Value of a rank-0 tensor.
    pub fn scalar_value(&self) -> Option<C64> {
        if self.legs.is_empty() {
            Some(self.data[0])
        } else {
            None
        }
    }

    pub fn leg_position(&self, label: &str) -> Result<usize> {
        self.legs
            .iter()
            .position(|l| l.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.legs.len(), "index rank mismatch");
        let mut off = 0;
        for (i, l) in idx.iter().zip(&self.legs) {
            assert!(*i < l.dim, "index out of range on leg `{}`", l.label);
            off = off * l.dim + i;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: C64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Renames legs; pairs not mentioned keep their label.
    pub fn relabel(&self, renames: &[(&str, &str)]) -> Result<Self> {
        let mut legs = self.legs.clone();
        for (from, to) in renames {
            let p = self.leg_position(from)?;
            legs[p].label = to.to_string();
        }
        check_labels(&legs)?;
        Ok(LabeledTensor { legs, data: self.data.clone() })
    }

    /// Replaces all labels, in leg order.
    pub fn with_labels(&self, labels: &[&str]) -> Result<Self> {
        if labels.len() != self.legs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for a rank-{} tensor",
                labels.len(),
                self.legs.len()
            )));
        }
        let mut legs = self.legs.clone();
        for (l, s) in legs.iter_mut().zip(labels) {
            l.label = s.to_string();
        }
        check_labels(&legs)?;
        Ok(LabeledTensor { legs, data: self.data.clone() })
    }

    /// Same entries with every leg orientation reversed (index raising and
    /// lowering with the identity metric). Used for the transposed element
    /// in pairings such as Gram matrices.
    pub fn dual(&self) -> Self {
        let legs = self
            .legs
            .iter()
            .map(|l| Leg { orientation: l.orientation.flipped(), ..l.clone() })
            .collect();
        LabeledTensor { legs, data: self.data.clone() }
    }

    pub fn conj(&self) -> Self {
        LabeledTensor { legs: self.legs.clone(), data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn scale(&self, c: C64) -> Self {
        LabeledTensor { legs: self.legs.clone(), data: self.data.iter().map(|z| z * c).collect() }
    }

    /// Legs reordered to the given labels.
    pub fn permuted(&self, labels: &[&str]) -> Result<Self> {
        if labels.len() != self.legs.len() {
            return Err(Error::InvalidArgument(format!(
                "permutation names {} legs, tensor has {}",
                labels.len(),
                self.legs.len()
            )));
        }
        let perm = labels.iter().map(|l| self.leg_position(l)).collect::<Result<Vec<_>>>()?;
        let legs: Vec<Leg> = perm.iter().map(|&p| self.legs[p].clone()).collect();
        check_labels(&legs)?;
        let data = permute_data(&self.dims(), &self.data, &perm);
        Ok(LabeledTensor { legs, data })
    }

    fn aligned(&self, other: &Self) -> Result<Self> {
        let o = other.permuted(&self.labels())?;
        for (a, b) in self.legs.iter().zip(&o.legs) {
            if a.dim != b.dim {
                return Err(Error::DimensionMismatch {
                    a: a.label.clone(),
                    da: a.dim,
                    b: b.label.clone(),
                    db: b.dim,
                });
            }
            if a.orientation != b.orientation {
                return Err(Error::InvalidArgument(format!(
                    "leg `{}` is {} in one tensor and {} in the other",
                    a.label,
                    a.orientation.name(),
                    b.orientation.name()
                )));
            }
        }
        Ok(o)
    }

    /// Sum of two tensors with the same legs, matched by label.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let o = self.aligned(other)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Ok(LabeledTensor { legs: self.legs.clone(), data })
    }

    /// Largest entrywise |self − other|, legs matched by label.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        let o = self.aligned(other)?;
        Ok(self.data.iter().zip(&o.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Contracts two legs of the same tensor.
    pub fn trace_pair(&self, a: &str, b: &str) -> Result<Self> {
        let pa = self.leg_position(a)?;
        let pb = self.leg_position(b)?;
        if pa == pb {
            return Err(Error::InvalidArgument(format!("cannot trace leg `{a}` with itself")));
        }
        check_join(&self.legs[pa], &self.legs[pb])?;
        let rest: Vec<&str> = self
            .labels()
            .into_iter()
            .filter(|l| *l != a && *l != b)
            .collect();
        let mut order = rest.clone();
        order.push(a);
        order.push(b);
        let t = self.permuted(&order)?;
        let d = self.legs[pa].dim;
        let outer = t.data.len() / (d * d);
        let data = (0..outer)
            .map(|o| (0..d).map(|i| t.data[o * d * d + i * d + i]).sum())
            .collect();
        let legs = t.legs[..rest.len()].to_vec();
        LabeledTensor::new(legs, data)
    }

    /// Matrix with row multi-index over `rows` and column multi-index over
    /// `cols`; together they must name every leg.
    pub fn to_matrix(&self, rows: &[&str], cols: &[&str]) -> Result<DMatrix<C64>> {
        let mut order: Vec<&str> = rows.to_vec();
        order.extend_from_slice(cols);
        let t = self.permuted(&order)?;
        let nr: usize = t.legs[..rows.len()].iter().map(|l| l.dim).product();
        let nc: usize = t.legs[rows.len()..].iter().map(|l| l.dim).product();
        Ok(DMatrix::from_row_slice(nr, nc, &t.data))
    }
}

fn check_join(a: &Leg, b: &Leg) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            a: a.label.clone(),
            da: a.dim,
            b: b.label.clone(),
            db: b.dim,
        });
    }
    if a.orientation == b.orientation {
        return Err(Error::OrientationMismatch {
            a: a.label.clone(),
            b: b.label.clone(),
            orientation: a.orientation.name().to_string(),
        });
    }
    Ok(())
}

/// Sums over the listed leg pairs. The result carries the free legs of `a`
/// followed by those of `b`, each in original order.
pub fn contract(a: &LabeledTensor, b: &LabeledTensor, pairs: &[(&str, &str)]) -> Result<LabeledTensor> {
    let mut pa = Vec::with_capacity(pairs.len());
    let mut pb = Vec::with_capacity(pairs.len());
    for (la, lb) in pairs {
        let ia = a.leg_position(la)?;
        let ib = b.leg_position(lb)?;
        if pa.contains(&ia) {
            return Err(Error::DuplicateLabel(la.to_string()));
        }
        if pb.contains(&ib) {
            return Err(Error::DuplicateLabel(lb.to_string()));
        }
        check_join(&a.legs[ia], &b.legs[ib])?;
        pa.push(ia);
        pb.push(ib);
    }
    let free_a: Vec<usize> = (0..a.rank()).filter(|i| !pa.contains(i)).collect();
    let free_b: Vec<usize> = (0..b.rank()).filter(|i| !pb.contains(i)).collect();

    let perm_a: Vec<usize> = free_a.iter().chain(&pa).copied().collect();
    let perm_b: Vec<usize> = pb.iter().chain(&free_b).copied().collect();
    let da = permute_data(&a.dims(), &a.data, &perm_a);
    let db = permute_data(&b.dims(), &b.data, &perm_b);

    let m: usize = free_a.iter().map(|&i| a.legs[i].dim).product();
    let k: usize = pa.iter().map(|&i| a.legs[i].dim).product();
    let n: usize = free_b.iter().map(|&i| b.legs[i].dim).product();

    let mut out = vec![C64::zero(); m * n];
    for r in 0..m {
        let row = &da[r * k..(r + 1) * k];
        let dst = &mut out[r * n..(r + 1) * n];
        for (q, &x) in row.iter().enumerate() {
            if x == C64::zero() {
                continue;
            }
            let src = &db[q * n..(q + 1) * n];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += x * s;
            }
        }
    }
    let legs: Vec<Leg> = free_a
        .iter()
        .map(|&i| a.legs[i].clone())
        .chain(free_b.iter().map(|&i| b.legs[i].clone()))
        .collect();
    LabeledTensor::new(legs, out)
}

/// Contracts every leg of `a` with the equally labeled leg of `b`.
pub fn full_contract(a: &LabeledTensor, b: &LabeledTensor) -> Result<C64> {
    if a.rank() != b.rank() {
        return Err(Error::InvalidArgument(format!(
            "full contraction of rank {} with rank {}",
            a.rank(),
            b.rank()
        )));
    }
    let labels = a.labels();
    let pairs: Vec<(&str, &str)> = labels.iter().map(|l| (*l, *l)).collect();
    Ok(contract(a, b, &pairs)?.data[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructuralKind {
    Identity,
    Permutation,
    TemperleyLieb,
    Epsilon,
    Delta,
}

/// Sign of a permutation given as a sequence of distinct values, 0 if a
/// value repeats.
pub fn levi_civita(idx: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn one_if(b: bool) -> C64 {
    if b {
        C64::new(1.0, 0.0)
    } else {
        C64::zero()
    }
}

/// The structural tensors of the graphical calculus.
///
/// Four-leg operators carry legs `i, k` (incoming) and `j, l` (outgoing),
/// with `X_{ik}^{jl}` stored at index `[i, k, j, l]`:
///
/// - `Identity`: `δ_ij δ_kl`, legs `i, k` lower and `j, l` upper.
/// - `Permutation`: `δ_il δ_jk`, same legs as `Identity`.
/// - `TemperleyLieb`: `δ_ik δ_jl`, legs `i, j` lower and `k, l` upper, the
///   orientation of an operator from `[n]⊗[n̄]` to `[n̄]⊗[n]`.
/// - `Epsilon`: `ε_{a_1…a_n}` with `ε_{12…n} = +1`, all `n` legs lower,
///   labeled `a1 … an`.
/// - `Delta`: `δ_i^j`, leg `i` lower and `j` upper.
pub fn structural_tensor(kind: StructuralKind, n: usize) -> Result<LabeledTensor> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("structural tensors need n ≥ 2, got {n}")));
    }
    match kind {
        StructuralKind::Identity | StructuralKind::Permutation => {
            let legs = vec![Leg::down(n, "i"), Leg::down(n, "k"), Leg::up(n, "j"), Leg::up(n, "l")];
            LabeledTensor::from_fn(legs, |x| {
                let (i, k, j, l) = (x[0], x[1], x[2], x[3]);
                match kind {
                    StructuralKind::Identity => one_if(i == j && k == l),
                    _ => one_if(i == l && j == k),
                }
            })
        }
        StructuralKind::TemperleyLieb => {
            let legs = vec![Leg::down(n, "i"), Leg::up(n, "k"), Leg::down(n, "j"), Leg::up(n, "l")];
            LabeledTensor::from_fn(legs, |x| one_if(x[0] == x[1] && x[2] == x[3]))
        }
        StructuralKind::Epsilon => {
            let legs = (1..=n).map(|a| Leg::down(n, format!("a{a}"))).collect();
            LabeledTensor::from_fn(legs, |x| C64::new(levi_civita(x) as f64, 0.0))
        }
        StructuralKind::Delta => {
            let legs = vec![Leg::down(n, "i"), Leg::up(n, "j")];
            LabeledTensor::from_fn(legs, |x| one_if(x[0] == x[1]))
        }
    }
}

/// `ε` on three lower legs with the given labels.
pub fn epsilon3(a: &str, b: &str, c: &str) -> LabeledTensor {
    structural_tensor(StructuralKind::Epsilon, 3)
        .and_then(|e| e.with_labels(&[a, b, c]))
        .expect("ε labels are distinct")
}

/// `δ_lower^upper` with the given labels.
pub fn delta3(lower: &str, upper: &str) -> LabeledTensor {
    structural_tensor(StructuralKind::Delta, 3)
        .and_then(|d| d.with_labels(&[lower, upper]))
        .expect("δ labels are distinct")
}

/// Outer product (no legs contracted).
pub fn outer(a: &LabeledTensor, b: &LabeledTensor) -> Result<LabeledTensor> {
    contract(a, b, &[])
}
