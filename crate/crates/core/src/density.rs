//! Density-matrix form of partition entropy.
//!
//! A probability-weighted partition becomes a symmetric unit-trace matrix:
//! entry (j, k) is √(p_j·p_k) when j and k share a block and 0 otherwise.
//! Logical entropy is then 1 − tr(ρ²), taking the join with another partition
//! is a projective measurement that zeroes the entries crossing its blocks,
//! and the entropy the measurement creates is the squared mass of exactly
//! those entries.
//!
//! Entries are stored as exact square roots of rationals whenever the point
//! probabilities are exact, so every trace identity in this module holds with
//! equality, not within a tolerance: squares and same-base products of
//! √(p_j·p_k) terms are plain rationals again.

use std::fmt;

use num::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::entropy::{NumericMode, ProbPartition};
use crate::numeric::bigint_json;
use crate::partitions::Partition;
use crate::{Error, Result, Scalar, SqrtRational};

/// One matrix entry: an exact √(rational) or a float fallback.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixEntry {
    Exact(SqrtRational),
    Float(f64),
}

impl MatrixEntry {
    fn zero(mode: NumericMode) -> Self {
        match mode {
            NumericMode::Exact => MatrixEntry::Exact(SqrtRational::zero()),
            NumericMode::Float => MatrixEntry::Float(0.0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MatrixEntry::Exact(s) => s.is_zero(),
            MatrixEntry::Float(f) => *f == 0.0,
        }
    }

    /// The square is always an ordinary scalar: (±√q)² = q.
    pub fn squared(&self) -> Scalar {
        match self {
            MatrixEntry::Exact(s) => Scalar::Exact(s.squared()),
            MatrixEntry::Float(f) => Scalar::Float(f * f),
        }
    }

    /// Product of two entries, demoting to float when it is irrational.
    pub fn product(&self, other: &MatrixEntry) -> Scalar {
        match (self, other) {
            (MatrixEntry::Exact(a), MatrixEntry::Exact(b)) => {
                let p = a.mul(b);
                match p.to_rational() {
                    Some(r) => Scalar::Exact(r),
                    None => Scalar::Float(p.to_f64()),
                }
            }
            (a, b) => Scalar::Float(a.to_f64() * b.to_f64()),
        }
    }

    /// Rational value if the radicand is a perfect square, float otherwise.
    pub fn to_scalar(&self) -> Scalar {
        match self {
            MatrixEntry::Exact(s) => match s.to_rational() {
                Some(r) => Scalar::Exact(r),
                None => Scalar::Float(s.to_f64()),
            },
            MatrixEntry::Float(f) => Scalar::Float(*f),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            MatrixEntry::Exact(s) => s.to_f64(),
            MatrixEntry::Float(f) => *f,
        }
    }
}

impl fmt::Display for MatrixEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixEntry::Exact(s) => write!(f, "{s}"),
            MatrixEntry::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for MatrixEntry {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MatrixEntry::Float(f) => ser.serialize_f64(*f),
            MatrixEntry::Exact(s) => {
                // Perfect-square radicands render as the rational they equal.
                let (num, den, sqrt) = match s.to_rational() {
                    Some(r) => (bigint_json(r.numer()), bigint_json(r.denom()), false),
                    None => {
                        let signed = s.radicand().numer() * BigInt::from(s.sign());
                        (bigint_json(&signed), bigint_json(s.radicand().denom()), true)
                    }
                };
                let mut st = ser.serialize_struct("MatrixEntry", 3)?;
                st.serialize_field("num", &num)?;
                st.serialize_field("den", &den)?;
                st.serialize_field("sqrt", &sqrt)?;
                st.end()
            }
        }
    }
}

/// Symmetric real matrix with unit trace, stored row-major.
///
/// Matrices built by [`rho_of_partition`] remember their source, which lets
/// [`luders_join`] report the measured result as a partition again.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrixR {
    n: usize,
    mode: NumericMode,
    entries: Vec<MatrixEntry>,
    source: Option<ProbPartition>,
}

impl DensityMatrixR {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> NumericMode {
        self.mode
    }

    pub fn entry(&self, j: usize, k: usize) -> &MatrixEntry {
        assert!(j < self.n && k < self.n, "entry ({j},{k}) outside {0}x{0}", self.n);
        &self.entries[j * self.n + k]
    }

    pub fn source(&self) -> Option<&ProbPartition> {
        self.source.as_ref()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(Scalar::zero(), |acc, j| acc + self.entry(j, j).to_scalar())
    }

    /// tr(ρ²), the sum of all squared entries since ρ is symmetric.
    pub fn purity(&self) -> Scalar {
        self.entries
            .iter()
            .fold(Scalar::zero(), |acc, e| acc + e.squared())
    }

    /// Rows in brackets with aligned columns, radicals shown as √(…).
    pub fn to_pretty(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = |col: usize| {
            (0..self.n)
                .map(|row| cells[row * self.n + col].chars().count())
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.n).map(width).collect();
        let mut out = String::new();
        for row in 0..self.n {
            out.push('[');
            for col in 0..self.n {
                let cell = &cells[row * self.n + col];
                let pad = widths[col] - cell.chars().count();
                out.push(' ');
                out.extend(std::iter::repeat_n(' ', pad));
                out.push_str(cell);
            }
            out.push_str(" ]\n");
        }
        out
    }
}

impl Serialize for DensityMatrixR {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[MatrixEntry]> = self.entries.chunks(self.n).collect();
        let mut st = ser.serialize_struct("DensityMatrixR", 3)?;
        st.serialize_field("dim", &self.n)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// Diagonal 0/1 projection, represented by the set of coordinates it keeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionR {
    keep: Vec<bool>,
}

impl ProjectionR {
    pub fn of_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut keep = vec![false; n];
        for i in indices {
            keep[i] = true;
        }
        ProjectionR { keep }
    }

    pub fn of_block(n: usize, block: &[u32]) -> Self {
        Self::of_indices(n, block.iter().map(|&p| p as usize))
    }

    pub fn dim(&self) -> usize {
        self.keep.len()
    }

    pub fn rank(&self) -> usize {
        self.keep.iter().filter(|&&k| k).count()
    }

    pub fn keeps(&self, i: usize) -> bool {
        self.keep[i]
    }
}

/// Density matrix of a weighted partition: block-diagonal up to reordering,
/// with entry (j, k) = √(p_j·p_k) inside each block.
///
/// A block of total probability zero contributes a zero sub-matrix, the limit
/// of the weighted construction as its probability vanishes.
pub fn rho_of_partition(pp: &ProbPartition) -> DensityMatrixR {
    let n = pp.partition().universe().len();
    let probs = pp.point_probs();
    let mode = probs.mode();
    let mut entries = vec![MatrixEntry::zero(mode); n * n];
    for block in pp.partition().blocks() {
        for &j in block {
            for &k in block {
                let e = match (probs.get(j as usize), probs.get(k as usize)) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => {
                        MatrixEntry::Exact(SqrtRational::sqrt_of(a * b))
                    }
                    (a, b) => MatrixEntry::Float((a.to_f64() * b.to_f64()).sqrt()),
                };
                entries[j as usize * n + k as usize] = e;
            }
        }
    }
    DensityMatrixR {
        n,
        mode,
        entries,
        source: Some(pp.clone()),
    }
}

/// 1 − tr(r²); for a partition matrix this is its logical entropy, because
/// the squared entries of one block sum to Pr(B)².
pub fn logical_entropy_of_rho(r: &DensityMatrixR) -> Scalar {
    Scalar::one() - r.purity()
}

/// 1 − tr(r1·r2). For matrices of two partitions over the same point
/// probabilities this equals the logical entropy of their join.
pub fn cross_entropy_trace(r1: &DensityMatrixR, r2: &DensityMatrixR) -> Result<Scalar> {
    Ok(Scalar::one() - trace_product(r1, r2)?)
}

/// tr((r1 − r2)²), expanded as tr(r1²) + tr(r2²) − 2·tr(r1·r2) so exact
/// entries never leave rational arithmetic.
pub fn hamming_distance(r1: &DensityMatrixR, r2: &DensityMatrixR) -> Result<Scalar> {
    let cross = trace_product(r1, r2)?;
    Ok(r1.purity() + r2.purity() - Scalar::from_int(2) * cross)
}

fn trace_product(r1: &DensityMatrixR, r2: &DensityMatrixR) -> Result<Scalar> {
    if r1.n != r2.n {
        return Err(Error::DimensionMismatch(r1.n, r2.n));
    }
    // tr(AB) = Σ_jk A_jk·B_kj = Σ_jk A_jk·B_jk for symmetric B.
    let mut t = Scalar::zero();
    for (a, b) in r1.entries.iter().zip(&r2.entries) {
        t = t + a.product(b);
    }
    Ok(t)
}

/// Projective measurement of `r` by the blocks of `sigma`: Σ_C P_C·r·P_C.
///
/// Blocks are disjoint, so the sum keeps exactly the entries whose row and
/// column fall in one block of `sigma`. For r = ρ(π) the result is ρ(π ∨ σ):
/// the surviving entries are those indexed by indistinctions of both.
pub fn luders_join(r: &DensityMatrixR, sigma: &Partition) -> Result<DensityMatrixR> {
    if sigma.universe().len() != r.n {
        return Err(Error::UniverseMismatch(r.n, sigma.universe().len()));
    }
    let mut entries = vec![MatrixEntry::zero(r.mode); r.n * r.n];
    for block in sigma.blocks() {
        let p = ProjectionR::of_block(r.n, block);
        for j in 0..r.n {
            if !p.keeps(j) {
                continue;
            }
            for k in 0..r.n {
                if p.keeps(k) {
                    entries[j * r.n + k] = r.entries[j * r.n + k].clone();
                }
            }
        }
    }
    let source = match &r.source {
        Some(pp) => Some(ProbPartition::new(
            pp.partition().join(sigma)?,
            pp.point_probs().clone(),
        )?),
        None => None,
    };
    Ok(DensityMatrixR {
        n: r.n,
        mode: r.mode,
        entries,
        source,
    })
}

/// Entropy a measurement created: the sum of squares of the entries present
/// in `before` and zeroed in `after`, which equals h(after) − h(before).
pub fn entropy_created(before: &DensityMatrixR, after: &DensityMatrixR) -> Result<Scalar> {
    if before.n != after.n {
        return Err(Error::DimensionMismatch(before.n, after.n));
    }
    let mut created = Scalar::zero();
    for j in 0..before.n {
        for k in 0..before.n {
            let b = before.entry(j, k);
            let a = after.entry(j, k);
            if b.is_zero() && !a.is_zero() {
                return Err(Error::NotCoarsening(j, k));
            }
            if !b.is_zero() && a.is_zero() {
                created = created + b.squared();
            }
        }
    }
    Ok(created)
}

/// Kronecker product; index pair (j1, j2) flattens to j1·dim(r2) + j2.
pub fn tensor(r1: &DensityMatrixR, r2: &DensityMatrixR) -> DensityMatrixR {
    let n = r1.n * r2.n;
    let mode = match (r1.mode, r2.mode) {
        (NumericMode::Exact, NumericMode::Exact) => NumericMode::Exact,
        _ => NumericMode::Float,
    };
    let mut entries = Vec::with_capacity(n * n);
    for j1 in 0..r1.n {
        for j2 in 0..r2.n {
            for k1 in 0..r1.n {
                for k2 in 0..r2.n {
                    let a = r1.entry(j1, k1);
                    let b = r2.entry(j2, k2);
                    let e = match (a, b) {
                        (MatrixEntry::Exact(x), MatrixEntry::Exact(y)) => {
                            MatrixEntry::Exact(x.mul(y))
                        }
                        _ => MatrixEntry::Float(a.to_f64() * b.to_f64()),
                    };
                    entries.push(e);
                }
            }
        }
    }
    DensityMatrixR {
        n,
        mode,
        entries,
        source: None,
    }
}

/// Projection of the n²-dimensional pair space onto the coordinates (j, k)
/// whose points lie in distinct blocks of `p`.
pub fn dit_projection(p: &Partition) -> ProjectionR {
    let n = p.universe().len();
    let dits = (0..n).flat_map(|j| (0..n).map(move |k| (j, k)));
    ProjectionR::of_indices(
        n * n,
        dits.filter(|&(j, k)| !p.same_block(j as u32, k as u32))
            .map(|(j, k)| j * n + k),
    )
}

/// tr(P·m) for a diagonal projection: the kept diagonal entries of `m`.
pub fn projected_trace(p: &ProjectionR, m: &DensityMatrixR) -> Result<Scalar> {
    if p.dim() != m.n {
        return Err(Error::DimensionMismatch(p.dim(), m.n));
    }
    Ok((0..m.n)
        .filter(|&i| p.keeps(i))
        .fold(Scalar::zero(), |acc, i| acc + m.entry(i, i).to_scalar()))
}
