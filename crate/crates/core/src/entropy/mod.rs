//! Classical logical and Shannon entropies.
//!
//! Logical entropy `h(p) = 1 − Σ pᵢ²` is the probability that two independent
//! draws from `p` are distinct outcomes; every compound variant (joint,
//! conditional, mutual) is the probability that the draw pair satisfies a
//! distinction predicate, which makes the Venn-diagram identities exact
//! identities of a product measure rather than formal analogies. Shannon
//! entropy `H(p) = Σ pᵢ log(1/pᵢ)` carries the same structure on the
//! average-bits scale; the two are linked term-by-term by the dit-bit
//! transform in [`ditbit`].
//!
//! Logical quantities are exact on rational inputs; Shannon quantities are
//! always floats.

pub mod diagram;
pub mod ditbit;

use num::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

use crate::numeric::{scalar_from_json, LogBase, Scalar};
use crate::partitions::Partition;
use crate::{Error, Result};

/// Sum-to-one slack accepted in float mode.
pub const FLOAT_PROB_TOL: f64 = 1e-12;

/// Numeric mode of a distribution: all-rational or float.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Exact,
    Float,
}

/// A probability distribution over indexed outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Dist {
    probs: Vec<Scalar>,
}

impl Dist {
    /// Validate and build. If any entry is a float the whole distribution is
    /// demoted to float mode; exactness is all-or-nothing.
    pub fn new(probs: Vec<Scalar>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no outcomes".into()));
        }
        let probs: Vec<Scalar> = if probs.iter().all(Scalar::is_exact) {
            probs
        } else {
            probs.iter().map(Scalar::demote).collect()
        };
        if let Some(p) = probs.iter().find(|p| p.is_negative()) {
            return Err(Error::InvalidDistribution(format!("negative probability {p}")));
        }
        let total: Scalar = probs.iter().cloned().sum();
        match &total {
            Scalar::Exact(r) => {
                if *r != BigRational::from_integer(1.into()) {
                    return Err(Error::InvalidDistribution(format!("sums to {total}, not 1")));
                }
            }
            Scalar::Float(f) => {
                if (f - 1.0).abs() > FLOAT_PROB_TOL {
                    return Err(Error::InvalidDistribution(format!("sums to {f}, not 1")));
                }
            }
        }
        Ok(Dist { probs })
    }

    /// Exact distribution from `(numerator, denominator)` pairs.
    pub fn from_ratios(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(n, d)| crate::numeric::ratio(n, d)).collect())
    }

    pub fn from_f64s(probs: &[f64]) -> Result<Self> {
        Self::new(probs.iter().map(|&p| Scalar::Float(p)).collect())
    }

    /// Exact uniform distribution on `n` outcomes.
    pub fn uniform(n: usize) -> Self {
        let p = crate::numeric::ratio(1, n as i64);
        Dist { probs: vec![p; n] }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[Scalar] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.probs[i]
    }

    pub fn mode(&self) -> NumericMode {
        if self.probs.iter().all(Scalar::is_exact) {
            NumericMode::Exact
        } else {
            NumericMode::Float
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.probs.iter().map(Scalar::to_f64).collect()
    }

    /// Logical entropy `1 − Σ pᵢ²`: the probability that two independent
    /// draws produce different outcomes. Lies in `[0, 1 − 1/n]`.
    pub fn logical_entropy(&self) -> Scalar {
        let sum_sq: Scalar = self.probs.iter().map(|p| p.squared()).sum();
        Scalar::one() - sum_sq
    }

    /// Shannon entropy `Σ pᵢ log(1/pᵢ)`, with `0·log(1/0) := 0`.
    pub fn shannon_entropy(&self, base: LogBase) -> f64 {
        self.probs
            .iter()
            .map(|p| {
                let p = p.to_f64();
                if p > 0.0 {
                    p * base.log(1.0 / p)
                } else {
                    0.0
                }
            })
            .sum()
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct DistJson<'a> {
            probs: &'a [Scalar],
            mode: NumericMode,
        }
        DistJson { probs: &self.probs, mode: self.mode() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct DistJson {
            probs: Vec<Scalar>,
            mode: NumericMode,
        }
        let raw = DistJson::deserialize(de)?;
        if raw.mode == NumericMode::Exact {
            if let Some(p) = raw.probs.iter().find(|p| !p.is_exact()) {
                return Err(D::Error::custom(format!(
                    "mode is exact but probability {p} is a float"
                )));
            }
        }
        let probs = match raw.mode {
            NumericMode::Exact => raw.probs,
            NumericMode::Float => raw.probs.iter().map(Scalar::demote).collect(),
        };
        Dist::new(probs).map_err(D::Error::custom)
    }
}

/// A partition together with point probabilities on its universe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbPartition {
    partition: Partition,
    point_probs: Dist,
}

impl ProbPartition {
    pub fn new(partition: Partition, point_probs: Dist) -> Result<Self> {
        if point_probs.len() != partition.universe().len() {
            return Err(Error::LengthMismatch(
                point_probs.len(),
                partition.universe().len(),
            ));
        }
        Ok(ProbPartition { partition, point_probs })
    }

    /// Equiprobable points.
    pub fn uniform(partition: Partition) -> Self {
        let n = partition.universe().len();
        ProbPartition { partition, point_probs: Dist::uniform(n) }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn point_probs(&self) -> &Dist {
        &self.point_probs
    }

    /// Block probabilities `Pr(Bᵢ) = Σ{pⱼ : j ∈ Bᵢ}` in canonical block order.
    pub fn block_probs(&self) -> Vec<Scalar> {
        self.partition
            .blocks()
            .iter()
            .map(|block| block.iter().map(|&j| self.point_probs.get(j as usize).clone()).sum())
            .collect()
    }

    /// Logical entropy of the partition: `1 − Σ Pr(Bᵢ)²`, the probability
    /// that two independent point draws land in different blocks.
    pub fn logical_entropy(&self) -> Scalar {
        let sum_sq: Scalar = self.block_probs().iter().map(|p| p.squared()).sum();
        Scalar::one() - sum_sq
    }

    /// Shannon entropy of the block distribution.
    pub fn shannon_entropy(&self, base: LogBase) -> f64 {
        self.block_probs()
            .iter()
            .map(|p| {
                let p = p.to_f64();
                if p > 0.0 {
                    p * base.log(1.0 / p)
                } else {
                    0.0
                }
            })
            .sum()
    }
}

/// Compound logical entropies of a two-variable joint distribution. Every
/// field is the product-measure of a region of draw pairs, so the Venn
/// identities (`h_joint = h_x_given_y + h_y_given_x + m_xy`, and so on) hold
/// exactly in rational mode.
#[derive(Debug, Clone, Serialize)]
pub struct CompoundLogical {
    pub h_x: Scalar,
    pub h_y: Scalar,
    pub h_joint: Scalar,
    pub h_x_given_y: Scalar,
    pub h_y_given_x: Scalar,
    pub m_xy: Scalar,
}

/// Compound Shannon entropies of a two-variable joint distribution.
/// `i_xy` is the mutual information, which the identity
/// `h_joint = h_x_given_y + h_y_given_x + i_xy` ties to the rest.
#[derive(Debug, Clone, Serialize)]
pub struct CompoundShannon {
    pub h_x: f64,
    pub h_y: f64,
    pub h_joint: f64,
    pub h_x_given_y: f64,
    pub h_y_given_x: f64,
    pub i_xy: f64,
}

/// A joint distribution over two or three finite-valued variables.
///
/// Axis values are labels; the table is stored row-major. Each axis must
/// offer at least two values.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist {
    axes: Vec<Vec<String>>,
    dims: Vec<usize>,
    table: Vec<Scalar>,
}

impl JointDist {
    /// Validate and build from row-major probabilities.
    pub fn new(axes: Vec<Vec<String>>, table: Vec<Scalar>) -> Result<Self> {
        if axes.len() < 2 || axes.len() > 3 {
            return Err(Error::AxisCount { expected: 2, got: axes.len() });
        }
        for axis in &axes {
            if axis.len() < 2 {
                return Err(Error::InvalidDistribution(
                    "each axis needs at least two values".into(),
                ));
            }
            for value in axis {
                if value.is_empty() || value.contains([',', '(', ')']) {
                    return Err(Error::InvalidDistribution(format!(
                        "axis value {value:?} must be non-empty and free of ',', '(', ')'"
                    )));
                }
            }
            let mut dedup = axis.clone();
            dedup.sort();
            dedup.dedup();
            if dedup.len() != axis.len() {
                return Err(Error::InvalidDistribution("duplicate axis value".into()));
            }
        }
        let dims: Vec<usize> = axes.iter().map(Vec::len).collect();
        let cells: usize = dims.iter().product();
        if table.len() != cells {
            return Err(Error::LengthMismatch(table.len(), cells));
        }
        // Reuse Dist validation for non-negativity and normalization.
        let table = Dist::new(table)?.probs;
        Ok(JointDist { axes, dims, table })
    }

    /// Two-axis table from rows, with default value labels "0", "1", ….
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nx = rows.len();
        let ny = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ny) {
            return Err(Error::InvalidDistribution("ragged table".into()));
        }
        let axes = vec![default_labels(nx), default_labels(ny)];
        JointDist::new(axes, rows.into_iter().flatten().collect())
    }

    /// Three-axis table from a cell function over index triples, with default
    /// value labels.
    pub fn from_fn3(
        dims: (usize, usize, usize),
        f: impl Fn(usize, usize, usize) -> Scalar,
    ) -> Result<Self> {
        let (nx, ny, nz) = dims;
        let mut table = Vec::with_capacity(nx * ny * nz);
        for x in 0..nx {
            for y in 0..ny {
                for z in 0..nz {
                    table.push(f(x, y, z));
                }
            }
        }
        let axes = vec![default_labels(nx), default_labels(ny), default_labels(nz)];
        JointDist::new(axes, table)
    }

    pub fn num_axes(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<String>] {
        &self.axes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mode(&self) -> NumericMode {
        if self.table.iter().all(Scalar::is_exact) {
            NumericMode::Exact
        } else {
            NumericMode::Float
        }
    }

    pub fn require_axes(&self, expected: usize) -> Result<()> {
        if self.axes.len() != expected {
            return Err(Error::AxisCount { expected, got: self.axes.len() });
        }
        Ok(())
    }

    /// Probability at a multi-index.
    pub fn prob(&self, idx: &[usize]) -> &Scalar {
        &self.table[self.flat_index(idx)]
    }

    fn flat_index(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.dims.len());
        let mut flat = 0;
        for (&i, &d) in idx.iter().zip(&self.dims) {
            debug_assert!(i < d);
            flat = flat * d + i;
        }
        flat
    }

    /// Iterate `(multi-index, probability)` over all cells.
    pub fn cells(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> {
        let dims = self.dims.clone();
        self.table.iter().enumerate().map(move |(flat, p)| {
            let mut idx = vec![0; dims.len()];
            let mut rest = flat;
            for (slot, &d) in idx.iter_mut().zip(&dims).rev() {
                *slot = rest % d;
                rest /= d;
            }
            (idx, p)
        })
    }

    /// Marginal distribution of one axis.
    pub fn marginal(&self, axis: usize) -> Dist {
        assert!(axis < self.axes.len(), "axis out of range");
        let mut sums = vec![Scalar::zero(); self.dims[axis]];
        for (idx, p) in self.cells() {
            sums[idx[axis]] = sums[idx[axis]].clone() + p.clone();
        }
        Dist { probs: sums }
    }

    /// Two-axis marginal of a three-axis table.
    pub fn marginal_pair(&self, a: usize, b: usize) -> Result<JointDist> {
        self.require_axes(3)?;
        assert!(a < 3 && b < 3 && a != b);
        let mut table = vec![Scalar::zero(); self.dims[a] * self.dims[b]];
        for (idx, p) in self.cells() {
            let flat = idx[a] * self.dims[b] + idx[b];
            table[flat] = table[flat].clone() + p.clone();
        }
        Ok(JointDist {
            axes: vec![self.axes[a].clone(), self.axes[b].clone()],
            dims: vec![self.dims[a], self.dims[b]],
            table,
        })
    }

    /// The table flattened to a plain distribution over cells.
    pub fn flatten(&self) -> Dist {
        Dist { probs: self.table.clone() }
    }

    /// All compound logical entropies of a two-variable joint, each computed
    /// as the probability that two independent draws `(x,y), (x′,y′)` satisfy
    /// its distinction predicate.
    pub fn compound_logical(&self) -> Result<CompoundLogical> {
        self.require_axes(2)?;
        let mut out = CompoundLogical {
            h_x: Scalar::zero(),
            h_y: Scalar::zero(),
            h_joint: Scalar::zero(),
            h_x_given_y: Scalar::zero(),
            h_y_given_x: Scalar::zero(),
            m_xy: Scalar::zero(),
        };
        let cells: Vec<(Vec<usize>, &Scalar)> = self.cells().collect();
        for (i1, p1) in &cells {
            if p1.is_zero() {
                continue;
            }
            for (i2, p2) in &cells {
                if p2.is_zero() {
                    continue;
                }
                let w = (*p1).clone() * (*p2).clone();
                let dx = i1[0] != i2[0];
                let dy = i1[1] != i2[1];
                if dx {
                    out.h_x = out.h_x + w.clone();
                }
                if dy {
                    out.h_y = out.h_y + w.clone();
                }
                if dx || dy {
                    out.h_joint = out.h_joint + w.clone();
                }
                if dx && !dy {
                    out.h_x_given_y = out.h_x_given_y + w.clone();
                }
                if dy && !dx {
                    out.h_y_given_x = out.h_y_given_x + w.clone();
                }
                if dx && dy {
                    out.m_xy = out.m_xy + w;
                }
            }
        }
        Ok(out)
    }

    /// All compound Shannon entropies of a two-variable joint.
    pub fn compound_shannon(&self, base: LogBase) -> Result<CompoundShannon> {
        self.require_axes(2)?;
        let px = self.marginal(0).to_f64_vec();
        let py = self.marginal(1).to_f64_vec();
        let mut h_joint = 0.0;
        let mut h_x_given_y = 0.0;
        let mut h_y_given_x = 0.0;
        let mut i_xy = 0.0;
        for (idx, p) in self.cells() {
            let p = p.to_f64();
            if p <= 0.0 {
                continue;
            }
            let (mx, my) = (px[idx[0]], py[idx[1]]);
            h_joint += p * base.log(1.0 / p);
            // Average conditional entropy: Σ p(x,y)·log(p(y)/p(x,y)).
            h_x_given_y += p * base.log(my / p);
            h_y_given_x += p * base.log(mx / p);
            i_xy += p * base.log(p / (mx * my));
        }
        let hx = |ps: &[f64]| -> f64 {
            ps.iter().map(|&q| if q > 0.0 { q * base.log(1.0 / q) } else { 0.0 }).sum()
        };
        Ok(CompoundShannon {
            h_x: hx(&px),
            h_y: hx(&py),
            h_joint,
            h_x_given_y,
            h_y_given_x,
            i_xy,
        })
    }

    /// Three-way mutual logical information by inclusion-exclusion:
    /// `m(X,Y,Z) = h(X,Y,Z) − h(X) − h(Y) − h(Z) + m(X,Y) + m(X,Z) + m(Y,Z)`.
    /// Logical entropy is a measure, so the result is the product measure of
    /// the intersection of the three ditsets and is never negative; it equals
    /// the direct pair-sum over draw pairs differing in all three coordinates.
    pub fn mutual3_logical(&self) -> Result<Scalar> {
        self.require_axes(3)?;
        let h_xyz = self.flatten().logical_entropy();
        let singles: Scalar =
            (0..3).map(|a| self.marginal(a).logical_entropy()).sum();
        let mut pair_m = Scalar::zero();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            pair_m = pair_m + self.marginal_pair(a, b)?.compound_logical()?.m_xy;
        }
        Ok(h_xyz - singles + pair_m)
    }

    /// Three-way mutual Shannon information by inclusion-exclusion:
    /// `I(X;Y;Z) = H(X,Y,Z) − H(X) − H(Y) − H(Z) + I(X;Y) + I(X;Z) + I(Y;Z)`.
    /// A signed quantity: it can be negative.
    pub fn mutual3_shannon(&self, base: LogBase) -> Result<f64> {
        self.require_axes(3)?;
        let h_xyz = self.flatten().shannon_entropy(base);
        let singles: f64 = (0..3).map(|a| self.marginal(a).shannon_entropy(base)).sum();
        let mut pair_i = 0.0;
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            pair_i += self.marginal_pair(a, b)?.compound_shannon(base)?.i_xy;
        }
        Ok(h_xyz - singles + pair_i)
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Kullback-Leibler divergence `D(p‖q) = Σ pᵢ log(pᵢ/qᵢ)`. Requires every
/// `qᵢ > 0`; zero `pᵢ` terms contribute zero. Satisfies
/// `D(p‖uniform) = log n − H(p)`.
pub fn kl_divergence(p: &Dist, q: &Dist, base: LogBase) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    if let Some(i) = q.probs().iter().position(Scalar::is_zero) {
        return Err(Error::Domain(format!("q[{i}] = 0 in KL divergence")));
    }
    Ok(p.probs()
        .iter()
        .zip(q.probs())
        .map(|(pi, qi)| {
            let (pi, qi) = (pi.to_f64(), qi.to_f64());
            if pi > 0.0 {
                pi * base.log(pi / qi)
            } else {
                0.0
            }
        })
        .sum())
}

/// Directed logical divergence `d*(p‖q) = Σ (qᵢ−pᵢ)²/qᵢ = Σ pᵢ²/qᵢ − 1`.
/// Non-negative, zero iff `p = q`, exact on rational inputs, and against the
/// uniform reference equals `n·Σ(pᵢ − 1/n)²`.
pub fn logical_divergence(p: &Dist, q: &Dist) -> Result<Scalar> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    if let Some(i) = q.probs().iter().position(Scalar::is_zero) {
        return Err(Error::Domain(format!("q[{i}] = 0 in logical divergence")));
    }
    let sum: Scalar = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(pi, qi)| {
            let diff = qi.clone() - pi.clone();
            diff.squared() / qi.clone()
        })
        .sum();
    Ok(sum)
}

/// JSON form: `{"axes": [...], "table": {"(x,y)": prob, ...}, "mode": ...}`
/// with cell keys built from axis value labels.
impl Serialize for JointDist {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct JointJson<'a> {
            axes: &'a [Vec<String>],
            table: BTreeMap<String, &'a Scalar>,
            mode: NumericMode,
        }
        let mut table = BTreeMap::new();
        for (idx, p) in self.cells() {
            let key: Vec<&str> = idx
                .iter()
                .enumerate()
                .map(|(a, &i)| self.axes[a][i].as_str())
                .collect();
            table.insert(format!("({})", key.join(",")), p);
        }
        JointJson { axes: &self.axes, table, mode: self.mode() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for JointDist {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct JointJson {
            axes: Vec<Vec<String>>,
            table: BTreeMap<String, serde_json::Value>,
            mode: NumericMode,
        }
        let raw = JointJson::deserialize(de)?;
        let dims: Vec<usize> = raw.axes.iter().map(Vec::len).collect();
        let cells: usize = dims.iter().product();
        let mut table = vec![Scalar::zero(); cells];
        for (key, value) in &raw.table {
            let inner = key
                .strip_prefix('(')
                .and_then(|k| k.strip_suffix(')'))
                .ok_or_else(|| D::Error::custom(format!("cell key {key:?} is not (v1,v2,…)")))?;
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != raw.axes.len() {
                return Err(D::Error::custom(format!(
                    "cell key {key:?} has {} coordinates for {} axes",
                    parts.len(),
                    raw.axes.len()
                )));
            }
            let mut flat = 0usize;
            for (axis, part) in raw.axes.iter().zip(&parts) {
                let i = axis
                    .iter()
                    .position(|v| v == part)
                    .ok_or_else(|| D::Error::custom(format!("unknown axis value {part:?}")))?;
                flat = flat * axis.len() + i;
            }
            let scalar = scalar_from_json(value).map_err(D::Error::custom)?;
            if raw.mode == NumericMode::Exact && !scalar.is_exact() {
                return Err(D::Error::custom(format!(
                    "mode is exact but cell {key:?} holds a float"
                )));
            }
            table[flat] = match raw.mode {
                NumericMode::Exact => scalar,
                NumericMode::Float => scalar.demote(),
            };
        }
        JointDist::new(raw.axes, table).map_err(D::Error::custom)
    }
}
