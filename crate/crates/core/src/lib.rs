//! Logical (quadratic) entropy and its relationship to Shannon entropy.
//!
//! Logical entropy measures distinctions: for a partition π on a finite set,
//! `h(π)` is the probability that two independent draws land in different
//! blocks, and for a probability distribution `p`, `h(p) = 1 − Σ pᵢ²`. Shannon
//! entropy measures the same distinction structure on an average-bits scale,
//! and every logical identity transforms into its Shannon counterpart by
//! rewriting `1 − q` atoms as `log(1/q)`.
//!
//! The crate covers:
//!
//! - [`partitions`]: set partitions, distinction sets (dits), joins,
//!   refinement, and the common-dits theorem;
//! - [`entropy`]: simple and compound logical/Shannon entropies on
//!   distributions and joint distributions, the dit-bit transform, divergences,
//!   and box diagrams;
//! - [`maxent`]: maximum-entropy distributions under a mean constraint for
//!   both objectives, plus exact Boltzmann occupancy counting;
//! - [`stats`]: metrical logical entropy (twice the variance) and its
//!   covariance analogue;
//! - [`density`]: exact real density matrices of partitioned distributions;
//! - [`quantum`]: pure states, observables, measurement entropies, and the
//!   Lüders mixture connection.
//!
//! Quantities that are polynomial in the probabilities are computed exactly
//! over rationals when inputs are exact (see [`Scalar`]); log-based quantities
//! are `f64`.

pub mod density;
pub mod entropy;
pub mod maxent;
pub mod numeric;
pub mod partitions;
pub mod quantum;
pub mod stats;

pub use numeric::{LogBase, Scalar, SqrtRational};

use thiserror::Error;

/// How a pair relation fails to be an equivalence, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceDefect {
    /// `(u, u)` missing.
    Reflexivity { point: u32 },
    /// `(j, k)` present but `(k, j)` missing.
    Symmetry { pair: (u32, u32) },
    /// `(i, j)` and `(j, k)` present but `(i, k)` missing.
    Transitivity { first: (u32, u32), second: (u32, u32) },
}

impl std::fmt::Display for EquivalenceDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EquivalenceDefect::Reflexivity { point } => {
                write!(f, "missing reflexive pair ({point}, {point})")
            }
            EquivalenceDefect::Symmetry { pair: (j, k) } => {
                write!(f, "({j}, {k}) present without ({k}, {j})")
            }
            EquivalenceDefect::Transitivity { first: (i, j), second: (_, k) } => {
                write!(f, "({i}, {j}) and ({j}, {k}) present without ({i}, {k})")
            }
        }
    }
}

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("universes differ: {0} vs {1} points")]
    UniverseMismatch(usize, usize),

    #[error("universe labels differ between operands")]
    LabelMismatch,

    #[error("not an equivalence relation: {0}")]
    NotEquivalence(EquivalenceDefect),

    #[error("refusing to materialize a pair relation on {n} points (limit {limit})")]
    RelationTooLarge { n: usize, limit: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("expected a joint distribution with {expected} axes, got {got}")]
    AxisCount { expected: usize, got: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("mean {mean} is not strictly between {min} and {max}")]
    InfeasibleMean { mean: f64, min: f64, max: f64 },

    #[error("root finder did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("no occupancy vector satisfies the constraints")]
    Infeasible,

    #[error("occupancy enumeration exceeded {0} candidates")]
    EnumerationBound(u64),

    #[error("malformed entropy expression: {0}")]
    MalformedExpr(String),

    #[error("state is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("observables do not share an eigenbasis")]
    BasisMismatch,

    #[error("not a coarsening: entry ({0}, {1}) is non-zero after but zero before")]
    NotCoarsening(usize, usize),

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
