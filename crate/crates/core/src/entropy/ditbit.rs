//! The dit-bit transform.
//!
//! Every compound logical entropy can be written as an outcome-probability
//! average of signed `(1 − q)` atoms, where each `q` is the probability of
//! the current outcome cell or of one of its marginal projections. Replacing
//! each atom `1 − q` by `log(1/q)` in that form yields the corresponding
//! Shannon quantity: `1 − q` is the two-draw distinction probability of a set
//! of probability `q`, and `log(1/q)` is its bit-count. [`EntropyExpr`] is
//! just enough formal structure to state and test that substitution; it is a
//! term language, not a symbolic algebra.

use serde::Serialize;
use std::fmt;

use crate::numeric::{LogBase, Scalar};
use crate::{Error, Result};

use super::{Dist, JointDist};

/// Which probability an atom refers to, for the outcome cell being averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbRef {
    /// The cell's own (joint) probability.
    Cell,
    /// The marginal probability of the cell's value on one axis.
    Marginal(usize),
}

/// A single atom: `1 − q` on the logical side, `log(1/q)` on the Shannon side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Atom {
    OneMinus(ProbRef),
    LogInv(ProbRef),
}

/// An atom with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Term {
    /// +1 or −1.
    pub sign: i8,
    pub atom: Atom,
}

/// A formal entropy form: `Σ_cells p(cell) · Σ_k sign_k · atom_k(cell)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyExpr {
    pub terms: Vec<Term>,
}

impl EntropyExpr {
    fn new(terms: Vec<(i8, Atom)>) -> Self {
        EntropyExpr {
            terms: terms.into_iter().map(|(sign, atom)| Term { sign, atom }).collect(),
        }
    }

    /// `h(p) = Σ p(cell)·(1 − p(cell))`: simple logical entropy. On a joint
    /// table this is the joint logical entropy `h(X,Y)`.
    pub fn simple() -> Self {
        Self::new(vec![(1, Atom::OneMinus(ProbRef::Cell))])
    }

    /// `h(X) = Σ p(cell)·(1 − p(x))`: logical entropy of one axis.
    pub fn marginal(axis: usize) -> Self {
        Self::new(vec![(1, Atom::OneMinus(ProbRef::Marginal(axis)))])
    }

    /// `m(X,Y) = Σ p(cell)·[(1−p(x)) + (1−p(y)) − (1−p(x,y))]`:
    /// mutual logical information of a two-axis table.
    pub fn mutual() -> Self {
        Self::new(vec![
            (1, Atom::OneMinus(ProbRef::Marginal(0))),
            (1, Atom::OneMinus(ProbRef::Marginal(1))),
            (-1, Atom::OneMinus(ProbRef::Cell)),
        ])
    }

    /// `h(X|Y) = Σ p(cell)·[(1−p(x,y)) − (1−p(y))]` for `axis = 0`:
    /// conditional logical entropy given the other axis.
    pub fn conditional(axis: usize) -> Self {
        let other = 1 - axis;
        Self::new(vec![
            (1, Atom::OneMinus(ProbRef::Cell)),
            (-1, Atom::OneMinus(ProbRef::Marginal(other))),
        ])
    }

    /// The dit-bit transform: replace every `1 − q` atom by `log(1/q)`.
    /// Input must be purely logical; an already-transformed (or mixed) form
    /// has no `1 − q` structure left to rewrite.
    pub fn dit_bit_transform(&self) -> Result<EntropyExpr> {
        let terms = self
            .terms
            .iter()
            .map(|t| match t.atom {
                Atom::OneMinus(q) => Ok(Term { sign: t.sign, atom: Atom::LogInv(q) }),
                Atom::LogInv(_) => Err(Error::MalformedExpr(format!(
                    "term {t} is not of the form (1 − q)"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EntropyExpr { terms })
    }

    /// Evaluate over a joint distribution. Exact when the table is exact and
    /// every atom is logical; any `log(1/q)` atom makes the result a float.
    pub fn evaluate_joint(&self, j: &JointDist, base: LogBase) -> Result<Scalar> {
        for t in &self.terms {
            if let Atom::OneMinus(ProbRef::Marginal(a)) | Atom::LogInv(ProbRef::Marginal(a)) =
                t.atom
            {
                if a >= j.num_axes() {
                    return Err(Error::MalformedExpr(format!(
                        "marginal axis {a} out of range for {} axes",
                        j.num_axes()
                    )));
                }
            }
        }
        let marginals: Vec<Dist> = (0..j.num_axes()).map(|a| j.marginal(a)).collect();
        let mut total = Scalar::zero();
        for (idx, p) in j.cells() {
            if p.is_zero() {
                continue;
            }
            let q_of = |r: ProbRef| -> Scalar {
                match r {
                    ProbRef::Cell => p.clone(),
                    ProbRef::Marginal(a) => marginals[a].get(idx[a]).clone(),
                }
            };
            let mut inner = Scalar::zero();
            for t in &self.terms {
                let value = match t.atom {
                    Atom::OneMinus(r) => Scalar::one() - q_of(r),
                    Atom::LogInv(r) => Scalar::Float(base.log(1.0 / q_of(r).to_f64())),
                };
                inner = if t.sign >= 0 { inner + value } else { inner - value };
            }
            total = total + p.clone() * inner;
        }
        Ok(total)
    }

    /// Evaluate over a plain distribution; only `Cell` references make sense
    /// in this context.
    pub fn evaluate_dist(&self, d: &Dist, base: LogBase) -> Result<Scalar> {
        if self.terms.iter().any(|t| {
            matches!(
                t.atom,
                Atom::OneMinus(ProbRef::Marginal(_)) | Atom::LogInv(ProbRef::Marginal(_))
            )
        }) {
            return Err(Error::MalformedExpr(
                "marginal reference in a single-distribution form".into(),
            ));
        }
        let mut total = Scalar::zero();
        for p in d.probs() {
            if p.is_zero() {
                continue;
            }
            let mut inner = Scalar::zero();
            for t in &self.terms {
                let value = match t.atom {
                    Atom::OneMinus(_) => Scalar::one() - p.clone(),
                    Atom::LogInv(_) => Scalar::Float(base.log(1.0 / p.to_f64())),
                };
                inner = if t.sign >= 0 { inner + value } else { inner - value };
            }
            total = total + p.clone() * inner;
        }
        Ok(total)
    }
}

impl fmt::Display for ProbRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbRef::Cell => write!(f, "p(cell)"),
            ProbRef::Marginal(a) => write!(f, "p(axis{a})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign >= 0 { "+" } else { "−" };
        match self.atom {
            Atom::OneMinus(q) => write!(f, "{sign} (1 − {q})"),
            Atom::LogInv(q) => write!(f, "{sign} log(1/{q})"),
        }
    }
}

impl fmt::Display for EntropyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ p(cell)·[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}
