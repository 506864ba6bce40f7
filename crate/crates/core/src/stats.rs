//! Metrical logical entropy: variance and covariance as two-draw averages.
//!
//! Logical entropy is the probability that two independent draws differ. Give
//! the outcomes numeric values and replace "differ" with the squared
//! difference of the drawn values, and the same two-draw average turns into
//! twice the variance; do it jointly in two coordinates and it turns into
//! twice the covariance. [`quadratic_entropy`] generalises the distance to an
//! arbitrary symmetric non-negative matrix, with the 0/1 distance recovering
//! plain logical entropy.

use serde::{Deserialize, Serialize};

use crate::entropy::{Dist, JointDist};
use crate::numeric::Scalar;
use crate::{Error, Result};

/// A random variable: numeric values paired with a distribution.
///
/// Duplicate values are allowed; a repeated value simply contributes zero
/// distance, so all identities below hold unconditionally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MetricRvJson")]
pub struct MetricRV {
    values: Vec<Scalar>,
    probs: Dist,
}

#[derive(Deserialize)]
struct MetricRvJson {
    values: Vec<Scalar>,
    probs: Dist,
}

impl TryFrom<MetricRvJson> for MetricRV {
    type Error = Error;
    fn try_from(raw: MetricRvJson) -> Result<Self> {
        MetricRV::new(raw.values, raw.probs)
    }
}

impl MetricRV {
    pub fn new(values: Vec<Scalar>, probs: Dist) -> Result<Self> {
        if values.len() != probs.len() {
            return Err(Error::LengthMismatch(values.len(), probs.len()));
        }
        Ok(MetricRV { values, probs })
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn probs(&self) -> &Dist {
        &self.probs
    }

    /// E(X).
    pub fn mean(&self) -> Scalar {
        self.values
            .iter()
            .zip(self.probs.probs())
            .map(|(x, p)| x.clone() * p.clone())
            .sum()
    }

    /// E(X²).
    pub fn second_moment(&self) -> Scalar {
        self.values
            .iter()
            .zip(self.probs.probs())
            .map(|(x, p)| x.squared() * p.clone())
            .sum()
    }

    /// Var(X) = E(X²) − E(X)².
    pub fn variance(&self) -> Scalar {
        self.second_moment() - self.mean().squared()
    }
}

/// Two numeric coordinates with a joint distribution over their index pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MetricJointRvJson")]
pub struct MetricJointRV {
    x_values: Vec<Scalar>,
    y_values: Vec<Scalar>,
    joint: JointDist,
}

#[derive(Deserialize)]
struct MetricJointRvJson {
    x_values: Vec<Scalar>,
    y_values: Vec<Scalar>,
    joint: JointDist,
}

impl TryFrom<MetricJointRvJson> for MetricJointRV {
    type Error = Error;
    fn try_from(raw: MetricJointRvJson) -> Result<Self> {
        MetricJointRV::new(raw.x_values, raw.y_values, raw.joint)
    }
}

impl MetricJointRV {
    pub fn new(x_values: Vec<Scalar>, y_values: Vec<Scalar>, joint: JointDist) -> Result<Self> {
        joint.require_axes(2)?;
        if joint.dims()[0] != x_values.len() {
            return Err(Error::LengthMismatch(joint.dims()[0], x_values.len()));
        }
        if joint.dims()[1] != y_values.len() {
            return Err(Error::LengthMismatch(joint.dims()[1], y_values.len()));
        }
        Ok(MetricJointRV { x_values, y_values, joint })
    }

    pub fn x_values(&self) -> &[Scalar] {
        &self.x_values
    }

    pub fn y_values(&self) -> &[Scalar] {
        &self.y_values
    }

    pub fn joint(&self) -> &JointDist {
        &self.joint
    }

    pub fn x_rv(&self) -> MetricRV {
        MetricRV::new(self.x_values.clone(), self.joint.marginal(0)).unwrap()
    }

    pub fn y_rv(&self) -> MetricRV {
        MetricRV::new(self.y_values.clone(), self.joint.marginal(1)).unwrap()
    }

    /// E(XY).
    pub fn product_moment(&self) -> Scalar {
        self.joint
            .cells()
            .map(|(idx, p)| self.x_values[idx[0]].clone() * self.y_values[idx[1]].clone() * p.clone())
            .sum()
    }

    /// Cov(X,Y) = E(XY) − E(X)E(Y).
    pub fn covariance(&self) -> Scalar {
        self.product_moment() - self.x_rv().mean() * self.y_rv().mean()
    }
}

/// Symmetric non-negative distances with zero diagonal, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistanceMatrixJson", into = "DistanceMatrixJson")]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct DistanceMatrixJson {
    d: Vec<Vec<Scalar>>,
}

impl TryFrom<DistanceMatrixJson> for DistanceMatrix {
    type Error = Error;
    fn try_from(raw: DistanceMatrixJson) -> Result<Self> {
        DistanceMatrix::from_rows(raw.d)
    }
}

impl From<DistanceMatrix> for DistanceMatrixJson {
    fn from(m: DistanceMatrix) -> Self {
        let rows = (0..m.n)
            .map(|i| m.d[i * m.n..(i + 1) * m.n].to_vec())
            .collect();
        DistanceMatrixJson { d: rows }
    }
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!("expected {n} rows of length {n}")));
        }
        let d: Vec<Scalar> = rows.into_iter().flatten().collect();
        for i in 0..n {
            if !d[i * n + i].is_zero() {
                return Err(Error::InvalidMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                if d[i * n + j] != d[j * n + i] {
                    return Err(Error::InvalidMatrix(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        if let Some(k) = d.iter().position(Scalar::is_negative) {
            return Err(Error::InvalidMatrix(format!(
                "negative distance at ({},{})",
                k / n,
                k % n
            )));
        }
        Ok(DistanceMatrix { n, d })
    }

    /// The 0/1 distance d_ij = 1 − δ_ij.
    pub fn kronecker_complement(n: usize) -> Self {
        let mut d = vec![Scalar::one(); n * n];
        for i in 0..n {
            d[i * n + i] = Scalar::zero();
        }
        DistanceMatrix { n, d }
    }

    /// d_ij = (x_i − x_j)².
    pub fn squared_difference(values: &[Scalar]) -> Self {
        let n = values.len();
        let mut d = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                d.push((values[i].clone() - values[j].clone()).squared());
            }
        }
        DistanceMatrix { n, d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.d[i * self.n + j]
    }
}

/// Two-draw average squared difference, over ordered pairs of draws:
/// Σ_{i,j} p_i p_j (x_i − x_j)². Equals 2·Var(X).
pub fn metrical_h(rv: &MetricRV) -> Scalar {
    let ps = rv.probs.probs();
    let mut total = Scalar::zero();
    for (i, (xi, pi)) in rv.values.iter().zip(ps).enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (xj, pj) in rv.values.iter().zip(ps).skip(i + 1) {
            if pj.is_zero() {
                continue;
            }
            let term = pi.clone() * pj.clone() * (xi.clone() - xj.clone()).squared();
            total = total + term;
        }
    }
    // Each unordered pair appears twice in the ordered sum.
    total.clone() + total
}

/// Unordered-pair variant of [`metrical_h`]: Σ_{i<j} p_i p_j (x_i − x_j)².
/// Equals Var(X).
pub fn metrical_h_unordered(rv: &MetricRV) -> Scalar {
    let two = Scalar::from_int(2);
    metrical_h(rv) / two
}

/// Two-draw average product of coordinate differences, over ordered pairs of
/// cells: Σ p(x,y) p(x′,y′) (x − x′)(y − y′). Equals 2·Cov(X,Y); the sign is
/// unconstrained.
pub fn metrical_cov(rv: &MetricJointRV) -> Scalar {
    let cells: Vec<(usize, usize, Scalar)> = rv
        .joint
        .cells()
        .filter(|(_, p)| !p.is_zero())
        .map(|(idx, p)| (idx[0], idx[1], p.clone()))
        .collect();
    let mut total = Scalar::zero();
    for (a, (i, j, p)) in cells.iter().enumerate() {
        for (i2, j2, p2) in cells.iter().skip(a + 1) {
            let dx = rv.x_values[*i].clone() - rv.x_values[*i2].clone();
            let dy = rv.y_values[*j].clone() - rv.y_values[*j2].clone();
            total = total + p.clone() * p2.clone() * dx * dy;
        }
    }
    // The difference product is symmetric under swapping the two draws, so
    // the ordered sum is twice the sum over distinct unordered pairs.
    total.clone() + total
}

/// Lexicographic-half variant of [`metrical_cov`]: the sum restricted to cell
/// pairs with (x,y) before (x′,y′) in row-major order. Equals Cov(X,Y).
pub fn metrical_cov_half(rv: &MetricJointRV) -> Scalar {
    let two = Scalar::from_int(2);
    metrical_cov(rv) / two
}

/// Rao's quadratic entropy Σ_{i,j} d_ij p_i p_j for an arbitrary distance
/// matrix. The 0/1 distance gives h(p); the squared-difference distance gives
/// [`metrical_h`].
pub fn quadratic_entropy(d: &DistanceMatrix, p: &Dist) -> Result<Scalar> {
    if d.len() != p.len() {
        return Err(Error::DimensionMismatch(d.len(), p.len()));
    }
    let ps = p.probs();
    let mut total = Scalar::zero();
    for i in 0..d.len() {
        if ps[i].is_zero() {
            continue;
        }
        for j in 0..d.len() {
            if i == j || ps[j].is_zero() || d.get(i, j).is_zero() {
                continue;
            }
            total = total + d.get(i, j).clone() * ps[i].clone() * ps[j].clone();
        }
    }
    Ok(total)
}
