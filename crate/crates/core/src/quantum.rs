//! Logical entropy of quantum measurements on finite-dimensional pure states.
//!
//! An observable is given by an orthonormal eigenbasis plus an eigenvalue
//! function on its columns, never by a raw Hermitian matrix: every quantity
//! here depends only on *which* columns share an eigenvalue, so eigenvalue
//! identity is decided at the index level and no eigensolver is needed.
//!
//! Measuring a pure state |ψ⟩ = Σ β_j |u_j⟩ yields eigenvalue φ_i with
//! probability Σ{|β_j|² : f(j) = i}. The logical entropy of the measurement
//! is the probability that two independent measurements of the same state
//! disagree, which equals 1 − tr(ρ̂²) for the post-measurement mixture ρ̂ and
//! also the squared mass the measurement wipes off the density matrix.
//!
//! All arithmetic is in floats: amplitudes are generally irrational, so the
//! exact-rational path of the classical modules does not extend here.

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::ProjectionR;
use crate::entropy::Dist;
use crate::partitions::{Partition, Universe};
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-12;
const BASIS_TOL: f64 = 1e-10;

/// Unit vector of complex amplitudes relative to a declared basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PureStateJson", into = "PureStateJson")]
pub struct PureState {
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidDistribution("state has no amplitudes".into()));
        }
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(PureState { amps })
    }

    pub fn from_re_im(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    /// e_j: the j-th vector of the declared basis.
    pub fn basis_state(n: usize, j: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        amps[j] = Complex64::new(1.0, 0.0);
        PureState { amps }
    }

    /// All amplitudes 1/√n.
    pub fn uniform_real(n: usize) -> Self {
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        PureState { amps: vec![a; n] }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, j: usize) -> Complex64 {
        self.amps[j]
    }

    /// |α_j|² per coordinate of the declared basis.
    pub fn point_probs(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// The same ray: every quantity in this module is unchanged by this.
    pub fn phase_shifted(&self, theta: f64) -> PureState {
        let u = Complex64::from_polar(1.0, theta);
        PureState {
            amps: self.amps.iter().map(|a| a * u).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PureStateJson {
    amplitudes: Vec<(f64, f64)>,
}

impl TryFrom<PureStateJson> for PureState {
    type Error = Error;
    fn try_from(j: PureStateJson) -> Result<Self> {
        PureState::from_re_im(&j.amplitudes)
    }
}

impl From<PureState> for PureStateJson {
    fn from(s: PureState) -> Self {
        PureStateJson {
            amplitudes: s.amps.iter().map(|a| (a.re, a.im)).collect(),
        }
    }
}

/// Observable as (eigenvalues, eigenbasis, eigenvalue function).
///
/// `basis` is row-major with column `c` holding the c-th eigenvector in the
/// declared ambient basis; `map[c]` is the index of that column's eigenvalue.
/// Degenerate eigenvalues appear once in `eigenvalues` and several times in
/// `map`, so two columns agree in eigenvalue exactly when their map entries
/// are equal. No float comparison of eigenvalues ever decides equality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ObservableJson", into = "ObservableJson")]
pub struct Observable {
    n: usize,
    eigenvalues: Vec<f64>,
    basis: Vec<Complex64>,
    map: Vec<usize>,
}

impl Observable {
    pub fn new(
        eigenvalues: Vec<f64>,
        basis_rows: Vec<Vec<Complex64>>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let n = basis_rows.len();
        if n == 0 {
            return Err(Error::InvalidObservable("empty eigenbasis".into()));
        }
        if basis_rows.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidObservable("eigenbasis is not square".into()));
        }
        if map.len() != n {
            return Err(Error::InvalidObservable(format!(
                "eigenvalue map covers {} of {n} columns",
                map.len()
            )));
        }
        let count = eigenvalues.len();
        for (i, a) in eigenvalues.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::InvalidObservable(format!("eigenvalue {a} at index {i}")));
            }
            if eigenvalues[..i].contains(a) {
                return Err(Error::InvalidObservable(format!(
                    "eigenvalue {a} repeats; express degeneracy through the map"
                )));
            }
        }
        let mut used = vec![false; count];
        for &i in &map {
            if i >= count {
                return Err(Error::InvalidObservable(format!(
                    "map refers to eigenvalue index {i}, only {count} given"
                )));
            }
            used[i] = true;
        }
        if let Some(unused) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidObservable(format!(
                "eigenvalue index {unused} has no eigenvector column"
            )));
        }
        let basis: Vec<Complex64> = basis_rows.into_iter().flatten().collect();
        for c1 in 0..n {
            for c2 in c1..n {
                let mut ip = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    ip += basis[r * n + c1].conj() * basis[r * n + c2];
                }
                let expect = if c1 == c2 { 1.0 } else { 0.0 };
                if (ip - expect).norm() > BASIS_TOL {
                    return Err(Error::InvalidObservable(format!(
                        "columns {c1} and {c2} are not orthonormal (inner product {ip})"
                    )));
                }
            }
        }
        Ok(Observable {
            n,
            eigenvalues,
            basis,
            map,
        })
    }

    /// Observable diagonal in the declared basis: coordinate j has eigenvalue
    /// `values[j]`. Equal values collapse into one (degenerate) eigenvalue.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut eigenvalues: Vec<f64> = Vec::new();
        let mut map = Vec::with_capacity(n);
        for &v in values {
            let i = match eigenvalues.iter().position(|&e| e == v) {
                Some(i) => i,
                None => {
                    eigenvalues.push(v);
                    eigenvalues.len() - 1
                }
            };
            map.push(i);
        }
        let rows = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        Observable::new(eigenvalues, rows, map)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue_count(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Index of the eigenvalue attached to basis column `col`.
    pub fn eigenvalue_index(&self, col: usize) -> usize {
        self.map[col]
    }

    pub fn eigenvalue_of(&self, col: usize) -> f64 {
        self.eigenvalues[self.map[col]]
    }

    pub fn basis_entry(&self, row: usize, col: usize) -> Complex64 {
        self.basis[row * self.n + col]
    }

    /// Columns of the i-th eigenspace.
    pub fn column_group(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&c| self.map[c] == i).collect()
    }

    /// Partition of the column indices by eigenvalue. Under this partition
    /// every quantum quantity of a state reduces to a classical one.
    pub fn index_partition(&self) -> Partition {
        let u = Universe::new(self.n).expect("observable dimension is positive");
        let blocks = (0..self.eigenvalue_count())
            .map(|i| self.column_group(i).into_iter().map(|c| c as u32).collect())
            .collect();
        Partition::new(u, blocks).expect("column groups cover the index set")
    }

    /// Whether both observables declare the same eigenbasis, entrywise
    /// within 1e-10. This is the "simultaneous eigenvectors" precondition
    /// for every two-observable operation.
    pub fn same_basis(&self, other: &Observable) -> bool {
        self.n == other.n
            && self
                .basis
                .iter()
                .zip(&other.basis)
                .all(|(a, b)| (a - b).norm() <= BASIS_TOL)
    }

    /// Eigenbasis coordinates β = U†α of an ambient-basis state.
    pub fn to_eigen_coords(&self, s: &PureState) -> Result<Vec<Complex64>> {
        if s.dim() != self.n {
            return Err(Error::DimensionMismatch(self.n, s.dim()));
        }
        Ok((0..self.n)
            .map(|c| {
                (0..self.n)
                    .map(|r| self.basis[r * self.n + c].conj() * s.amps[r])
                    .sum()
            })
            .collect())
    }

    /// The Hermitian matrix Σ_i φ_i·P_i this data encodes, for inspection.
    pub fn matrix(&self) -> Vec<Vec<Complex64>> {
        (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|s| {
                        (0..self.n)
                            .map(|c| {
                                self.basis[r * self.n + c]
                                    * self.eigenvalue_of(c)
                                    * self.basis[s * self.n + c].conj()
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct ObservableJson {
    eigenvalues: Vec<f64>,
    basis: Vec<Vec<(f64, f64)>>,
    map: Vec<usize>,
}

impl TryFrom<ObservableJson> for Observable {
    type Error = Error;
    fn try_from(j: ObservableJson) -> Result<Self> {
        let rows = j
            .basis
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(re, im)| Complex64::new(re, im))
                    .collect()
            })
            .collect();
        Observable::new(j.eigenvalues, rows, j.map)
    }
}

impl From<Observable> for ObservableJson {
    fn from(o: Observable) -> Self {
        let basis = (0..o.n)
            .map(|r| {
                (0..o.n)
                    .map(|c| {
                        let z = o.basis[r * o.n + c];
                        (z.re, z.im)
                    })
                    .collect()
            })
            .collect();
        ObservableJson {
            eigenvalues: o.eigenvalues,
            basis,
            map: o.map,
        }
    }
}

/// Hermitian unit-trace complex matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "DensityMatrixCJson")]
pub struct DensityMatrixC {
    n: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrixC {
    pub fn new(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        let entries: Vec<Complex64> = rows.into_iter().flatten().collect();
        for j in 0..n {
            for k in j..n {
                let defect = (entries[j * n + k] - entries[k * n + j].conj()).norm();
                if defect > NORM_TOL {
                    return Err(Error::InvalidMatrix(format!(
                        "not Hermitian at ({j}, {k}): defect {defect:e}"
                    )));
                }
            }
        }
        let trace: Complex64 = (0..n).map(|j| entries[j * n + j]).sum();
        if (trace - 1.0).norm() > NORM_TOL {
            return Err(Error::InvalidMatrix(format!("trace is {trace}, expected 1")));
        }
        Ok(DensityMatrixC { n, entries })
    }

    fn from_raw(n: usize, entries: Vec<Complex64>) -> Self {
        DensityMatrixC { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        assert!(j < self.n && k < self.n, "entry ({j},{k}) outside {0}x{0}", self.n);
        self.entries[j * self.n + k]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|j| self.entry(j, j)).sum()
    }

    /// tr(ρ²) = Σ |ρ_jk|² for Hermitian ρ.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn logical_entropy(&self) -> f64 {
        1.0 - self.purity()
    }

    /// Rows in brackets; entries rendered as re±im·i with four decimals.
    pub fn to_pretty(&self) -> String {
        let fmt = |z: Complex64| {
            if z.im.abs() < 1e-12 {
                format!("{:.4}", z.re)
            } else if z.re.abs() < 1e-12 {
                format!("{:.4}i", z.im)
            } else {
                format!("{:.4}{:+.4}i", z.re, z.im)
            }
        };
        let cells: Vec<String> = self.entries.iter().map(|&z| fmt(z)).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for row in 0..self.n {
            out.push('[');
            for col in 0..self.n {
                out.push(' ');
                out.push_str(&format!("{:>width$}", cells[row * self.n + col]));
            }
            out.push_str(" ]\n");
        }
        out
    }
}

#[derive(Serialize)]
struct DensityMatrixCJson {
    dim: usize,
    entries: Vec<Vec<(f64, f64)>>,
}

impl From<DensityMatrixC> for DensityMatrixCJson {
    fn from(m: DensityMatrixC) -> Self {
        let entries = (0..m.n)
            .map(|r| (0..m.n).map(|c| {
                let z = m.entry(r, c);
                (z.re, z.im)
            }).collect())
            .collect();
        DensityMatrixCJson { dim: m.n, entries }
    }
}

/// Pure-state density matrix |ψ⟩⟨ψ|: entry (j, k) = α_j·α_k*.
pub fn rho_of_state(s: &PureState) -> DensityMatrixC {
    let n = s.dim();
    let mut entries = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            entries.push(s.amps[j] * s.amps[k].conj());
        }
    }
    DensityMatrixC::from_raw(n, entries)
}

/// Probability of each eigenvalue when measuring `s` with `f`:
/// Pr(φ_i) = Σ{|β_j|² : f(j) = i} in eigenbasis coordinates β.
pub fn measurement_probs(f: &Observable, s: &PureState) -> Result<Dist> {
    let beta = f.to_eigen_coords(s)?;
    let mut probs = vec![0.0; f.eigenvalue_count()];
    for (j, b) in beta.iter().enumerate() {
        probs[f.eigenvalue_index(j)] += b.norm_sqr();
    }
    Dist::from_f64s(&probs)
}

/// Probability that two independent measurements of `s` by `f` give
/// different eigenvalues: Σ{p_j·p_k : f(j) ≠ f(k)} over eigenbasis pairs.
pub fn quantum_logical_entropy(f: &Observable, s: &PureState) -> Result<f64> {
    let beta = f.to_eigen_coords(s)?;
    let p: Vec<f64> = beta.iter().map(|b| b.norm_sqr()).collect();
    let mut h = 0.0;
    for j in 0..p.len() {
        for k in 0..p.len() {
            if f.eigenvalue_index(j) != f.eigenvalue_index(k) {
                h += p[j] * p[k];
            }
        }
    }
    Ok(h)
}

/// ρ in the eigenbasis of `f`: U†·ρ·U.
pub fn in_eigenbasis(f: &Observable, r: &DensityMatrixC) -> Result<DensityMatrixC> {
    if f.dim() != r.dim() {
        return Err(Error::DimensionMismatch(f.dim(), r.dim()));
    }
    let n = f.dim();
    let u = |r_: usize, c: usize| f.basis_entry(r_, c);
    // tmp = ρ·U, then U†·tmp.
    let mut tmp = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for c in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += r.entry(j, k) * u(k, c);
            }
            tmp[j * n + c] = acc;
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for c1 in 0..n {
        for c2 in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += u(j, c1).conj() * tmp[j * n + c2];
            }
            out[c1 * n + c2] = acc;
        }
    }
    Ok(DensityMatrixC::from_raw(n, out))
}

fn from_eigenbasis(f: &Observable, m: &DensityMatrixC) -> DensityMatrixC {
    let n = f.dim();
    let u = |r_: usize, c: usize| f.basis_entry(r_, c);
    // tmp = U·m, then tmp·U†.
    let mut tmp = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for c2 in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for c1 in 0..n {
                acc += u(j, c1) * m.entry(c1, c2);
            }
            tmp[j * n + c2] = acc;
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for c2 in 0..n {
                acc += tmp[j * n + c2] * u(k, c2).conj();
            }
            out[j * n + k] = acc;
        }
    }
    DensityMatrixC::from_raw(n, out)
}

/// Projective measurement Σ_i P_i·r·P_i with the eigenspace projectors of
/// `f`. In eigenbasis coordinates each P_i is diagonal 0/1, so the mixture
/// keeps exactly the entries whose row and column share an eigenvalue.
pub fn luders_measure(f: &Observable, r: &DensityMatrixC) -> Result<DensityMatrixC> {
    let mut m = in_eigenbasis(f, r)?;
    let n = f.dim();
    for j in 0..n {
        for k in 0..n {
            if f.eigenvalue_index(j) != f.eigenvalue_index(k) {
                m.entries[j * n + k] = Complex64::new(0.0, 0.0);
            }
        }
    }
    Ok(from_eigenbasis(f, &m))
}

/// The three faces of the measurement entropy, which agree within float
/// error: the two-draw disagreement probability, 1 − tr(ρ̂²) of the
/// post-measurement mixture, and the squared mass of the zeroed entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementCheck {
    pub h_direct: f64,
    pub h_post_rho: f64,
    pub zeroed_abs_sq_sum: f64,
}

pub fn measurement_entropy_theorem_check(
    f: &Observable,
    s: &PureState,
) -> Result<MeasurementCheck> {
    let h_direct = quantum_logical_entropy(f, s)?;
    let rho = rho_of_state(s);
    let post = luders_measure(f, &rho)?;
    let eigen = in_eigenbasis(f, &rho)?;
    let n = f.dim();
    let mut zeroed = 0.0;
    for j in 0..n {
        for k in 0..n {
            if f.eigenvalue_index(j) != f.eigenvalue_index(k) {
                zeroed += eigen.entry(j, k).norm_sqr();
            }
        }
    }
    Ok(MeasurementCheck {
        h_direct,
        h_post_rho: post.logical_entropy(),
        zeroed_abs_sq_sum: zeroed,
    })
}

/// Dimensions of the qudit pair-index sets of two observables sharing an
/// eigenbasis, under union, intersection, and the two differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuditSubspaceDims {
    pub dim_union: usize,
    pub dim_intersection: usize,
    pub dim_difference_fg: usize,
    pub dim_difference_gf: usize,
}

pub fn qudit_mutual_subspace_dims(f: &Observable, g: &Observable) -> Result<QuditSubspaceDims> {
    if !f.same_basis(g) {
        return Err(Error::BasisMismatch);
    }
    let n = f.dim();
    let mut dims = QuditSubspaceDims {
        dim_union: 0,
        dim_intersection: 0,
        dim_difference_fg: 0,
        dim_difference_gf: 0,
    };
    for j in 0..n {
        for k in 0..n {
            let in_f = f.eigenvalue_index(j) != f.eigenvalue_index(k);
            let in_g = g.eigenvalue_index(j) != g.eigenvalue_index(k);
            dims.dim_union += usize::from(in_f || in_g);
            dims.dim_intersection += usize::from(in_f && in_g);
            dims.dim_difference_fg += usize::from(in_f && !in_g);
            dims.dim_difference_gf += usize::from(in_g && !in_f);
        }
    }
    Ok(dims)
}

/// Compound entropies of two observables measured on one state, each a sum
/// of p_j·p_k over the matching set operation on the qudit pair sets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompoundQuantum {
    pub h_f: f64,
    pub h_g: f64,
    pub h_joint: f64,
    pub h_f_given_g: f64,
    pub m_fg: f64,
}

pub fn compound_quantum_entropies(
    f: &Observable,
    g: &Observable,
    s: &PureState,
) -> Result<CompoundQuantum> {
    if !f.same_basis(g) {
        return Err(Error::BasisMismatch);
    }
    let beta = f.to_eigen_coords(s)?;
    let p: Vec<f64> = beta.iter().map(|b| b.norm_sqr()).collect();
    let mut out = CompoundQuantum {
        h_f: 0.0,
        h_g: 0.0,
        h_joint: 0.0,
        h_f_given_g: 0.0,
        m_fg: 0.0,
    };
    for j in 0..p.len() {
        for k in 0..p.len() {
            let in_f = f.eigenvalue_index(j) != f.eigenvalue_index(k);
            let in_g = g.eigenvalue_index(j) != g.eigenvalue_index(k);
            let w = p[j] * p[k];
            if in_f {
                out.h_f += w;
            }
            if in_g {
                out.h_g += w;
            }
            if in_f || in_g {
                out.h_joint += w;
            }
            if in_f && !in_g {
                out.h_f_given_g += w;
            }
            if in_f && in_g {
                out.m_fg += w;
            }
        }
    }
    Ok(out)
}

/// Kronecker product; index pair (j1, j2) flattens to j1·dim(r2) + j2.
pub fn tensor(r1: &DensityMatrixC, r2: &DensityMatrixC) -> DensityMatrixC {
    let n = r1.dim() * r2.dim();
    let mut entries = Vec::with_capacity(n * n);
    for j1 in 0..r1.dim() {
        for j2 in 0..r2.dim() {
            for k1 in 0..r1.dim() {
                for k2 in 0..r2.dim() {
                    entries.push(r1.entry(j1, k1) * r2.entry(j2, k2));
                }
            }
        }
    }
    DensityMatrixC::from_raw(n, entries)
}

/// Projection of the pair space onto coordinates (j, k) whose eigenbasis
/// columns carry distinct eigenvalues of `f`.
pub fn qudit_projection(f: &Observable) -> ProjectionR {
    let n = f.dim();
    let pairs = (0..n).flat_map(|j| (0..n).map(move |k| (j, k)));
    ProjectionR::of_indices(
        n * n,
        pairs
            .filter(|&(j, k)| f.eigenvalue_index(j) != f.eigenvalue_index(k))
            .map(|(j, k)| j * n + k),
    )
}

/// tr(P·m) for a diagonal projection: the real part of the kept diagonal.
pub fn projected_trace(p: &ProjectionR, m: &DensityMatrixC) -> Result<f64> {
    if p.dim() != m.dim() {
        return Err(Error::DimensionMismatch(p.dim(), m.dim()));
    }
    Ok((0..m.dim())
        .filter(|&i| p.keeps(i))
        .map(|i| m.entry(i, i).re)
        .sum())
}
