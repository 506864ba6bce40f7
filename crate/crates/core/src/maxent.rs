//! Maximum-entropy distributions under a mean constraint, for both the
//! Shannon and the logical objective, plus the exact finite Boltzmann
//! multinomial problem the Shannon form approximates.
//!
//! Given distinct values `x_i` and a target mean `m`, the Shannon maximizer
//! is the Gibbs distribution `p_i ∝ w^{x_i}` with `w` the root of a monotone
//! mean equation; the logical maximizer is an affine function of the values,
//! clipped to the simplex by an exact active-set program. The logical
//! solution is the Euclidean projection of the uniform distribution onto the
//! constraint set, so it stays rational for rational inputs.

use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::entropy::{kl_divergence, Dist};
use crate::numeric::{LogBase, Scalar};
use crate::{Error, Result};

/// Find the distribution over `values` with mean `target_mean` maximizing an
/// entropy. Values must be distinct; the mean must lie in their closed range
/// (solvers additionally reject the two endpoints, where the only feasible
/// point is a degenerate point mass).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeanConstraintJson")]
pub struct MeanConstraintProblem {
    values: Vec<Scalar>,
    target_mean: Scalar,
}

#[derive(Deserialize)]
struct MeanConstraintJson {
    values: Vec<Scalar>,
    target_mean: Scalar,
}

impl TryFrom<MeanConstraintJson> for MeanConstraintProblem {
    type Error = Error;
    fn try_from(raw: MeanConstraintJson) -> Result<Self> {
        MeanConstraintProblem::new(raw.values, raw.target_mean)
    }
}

impl MeanConstraintProblem {
    pub fn new(values: Vec<Scalar>, target_mean: Scalar) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain(format!(
                "need at least 2 values, got {}",
                values.len()
            )));
        }
        for i in 0..values.len() {
            for j in 0..i {
                if values[i] == values[j] {
                    return Err(Error::Domain(format!(
                        "values must be distinct; positions {j} and {i} agree"
                    )));
                }
            }
        }
        let (min, max) = min_max(&values);
        // A boundary mean forces a point mass, which the Shannon Lagrangian
        // cannot represent; both extremes are rejected.
        if target_mean <= min || target_mean >= max {
            return Err(Error::InfeasibleMean {
                mean: target_mean.to_f64(),
                min: min.to_f64(),
                max: max.to_f64(),
            });
        }
        Ok(MeanConstraintProblem { values, target_mean })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn target_mean(&self) -> &Scalar {
        &self.target_mean
    }

    /// Mean of the values under the uniform distribution.
    pub fn uniform_mean(&self) -> Scalar {
        let n = Scalar::from_int(self.values.len() as i64);
        self.values.iter().cloned().sum::<Scalar>() / n
    }

    /// Variance of the values under the uniform distribution.
    pub fn uniform_variance(&self) -> Scalar {
        let n = Scalar::from_int(self.values.len() as i64);
        let second = self.values.iter().map(Scalar::squared).sum::<Scalar>() / n;
        second - self.uniform_mean().squared()
    }

    fn reject_extremes(&self) -> Result<()> {
        let (min, max) = min_max(&self.values);
        if self.target_mean == min || self.target_mean == max {
            return Err(Error::InfeasibleMean {
                mean: self.target_mean.to_f64(),
                min: min.to_f64(),
                max: max.to_f64(),
            });
        }
        Ok(())
    }
}

fn min_max(values: &[Scalar]) -> (Scalar, Scalar) {
    let mut min = values[0].clone();
    let mut max = values[0].clone();
    for v in &values[1..] {
        if *v < min {
            min = v.clone();
        }
        if *v > max {
            max = v.clone();
        }
    }
    (min, max)
}

/// Lagrange multipliers of a solved mean-constraint problem.
///
/// Conventions: the Shannon solution satisfies `ln(1/p_i) = λ + τ·x_i` with
/// `τ = −ln w`; the logical solution satisfies `2·p_i = λ + τ·x_i` on its
/// support.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Multipliers {
    pub lambda: Scalar,
    pub tau: Scalar,
}

/// A solved mean-constraint problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxentSolution {
    pub probs: Dist,
    /// Maximized entropy: `Σ p ln(1/p)` in nats for the Shannon solver,
    /// `1 − Σp²` for the logical solver.
    pub objective: Scalar,
    pub multipliers: Multipliers,
    /// Indices whose probability is zero in the returned solution. Always
    /// empty for the Shannon solver.
    pub active_zero_set: Vec<usize>,
}

const MEAN_TOL: f64 = 1e-13;
const ACCEPT_TOL: f64 = 1e-10;
const ITERATION_CAP: usize = 10_000;

/// Gibbs mean, variance and probabilities at `t = ln w`, computed with the
/// exponent shift `exp(x_i t − max_j x_j t)` so large `t` cannot overflow.
fn gibbs(x: &[f64], t: f64) -> (f64, f64, Vec<f64>) {
    let emax = x.iter().map(|xi| xi * t).fold(f64::NEG_INFINITY, f64::max);
    let q: Vec<f64> = x.iter().map(|xi| (xi * t - emax).exp()).collect();
    let z: f64 = q.iter().sum();
    let p: Vec<f64> = q.iter().map(|qi| qi / z).collect();
    let mean: f64 = x.iter().zip(&p).map(|(xi, pi)| xi * pi).sum();
    let second: f64 = x.iter().zip(&p).map(|(xi, pi)| xi * xi * pi).sum();
    (mean, second - mean * mean, p)
}

/// Maximize Shannon entropy subject to Σp = 1 and Σp·x = m.
///
/// The solution is the Gibbs distribution `p_i = w^{x_i}/Σ_j w^{x_j}`. The
/// mean `g(ln w)` is strictly increasing, so the root is bracketed by
/// geometric growth from `w = 1` and polished by bisection-safeguarded Newton
/// steps until `|g − m| ≤ 1e-13` (iteration cap 10 000).
pub fn solve_max_shannon(prob: &MeanConstraintProblem) -> Result<MaxentSolution> {
    prob.reject_extremes()?;
    let x: Vec<f64> = prob.values.iter().map(Scalar::to_f64).collect();
    let m = prob.target_mean.to_f64();

    let mut iters = 0usize;
    let (g0, _, _) = gibbs(&x, 0.0);
    let (mut lo, mut hi);
    if (g0 - m).abs() <= MEAN_TOL {
        return Ok(build_shannon(&x, m, 0.0));
    } else if g0 < m {
        lo = 0.0;
        hi = 1.0;
        while gibbs(&x, hi).0 < m {
            lo = hi;
            hi *= 2.0;
            iters += 1;
            if iters > ITERATION_CAP || !hi.is_finite() {
                return Err(Error::NoConvergence(iters));
            }
        }
    } else {
        hi = 0.0;
        lo = -1.0;
        while gibbs(&x, lo).0 > m {
            hi = lo;
            lo *= 2.0;
            iters += 1;
            if iters > ITERATION_CAP || !lo.is_finite() {
                return Err(Error::NoConvergence(iters));
            }
        }
    }

    let mut t = 0.5 * (lo + hi);
    loop {
        iters += 1;
        let (g, var, _) = gibbs(&x, t);
        if (g - m).abs() <= MEAN_TOL {
            break;
        }
        if iters > ITERATION_CAP {
            if (g - m).abs() <= ACCEPT_TOL {
                break;
            }
            return Err(Error::NoConvergence(iters));
        }
        if g < m {
            lo = t;
        } else {
            hi = t;
        }
        let mut next = t + (m - g) / var;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if next == t {
            // The bracket has collapsed to adjacent floats.
            if (g - m).abs() <= ACCEPT_TOL {
                break;
            }
            return Err(Error::NoConvergence(iters));
        }
        t = next;
    }
    Ok(build_shannon(&x, m, t))
}

fn build_shannon(x: &[f64], _m: f64, t: f64) -> MaxentSolution {
    let (_, _, p) = gibbs(x, t);
    let tau = -t;
    // λ = ln Σ e^{t x_j}, via the same shift as `gibbs`.
    let emax = x.iter().map(|xi| xi * t).fold(f64::NEG_INFINITY, f64::max);
    let lambda = emax + x.iter().map(|xi| (xi * t - emax).exp()).sum::<f64>().ln();
    let h_e: f64 = p.iter().filter(|pi| **pi > 0.0).map(|pi| -pi * pi.ln()).sum();
    MaxentSolution {
        probs: Dist::from_f64s(&p).unwrap(),
        objective: Scalar::Float(h_e),
        multipliers: Multipliers {
            lambda: Scalar::Float(lambda),
            tau: Scalar::Float(tau),
        },
        active_zero_set: Vec::new(),
    }
}

/// Maximize logical entropy 1 − Σp² subject to Σp = 1, Σp·x = m, p ≥ 0.
///
/// On the current support S the equality-constrained maximizer is the affine
/// closed form `p_i = 1/|S| + (m − μ_S)(x_i − μ_S)/(|S|·Var_S)`. Negative
/// coordinates are pinned to zero and the form is re-solved; once
/// non-negative, dual feasibility of every pinned coordinate
/// (`λ + τ·x_i ≤ 0`) is checked and the worst violator is released. The
/// objective is strictly concave, so this terminates. All arithmetic stays in
/// `Scalar`, hence exact for rational inputs.
pub fn solve_max_logical(prob: &MeanConstraintProblem) -> Result<MaxentSolution> {
    prob.reject_extremes()?;
    let n = prob.len();
    let xs = &prob.values;
    let m = &prob.target_mean;
    let mut in_support = vec![true; n];
    let two = Scalar::from_int(2);

    for _ in 0..(4 * n + 8) {
        let support: Vec<usize> = (0..n).filter(|&i| in_support[i]).collect();
        if support.len() < 2 {
            return Err(Error::NoConvergence(support.len()));
        }
        let k = Scalar::from_int(support.len() as i64);
        let mu = support.iter().map(|&i| xs[i].clone()).sum::<Scalar>() / k.clone();
        let second = support.iter().map(|&i| xs[i].squared()).sum::<Scalar>() / k.clone();
        let var = second - mu.squared();
        let tau = two.clone() * (m.clone() - mu.clone()) / (k.clone() * var);
        let lambda = two.clone() / k - tau.clone() * mu;

        let p_of = |i: usize| (lambda.clone() + tau.clone() * xs[i].clone()) / two.clone();
        let negatives: Vec<usize> = support
            .iter()
            .copied()
            .filter(|&i| p_of(i).is_negative())
            .collect();
        if !negatives.is_empty() {
            for i in negatives {
                in_support[i] = false;
            }
            continue;
        }

        // KKT dual feasibility: a pinned coordinate may stay pinned only if
        // λ + τ·x_i ≤ 0; otherwise releasing it improves the objective.
        let mut worst: Option<(usize, Scalar)> = None;
        for i in 0..n {
            if in_support[i] {
                continue;
            }
            let v = lambda.clone() + tau.clone() * xs[i].clone();
            let violated = if v.is_exact() {
                v > Scalar::zero()
            } else {
                v.to_f64() > 1e-12
            };
            if violated && worst.as_ref().is_none_or(|(_, w)| v > *w) {
                worst = Some((i, v));
            }
        }
        if let Some((i, _)) = worst {
            in_support[i] = true;
            continue;
        }

        let mut probs = vec![Scalar::zero(); n];
        for &i in &support {
            probs[i] = p_of(i);
        }
        let active_zero_set: Vec<usize> =
            (0..n).filter(|&i| probs[i].is_zero()).collect();
        let dist = Dist::new(probs)?;
        let objective = dist.logical_entropy();
        return Ok(MaxentSolution {
            probs: dist,
            objective,
            multipliers: Multipliers { lambda, tau },
            active_zero_set,
        });
    }
    Err(Error::NoConvergence(4 * n + 8))
}

/// The closed interval of target means for which the unclipped logical
/// closed form is already a probability vector, i.e. no pinning is needed:
/// `(μ − Var/(x_max − μ), μ + Var/(μ − x_min))`.
pub fn interior_bounds(prob: &MeanConstraintProblem) -> (Scalar, Scalar) {
    let mu = prob.uniform_mean();
    let var = prob.uniform_variance();
    let (min, max) = min_max(&prob.values);
    let lo = mu.clone() - var.clone() / (max - mu.clone());
    let hi = mu.clone() + var / (mu - min);
    (lo, hi)
}

/// Spread metrics of two solutions over the same outcome count.
///
/// `var_*` is the variance of the probability values around their mean 1/n,
/// `(1/n)[(1 − 1/n) − h(p)]`; `dist_uniform_*` is the squared Euclidean
/// distance to the uniform distribution, `(1 − 1/n) − h(p)`;
/// `kl_from_uniform_*` is D(p‖uniform) in nats.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionComparison {
    pub var_a: Scalar,
    pub var_b: Scalar,
    pub dist_uniform_a: Scalar,
    pub dist_uniform_b: Scalar,
    pub kl_from_uniform_a: f64,
    pub kl_from_uniform_b: f64,
}

pub fn compare_solutions(a: &MaxentSolution, b: &MaxentSolution) -> Result<SolutionComparison> {
    let n = a.probs.len();
    if n != b.probs.len() {
        return Err(Error::LengthMismatch(n, b.probs.len()));
    }
    let uniform = Dist::uniform(n);
    let n_scalar = Scalar::from_int(n as i64);
    let complement = Scalar::one() - Scalar::one() / n_scalar.clone();
    let spread = |p: &Dist| {
        let d2 = complement.clone() - p.logical_entropy();
        (d2.clone() / n_scalar.clone(), d2)
    };
    let (var_a, dist_a) = spread(&a.probs);
    let (var_b, dist_b) = spread(&b.probs);
    Ok(SolutionComparison {
        var_a,
        var_b,
        dist_uniform_a: dist_a,
        dist_uniform_b: dist_b,
        kl_from_uniform_a: kl_divergence(&a.probs, &uniform, LogBase::E)?,
        kl_from_uniform_b: kl_divergence(&b.probs, &uniform, LogBase::E)?,
    })
}

/// Distribute `n_particles` over energy levels so the total energy is met.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BoltzmannJson")]
pub struct BoltzmannProblem {
    n_particles: u64,
    energy_levels: Vec<Scalar>,
    total_energy: Scalar,
}

#[derive(Deserialize)]
struct BoltzmannJson {
    n_particles: u64,
    energy_levels: Vec<Scalar>,
    total_energy: Scalar,
}

impl TryFrom<BoltzmannJson> for BoltzmannProblem {
    type Error = Error;
    fn try_from(raw: BoltzmannJson) -> Result<Self> {
        BoltzmannProblem::new(raw.n_particles, raw.energy_levels, raw.total_energy)
    }
}

impl BoltzmannProblem {
    pub fn new(n_particles: u64, energy_levels: Vec<Scalar>, total_energy: Scalar) -> Result<Self> {
        if n_particles == 0 {
            return Err(Error::Domain("need at least one particle".into()));
        }
        if energy_levels.is_empty() {
            return Err(Error::Domain("need at least one energy level".into()));
        }
        Ok(BoltzmannProblem { n_particles, energy_levels, total_energy })
    }

    pub fn n_particles(&self) -> u64 {
        self.n_particles
    }

    pub fn energy_levels(&self) -> &[Scalar] {
        &self.energy_levels
    }

    pub fn total_energy(&self) -> &Scalar {
        &self.total_energy
    }

    /// Clear denominators so occupancy search runs in integer arithmetic.
    fn integer_levels(&self) -> Result<(Vec<i128>, i128)> {
        use num::{BigInt, BigRational, Integer, One, ToPrimitive};
        let mut rats: Vec<BigRational> = Vec::with_capacity(self.energy_levels.len() + 1);
        for s in self.energy_levels.iter().chain(std::iter::once(&self.total_energy)) {
            let r = match s {
                Scalar::Exact(r) => r.clone(),
                Scalar::Float(f) => BigRational::from_float(*f).ok_or_else(|| {
                    Error::Domain(format!("energy value {f} is not finite"))
                })?,
            };
            rats.push(r);
        }
        let mut lcm: BigInt = BigInt::one();
        for r in &rats {
            lcm = lcm.lcm(r.denom());
        }
        let to_int = |r: &BigRational| -> Result<i128> {
            (r * BigRational::from_integer(lcm.clone()))
                .to_integer()
                .to_i128()
                .ok_or_else(|| Error::Domain("energy values too large to enumerate exactly".into()))
        };
        let levels = rats[..rats.len() - 1].iter().map(to_int).collect::<Result<Vec<_>>>()?;
        let total = to_int(&rats[rats.len() - 1])?;
        Ok((levels, total))
    }
}

/// One feasible occupancy vector and its exact multinomial coefficient.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibleOccupancy {
    pub occupancies: Vec<u64>,
    #[serde(serialize_with = "ser_biguint")]
    pub multinomial: BigUint,
}

/// Result of the exact occupancy search: the multinomial maximizer, its
/// normalized log `S = (1/n)·ln(n!/Πn_i!)`, and the complete feasible list in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoltzmannSolution {
    pub occupancies: Vec<u64>,
    #[serde(serialize_with = "ser_biguint")]
    pub multinomial: BigUint,
    pub normalized_log: f64,
    pub feasible: Vec<FeasibleOccupancy>,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

const NODE_BOUND: u64 = 10_000_000;
const FEASIBLE_BOUND: u64 = 100_000;

/// The integer interval of counts `c` at one level that keeps the rest of
/// the search feasible: 0 ≤ c ≤ r with
/// (r−c)·smin ≤ E − L·c ≤ (r−c)·smax, solved as two linear inequalities.
fn count_range(r: u64, energy: i128, level: i128, smin: i128, smax: i128) -> Option<(u64, u64)> {
    use num::Integer;
    let (mut lo, mut hi) = (0i128, r as i128);
    // c·(L − smin) ≤ E − r·smin
    let a = level - smin;
    let b = energy - r as i128 * smin;
    match a.cmp(&0) {
        std::cmp::Ordering::Greater => hi = hi.min(Integer::div_floor(&b, &a)),
        std::cmp::Ordering::Equal if b < 0 => return None,
        std::cmp::Ordering::Less => lo = lo.max(Integer::div_ceil(&b, &a)),
        _ => {}
    }
    // c·(L − smax) ≥ E − r·smax
    let a = level - smax;
    let b = energy - r as i128 * smax;
    match a.cmp(&0) {
        std::cmp::Ordering::Greater => lo = lo.max(Integer::div_ceil(&b, &a)),
        std::cmp::Ordering::Equal if b > 0 => return None,
        std::cmp::Ordering::Less => hi = hi.min(Integer::div_floor(&b, &a)),
        _ => {}
    }
    if lo > hi {
        None
    } else {
        Some((lo as u64, hi as u64))
    }
}

/// Enumerate every non-negative occupancy vector with Σn_i = n and
/// Σε_i·n_i = E, and return the one with the largest multinomial coefficient
/// (ties broken by lexicographically smallest). The search is bounded: more
/// than 10⁷ explored prefixes, or more than 10⁵ feasible vectors, aborts with
/// `EnumerationBound`. Multinomials are computed only after the enumeration
/// itself has stayed within both bounds.
pub fn boltzmann_exact(prob: &BoltzmannProblem) -> Result<BoltzmannSolution> {
    let (levels, total) = prob.integer_levels()?;
    let k = levels.len();
    let n = prob.n_particles;

    // suffix_min[i], suffix_max[i]: extreme level values among levels[i..].
    let mut suffix_min = levels.clone();
    let mut suffix_max = levels.clone();
    for i in (0..k - 1).rev() {
        suffix_min[i] = suffix_min[i].min(suffix_min[i + 1]);
        suffix_max[i] = suffix_max[i].max(suffix_max[i + 1]);
    }

    struct Search<'a> {
        levels: &'a [i128],
        suffix_min: &'a [i128],
        suffix_max: &'a [i128],
        nodes: u64,
        current: Vec<u64>,
        feasible: Vec<Vec<u64>>,
    }

    impl Search<'_> {
        fn run(&mut self, level: usize, remaining: u64, energy: i128) -> Result<()> {
            self.nodes += 1;
            if self.nodes > NODE_BOUND {
                return Err(Error::EnumerationBound(NODE_BOUND));
            }
            if level == self.levels.len() - 1 {
                if self.levels[level] * remaining as i128 == energy {
                    if self.feasible.len() as u64 >= FEASIBLE_BOUND {
                        return Err(Error::EnumerationBound(FEASIBLE_BOUND));
                    }
                    let mut occ = self.current.clone();
                    occ.push(remaining);
                    self.feasible.push(occ);
                }
                return Ok(());
            }
            let range = count_range(
                remaining,
                energy,
                self.levels[level],
                self.suffix_min[level + 1],
                self.suffix_max[level + 1],
            );
            if let Some((lo, hi)) = range {
                for c in lo..=hi {
                    self.current.push(c);
                    self.run(level + 1, remaining - c, energy - self.levels[level] * c as i128)?;
                    self.current.pop();
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        levels: &levels,
        suffix_min: &suffix_min,
        suffix_max: &suffix_max,
        nodes: 0,
        current: Vec::with_capacity(k),
        feasible: Vec::new(),
    };
    if k == 1 {
        if levels[0] * n as i128 == total {
            search.feasible.push(vec![n]);
        }
    } else {
        search.run(0, n, total)?;
    }
    if search.feasible.is_empty() {
        return Err(Error::Infeasible);
    }

    let feasible: Vec<FeasibleOccupancy> = search
        .feasible
        .into_iter()
        .map(|occupancies| {
            let multinomial = multinomial(&occupancies);
            FeasibleOccupancy { occupancies, multinomial }
        })
        .collect();
    let best_value = feasible.iter().map(|f| &f.multinomial).max().unwrap().clone();
    // First max in enumeration order = lexicographically smallest tie.
    let best = feasible
        .iter()
        .find(|f| f.multinomial == best_value)
        .unwrap()
        .clone();
    let normalized_log = ln_multinomial(n, &best.occupancies)? / n as f64;
    Ok(BoltzmannSolution {
        occupancies: best.occupancies,
        multinomial: best.multinomial,
        normalized_log,
        feasible,
    })
}

/// n!/(Πn_i!) as a product of binomial coefficients of the running sums.
fn multinomial(occupancies: &[u64]) -> BigUint {
    let mut result = BigUint::from(1u32);
    let mut cumulative = 0u64;
    for &c in occupancies {
        cumulative += c;
        result *= binomial(cumulative, c);
    }
    result
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut result = BigUint::from(1u32);
    for i in 0..k {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// ln(k!) as Σ ln j, exact enough for normalized comparisons.
pub fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|j| (j as f64).ln()).sum()
}

/// ln(n!/Πn_i!) for integer occupancies summing to n.
pub fn ln_multinomial(n: u64, occupancies: &[u64]) -> Result<f64> {
    let sum: u64 = occupancies.iter().sum();
    if sum != n {
        return Err(Error::Domain(format!("occupancies sum to {sum}, expected {n}")));
    }
    Ok(ln_factorial(n) - occupancies.iter().map(|&c| ln_factorial(c)).sum::<f64>())
}

/// The continuous relaxation of [`boltzmann_exact`]: maximize natural-log
/// Shannon entropy of the level distribution under mean energy E/n.
#[derive(Debug, Clone, Serialize)]
pub struct BoltzmannApprox {
    pub occupancies_real: Vec<f64>,
    pub h_e: f64,
}

pub fn boltzmann_shannon_approx(prob: &BoltzmannProblem) -> Result<BoltzmannApprox> {
    let k = prob.energy_levels.len();
    let n = prob.n_particles;

    // Duplicate energy levels are merged for the solver (its values must be
    // distinct) and the merged probability is split evenly afterwards, which
    // is where the symmetric maximum lies.
    let mut distinct: Vec<Scalar> = Vec::new();
    let mut slot = vec![0usize; k];
    for (i, level) in prob.energy_levels.iter().enumerate() {
        match distinct.iter().position(|d| d == level) {
            Some(pos) => slot[i] = pos,
            None => {
                slot[i] = distinct.len();
                distinct.push(level.clone());
            }
        }
    }
    let mean = prob.total_energy.clone() / Scalar::from_int(n as i64);

    let merged: Vec<f64> = if distinct.len() == 1 {
        if mean != distinct[0] {
            return Err(Error::InfeasibleMean {
                mean: mean.to_f64(),
                min: distinct[0].to_f64(),
                max: distinct[0].to_f64(),
            });
        }
        vec![1.0]
    } else {
        let merged_prob = MeanConstraintProblem::new(distinct.clone(), mean)?;
        solve_max_shannon(&merged_prob)?.probs.to_f64_vec()
    };

    let mut counts = vec![0usize; distinct.len()];
    for &s in &slot {
        counts[s] += 1;
    }
    let split: Vec<f64> = slot.iter().map(|&s| merged[s] / counts[s] as f64).collect();
    let h_e: f64 = split.iter().filter(|p| **p > 0.0).map(|p| -p * p.ln()).sum();
    Ok(BoltzmannApprox {
        occupancies_real: split.iter().map(|p| p * n as f64).collect(),
        h_e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn dice(mean: Scalar) -> MeanConstraintProblem {
        let values = (1..=6).map(Scalar::from_int).collect();
        MeanConstraintProblem::new(values, mean).unwrap()
    }

    fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
        assert!(
            (got - want).abs() <= tol,
            "{what}: got {got}, want {want} within {tol}"
        );
    }

    #[test]
    fn shannon_dice_mean_four_and_a_half() {
        let sol = solve_max_shannon(&dice(ratio(9, 2))).unwrap();
        let p = sol.probs.to_f64_vec();
        // Root and probabilities pinned against an independent
        // high-precision solve of Σ(x − 9/2)wˣ = 0.
        let expected = [
            0.054353167826,
            0.078771545633,
            0.114159977229,
            0.165446803110,
            0.239774440426,
            0.347494065774,
        ];
        for (pi, ei) in p.iter().zip(expected) {
            assert_close(*pi, ei, 1e-9, "probability");
        }
        let tau = sol.multipliers.tau.to_f64();
        let w = (-tau).exp();
        assert_close(w, 1.44925399536, 1e-9, "w");
        let mean: f64 = p.iter().zip(1..).map(|(pi, x)| pi * x as f64).sum();
        assert_close(mean, 4.5, 1e-10, "mean constraint");
        assert!(sol.active_zero_set.is_empty());
    }

    #[test]
    fn shannon_dice_mean_five() {
        let sol = solve_max_shannon(&dice(Scalar::from_int(5))).unwrap();
        let p = sol.probs.to_f64_vec();
        let expected = [0.020532, 0.038535, 0.072323, 0.135737, 0.254752, 0.478120];
        for (pi, ei) in p.iter().zip(expected) {
            assert_close(*pi, ei, 1e-6, "probability");
        }
        assert_close(sol.objective.to_f64(), 1.367465, 1e-6, "H_e");
    }

    #[test]
    fn shannon_mean_of_values_gives_uniform() {
        let sol = solve_max_shannon(&dice(ratio(7, 2))).unwrap();
        for pi in sol.probs.to_f64_vec() {
            assert_close(pi, 1.0 / 6.0, 1e-15, "uniform probability");
        }
        assert_eq!(sol.multipliers.tau.to_f64(), 0.0);
        assert_close(sol.objective.to_f64(), 6f64.ln(), 1e-12, "H_e");
    }

    #[test]
    fn shannon_multiplier_identities() {
        for mean in [ratio(9, 2), Scalar::from_int(5), ratio(5, 2)] {
            let sol = solve_max_shannon(&dice(mean.clone())).unwrap();
            let lambda = sol.multipliers.lambda.to_f64();
            let tau = sol.multipliers.tau.to_f64();
            for (pi, x) in sol.probs.to_f64_vec().iter().zip(1..) {
                assert_close((1.0 / pi).ln(), lambda + tau * x as f64, 1e-9, "log-linear form");
            }
            assert_close(
                sol.objective.to_f64(),
                lambda + tau * mean.to_f64(),
                1e-9,
                "H_e = λ + τm",
            );
        }
    }

    #[test]
    fn extreme_means_are_rejected() {
        // Boundary means force a point mass and are refused at construction,
        // along with anything outside the value range.
        for mean in [1, 6, 0, 7] {
            let values = (1..=6).map(Scalar::from_int).collect::<Vec<_>>();
            assert!(matches!(
                MeanConstraintProblem::new(values, Scalar::from_int(mean)),
                Err(Error::InfeasibleMean { .. })
            ));
        }
    }

    #[test]
    fn duplicate_or_short_value_lists_are_rejected() {
        assert!(matches!(
            MeanConstraintProblem::new(vec![Scalar::one()], Scalar::one()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            MeanConstraintProblem::new(
                vec![Scalar::one(), Scalar::from_int(2), Scalar::one()],
                ratio(3, 2)
            ),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn logical_dice_mean_four_and_a_half_is_exact() {
        let sol = solve_max_logical(&dice(ratio(9, 2))).unwrap();
        let expected: Vec<Scalar> = [5, 17, 29, 41, 53, 65]
            .iter()
            .map(|&k| ratio(k, 210))
            .collect();
        assert_eq!(sol.probs.probs(), &expected[..]);
        assert!(sol.active_zero_set.is_empty());
        assert_eq!(sol.objective, ratio(163, 210));
        assert_eq!(sol.multipliers.tau, ratio(4, 35));
        assert_eq!(sol.multipliers.lambda, ratio(-1, 15));
    }

    #[test]
    fn logical_dice_mean_five_needs_pinning() {
        let sol = solve_max_logical(&dice(Scalar::from_int(5))).unwrap();
        let expected: Vec<Scalar> = [0, 0, 1, 2, 3, 4].iter().map(|&k| ratio(k, 10)).collect();
        assert_eq!(sol.probs.probs(), &expected[..]);
        assert_eq!(sol.active_zero_set, vec![0, 1]);
        // Multipliers of the final support {2,…,6}.
        assert_eq!(sol.multipliers.tau, ratio(1, 5));
        assert_eq!(sol.multipliers.lambda, ratio(-2, 5));
        let mean: Scalar = sol
            .probs
            .probs()
            .iter()
            .zip(1..)
            .map(|(p, x)| p.clone() * Scalar::from_int(x))
            .sum();
        assert_eq!(mean, Scalar::from_int(5));
    }

    #[test]
    fn logical_mean_of_values_gives_uniform() {
        let sol = solve_max_logical(&dice(ratio(7, 2))).unwrap();
        assert_eq!(sol.probs, Dist::uniform(6));
        assert!(sol.multipliers.tau.is_zero());
        assert_eq!(sol.multipliers.lambda, ratio(1, 3));
    }

    #[test]
    fn value_at_uniform_mean_keeps_probability_one_over_n() {
        let values = vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(3)];
        let prob = MeanConstraintProblem::new(values, ratio(5, 2)).unwrap();
        let sol = solve_max_logical(&prob).unwrap();
        assert_eq!(sol.probs.probs()[1], ratio(1, 3));
    }

    #[test]
    fn logical_support_multiplier_identity() {
        let two = Scalar::from_int(2);
        for mean in [ratio(9, 2), Scalar::from_int(5), ratio(13, 5)] {
            let sol = solve_max_logical(&dice(mean)).unwrap();
            for (i, p) in sol.probs.probs().iter().enumerate() {
                if sol.active_zero_set.contains(&i) {
                    continue;
                }
                let x = Scalar::from_int(i as i64 + 1);
                assert_eq!(
                    two.clone() * p.clone(),
                    sol.multipliers.lambda.clone() + sol.multipliers.tau.clone() * x
                );
            }
        }
    }

    #[test]
    fn interior_bounds_examples() {
        let (lo, hi) = interior_bounds(&dice(ratio(9, 2)));
        assert_eq!(lo, ratio(7, 3));
        assert_eq!(hi, ratio(14, 3));

        let two_point =
            MeanConstraintProblem::new(vec![Scalar::zero(), Scalar::one()], ratio(1, 2)).unwrap();
        let (lo, hi) = interior_bounds(&two_point);
        assert_eq!(lo, Scalar::zero());
        assert_eq!(hi, Scalar::one());

        let three = MeanConstraintProblem::new(
            vec![Scalar::zero(), Scalar::one(), Scalar::from_int(2)],
            Scalar::one(),
        )
        .unwrap();
        let (lo, hi) = interior_bounds(&three);
        assert_eq!(lo, ratio(1, 3));
        assert_eq!(hi, ratio(5, 3));
    }

    #[test]
    fn closed_form_is_tight_at_the_interior_bound() {
        // At m = 14/3 the dice closed form hits zero at x = 1 with no pinning.
        let sol = solve_max_logical(&dice(ratio(14, 3))).unwrap();
        assert!(sol.probs.probs()[0].is_zero());
        assert_eq!(sol.active_zero_set, vec![0]);
        // Just beyond it, pinning must kick in and stay feasible.
        let sol = solve_max_logical(&dice(ratio(19, 4))).unwrap();
        assert!(sol.probs.probs().iter().all(|p| !p.is_negative()));
        let mean: Scalar = sol
            .probs
            .probs()
            .iter()
            .zip(1..)
            .map(|(p, x)| p.clone() * Scalar::from_int(x))
            .sum();
        assert_eq!(mean, ratio(19, 4));
    }

    #[test]
    fn logical_variance_never_exceeds_shannon_variance() {
        for mean in [ratio(9, 2), Scalar::from_int(5), ratio(13, 5), ratio(7, 2)] {
            let logical = solve_max_logical(&dice(mean.clone())).unwrap();
            let shannon = solve_max_shannon(&dice(mean)).unwrap();
            let cmp = compare_solutions(&logical, &shannon).unwrap();
            assert!(cmp.var_a.to_f64() <= cmp.var_b.to_f64() + 1e-12);
            assert!(cmp.dist_uniform_a.to_f64() <= cmp.dist_uniform_b.to_f64() + 1e-12);
        }
    }

    #[test]
    fn comparing_identical_solutions_gives_equal_metrics() {
        let sol = solve_max_logical(&dice(ratio(9, 2))).unwrap();
        let cmp = compare_solutions(&sol, &sol.clone()).unwrap();
        assert_eq!(cmp.var_a, cmp.var_b);
        assert_eq!(cmp.kl_from_uniform_a, cmp.kl_from_uniform_b);
    }

    #[test]
    fn comparison_rejects_mismatched_lengths() {
        let a = solve_max_logical(&dice(ratio(9, 2))).unwrap();
        let three = MeanConstraintProblem::new(
            vec![Scalar::zero(), Scalar::one(), Scalar::from_int(2)],
            Scalar::one(),
        )
        .unwrap();
        let b = solve_max_logical(&three).unwrap();
        assert!(matches!(
            compare_solutions(&a, &b),
            Err(Error::LengthMismatch(..))
        ));
    }

    fn ten_particles() -> BoltzmannProblem {
        BoltzmannProblem::new(
            10,
            vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(3)],
            Scalar::from_int(22),
        )
        .unwrap()
    }

    #[test]
    fn boltzmann_ten_particle_example() {
        let sol = boltzmann_exact(&ten_particles()).unwrap();
        assert_eq!(sol.occupancies, vec![2, 4, 4]);
        assert_eq!(sol.multinomial, BigUint::from(3150u32));
        assert_close(sol.normalized_log, 3150f64.ln() / 10.0, 1e-12, "S");
        let table: Vec<(Vec<u64>, u32)> = sol
            .feasible
            .iter()
            .map(|f| (f.occupancies.clone(), f.multinomial.to_string().parse().unwrap()))
            .collect();
        assert_eq!(
            table,
            vec![
                (vec![0, 8, 2], 45),
                (vec![1, 6, 3], 840),
                (vec![2, 4, 4], 3150),
                (vec![3, 2, 5], 2520),
                (vec![4, 0, 6], 210),
            ]
        );
    }

    #[test]
    fn boltzmann_single_particle() {
        let prob = BoltzmannProblem::new(1, vec![Scalar::from_int(5)], Scalar::from_int(5)).unwrap();
        let sol = boltzmann_exact(&prob).unwrap();
        assert_eq!(sol.occupancies, vec![1]);
        assert_eq!(sol.multinomial, BigUint::from(1u32));
        assert_eq!(sol.normalized_log, 0.0);
    }

    #[test]
    fn boltzmann_infeasible_energy() {
        let prob = BoltzmannProblem::new(
            2,
            vec![Scalar::from_int(2), Scalar::from_int(4)],
            Scalar::from_int(5),
        )
        .unwrap();
        assert!(matches!(boltzmann_exact(&prob), Err(Error::Infeasible)));
    }

    #[test]
    fn boltzmann_rational_levels() {
        // Levels (1/2, 3/2), n=3, E=5/2: occupancies (a,b): a+b=3, a/2+3b/2=5/2
        // → b=1. Multinomial 3!/2! = 3.
        let prob = BoltzmannProblem::new(3, vec![ratio(1, 2), ratio(3, 2)], ratio(5, 2)).unwrap();
        let sol = boltzmann_exact(&prob).unwrap();
        assert_eq!(sol.occupancies, vec![2, 1]);
        assert_eq!(sol.multinomial, BigUint::from(3u32));
    }

    #[test]
    fn boltzmann_tie_breaks_lexicographically() {
        // Levels (0,1,1,2), n=2, E=2: the feasible vectors are (0,0,2,0):1,
        // (0,1,1,0):2, (0,2,0,0):1 and (1,0,0,1):2. The maximum 2 is tied;
        // the lexicographically smallest vector wins.
        let prob = BoltzmannProblem::new(
            2,
            vec![Scalar::zero(), Scalar::one(), Scalar::one(), Scalar::from_int(2)],
            Scalar::from_int(2),
        )
        .unwrap();
        let sol = boltzmann_exact(&prob).unwrap();
        assert_eq!(sol.multinomial, BigUint::from(2u32));
        assert_eq!(sol.occupancies, vec![0, 1, 1, 0]);
        assert_eq!(sol.feasible.len(), 4);
    }

    #[test]
    fn boltzmann_enumeration_bound_fires() {
        let levels: Vec<Scalar> = [1, 2, 3].map(Scalar::from_int).to_vec();
        let prob =
            BoltzmannProblem::new(30_000_000, levels, Scalar::from_int(60_000_000)).unwrap();
        assert!(matches!(boltzmann_exact(&prob), Err(Error::EnumerationBound(_))));
    }

    #[test]
    fn boltzmann_approx_ten_particle_example() {
        let approx = boltzmann_shannon_approx(&ten_particles()).unwrap();
        let expected = [2.383713, 3.232574, 4.383713];
        for (got, want) in approx.occupancies_real.iter().zip(expected) {
            assert_close(*got, want, 1e-4, "occupancy");
        }
        assert_close(approx.h_e, 1.068383, 1e-5, "H_e");
    }

    #[test]
    fn boltzmann_approx_uniform_when_mean_energy_is_central() {
        let prob = BoltzmannProblem::new(
            9,
            vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(3)],
            Scalar::from_int(18),
        )
        .unwrap();
        let approx = boltzmann_shannon_approx(&prob).unwrap();
        for occ in approx.occupancies_real {
            assert_close(occ, 3.0, 1e-10, "occupancy");
        }
        assert_close(approx.h_e, 3f64.ln(), 1e-12, "H_e");
    }

    #[test]
    fn boltzmann_approx_merges_duplicate_levels() {
        let prob = BoltzmannProblem::new(
            4,
            vec![Scalar::one(), Scalar::one(), Scalar::from_int(3)],
            Scalar::from_int(8),
        )
        .unwrap();
        let approx = boltzmann_shannon_approx(&prob).unwrap();
        let expected = [1.0, 1.0, 2.0];
        for (got, want) in approx.occupancies_real.iter().zip(expected) {
            assert_close(*got, want, 1e-9, "occupancy");
        }
        assert_close(approx.h_e, 1.5 * 2f64.ln(), 1e-10, "H_e");
    }

    #[test]
    fn boltzmann_approx_single_level() {
        let prob =
            BoltzmannProblem::new(5, vec![ratio(3, 2), ratio(3, 2)], ratio(15, 2)).unwrap();
        let approx = boltzmann_shannon_approx(&prob).unwrap();
        assert_eq!(approx.occupancies_real, vec![2.5, 2.5]);
        assert_close(approx.h_e, 2f64.ln(), 1e-12, "H_e");
        let bad = BoltzmannProblem::new(5, vec![ratio(3, 2)], Scalar::from_int(8)).unwrap();
        assert!(matches!(
            boltzmann_shannon_approx(&bad),
            Err(Error::InfeasibleMean { .. })
        ));
    }

    #[test]
    fn stirling_gap_shrinks_with_n() {
        // Fixed proportions (2,4,4)/10 scaled up: the normalized exact log
        // multinomial approaches H_e of the proportions as n grows.
        let h_e: f64 = [0.2f64, 0.4, 0.4].iter().map(|p| -p * p.ln()).sum();
        let mut gaps = Vec::new();
        for scale in [1u64, 10, 100] {
            let occ = [2 * scale, 4 * scale, 4 * scale];
            let n = 10 * scale;
            let s = ln_multinomial(n, &occ).unwrap() / n as f64;
            gaps.push((h_e - s).abs());
        }
        assert!(gaps[1] < gaps[0] && gaps[2] < gaps[1], "gaps: {gaps:?}");
        assert!(gaps[2] < 0.01);
    }

    #[test]
    fn problem_json_round_trip() {
        let prob = dice(ratio(9, 2));
        let text = serde_json::to_string(&prob).unwrap();
        let back: MeanConstraintProblem = serde_json::from_str(&text).unwrap();
        assert_eq!(back, prob);

        let bp = ten_particles();
        let text = serde_json::to_string(&bp).unwrap();
        let back: BoltzmannProblem = serde_json::from_str(&text).unwrap();
        assert_eq!(back, bp);

        let sol = solve_max_logical(&prob).unwrap();
        let json: serde_json::Value = serde_json::to_value(&sol).unwrap();
        assert_eq!(json["active_zero_set"], serde_json::json!([]));
        assert_eq!(json["objective"], serde_json::json!([163, 210]));
    }
}
