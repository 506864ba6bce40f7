//! Shared helpers for the integration suites: seeded random inputs and a
//! branch-and-bound refutation oracle over the 1/`GRID_STEPS` probability
//! grid.

// Each integration target compiles this module separately and uses a subset.
#![allow(dead_code)]

use num::complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use logent::entropy::{Dist, JointDist};
use logent::numeric::ratio;
use logent::partitions::{Partition, Universe};
use logent::quantum::{Observable, PureState};
use logent::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random partition of `u` as random point labels; may be the blob or the
/// discrete partition.
pub fn random_partition(r: &mut ChaCha8Rng, u: &Universe) -> Partition {
    let n = u.len();
    let k = r.gen_range(1..=n);
    let labels: Vec<usize> = (0..n).map(|_| r.gen_range(0..k)).collect();
    Partition::from_point_labels(u.clone(), &labels).expect("labels cover the universe")
}

/// Strictly positive exact distribution with single-digit weights.
pub fn random_exact_dist(r: &mut ChaCha8Rng, n: usize) -> Dist {
    let ws: Vec<i64> = (0..n).map(|_| r.gen_range(1..=9)).collect();
    let total: i64 = ws.iter().sum();
    Dist::new(ws.iter().map(|&w| ratio(w, total)).collect()).expect("weights are positive")
}

/// Exact two-axis joint table with single-digit cell weights (some zero).
pub fn random_joint2(r: &mut ChaCha8Rng, nx: usize, ny: usize) -> JointDist {
    loop {
        let ws: Vec<Vec<i64>> = (0..nx)
            .map(|_| (0..ny).map(|_| r.gen_range(0..=9)).collect())
            .collect();
        let total: i64 = ws.iter().flatten().sum();
        if total == 0 {
            continue;
        }
        let rows = ws
            .iter()
            .map(|row| row.iter().map(|&w| ratio(w, total)).collect())
            .collect();
        return JointDist::from_rows(rows).expect("table sums to one");
    }
}

/// Exact three-axis joint table with single-digit cell weights.
pub fn random_joint3(r: &mut ChaCha8Rng, dims: (usize, usize, usize)) -> JointDist {
    loop {
        let cells = dims.0 * dims.1 * dims.2;
        let ws: Vec<i64> = (0..cells).map(|_| r.gen_range(0..=9)).collect();
        let total: i64 = ws.iter().sum();
        if total == 0 {
            continue;
        }
        let mut it = ws.into_iter();
        let table: Vec<Vec<Vec<Scalar>>> = (0..dims.0)
            .map(|_| {
                (0..dims.1)
                    .map(|_| (0..dims.2).map(|_| ratio(it.next().unwrap(), total)).collect())
                    .collect()
            })
            .collect();
        return JointDist::from_fn3(dims, |x, y, z| table[x][y][z].clone())
            .expect("table sums to one");
    }
}

/// Random normalized state with complex amplitudes.
pub fn random_state(r: &mut ChaCha8Rng, n: usize) -> PureState {
    loop {
        let amps: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
            .collect();
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm2 > 1e-3 {
            let norm = norm2.sqrt();
            return PureState::new(amps.into_iter().map(|a| a / norm).collect())
                .expect("normalized above");
        }
    }
}

/// Random orthonormal basis, as row-major rows whose columns are the
/// eigenvectors. Two projection passes keep the residuals far below the
/// orthonormality tolerance of the observable constructor.
pub fn random_basis(r: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
            .collect();
        for _ in 0..2 {
            for c in &cols {
                let ip: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= ip * ci;
                }
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for a in &mut v {
                *a /= norm;
            }
            cols.push(v);
        }
    }
    (0..n).map(|row| (0..n).map(|c| cols[c][row]).collect()).collect()
}

/// Eigenvalue map hitting all of 0..k, in random positions.
pub fn random_map(r: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut map: Vec<usize> = (0..k).collect();
    map.extend((k..n).map(|_| r.gen_range(0..k)));
    map.shuffle(r);
    map
}

/// Random observable with a random eigenbasis and at least two eigenvalues.
pub fn random_observable(r: &mut ChaCha8Rng, n: usize) -> Observable {
    let k = r.gen_range(2..=n);
    let eigenvalues: Vec<f64> = (0..k).map(|i| 1.5 * i as f64 - 2.0).collect();
    Observable::new(eigenvalues, random_basis(r, n), random_map(r, n, k))
        .expect("basis is orthonormal and the map is onto")
}

pub const GRID_STEPS: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridObjective {
    /// `1 − Σp²`.
    Logical,
    /// `Σ p ln(1/p)` in nats.
    ShannonNats,
}

/// Outcome of the grid refutation: every grid point in the mean slab was
/// either enumerated or pruned by a bound certifying it cannot exceed the
/// threshold.
pub struct GridRefutation {
    pub nodes: u64,
    /// Best objective among enumerated in-slab grid points, if any reached a
    /// leaf without being pruned. `None` means pruning certified the whole
    /// slab without materializing a single point.
    pub best_seen: Option<f64>,
}

struct GridSearch {
    /// Value numerators on the common denominator.
    a: Vec<i64>,
    /// Scaled target `GRID_STEPS · mean`, same denominator.
    target: i64,
    /// Slab half-width in scaled units: `max(a) − min(a)`, i.e. a grid mean
    /// within `(x_max − x_min)/GRID_STEPS` of the target.
    slab: i64,
    /// Suffix minima/maxima of `a` for feasibility pruning.
    suffix_min: Vec<i64>,
    suffix_max: Vec<i64>,
    objective: GridObjective,
    threshold: f64,
    nodes: u64,
    node_budget: u64,
    best_seen: Option<f64>,
}

/// Certify that no probability vector on the `1/GRID_STEPS` grid whose mean
/// lies within `(x_max − x_min)/GRID_STEPS` of `mean` exceeds `threshold` on
/// the objective. Values and the mean are rational `(num, den)` pairs so the
/// slab test is exact integer arithmetic. Errors carry a counterexample or
/// the exhausted node budget; both must fail the calling test.
pub fn refute_grid_better(
    values: &[(i64, i64)],
    mean: (i64, i64),
    objective: GridObjective,
    threshold: f64,
) -> Result<GridRefutation, String> {
    assert!(values.len() >= 2);
    let mut den_lcm: i64 = mean.1.abs().max(1);
    for &(_, d) in values {
        assert!(d > 0, "value denominators must be positive");
        den_lcm = lcm(den_lcm, d);
    }
    assert!(mean.1 > 0, "mean denominator must be positive");
    let a: Vec<i64> = values.iter().map(|&(n, d)| n * (den_lcm / d)).collect();
    let target = mean.0 * (den_lcm / mean.1) * GRID_STEPS as i64;
    let slab = a.iter().max().unwrap() - a.iter().min().unwrap();

    let n = a.len();
    let mut suffix_min = vec![0i64; n];
    let mut suffix_max = vec![0i64; n];
    for i in (0..n).rev() {
        let tail = if i + 1 < n {
            (suffix_min[i + 1], suffix_max[i + 1])
        } else {
            (i64::MAX, i64::MIN)
        };
        suffix_min[i] = a[i].min(tail.0);
        suffix_max[i] = a[i].max(tail.1);
    }

    let mut search = GridSearch {
        a,
        target,
        slab,
        suffix_min,
        suffix_max,
        objective,
        threshold,
        nodes: 0,
        node_budget: 20_000_000,
        best_seen: None,
    };
    let mut counts = vec![0u64; n];
    search.descend(0, GRID_STEPS, 0, 0.0, &mut counts)?;
    Ok(GridRefutation { nodes: search.nodes, best_seen: search.best_seen })
}

impl GridSearch {
    /// `partial` accumulates Σk² for the logical objective and
    /// Σ (k/S)·ln(S/k) for the Shannon objective.
    fn descend(
        &mut self,
        level: usize,
        remaining: u64,
        weighted: i64,
        partial: f64,
        counts: &mut Vec<u64>,
    ) -> Result<(), String> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(format!("grid oracle exceeded {} nodes", self.node_budget));
        }
        let n = self.a.len();
        if level == n {
            if (weighted - self.target).abs() > self.slab {
                return Ok(());
            }
            let value = match self.objective {
                GridObjective::Logical => {
                    1.0 - partial / (GRID_STEPS * GRID_STEPS) as f64
                }
                GridObjective::ShannonNats => partial,
            };
            if value > self.best_seen.unwrap_or(f64::NEG_INFINITY) {
                self.best_seen = Some(value);
            }
            if value > self.threshold {
                return Err(format!(
                    "grid point {counts:?} reaches {value} > threshold {}",
                    self.threshold
                ));
            }
            return Ok(());
        }
        let slots_left = n - level;
        let r = remaining as i64;
        for k in 0..=remaining {
            let w = weighted + k as i64 * self.a[level];
            let rest = r - k as i64;
            // Feasibility: the remaining mass must be able to land in the slab.
            if level + 1 < n {
                let lo = w + rest * self.suffix_min[level + 1];
                let hi = w + rest * self.suffix_max[level + 1];
                if hi < self.target - self.slab || lo > self.target + self.slab {
                    continue;
                }
            } else if rest != 0 {
                continue;
            }
            let next_partial = partial + self.level_term(k);
            if self.upper_bound(next_partial, remaining - k, slots_left - 1) <= self.threshold {
                continue;
            }
            counts[level] = k;
            self.descend(level + 1, remaining - k, w, next_partial, counts)?;
        }
        counts[level] = 0;
        Ok(())
    }

    fn level_term(&self, k: u64) -> f64 {
        match self.objective {
            GridObjective::Logical => (k * k) as f64,
            GridObjective::ShannonNats => {
                if k == 0 {
                    0.0
                } else {
                    let p = k as f64 / GRID_STEPS as f64;
                    p * (1.0 / p).ln()
                }
            }
        }
    }

    /// Sound over-estimate of the best completion: spread the remaining mass
    /// as evenly as possible (minimizing Σk² / maximizing Σ p ln(1/p)).
    fn upper_bound(&self, partial: f64, remaining: u64, slots: usize) -> f64 {
        match self.objective {
            GridObjective::Logical => {
                let min_rest = if slots == 0 {
                    if remaining == 0 {
                        0
                    } else {
                        // Dead branch; make the bound prune it.
                        return f64::NEG_INFINITY;
                    }
                } else {
                    let q = remaining / slots as u64;
                    let extra = remaining % slots as u64;
                    (slots as u64 - extra) * q * q + extra * (q + 1) * (q + 1)
                };
                1.0 - (partial + min_rest as f64) / (GRID_STEPS * GRID_STEPS) as f64
            }
            GridObjective::ShannonNats => {
                if remaining == 0 {
                    partial
                } else if slots == 0 {
                    f64::NEG_INFINITY
                } else {
                    let q = remaining as f64 / GRID_STEPS as f64;
                    partial + q * (slots as f64 / q).ln()
                }
            }
        }
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    use num::Integer;
    a.lcm(&b)
}

/// Round a real probability vector to the grid by largest remainder, for a
/// non-vacuity witness that the slab contains at least one grid point.
pub fn round_to_grid(p: &[f64]) -> Vec<u64> {
    let mut floors: Vec<u64> = p.iter().map(|&x| (x * GRID_STEPS as f64).floor() as u64).collect();
    let mut short = GRID_STEPS - floors.iter().sum::<u64>();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&i, &j| {
        let ri = p[i] * GRID_STEPS as f64 - floors[i] as f64;
        let rj = p[j] * GRID_STEPS as f64 - floors[j] as f64;
        rj.partial_cmp(&ri).expect("finite remainders")
    });
    for &i in &order {
        if short == 0 {
            break;
        }
        floors[i] += 1;
        short -= 1;
    }
    floors
}

/// Objective value of a grid point.
pub fn grid_objective(counts: &[u64], objective: GridObjective) -> f64 {
    match objective {
        GridObjective::Logical => {
            let sum_sq: u64 = counts.iter().map(|&k| k * k).sum();
            1.0 - sum_sq as f64 / (GRID_STEPS * GRID_STEPS) as f64
        }
        GridObjective::ShannonNats => counts
            .iter()
            .filter(|&&k| k > 0)
            .map(|&k| {
                let p = k as f64 / GRID_STEPS as f64;
                p * (1.0 / p).ln()
            })
            .sum(),
    }
}

/// Mean of a grid point as an exact rational check: `Σ kᵢ·xᵢ / GRID_STEPS`
/// within the slab `(x_max − x_min)/GRID_STEPS` of the target.
pub fn grid_in_slab(counts: &[u64], values: &[(i64, i64)], mean: (i64, i64)) -> bool {
    let mut den_lcm: i64 = mean.1;
    for &(_, d) in values {
        den_lcm = lcm(den_lcm, d);
    }
    let a: Vec<i64> = values.iter().map(|&(n, d)| n * (den_lcm / d)).collect();
    let target = mean.0 * (den_lcm / mean.1) * GRID_STEPS as i64;
    let slab = a.iter().max().unwrap() - a.iter().min().unwrap();
    let w: i64 = counts.iter().zip(&a).map(|(&k, &ai)| k as i64 * ai).sum();
    (w - target).abs() <= slab
}
