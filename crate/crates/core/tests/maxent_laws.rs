//! Cross-solver laws for the mean-constrained maximum-entropy problem, with
//! a grid refutation oracle for optimality.

mod common;

use common::{
    grid_in_slab, grid_objective, refute_grid_better, rng, round_to_grid, GridObjective,
    GRID_STEPS,
};
use logent::maxent::{
    boltzmann_shannon_approx, compare_solutions, interior_bounds, ln_multinomial,
    solve_max_logical, solve_max_shannon, BoltzmannProblem, MaxentSolution,
    MeanConstraintProblem,
};
use logent::numeric::ratio;
use logent::{Error, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Distinct quarter-integer values and an interior sixty-fourths mean, kept
/// as integer pairs so the grid oracle can stay exact.
struct RandomProblem {
    value_pairs: Vec<(i64, i64)>,
    mean_pair: (i64, i64),
    problem: MeanConstraintProblem,
}

fn random_problem(r: &mut ChaCha8Rng, max_n: usize) -> RandomProblem {
    let n = r.gen_range(2..=max_n);
    let mut quarters: Vec<i64> = Vec::new();
    while quarters.len() < n {
        let a = r.gen_range(-12..=12);
        if !quarters.contains(&a) {
            quarters.push(a);
        }
    }
    let min = *quarters.iter().min().unwrap();
    let max = *quarters.iter().max().unwrap();
    // m = min/4 + j·(max−min)/(4·16), strictly interior for j in 2..=14.
    let j = r.gen_range(2..=14);
    let mean_pair = (min * 16 + j * (max - min), 64);
    let value_pairs: Vec<(i64, i64)> = quarters.iter().map(|&a| (a, 4)).collect();
    let values: Vec<Scalar> = value_pairs.iter().map(|&(a, d)| ratio(a, d)).collect();
    let problem = MeanConstraintProblem::new(values, ratio(mean_pair.0, mean_pair.1))
        .expect("interior mean is feasible");
    RandomProblem { value_pairs, mean_pair, problem }
}

fn assert_constraints(p: &RandomProblem, sol: &MaxentSolution, tol: f64) {
    let total: f64 = sol.probs.probs().iter().map(Scalar::to_f64).sum();
    let mean: f64 = sol
        .probs
        .probs()
        .iter()
        .zip(p.problem.values())
        .map(|(pi, x)| pi.to_f64() * x.to_f64())
        .sum();
    assert!((total - 1.0).abs() <= tol, "Σp = {total}");
    let target = p.mean_pair.0 as f64 / p.mean_pair.1 as f64;
    assert!((mean - target).abs() <= tol, "Σp·x = {mean}, want {target}");
    assert!(sol.probs.probs().iter().all(|q| q.to_f64() >= -1e-15));
}

#[test]
fn probability_variance_of_the_quadratic_solution_never_exceeds_the_shannon_one() {
    let mut r = rng(31);
    for trial in 0..200 {
        let p = random_problem(&mut r, 6);
        let quad = solve_max_logical(&p.problem).expect("solvable");
        let shan = solve_max_shannon(&p.problem).expect("solvable");
        assert_constraints(&p, &quad, 1e-12);
        assert_constraints(&p, &shan, 1e-10);
        let cmp = compare_solutions(&quad, &shan).expect("same length");
        assert!(
            cmp.var_a.to_f64() <= cmp.var_b.to_f64() + 1e-12,
            "trial {trial}: Var {} > {}",
            cmp.var_a,
            cmp.var_b
        );
        // The same ordering as squared Euclidean distance from uniform, and
        // the reverse ordering for KL divergence from uniform.
        assert!(cmp.dist_uniform_a.to_f64() <= cmp.dist_uniform_b.to_f64() + 1e-12);
        assert!(cmp.kl_from_uniform_b <= cmp.kl_from_uniform_a + 1e-12);
    }
}

#[test]
fn exact_solver_satisfies_its_constraints_exactly() {
    let mut r = rng(32);
    for _ in 0..50 {
        let p = random_problem(&mut r, 6);
        let quad = solve_max_logical(&p.problem).expect("solvable");
        let total = quad
            .probs
            .probs()
            .iter()
            .fold(Scalar::zero(), |acc, q| acc + q.clone());
        assert_eq!(total, Scalar::one());
        let mean = quad
            .probs
            .probs()
            .iter()
            .zip(p.problem.values())
            .fold(Scalar::zero(), |acc, (q, x)| acc + q.clone() * x.clone());
        assert_eq!(mean, ratio(p.mean_pair.0, p.mean_pair.1));
        for &i in &quad.active_zero_set {
            assert!(quad.probs.get(i).is_zero());
        }
        // The reported objective is the entropy of the reported vector.
        assert_eq!(quad.objective, quad.probs.logical_entropy());
    }
}

fn refute_both_objectives(p: &RandomProblem) {
    let delta = {
        let xs: Vec<f64> = p.value_pairs.iter().map(|&(a, d)| a as f64 / d as f64).collect();
        let min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (max - min) / GRID_STEPS as f64
    };

    let quad = solve_max_logical(&p.problem).expect("solvable");
    let threshold = quad.objective.to_f64() + quad.multipliers.tau.to_f64().abs() * delta + 1e-9;
    let refutation =
        refute_grid_better(&p.value_pairs, p.mean_pair, GridObjective::Logical, threshold)
            .unwrap_or_else(|e| panic!("quadratic objective beaten: {e}"));
    assert!(refutation.nodes > 0);

    let shan = solve_max_shannon(&p.problem).expect("solvable");
    let threshold = shan.objective.to_f64() + shan.multipliers.tau.to_f64().abs() * delta + 1e-9;
    refute_grid_better(&p.value_pairs, p.mean_pair, GridObjective::ShannonNats, threshold)
        .unwrap_or_else(|e| panic!("shannon objective beaten: {e}"));

    // Non-vacuity: rounding the continuous solution lands a grid point in
    // the slab, so the searches above had real points to certify.
    let rounded = round_to_grid(&shan.probs.to_f64_vec());
    assert!(grid_in_slab(&rounded, &p.value_pairs, p.mean_pair));
    assert!(grid_objective(&rounded, GridObjective::ShannonNats) <= threshold);
}

#[test]
fn no_grid_point_in_the_mean_slab_beats_either_solver() {
    let mut r = rng(33);
    for _ in 0..25 {
        let p = random_problem(&mut r, 5);
        refute_both_objectives(&p);
    }
}

#[test]
fn dice_problems_survive_the_grid_oracle() {
    for mean_pair in [(9i64, 2i64), (5, 1)] {
        let value_pairs: Vec<(i64, i64)> = (1..=6).map(|a| (a, 1)).collect();
        let values: Vec<Scalar> = (1..=6).map(Scalar::from_int).collect();
        let problem = MeanConstraintProblem::new(values, ratio(mean_pair.0, mean_pair.1))
            .expect("feasible");
        refute_both_objectives(&RandomProblem { value_pairs, mean_pair, problem });
    }
}

#[test]
fn value_equal_to_the_uniform_mean_gets_exactly_one_over_n() {
    let mut r = rng(34);
    let mut done = 0;
    while done < 40 {
        // Build a set whose last value is the mean of the others, making it
        // the uniform mean of the whole set.
        let n = r.gen_range(3..=6);
        let mut quarters: Vec<i64> = Vec::new();
        while quarters.len() < n - 1 {
            let a = r.gen_range(-10..=10);
            if !quarters.contains(&a) {
                quarters.push(a);
            }
        }
        let sum: i64 = quarters.iter().sum();
        if sum % (n as i64 - 1) != 0 {
            continue;
        }
        let mu = sum / (n as i64 - 1);
        if quarters.contains(&mu) {
            continue;
        }
        quarters.push(mu);
        let values: Vec<Scalar> = quarters.iter().map(|&a| ratio(a, 4)).collect();
        let probe = MeanConstraintProblem::new(values.clone(), ratio(mu, 4)).expect("interior");
        let (lo, hi) = interior_bounds(&probe);
        // An off-center mean strictly inside the interior interval: the
        // solution stays unclamped but is not the uniform distribution.
        let m = (lo * Scalar::from_int(3) + hi * Scalar::from_int(5)) / Scalar::from_int(8);
        let problem = MeanConstraintProblem::new(values, m).expect("interior");
        let quad = solve_max_logical(&problem).expect("solvable");
        assert!(quad.active_zero_set.is_empty());
        let idx = quarters.iter().position(|&a| a == mu).unwrap();
        assert_eq!(*quad.probs.get(idx), ratio(1, n as i64));
        done += 1;
    }
}

#[test]
fn uniform_mean_yields_the_uniform_distribution() {
    let values: Vec<Scalar> = vec![ratio(1, 1), ratio(2, 1), ratio(7, 2), ratio(6, 1)];
    let mu = ratio(25, 8);
    let problem = MeanConstraintProblem::new(values, mu).expect("feasible");
    let quad = solve_max_logical(&problem).expect("solvable");
    for p in quad.probs.probs() {
        assert_eq!(*p, ratio(1, 4));
    }
    assert!(quad.multipliers.tau.is_zero());
    let shan = solve_max_shannon(&problem).expect("solvable");
    for p in shan.probs.probs() {
        assert!((p.to_f64() - 0.25).abs() < 1e-10);
    }
}

#[test]
fn interior_bounds_separate_unclamped_from_clamped_solutions() {
    let mut r = rng(35);
    for _ in 0..50 {
        let n = r.gen_range(2..=6);
        let mut quarters: Vec<i64> = Vec::new();
        while quarters.len() < n {
            let a = r.gen_range(-12..=12);
            if !quarters.contains(&a) {
                quarters.push(a);
            }
        }
        let values: Vec<Scalar> = quarters.iter().map(|&a| ratio(a, 4)).collect();
        let min = ratio(*quarters.iter().min().unwrap(), 4);
        let max = ratio(*quarters.iter().max().unwrap(), 4);
        let sum: i64 = quarters.iter().sum();
        let probe = MeanConstraintProblem::new(values.clone(), ratio(sum, 4 * n as i64))
            .expect("uniform mean is interior");
        let (lo, hi) = interior_bounds(&probe);

        let solve = |m: Scalar| {
            let problem = MeanConstraintProblem::new(values.clone(), m).expect("interior");
            solve_max_logical(&problem).expect("solvable")
        };
        // Strictly inside the interval: nothing is pinned to zero.
        let in_lo = if lo > min { lo.clone() } else { min.clone() };
        let in_hi = if hi < max { hi.clone() } else { max.clone() };
        let j = Scalar::from_int(r.gen_range(3..=13));
        let m_in =
            in_lo.clone() + (in_hi - in_lo) * j / Scalar::from_int(16);
        let sol = solve(m_in);
        assert!(sol.active_zero_set.is_empty(), "pinned inside the interval");
        assert!(sol.probs.probs().iter().all(|p| !p.is_zero()));
        // Strictly outside (when a feasible mean exists there): some
        // coordinate must be pinned.
        if lo > min {
            let sol = solve((min.clone() + lo) / Scalar::from_int(2));
            assert!(!sol.active_zero_set.is_empty(), "unclamped below the interval");
        }
        if hi < max {
            let sol = solve((max + hi) / Scalar::from_int(2));
            assert!(!sol.active_zero_set.is_empty(), "unclamped above the interval");
        }
    }
}

#[test]
fn mean_equation_is_strictly_increasing_in_the_growth_variable() {
    let mut r = rng(36);
    for _ in 0..20 {
        let n = r.gen_range(2..=6);
        let mut quarters: Vec<i64> = Vec::new();
        while quarters.len() < n {
            let a = r.gen_range(-12..=12);
            if !quarters.contains(&a) {
                quarters.push(a);
            }
        }
        let xs: Vec<f64> = quarters.iter().map(|&a| a as f64 / 4.0).collect();
        let g = |w: f64| -> f64 {
            let den: f64 = xs.iter().map(|x| w.powf(*x)).sum();
            let num: f64 = xs.iter().map(|x| x * w.powf(*x)).sum();
            num / den
        };
        let mut prev = g(0.05);
        for i in 1..=60 {
            let w = 0.05 + i as f64 * 0.05;
            let next = g(w);
            assert!(next > prev, "g not increasing at w = {w}");
            prev = next;
        }
    }
}

#[test]
fn boundary_means_are_rejected() {
    let values: Vec<Scalar> = (1..=6).map(Scalar::from_int).collect();
    for m in [Scalar::from_int(1), Scalar::from_int(6), Scalar::from_int(7)] {
        match MeanConstraintProblem::new(values.clone(), m) {
            Err(Error::InfeasibleMean { .. }) => {}
            other => panic!("expected InfeasibleMean, got {other:?}"),
        }
    }
}

#[test]
fn stirling_gap_shrinks_with_particle_count() {
    // Fixed proportions (2,4,4)/10 scaled up; the normalized log-multinomial
    // approaches the natural-log entropy of the proportions.
    let h_e = {
        let probs = [0.2f64, 0.4, 0.4];
        -probs.iter().map(|p| p * p.ln()).sum::<f64>()
    };
    let mut gaps = Vec::new();
    for scale in [1u64, 10, 100] {
        let n = 10 * scale;
        let occ = [2 * scale, 4 * scale, 4 * scale];
        let s = ln_multinomial(n, &occ).expect("consistent occupancies") / n as f64;
        gaps.push((h_e - s).abs());
    }
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "gaps {gaps:?}");
    // The leading correction decays like ln(n)/n, about 7e-3 at n = 1000.
    assert!(gaps[2] < 1e-2);
}

#[test]
fn continuous_relaxation_matches_the_shannon_solver() {
    let problem = BoltzmannProblem::new(
        12,
        vec![ratio(1, 1), ratio(3, 2), ratio(2, 1), ratio(4, 1)],
        ratio(21, 1),
    )
    .expect("feasible");
    let approx = boltzmann_shannon_approx(&problem).expect("interior");
    let total: f64 = approx.occupancies_real.iter().sum();
    let energy: f64 = approx
        .occupancies_real
        .iter()
        .zip([1.0, 1.5, 2.0, 4.0])
        .map(|(n, e)| n * e)
        .sum();
    assert!((total - 12.0).abs() < 1e-9);
    assert!((energy - 21.0).abs() < 1e-8);
}
