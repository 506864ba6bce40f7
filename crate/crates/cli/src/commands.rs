//! The seven subcommands.

use clap::{Args, ValueEnum};

use logent::density::{self, DensityMatrixR};
use logent::entropy::diagram::{box_diagram, BoxQuantity};
use logent::entropy::{Dist, JointDist, ProbPartition};
use logent::maxent::{
    boltzmann_exact, boltzmann_shannon_approx, interior_bounds, solve_max_logical,
    solve_max_shannon, BoltzmannProblem, MeanConstraintProblem,
};
use logent::partitions::Partition;
use logent::quantum::{self, Observable, PureState};
use logent::stats::{metrical_cov, metrical_h, metrical_h_unordered, quadratic_entropy};
use logent::stats::{DistanceMatrix, MetricJointRV, MetricRV};
use logent::{LogBase, Scalar};

use crate::input::{input_err, load_json, parse_scalar, parse_values, CliError};
use crate::render::{emit, print_json, print_table, row, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    fn exact(self) -> bool {
        self == Mode::Exact
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Two,
    E,
}

impl From<Base> for LogBase {
    fn from(b: Base) -> LogBase {
        match b {
            Base::Two => LogBase::Two,
            Base::E => LogBase::E,
        }
    }
}

fn dist_from_list(text: &str, exact: bool) -> Result<Dist, CliError> {
    Dist::new(parse_values(text, exact)?).map_err(input_err)
}

/// Set-partition operations: entropy, distinctions, join, refinement.
#[derive(Args)]
pub struct PartitionArgs {
    /// Partition as JSON {"n":4,"blocks":[[0,2],[1,3]]}, a file path, or '-'
    #[arg(long)]
    input: String,
    /// Comma-separated point probabilities; uniform when omitted
    #[arg(long)]
    probs: Option<String>,
    /// Second partition: also report the join
    #[arg(long)]
    join: Option<String>,
    /// Second partition: does the first refine it?
    #[arg(long)]
    refines: Option<String>,
    /// Second partition: do the two share a distinction?
    #[arg(long)]
    common_dits: Option<String>,
    /// List every distinction pair
    #[arg(long)]
    dits: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
}

pub fn run_partition(a: PartitionArgs) -> Result<(), CliError> {
    let part: Partition = load_json(&a.input, "partition")?;
    let n = part.universe().len();
    let dist = match &a.probs {
        Some(text) => dist_from_list(text, a.mode.exact())?,
        None => Dist::uniform(n),
    };
    let pp = ProbPartition::new(part.clone(), dist).map_err(input_err)?;

    let mut out = serde_json::json!({
        "partition": part,
        "num_blocks": part.num_blocks(),
        "dit_count": part.dit_count(),
        "logical_entropy": pp.logical_entropy(),
        "shannon_entropy_bits": pp.shannon_entropy(LogBase::Two),
    });
    let mut rows = vec![
        row("partition", &part),
        row("num_blocks", part.num_blocks()),
        row("dit_count", part.dit_count()),
        row("logical_entropy", pp.logical_entropy()),
        row("shannon_entropy_bits", pp.shannon_entropy(LogBase::Two)),
    ];

    if let Some(spec) = &a.join {
        let other: Partition = load_json(spec, "join partition")?;
        let joined = part.join(&other)?;
        let jpp = ProbPartition::new(joined.clone(), pp.point_probs().clone())?;
        out["join"] = serde_json::json!({
            "partition": joined,
            "dit_count": joined.dit_count(),
            "logical_entropy": jpp.logical_entropy(),
        });
        rows.push(row("join", &joined));
        rows.push(row("join_dit_count", joined.dit_count()));
        rows.push(row("join_logical_entropy", jpp.logical_entropy()));
    }
    if let Some(spec) = &a.refines {
        let other: Partition = load_json(spec, "refines partition")?;
        let answer = part.refines(&other)?;
        out["refines"] = serde_json::json!(answer);
        rows.push(row("refines", answer));
    }
    if let Some(spec) = &a.common_dits {
        let other: Partition = load_json(spec, "common-dits partition")?;
        let answer = part.common_dits_exist(&other)?;
        out["common_dits"] = serde_json::json!(answer);
        rows.push(row("common_dits", answer));
    }
    if a.dits {
        let pairs: Vec<(u32, u32)> = part.ditset()?.iter().collect();
        rows.push(row(
            "dits",
            pairs
                .iter()
                .map(|(j, k)| format!("({j},{k})"))
                .collect::<Vec<_>>()
                .join(" "),
        ));
        out["dits"] = serde_json::json!(pairs);
    }

    match a.format {
        Format::Json => print_json(&out),
        _ => print_table(&rows),
    }
    Ok(())
}

/// Entropies of distributions and joint distributions, with box diagrams.
#[derive(Args)]
pub struct EntropyArgs {
    /// Joint distribution JSON (axes + table), a file path, or '-'
    #[arg(long)]
    joint: Option<String>,
    /// Plain probability list for single-distribution entropies
    #[arg(long)]
    probs: Option<String>,
    /// all, hx, hy, hjoint, hx_given_y, hy_given_x, mxy; m3 or i3 on 3 axes
    #[arg(long, default_value = "all")]
    quantity: String,
    /// Logarithm base for Shannon quantities
    #[arg(long, value_enum, default_value_t = Base::Two)]
    base: Base,
    /// Write the box diagram as SVG to this path ('-' prints it instead of ASCII)
    #[arg(long)]
    svg: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
}

pub fn run_entropy(a: EntropyArgs) -> Result<(), CliError> {
    let base: LogBase = a.base.into();
    match (&a.joint, &a.probs) {
        (Some(spec), None) => run_entropy_joint(&a, spec, base),
        (None, Some(text)) => {
            let dist = dist_from_list(text, a.mode.exact())?;
            let out = serde_json::json!({
                "logical_entropy": dist.logical_entropy(),
                "shannon_entropy": dist.shannon_entropy(base),
            });
            match a.format {
                Format::Json => print_json(&out),
                _ => print_table(&[
                    row("logical_entropy", dist.logical_entropy()),
                    row("shannon_entropy", dist.shannon_entropy(base)),
                ]),
            }
            Ok(())
        }
        _ => Err(CliError::Parse(
            "give exactly one of --joint or --probs".into(),
        )),
    }
}

fn run_entropy_joint(a: &EntropyArgs, spec: &str, base: LogBase) -> Result<(), CliError> {
    let joint: JointDist = load_json(spec, "joint distribution")?;
    match a.quantity.as_str() {
        "all" if joint.num_axes() == 2 => {
            let logical = joint.compound_logical().map_err(input_err)?;
            let shannon = joint.compound_shannon(base).map_err(input_err)?;
            let out = serde_json::json!({"logical": logical, "shannon": shannon});
            match a.format {
                Format::Json => print_json(&out),
                _ => print_table(&[
                    row("h_x", &logical.h_x),
                    row("h_y", &logical.h_y),
                    row("h_joint", &logical.h_joint),
                    row("h_x_given_y", &logical.h_x_given_y),
                    row("h_y_given_x", &logical.h_y_given_x),
                    row("m_xy", &logical.m_xy),
                    row("H_x", shannon.h_x),
                    row("H_y", shannon.h_y),
                    row("H_joint", shannon.h_joint),
                    row("H_x_given_y", shannon.h_x_given_y),
                    row("H_y_given_x", shannon.h_y_given_x),
                    row("I_xy", shannon.i_xy),
                ]),
            }
            Ok(())
        }
        "all" => {
            let marginal: Vec<Dist> = (0..joint.num_axes()).map(|i| joint.marginal(i)).collect();
            let m3 = joint.mutual3_logical().map_err(input_err)?;
            let i3 = joint.mutual3_shannon(base).map_err(input_err)?;
            let out = serde_json::json!({
                "marginal_logical": marginal.iter().map(Dist::logical_entropy).collect::<Vec<_>>(),
                "marginal_shannon": marginal.iter().map(|d| d.shannon_entropy(base)).collect::<Vec<_>>(),
                "h_flat": joint.flatten().logical_entropy(),
                "shannon_flat": joint.flatten().shannon_entropy(base),
                "m3_logical": m3,
                "i3_shannon": i3,
            });
            match a.format {
                Format::Json => print_json(&out),
                _ => {
                    let mut rows = Vec::new();
                    for (i, d) in marginal.iter().enumerate() {
                        rows.push(row(format!("h_axis{i}"), d.logical_entropy()));
                    }
                    rows.push(row("h_flat", joint.flatten().logical_entropy()));
                    rows.push(row("m3_logical", &m3));
                    rows.push(row("i3_shannon", i3));
                    print_table(&rows);
                }
            }
            Ok(())
        }
        "m3" => {
            let m3 = joint.mutual3_logical().map_err(input_err)?;
            finish_single(a, "m3_logical", serde_json::json!(m3), m3.to_string())
        }
        "i3" => {
            let i3 = joint.mutual3_shannon(base).map_err(input_err)?;
            finish_single(a, "i3_shannon", serde_json::json!(i3), i3.to_string())
        }
        name => {
            let q: BoxQuantity = name.parse().map_err(|e: logent::Error| input_err(e))?;
            let d = box_diagram(&joint, q).map_err(input_err)?;
            if let Some(path) = &a.svg {
                if path != "-" {
                    std::fs::write(path, d.to_svg())
                        .map_err(|e| CliError::Parse(format!("writing {path}: {e}")))?;
                }
            }
            match a.format {
                Format::Diagram => {
                    if a.svg.as_deref() == Some("-") {
                        emit(d.to_svg());
                    } else {
                        emit(d.to_ascii());
                    }
                }
                Format::Json => print_json(&serde_json::to_value(&d).expect("diagram serializes")),
                Format::Table => print_table(&[
                    row("quantity", q.name()),
                    row("value", &d.shaded_total),
                    row("shaded_cells", d.cells.iter().filter(|c| c.shaded).count()),
                ]),
            }
            Ok(())
        }
    }
}

fn finish_single(
    a: &EntropyArgs,
    key: &str,
    json: serde_json::Value,
    text: String,
) -> Result<(), CliError> {
    match a.format {
        Format::Json => print_json(&serde_json::json!({key: json})),
        _ => print_table(&[row(key, text)]),
    }
    Ok(())
}

/// Maximum-entropy distribution for given outcome values and mean.
#[derive(Args)]
pub struct MaxentArgs {
    /// Outcome values: a range like "1..6" or a comma list like "0,1/2,1"
    #[arg(long)]
    values: String,
    /// Target mean (fraction or decimal)
    #[arg(long)]
    mean: String,
    /// Entropy to maximize
    #[arg(long, value_enum, default_value_t = Objective::Logical)]
    objective: Objective,
    /// Print the means with fully interior logical solutions instead of solving
    #[arg(long)]
    bounds: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Objective {
    Logical,
    Shannon,
}

pub fn run_maxent(a: MaxentArgs) -> Result<(), CliError> {
    let exact = a.mode.exact();
    let values = parse_values(&a.values, exact)?;
    let mean = parse_scalar(&a.mean, exact)?;
    let labels: Vec<String> = values.iter().map(Scalar::to_string).collect();
    let problem = MeanConstraintProblem::new(values, mean).map_err(input_err)?;

    if a.bounds {
        let (lo, hi) = interior_bounds(&problem);
        let out = serde_json::json!({"lower": lo, "upper": hi});
        match a.format {
            Format::Json => print_json(&out),
            _ => print_table(&[row("lower", &lo), row("upper", &hi)]),
        }
        return Ok(());
    }

    let solution = match a.objective {
        Objective::Logical => solve_max_logical(&problem)?,
        Objective::Shannon => solve_max_shannon(&problem)?,
    };
    let mut out = serde_json::to_value(&solution).expect("solution serializes");
    let mut rows: Vec<(String, String)> = labels
        .iter()
        .zip(solution.probs.probs())
        .map(|(x, p)| row(format!("p({x})"), p))
        .collect();
    rows.push(row("objective", &solution.objective));
    rows.push(row("lambda", &solution.multipliers.lambda));
    rows.push(row("tau", &solution.multipliers.tau));
    if a.objective == Objective::Shannon {
        let w = (-solution.multipliers.tau.to_f64()).exp();
        out["w"] = serde_json::json!(w);
        rows.push(row("w", w));
    }
    if !solution.active_zero_set.is_empty() {
        rows.push(row(
            "active_zero_set",
            solution
                .active_zero_set
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(","),
        ));
    }
    match a.format {
        Format::Json => print_json(&out),
        _ => print_table(&rows),
    }
    Ok(())
}

/// Occupancy vectors maximizing the multinomial count at fixed total energy.
#[derive(Args)]
pub struct BoltzmannArgs {
    /// Energy levels, e.g. "1,2,3"
    #[arg(long)]
    levels: String,
    /// Number of particles
    #[arg(long)]
    particles: u64,
    /// Total energy
    #[arg(long)]
    energy: String,
    /// Solve the continuous entropy relaxation instead of enumerating
    #[arg(long)]
    approx: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

pub fn run_boltzmann(a: BoltzmannArgs) -> Result<(), CliError> {
    let levels = parse_values(&a.levels, true)?;
    let energy = parse_scalar(&a.energy, true)?;
    let problem = BoltzmannProblem::new(a.particles, levels, energy).map_err(input_err)?;

    if a.approx {
        let sol = boltzmann_shannon_approx(&problem)?;
        match a.format {
            Format::Json => print_json(&serde_json::to_value(&sol).expect("serializes")),
            _ => {
                let mut rows: Vec<(String, String)> = sol
                    .occupancies_real
                    .iter()
                    .enumerate()
                    .map(|(i, n)| row(format!("n[{i}]"), n))
                    .collect();
                rows.push(row("h_e", sol.h_e));
                print_table(&rows);
            }
        }
        return Ok(());
    }

    let sol = boltzmann_exact(&problem)?;
    match a.format {
        Format::Json => print_json(&serde_json::to_value(&sol).expect("serializes")),
        _ => {
            let occ = |o: &[u64]| {
                o.iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let mut rows: Vec<(String, String)> = sol
                .feasible
                .iter()
                .map(|f| row(format!("({})", occ(&f.occupancies)), &f.multinomial))
                .collect();
            rows.push(row("winner", format!("({})", occ(&sol.occupancies))));
            rows.push(row("multinomial", &sol.multinomial));
            rows.push(row("normalized_log", sol.normalized_log));
            print_table(&rows);
        }
    }
    Ok(())
}

/// Metrical entropies: variance, covariance, and quadratic diversity.
#[derive(Args)]
pub struct StatsArgs {
    /// Outcome values of a metric random variable
    #[arg(long)]
    values: Option<String>,
    /// Probabilities matching --values (or --distance rows)
    #[arg(long)]
    probs: Option<String>,
    /// Joint distribution JSON for the bivariate case
    #[arg(long)]
    joint: Option<String>,
    /// Values of the first axis of --joint
    #[arg(long)]
    x_values: Option<String>,
    /// Values of the second axis of --joint
    #[arg(long)]
    y_values: Option<String>,
    /// Distance matrix JSON {"rows":[[…]]} for quadratic entropy
    #[arg(long)]
    distance: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
}

pub fn run_stats(a: StatsArgs) -> Result<(), CliError> {
    let exact = a.mode.exact();
    if let Some(spec) = &a.joint {
        let joint: JointDist = load_json(spec, "joint distribution")?;
        let (xs, ys) = match (&a.x_values, &a.y_values) {
            (Some(x), Some(y)) => (parse_values(x, exact)?, parse_values(y, exact)?),
            _ => {
                return Err(CliError::Parse(
                    "--joint needs --x-values and --y-values".into(),
                ))
            }
        };
        let rv = MetricJointRV::new(xs, ys, joint).map_err(input_err)?;
        let out = serde_json::json!({
            "x_mean": rv.x_rv().mean(),
            "y_mean": rv.y_rv().mean(),
            "x_variance": rv.x_rv().variance(),
            "y_variance": rv.y_rv().variance(),
            "covariance": rv.covariance(),
            "metrical_covariance": metrical_cov(&rv),
        });
        match a.format {
            Format::Json => print_json(&out),
            _ => print_table(&[
                row("x_mean", rv.x_rv().mean()),
                row("y_mean", rv.y_rv().mean()),
                row("x_variance", rv.x_rv().variance()),
                row("y_variance", rv.y_rv().variance()),
                row("covariance", rv.covariance()),
                row("metrical_covariance", metrical_cov(&rv)),
            ]),
        }
        return Ok(());
    }

    let probs = match &a.probs {
        Some(text) => dist_from_list(text, exact)?,
        None => return Err(CliError::Parse("--probs is required".into())),
    };

    if let Some(spec) = &a.distance {
        let d: DistanceMatrix = load_json(spec, "distance matrix")?;
        let q = quadratic_entropy(&d, &probs)?;
        let out = serde_json::json!({"quadratic_entropy": q});
        match a.format {
            Format::Json => print_json(&out),
            _ => print_table(&[row("quadratic_entropy", &q)]),
        }
        return Ok(());
    }

    let values = match &a.values {
        Some(text) => parse_values(text, exact)?,
        None => return Err(CliError::Parse("give --values, --joint, or --distance".into())),
    };
    let rv = MetricRV::new(values, probs).map_err(input_err)?;
    let out = serde_json::json!({
        "mean": rv.mean(),
        "variance": rv.variance(),
        "metrical_entropy": metrical_h(&rv),
        "metrical_entropy_unordered": metrical_h_unordered(&rv),
    });
    match a.format {
        Format::Json => print_json(&out),
        _ => print_table(&[
            row("mean", rv.mean()),
            row("variance", rv.variance()),
            row("metrical_entropy", metrical_h(&rv)),
            row("metrical_entropy_unordered", metrical_h_unordered(&rv)),
        ]),
    }
    Ok(())
}

/// Density matrices of weighted partitions and their measurement.
#[derive(Args)]
pub struct DensityArgs {
    /// Partition as JSON, a file path, or '-'
    #[arg(long)]
    partition: String,
    /// Comma-separated point probabilities; uniform when omitted
    #[arg(long)]
    probs: Option<String>,
    /// Partition to measure with (projective mixture)
    #[arg(long)]
    measure: Option<String>,
    /// Partition for the cross entropy 1 − tr(ρ(π)·ρ(σ))
    #[arg(long)]
    cross: Option<String>,
    /// Partition for the Hilbert-Schmidt distance tr((ρ(π) − ρ(σ))²)
    #[arg(long)]
    hamming: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
}

pub fn run_density(a: DensityArgs) -> Result<(), CliError> {
    let part: Partition = load_json(&a.partition, "partition")?;
    let n = part.universe().len();
    let dist = match &a.probs {
        Some(text) => dist_from_list(text, a.mode.exact())?,
        None => Dist::uniform(n),
    };
    let pp = ProbPartition::new(part, dist).map_err(input_err)?;
    let rho = density::rho_of_partition(&pp);

    let mut out = serde_json::json!({
        "rho": rho,
        "logical_entropy": density::logical_entropy_of_rho(&rho),
        "purity": rho.purity(),
    });
    let mut blocks = vec![rho.to_pretty()];
    let mut rows = vec![
        row("logical_entropy", density::logical_entropy_of_rho(&rho)),
        row("purity", rho.purity()),
    ];

    let sibling = |spec: &str, what: &str| -> Result<DensityMatrixR, CliError> {
        let sigma: Partition = load_json(spec, what)?;
        let spp = ProbPartition::new(sigma, pp.point_probs().clone()).map_err(input_err)?;
        Ok(density::rho_of_partition(&spp))
    };

    if let Some(spec) = &a.measure {
        let sigma: Partition = load_json(spec, "measurement partition")?;
        let after = density::luders_join(&rho, &sigma)?;
        let created = density::entropy_created(&rho, &after)?;
        out["measured"] = serde_json::json!({
            "rho": after,
            "entropy_created": created,
            "logical_entropy": density::logical_entropy_of_rho(&after),
        });
        blocks.push(after.to_pretty());
        rows.push(row("entropy_created", created));
        rows.push(row(
            "entropy_after",
            density::logical_entropy_of_rho(&after),
        ));
    }
    if let Some(spec) = &a.cross {
        let other = sibling(spec, "cross partition")?;
        let value = density::cross_entropy_trace(&rho, &other)?;
        out["cross_entropy"] = serde_json::to_value(&value).expect("scalar serializes");
        rows.push(row("cross_entropy", value));
    }
    if let Some(spec) = &a.hamming {
        let other = sibling(spec, "hamming partition")?;
        let value = density::hamming_distance(&rho, &other)?;
        out["hamming_distance"] = serde_json::to_value(&value).expect("scalar serializes");
        rows.push(row("hamming_distance", value));
    }

    match a.format {
        Format::Json => print_json(&out),
        _ => {
            for block in blocks {
                emit(block);
            }
            print_table(&rows);
        }
    }
    Ok(())
}

/// Quantum logical entropy of an observable on a pure state.
#[derive(Args)]
pub struct QuantumArgs {
    /// Pure state JSON {"amplitudes":[[re,im],…]}, a file path, or '-'
    #[arg(long)]
    state: String,
    /// Observable JSON {"eigenvalues":…,"basis":…,"map":…}, a file path, or '-'
    #[arg(long)]
    observable: String,
    /// Second observable sharing the eigenbasis: compound entropies
    #[arg(long)]
    observable2: Option<String>,
    /// Report the three equal faces of the measurement entropy
    #[arg(long)]
    check_theorem: bool,
    /// Include the post-measurement density matrix
    #[arg(long)]
    post_rho: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

pub fn run_quantum(a: QuantumArgs) -> Result<(), CliError> {
    let state: PureState = load_json(&a.state, "state")?;
    let obs: Observable = load_json(&a.observable, "observable")?;

    let probs = quantum::measurement_probs(&obs, &state)?;
    let h = quantum::quantum_logical_entropy(&obs, &state)?;
    let mut out = serde_json::json!({
        "eigenvalues": obs.eigenvalues(),
        "probs": probs.to_f64_vec(),
        "logical_entropy": h,
    });
    let mut rows: Vec<(String, String)> = obs
        .eigenvalues()
        .iter()
        .zip(probs.probs())
        .map(|(phi, p)| row(format!("Pr({phi})"), p.to_f64()))
        .collect();
    rows.push(row("logical_entropy", h));
    let mut blocks: Vec<String> = Vec::new();

    if a.check_theorem {
        let check = quantum::measurement_entropy_theorem_check(&obs, &state)?;
        out["check"] = serde_json::to_value(check).expect("check serializes");
        rows.push(row("h_direct", check.h_direct));
        rows.push(row("h_post_rho", check.h_post_rho));
        rows.push(row("zeroed_abs_sq_sum", check.zeroed_abs_sq_sum));
    }
    if a.post_rho {
        let post = quantum::luders_measure(&obs, &quantum::rho_of_state(&state))?;
        blocks.push(post.to_pretty());
        out["post_rho"] = serde_json::to_value(&post).expect("matrix serializes");
    }
    if let Some(spec) = &a.observable2 {
        let second: Observable = load_json(spec, "second observable")?;
        let compound = quantum::compound_quantum_entropies(&obs, &second, &state)?;
        let dims = quantum::qudit_mutual_subspace_dims(&obs, &second)?;
        out["compound"] = serde_json::to_value(compound).expect("compound serializes");
        out["qudit_dims"] = serde_json::to_value(dims).expect("dims serialize");
        rows.push(row("h_f", compound.h_f));
        rows.push(row("h_g", compound.h_g));
        rows.push(row("h_joint", compound.h_joint));
        rows.push(row("h_f_given_g", compound.h_f_given_g));
        rows.push(row("m_fg", compound.m_fg));
        rows.push(row("qudit_dim_union", dims.dim_union));
        rows.push(row("qudit_dim_intersection", dims.dim_intersection));
    }

    match a.format {
        Format::Json => print_json(&out),
        _ => {
            for block in blocks {
                emit(block);
            }
            print_table(&rows);
        }
    }
    Ok(())
}
