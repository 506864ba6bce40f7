//! Command-line front end for the logical entropy library.
//!
//! Every subcommand prints one result to stdout in the selected format and
//! exits 0. Failures print a JSON error object to stderr: malformed input
//! (including flag misuse and schema violations) exits 2, and inputs the
//! library rejects on mathematical grounds exit 1.

mod commands;
mod input;
mod render;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "logent",
    version,
    about = "Logical entropy toolkit: partitions, compound entropies, maximum entropy, \
             density matrices, and quantum measurement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Set-partition operations: entropy, distinctions, join, refinement
    Partition(commands::PartitionArgs),
    /// Entropies of distributions and joint distributions, with box diagrams
    Entropy(commands::EntropyArgs),
    /// Maximum-entropy distributions under a mean constraint
    Maxent(commands::MaxentArgs),
    /// Occupancy vectors maximizing the multinomial count at fixed energy
    Boltzmann(commands::BoltzmannArgs),
    /// Metrical entropies: variance, covariance, quadratic diversity
    Stats(commands::StatsArgs),
    /// Density matrices of weighted partitions and their measurement
    Density(commands::DensityArgs),
    /// Quantum logical entropy of observables on pure states
    Quantum(commands::QuantumArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Partition(a) => commands::run_partition(a),
        Command::Entropy(a) => commands::run_entropy(a),
        Command::Maxent(a) => commands::run_maxent(a),
        Command::Boltzmann(a) => commands::run_boltzmann(a),
        Command::Stats(a) => commands::run_stats(a),
        Command::Density(a) => commands::run_density(a),
        Command::Quantum(a) => commands::run_quantum(a),
    };
    if let Err(e) = result {
        eprintln!("{}", e.to_json());
        std::process::exit(e.exit_code());
    }
}
