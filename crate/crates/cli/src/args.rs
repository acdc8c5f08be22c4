use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qinterf", version, about = "Interference-amplified quantum search simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one search and verify the sampled basis state.
    Search(SearchArgs),
    /// Find every solution by repeated search with exclusions.
    Enumerate(EnumerateArgs),
    /// Run the polarization test interferometer.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
#[group(id = "oracle_source", required = true, multiple = false)]
pub struct OracleSource {
    /// DIMACS CNF file.
    #[arg(long, value_name = "PATH", group = "oracle_source")]
    pub cnf: Option<PathBuf>,

    /// Named oracle: all-true, all-false, parity, eq7demo, or single:<bits>.
    #[arg(long, value_name = "NAME", group = "oracle_source")]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: OracleSource,

    /// Qubit count; required for builtins other than eq7demo.
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Per-amplitude noise scale.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,

    /// Interference passes before measuring.
    #[arg(long, default_value_t = 1)]
    pub reps: u32,

    #[arg(long, default_value_t = 1024)]
    pub shots: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Squared norm below which the arms count as fully cancelled.
    #[arg(long, default_value_t = 1e-9)]
    pub null_tolerance: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct FormatArgs {
    /// Emit JSON.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV.
    #[arg(long)]
    pub csv: bool,
}

impl FormatArgs {
    pub fn resolve(&self, default: Format) -> Format {
        match (self.json, self.csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => default,
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub oracle: OracleArgs,
    #[command(flatten)]
    pub run: RunArgs,

    /// Round cap; defaults to 4·2^n.
    #[arg(long)]
    pub max_rounds: Option<u64>,

    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ElementArg {
    Rotator,
    Polarizer,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, value_enum, default_value_t = ElementArg::Rotator)]
    pub element: ElementArg,

    /// Element angle in arm A, degrees from horizontal.
    #[arg(long, default_value_t = 45.0, allow_negative_numbers = true)]
    pub theta_a: f64,

    /// Element angle in arm B, degrees from horizontal.
    #[arg(long, default_value_t = -45.0, allow_negative_numbers = true)]
    pub theta_b: f64,

    /// Sweep the arm A angle over start:stop:step (inclusive).
    #[arg(long, value_name = "START:STOP:STEP", allow_hyphen_values = true)]
    pub sweep: Option<String>,

    /// Append an attenuator with this intensity transmission to arm A.
    #[arg(long)]
    pub eta: Option<f64>,

    /// Intensity fraction sent into arm A.
    #[arg(long, default_value_t = 0.5)]
    pub split: f64,

    #[command(flatten)]
    pub format: FormatArgs,
}
