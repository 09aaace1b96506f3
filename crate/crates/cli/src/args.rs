use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use padovan_core::closed_form::DEFAULT_HORIZON;
use padovan_core::stability::DEFAULT_SEED;

/// Closed forms, forbidden sets and stability of
/// x(n+1) = (α·x(n−1) + β)/(γ·x(n)·x(n−1)) and its two-equation system.
#[derive(Debug, Parser)]
#[command(name = "padovan", version, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generalized Padovan numbers S(0..=n), optionally against the Binet form.
    Sequence {
        /// Last index to print.
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Add Binet reconstruction and relative-error columns.
        #[arg(long)]
        binet: bool,
    },
    /// Iterate the equation (or the system with --system).
    Iterate,
    /// Closed form against direct iteration, per index.
    Compare,
    /// Equilibrium, linearization, Clark and Jury verdicts (JSON).
    Stability,
    /// Exact scan of the closed-form denominators (JSON).
    Forbidden,
    /// Seeded random sweep of initial conditions (JSON).
    Sweep {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Convergence tolerance on |x(N) − φ|.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Initial values are drawn from (LO, HI].
        #[arg(long, value_delimiter = ',', num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.05, 20.0])]
        range: Vec<f64>,
        /// Run trials on the rayon pool; the report is identical to a serial run.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Numbers accept integers, fractions (`7/3`) and decimals (`0.2`, `1e-3`),
/// all read as exact rationals.
#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, global = true, allow_hyphen_values = true, conflicts_with_all = ["p", "q"])]
    pub alpha: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// p = β/γ (use instead of --alpha/--beta/--gamma).
    #[arg(long, global = true, allow_hyphen_values = true, conflicts_with_all = ["beta", "gamma"])]
    pub p: Option<String>,
    /// q = α/γ.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,

    #[arg(
        long = "x-1",
        global = true,
        allow_hyphen_values = true,
        value_name = "X"
    )]
    pub x_m1: Option<String>,
    #[arg(
        long = "x0",
        global = true,
        allow_hyphen_values = true,
        value_name = "X"
    )]
    pub x_0: Option<String>,
    #[arg(
        long = "y-1",
        global = true,
        allow_hyphen_values = true,
        value_name = "Y"
    )]
    pub y_m1: Option<String>,
    #[arg(
        long = "y0",
        global = true,
        allow_hyphen_values = true,
        value_name = "Y"
    )]
    pub y_0: Option<String>,
    /// Work with the two-equation system instead of the scalar equation.
    #[arg(long, global = true)]
    pub system: bool,

    /// Iteration count (default 100; 300 for `sweep`).
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Last index examined by `forbidden`.
    #[arg(long, global = true, default_value_t = DEFAULT_HORIZON)]
    pub horizon: i64,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
    /// Defaults to csv for tables and json for reports.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Digits after the decimal point in rendered approximations.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub precision: u32,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Exit with status 3 when the initials hit a forbidden set.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Write to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}
