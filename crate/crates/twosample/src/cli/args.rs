//! Command-line argument definitions.
//!
//! Every subcommand shares one flag set; flags irrelevant to a subcommand
//! are simply ignored. Values resolve in the order: built-in defaults, then
//! the `--config` JSON file, then explicit flags.

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "twosample",
    about = "Nonparametric two-sample tests built on empirical transport distances",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a two-sample test and emit a report.
    Test(CommonArgs),
    /// Export PP/QQ/ROC/ODC step-function curves for 1-D samples.
    Curves(CommonArgs),
    /// Simulate a Brownian-bridge null table for a distribution-free statistic.
    NullSim(CommonArgs),
    /// Estimate rejection rates across sample sizes for a generator pair.
    PowerBench(CommonArgs),
    /// Measure the decay rate of the exact empirical W1 distance.
    RateBench(CommonArgs),
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Test(a)
            | Command::Curves(a)
            | Command::NullSim(a)
            | Command::PowerBench(a)
            | Command::RateBench(a) => a,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Test(_) => "test",
            Command::Curves(_) => "curves",
            Command::NullSim(_) => "null-sim",
            Command::PowerBench(_) => "power-bench",
            Command::RateBench(_) => "rate-bench",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// First sample, CSV with one observation per row.
    #[arg(long)]
    pub x: Option<String>,

    /// Second sample, CSV with one observation per row.
    #[arg(long)]
    pub y: Option<String>,

    /// Statistic name(s): ks, pp-l2, qq-l2, qq-linf, wasserstein,
    /// wasserstein-inf, odc-w2, odc-linf, energy, mmd,
    /// smoothed-wasserstein. Comma-separated lists are accepted by
    /// power-bench; test and null-sim take exactly one.
    #[arg(long, value_delimiter = ',')]
    pub stat: Option<Vec<String>>,

    /// Order of the Wasserstein / smoothed statistics (default 1).
    #[arg(long)]
    pub p: Option<f64>,

    /// Entropic regularization for the smoothed statistic (default 1).
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Gaussian kernel bandwidth for MMD (default: pooled median heuristic).
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Test level (default 0.05).
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Permutation resamples (default 999, minimum 100).
    #[arg(long)]
    pub perms: Option<usize>,

    /// RNG seed; identical seeds give byte-identical output (default 0).
    #[arg(long)]
    pub seed: Option<u64>,

    /// Calibration: perm (permutation) or asymp (Brownian-bridge table).
    #[arg(long)]
    pub calib: Option<String>,

    /// Output path (test, null-sim, benches) or directory (curves).
    /// Defaults to stdout; curves requires it.
    #[arg(long)]
    pub out: Option<String>,

    /// Output format: json or csv.
    #[arg(long)]
    pub format: Option<String>,

    /// Import a previously simulated null table (CSV alpha,quantile rows)
    /// instead of simulating one for --calib asymp.
    #[arg(long)]
    pub table: Option<String>,

    /// Brownian-bridge paths for null tables (default 100000).
    #[arg(long)]
    pub paths: Option<usize>,

    /// Bridge discretization grid (default 2048, minimum 1000).
    #[arg(long)]
    pub grid: Option<usize>,

    /// Monte Carlo trials for the benches (default 200).
    #[arg(long)]
    pub trials: Option<usize>,

    /// Comma-separated per-group sample sizes (power-bench default
    /// 25,50,100,200; rate-bench default 32,64,128,256).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,

    /// Data dimension for power-bench (default 1).
    #[arg(long)]
    pub dim: Option<usize>,

    /// Comma-separated dimensions for rate-bench, each in 1..=4
    /// (default 1,2,3).
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,

    /// Separation parameter for power-bench (default 0.5).
    #[arg(long)]
    pub delta: Option<f64>,

    /// Base generator for rate-bench: uniform, normal, exponential,
    /// logit-uniform (default uniform).
    #[arg(long)]
    pub generator: Option<String>,

    /// Generator pair for power-bench: uniform-shift, normal-mean-shift,
    /// normal-scale-shift (default normal-mean-shift).
    #[arg(long)]
    pub pair: Option<String>,

    /// JSON config file supplying any of the above; explicit flags win.
    #[arg(long)]
    pub config: Option<String>,
}
