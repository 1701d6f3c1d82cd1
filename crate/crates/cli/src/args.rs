use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sigbkg::IntervalMethod;

#[derive(Debug, Parser)]
#[command(name = "sigbkg", version, about = "Signal-plus-background Poisson inference")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputFlags,

    #[command(flatten)]
    pub numeric: NumericFlags,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputFlags {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Numeric configuration file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Overrides for the numeric configuration; each takes precedence over the
/// config file.
#[derive(Debug, Args, Default)]
pub struct NumericFlags {
    #[arg(long, global = true)]
    pub theta_max: Option<f64>,
    #[arg(long, global = true)]
    pub theta_step: Option<f64>,
    /// Skip bisection refinement of grid-inverted endpoints.
    #[arg(long, global = true)]
    pub no_refine: bool,
    #[arg(long, global = true)]
    pub endpoint_tol: Option<f64>,
    #[arg(long, global = true)]
    pub k_max_eps: Option<f64>,
    #[arg(long, global = true)]
    pub risk_eps: Option<f64>,
    #[arg(long, global = true)]
    pub series_eps: Option<f64>,
    #[arg(long, global = true)]
    pub bisect_tol: Option<f64>,
    #[arg(long, global = true)]
    pub opt_tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Start the `k > n` sum of the conditional PMF at `j = 1`.
    #[arg(long, global = true)]
    pub strict_paper_qpmf: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Estimator {
    PHat,
    PMle,
    PHatAlpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Mse,
    Coverage,
    CondRisk,
}

fn parse_method(s: &str) -> Result<IntervalMethod, String> {
    s.parse().map_err(|e: sigbkg::Error| e.to_string())
}

fn parse_pair(s: &str) -> Result<(f64, u64), String> {
    let (b, n) = s.split_once(':').ok_or_else(|| format!("expected b:n, got '{s}'"))?;
    let b = b.trim().parse::<f64>().map_err(|e| format!("bad b in '{s}': {e}"))?;
    let n = n.trim().parse::<u64>().map_err(|e| format!("bad n in '{s}': {e}"))?;
    Ok((b, n))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Point estimates of p and of the signal indicator.
    Estimate {
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long)]
        n: u64,
        /// Prior rate for the Bayes estimator; adds p_hat_alpha rows.
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
    },
    /// Interval for p at observed counts.
    Interval {
        #[arg(long, value_parser = parse_method, value_delimiter = ',', default_value = "unified,conditional,bayes")]
        method: Vec<IntervalMethod>,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, default_value_t = 0.9, allow_negative_numbers = true)]
        level: f64,
    },
    /// Frequentist coverage of an interval construction.
    Coverage {
        #[arg(long, value_parser = parse_method, value_delimiter = ',', default_value = "unified,conditional,bayes")]
        method: Vec<IntervalMethod>,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        theta: Vec<f64>,
        #[arg(long, default_value_t = 0.9, allow_negative_numbers = true)]
        level: f64,
    },
    /// Mean squared error of estimators of p over a θ grid.
    Mse {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "p-hat,p-mle")]
        estimator: Vec<Estimator>,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// θ values; defaults to 0, 0.05, ..., 4b + 20.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        theta: Vec<f64>,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
    },
    /// Conditional risks given B <= n.
    RiskCond {
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Observed counts; defaults to 0..=4b+20.
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
    },
    /// Classical and modified Type I error rates of "reject when X >= n0".
    Type1 {
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n0: Vec<u64>,
        /// Also report the modified rate at this signal mean.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
    },
    /// Intervals for the reference (b, n) pairs.
    Table1 {
        #[arg(long, default_value_t = 0.9, allow_negative_numbers = true)]
        level: f64,
        /// Comma-separated b:n pairs replacing the reference set.
        #[arg(long, value_parser = parse_pair, value_delimiter = ',')]
        rows: Vec<(f64, u64)>,
    },
    /// Least rejection thresholds for b = 1..10.
    Table2 {
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        level: f64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        b: Vec<f64>,
    },
    /// Long-format curve data: x, series, value.
    FigData {
        #[arg(long, value_enum)]
        which: Figure,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Interval constructions for the coverage figure.
        #[arg(long, value_parser = parse_method, value_delimiter = ',', default_value = "unified,conditional,bayes")]
        method: Vec<IntervalMethod>,
        #[arg(long, default_value_t = 0.9, allow_negative_numbers = true)]
        level: f64,
    },
}
