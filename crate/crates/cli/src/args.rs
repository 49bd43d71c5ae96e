use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "turankit", version, about = "Verify Turán-type inequalities for hypergeometric-type series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run claim checks on the default grid or on one explicit parameter set.
    Verify(VerifyArgs),
    /// Trace the product ratio of 1F1 over an x-grid.
    Explore(ExploreArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    #[value(name = "1f1-upper")]
    #[serde(rename = "1f1-upper")]
    KummerUpper,
    #[value(name = "2f1-upper")]
    #[serde(rename = "2f1-upper")]
    GaussUpper,
    Constant,
    #[value(name = "pfq-upper")]
    #[serde(rename = "pfq-upper")]
    PfqUpper,
    #[value(name = "1f1-gamma")]
    #[serde(rename = "1f1-gamma")]
    KummerGamma,
    #[value(name = "1f1-lower")]
    #[serde(rename = "1f1-lower")]
    KummerLower,
    #[value(name = "2f1-lower")]
    #[serde(rename = "2f1-lower")]
    GaussLower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridArg {
    Default,
}

/// All numeric inputs stay strings until parsed as exact rationals.
#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Claim selector: a kebab-case name, comma-separated names, or `all`.
    #[arg(long, default_value = "all")]
    pub theorem: String,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// First fixed parameter of the weights (`a` of the lower families).
    #[arg(long = "weight-a", allow_hyphen_values = true)]
    pub weight_a: Option<String>,
    /// Second fixed parameter of the weights (`b` of the Gauss families).
    #[arg(long = "weight-b", allow_hyphen_values = true)]
    pub weight_b: Option<String>,
    /// Comma-separated upper parameters (pfq families, chains).
    #[arg(long, allow_hyphen_values = true)]
    pub upper: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lower: Option<String>,
    /// Values of the varying parameter for the pointwise claims.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// Comma-separated evaluation points.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Truncation order of the coefficient checks.
    #[arg(long = "M")]
    pub order: Option<usize>,
    /// Length parameter of the terminating sums.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum)]
    pub grid: Option<GridArg>,
    /// Relative tolerance of series evaluation.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Working precision in decimal digits (overrides TURANKIT_PRECISION).
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of extra seeded random coefficient cases.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    /// Run on the calling thread only; output is identical either way.
    #[arg(long)]
    #[serde(skip)]
    pub sequential: bool,
    #[arg(long = "out-json")]
    #[serde(skip)]
    pub out_json: Option<std::path::PathBuf>,
    #[arg(long = "out-csv")]
    #[serde(skip)]
    pub out_csv: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExploreArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, default_value = "1")]
    pub delta: String,
    #[arg(long, default_value = "3")]
    pub c: String,
    /// Number of log-spaced points.
    #[arg(long, default_value_t = 64)]
    pub points: usize,
    /// Largest |x| of the log-spaced grid.
    #[arg(long, default_value = "50")]
    pub max: String,
    /// Explicit comma-separated x values (replaces the log grid).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Explore x < 0 instead of x > 0.
    #[arg(long)]
    pub negative: bool,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long = "out-json")]
    #[serde(skip)]
    pub out_json: Option<std::path::PathBuf>,
    #[arg(long = "out-csv")]
    #[serde(skip)]
    pub out_csv: Option<std::path::PathBuf>,
}
