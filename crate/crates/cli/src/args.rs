use std::path::PathBuf;

use betamoments::Rational;
use clap::{Args, Parser, Subcommand, ValueEnum};

fn rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "betamoments",
    version,
    about = "Exact large-N moments of beta-ensembles"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the output to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Moments <T^n> from one or all backends.
    Moment(MomentArgs),
    /// Count (and optionally list) weighted lattice paths.
    Paths(PathsArgs),
    /// Generating-function coefficients.
    Series(SeriesArgs),
    /// Run the built-in verification suites.
    Verify(VerifyArgs),
    /// Metropolis-Hastings sampling of the finite-N density.
    Sample(SampleArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Jacobi ensemble with general gamma
    Jacobi,
    /// Jacobi ensemble with gamma = 1
    #[value(name = "jacobi-g1")]
    JacobiG1,
    Laguerre,
    /// Proper delay times
    Delay,
}

#[derive(Args, Debug, Clone)]
pub struct EnsembleArgs {
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub gamma: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "2")]
    pub beta: Rational,
    /// Matrix size (defaults to 1 for delay times).
    #[arg(long = "N", value_name = "N")]
    pub big_n: Option<u64>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub epsilon: Option<Rational>,
    #[arg(long = "tauD", value_name = "TAU", value_parser = rational, allow_hyphen_values = true)]
    pub tau_d: Option<Rational>,
    /// Quantum-transport setup with N1 and N2 channels (implies jacobi-g1).
    #[arg(long, num_args = 2, value_names = ["N1", "N2"])]
    pub transport: Option<Vec<u64>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Recurrence,
    Closed,
    Series,
    Paths,
    All,
}

#[derive(Args, Debug)]
pub struct MomentArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    /// A single moment index.
    #[arg(
        long,
        value_name = "INDEX",
        conflicts_with = "n_max",
        required_unless_present = "n_max"
    )]
    pub n: Option<usize>,
    /// All moments 1..=N_MAX.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = BackendArg::All)]
    pub backend: BackendArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Dyck,
    Motzkin,
    Schroder,
    Jacobi4,
}

#[derive(Args, Debug)]
pub struct PathsArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Dyck: number of rise/fall pairs.
    #[arg(long)]
    pub pairs: Option<usize>,
    /// Motzkin and jacobi4: horizontal length.
    #[arg(long)]
    pub length: Option<usize>,
    /// Motzkin: only paths with exactly this many rises.
    #[arg(long)]
    pub rises: Option<usize>,
    /// Schroder: semilength.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated step weights (dyck U,D; motzkin U,D,H; schroder V,D,H; jacobi4 V,D,H,U).
    #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true)]
    pub weights: Option<Vec<Rational>>,
    /// Also list every path.
    #[arg(long)]
    pub enumerate: bool,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long)]
    pub order: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: betamoments::verify::Suite,
    #[arg(long, default_value_t = betamoments::verify::DEFAULT_MAX_N)]
    pub max_n: usize,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = 20_000)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 2_000)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 4)]
    pub chains: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    /// Proposal half-width (default: a tenth of the ensemble's natural scale).
    #[arg(long)]
    pub step_scale: Option<f64>,
    /// Run at N and 2N and report the pair-covariance decay.
    #[arg(long)]
    pub factorization: bool,
}
