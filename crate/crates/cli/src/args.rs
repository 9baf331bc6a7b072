use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "koenigs", version, about = "Speeds of convergence of semigroups in the unit disc")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Speed table along a time grid, as CSV.
    Speeds(SpeedsArgs),
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Classify the slope of orbits in a Koenigs domain.
    Slope(SlopeArgs),
    /// Walk-on-spheres harmonic measure of the upper imaginary semi-axis.
    Hm(HmArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    ParabolicAuto,
    ParabolicAutoMinus,
    Hyperbolic,
    Sector,
    Omega,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Use the horocycle-reduced model.
    #[arg(long)]
    pub reduced: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpeedsArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Time grid as `log:t_min:t_max:points`.
    #[arg(long, default_value = "log:1:1e8:60")]
    pub t_grid: String,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Metric,
    Semigroup,
    Pythagoras,
    Euclid,
    MainBound,
    OmegaAsymptotics,
    Slope,
    Hm,
    GammaSigma,
    VtMono,
}

impl Suite {
    pub fn needs_seed(self) -> bool {
        self == Suite::Hm
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Tolerances {
    /// Metric transport error bound.
    #[arg(long, default_value_t = 1e-12)]
    pub tol_metric: f64,
    /// Semigroup-law and intertwining residual bound.
    #[arg(long, default_value_t = 1e-8)]
    pub tol_law: f64,
    /// Relative tolerance of closed-form asymptotic slopes and ratios.
    #[arg(long, default_value_t = 0.02)]
    pub tol_slope: f64,
    /// Absolute tolerance of the tangential-speed offset.
    #[arg(long, default_value_t = 0.35)]
    pub tol_offset: f64,
    /// Relative tolerance of Monte-Carlo-backed slopes.
    #[arg(long, default_value_t = 0.10)]
    pub tol_mc: f64,
    /// Number of standard errors allowed for Monte-Carlo comparisons.
    #[arg(long, default_value_t = 3.0)]
    pub tol_sigmas: f64,
    /// Band around the main-bound tail gap.
    #[arg(long, default_value_t = 0.05)]
    pub tol_main_tail: f64,
    /// Growth of the running sup after t = 1e3 that still counts as constant.
    #[arg(long, default_value_t = 1e-6)]
    pub tol_main_stable: f64,
    /// Bound on the quasi-geodesic deviation.
    #[arg(long, default_value_t = 1.5)]
    pub tol_gamma_sigma: f64,
    /// Bound on the tangential-speed difference of nested domains.
    #[arg(long, default_value_t = 1.0)]
    pub tol_vt_mono: f64,
    /// Relative half-width of the rate band.
    #[arg(long, default_value_t = 0.1)]
    pub tol_rate: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Seed for Monte-Carlo suites.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    pub walks: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DomainArgs {
    /// Domain descriptor as inline JSON.
    #[arg(long, conflicts_with = "domain_file")]
    pub domain: Option<String>,
    /// Domain descriptor read from a JSON file.
    #[arg(long)]
    pub domain_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SlopeArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Base point `re,im`; a canonical interior point when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,
    #[arg(long, default_value_t = 1e6)]
    pub t_max: f64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Trace CSV path; printed after the verdict when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HmArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Evaluation point `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub walks: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
