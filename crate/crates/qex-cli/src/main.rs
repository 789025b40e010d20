mod commands;
mod failure;
mod manifest;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qex::cycle::Thresholds;
use qex::data::IndicatorSet;

#[derive(Parser)]
#[command(
    name = "qex",
    version,
    about = "Exchange-equation scenarios, business-cycle classification and the balanced-path regression",
    propagate_version = true
)]
struct Cli {
    /// Directory the run's files and manifest are written to.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,

    /// What the command prints on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed recorded in the manifest for synthetic-data generators.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a money-supply scenario; writes trajectory.csv and
    /// regime.json.
    Simulate(SimulateArgs),
    /// Classify an annual (q,g,c) series into cycle behaviors; writes
    /// spectrum.json.
    Classify(ClassifyArgs),
    /// Resolve the third element of the money/slope/behavior triangle.
    Resolve(ResolveArgs),
    /// Balanced-path log-log regression over a country panel; writes
    /// regression.json and scatter.csv.
    Regress(RegressArgs),
    /// Fetch indicator data into a CSV cache and merge it into a panel.
    Fetch(FetchArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON scenario config; replaces the individual flags below.
    #[arg(long)]
    config: Option<PathBuf>,

    #[arg(long, value_enum)]
    schedule: Option<ScheduleKind>,

    /// Money level (constant) or initial money (exponential).
    #[arg(long = "M0")]
    m0: Option<f64>,

    /// Money supply rate for the linear schedule.
    #[arg(long = "V0")]
    v0: Option<f64>,

    /// Money growth rate for the exponential schedule.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,

    /// Feedback exponent for the output-power schedule.
    #[arg(long)]
    alpha: Option<f64>,

    /// Tabulated knots as comma-separated t:M pairs, e.g. 0:100,5:120.
    #[arg(long)]
    knots: Option<String>,

    /// Relaxation time constant.
    #[arg(long)]
    k: Option<f64>,

    /// Initial sales value.
    #[arg(long = "W0")]
    w0: Option<f64>,

    /// Initial real output.
    #[arg(long = "Y0")]
    y0: Option<f64>,

    /// Real output growth rate.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<f64>,

    #[arg(long = "t-end")]
    t_end: Option<f64>,

    /// Integration step; defaults to a hundredth of the fastest timescale.
    #[arg(long)]
    dt: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScheduleKind {
    Constant,
    Linear,
    Exponential,
    OutputPower,
    Tabulated,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Input CSV with header period,q,g,c.
    #[arg(long, conflicts_with = "fixture")]
    input: Option<PathBuf>,

    /// Use an embedded series instead of a file; available: china.
    #[arg(long)]
    fixture: Option<String>,

    /// Evident money-growth increase, percentage points.
    #[arg(long, default_value_t = Thresholds::default().evident_up)]
    evident_up: f64,

    /// Evident money-growth decrease, percentage points.
    #[arg(long, default_value_t = Thresholds::default().evident_down)]
    evident_down: f64,

    /// Sensitive zone: money growth less than this fraction above output
    /// growth.
    #[arg(long, default_value_t = Thresholds::default().sensitivity_ratio)]
    sensitivity_ratio: f64,

    /// Evident-change bar inside the sensitive zone, percentage points.
    #[arg(long, default_value_t = Thresholds::default().sensitive_trigger)]
    sensitive_trigger: f64,

    /// Deltas within this band count as flat, percentage points.
    #[arg(long, default_value_t = Thresholds::default().tie_eps)]
    tie_eps: f64,

    /// Slopes within this band of -1 count as balanced-line moves.
    #[arg(long, default_value_t = Thresholds::default().slope_delta)]
    slope_delta: f64,

    /// Longest accepted buffer run before a double drop.
    #[arg(long, default_value_t = Thresholds::default().max_buffer_steps)]
    max_buffer_steps: usize,
}

impl ClassifyArgs {
    fn thresholds(&self) -> Thresholds {
        Thresholds {
            evident_up: self.evident_up,
            evident_down: self.evident_down,
            sensitivity_ratio: self.sensitivity_ratio,
            sensitive_trigger: self.sensitive_trigger,
            tie_eps: self.tie_eps,
            slope_delta: self.slope_delta,
            max_buffer_steps: self.max_buffer_steps,
        }
    }
}

#[derive(Args)]
struct ResolveArgs {
    /// Money-growth direction.
    #[arg(long = "q-dir", value_enum)]
    q_dir: Option<QDirArg>,

    /// Numeric migration slope dc/dg.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "slope_class")]
    slope: Option<f64>,

    /// Slope class, if you'd rather not give a number.
    #[arg(long, value_enum)]
    slope_class: Option<SlopeClassArg>,

    /// Behavior label.
    #[arg(long, value_enum)]
    behavior: Option<BehaviorArg>,

    /// Output-growth direction; splits the natural-cycle row into golden
    /// growth and stagflation.
    #[arg(long, value_enum)]
    dg: Option<DgArg>,

    /// Slopes within this band of -1 count as the balanced-line class.
    #[arg(long, default_value_t = Thresholds::default().slope_delta)]
    slope_delta: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QDirArg {
    Up,
    Down,
    Flat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SlopeClassArg {
    /// Slope equal to -1: a move along the balanced line.
    EqMinusOne,
    /// Slope below -1.
    BelowMinusOne,
    /// Slope between -1 and 0.
    BetweenMinusOneAndZero,
    /// Positive slope: inflation and output moving together.
    Positive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BehaviorArg {
    GoldenGrowth,
    Stagflation,
    Gi,
    Go,
    Li,
    Lo,
    Dd,
    Dr,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DgArg {
    Up,
    Down,
}

#[derive(Args)]
struct RegressArgs {
    /// Input panel CSV with header country,period,q,g,c.
    #[arg(long)]
    input: PathBuf,

    /// First year of the window (inclusive).
    #[arg(long)]
    year_start: Option<i32>,

    /// Last year of the window (inclusive).
    #[arg(long)]
    year_end: Option<i32>,

    /// Minimum covered years per country.
    #[arg(long, default_value_t = 10)]
    min_coverage: usize,
}

#[derive(Args)]
struct FetchArgs {
    /// Provider root speaking the World Bank API v2 shape.
    #[arg(long, default_value = qex::data::WORLDBANK_API_BASE)]
    base_url: String,

    /// Directory for the per-indicator CSV cache.
    #[arg(long)]
    cache_dir: PathBuf,

    /// Year range requested, as start:end.
    #[arg(long, default_value = "1960:2015")]
    years: String,

    /// Indicator code for money growth (panel column q).
    #[arg(long, default_value_t = IndicatorSet::default().money_growth)]
    q_code: String,

    /// Indicator code for real output growth (panel column g).
    #[arg(long, default_value_t = IndicatorSet::default().output_growth)]
    g_code: String,

    /// Indicator code for inflation (panel column c).
    #[arg(long, default_value_t = IndicatorSet::default().inflation)]
    c_code: String,

    /// Where to write the merged country,period,q,g,c panel.
    #[arg(long)]
    panel_out: Option<PathBuf>,

    /// Attempts per page before giving up.
    #[arg(long, default_value_t = 3)]
    attempts: u32,

    /// First retry delay in milliseconds; doubles per attempt.
    #[arg(long, default_value_t = 500)]
    backoff_ms: u64,
}

fn main() {
    let cli = Cli::parse();
    if let Err(failure) = commands::run(&cli) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}
