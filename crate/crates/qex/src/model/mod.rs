//! The dynamical exchange equation `k·dW/dt = M(t) − W` and what follows
//! from it: closed-form solutions, a fixed-step integrator, long-run
//! inflation regimes and the price–output curve.

mod closed_form;
mod integrator;
mod params;
mod price_output;
mod regime;
mod schedule;
mod trajectory;

pub use closed_form::{
    analytic_inflation, analytic_sales, inflation_path, price_constant, price_exponential,
    price_linear, sales_constant, sales_exponential, sales_linear,
};
pub use integrator::{default_step, integrate};
pub use params::{ScenarioConfig, ScenarioParams};
pub use price_output::{price_output_curve, DemandRegime, PriceOutputCurve};
pub use regime::{long_run_regime, LongRunRegime, PriceTrend, RegimeBranch};
pub use schedule::MoneySupplySchedule;
pub use trajectory::{Trajectory, TrajectorySample};

/// Errors from scenario validation, schedule evaluation and integration.
#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("output-feedback schedule needs the current sales value")]
    MissingSalesValue,

    #[error("sales value only applies to the output-feedback schedule")]
    UnexpectedSalesValue,

    #[error("time {t} outside tabulated range [{min}, {max}]; no extrapolation")]
    TimeOutOfRange { t: f64, min: f64, max: f64 },

    #[error("step {dt} too large for relaxation time {k}: need dt <= k/2")]
    StepTooLarge { dt: f64, k: f64 },

    #[error("sales value driven non-positive at t = {t}")]
    NonPositiveSales { t: f64 },

    #[error("no asymptotic regime for a tabulated schedule")]
    NoAsymptoticRegime,

    #[error("price-output curve needs nonzero output growth g")]
    ZeroOutputGrowth,

    #[error("price-output regime is defined only for money growth q > -1/k")]
    SubcriticalMoneyGrowth,
}
