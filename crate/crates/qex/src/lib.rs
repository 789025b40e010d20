//! Relaxation dynamics for the quantity equation of exchange.
//!
//! The classical exchange identity `M·v = P·Y` treats the velocity of money
//! `v` as a constant. This crate instead treats the identity as the
//! equilibrium of a relaxation process: the money supply `M(t)` acts as a
//! carrying capacity for the nominal sales value `W = P·Y`, and the gap
//! `M − W` closes with a characteristic time `k`,
//!
//! ```text
//!     k · dW/dt = M(t) − W(t),        W(0) = W0.
//! ```
//!
//! Everything else follows from that one equation:
//!
//! * [`model`] integrates it for arbitrary money-supply schedules, evaluates
//!   the closed-form solutions for constant, linear and exponential supply,
//!   and classifies the long-run inflation regime (the balanced path
//!   `c = q − g`, its disordered counterpart `c = −g − 1/k`, and the seesaw
//!   `c = −g`).
//! * [`cycle`] classifies annual state migrations in `(g, c)` space into the
//!   eight business-cycle behaviors and applies the sensitivity and buffer
//!   rules to a series.
//! * [`data`] ingests macro panels (embedded China fixture, local CSV, a
//!   World Bank style fetcher) and runs the balanced-path log-log regression.
//!
//! The `qex` command-line tool in the companion crate binds these into
//! reproducible runs. A narrative guide lives in `book/`; its code snippets
//! are compiled and run as doctests of this crate.

pub mod cycle;
pub mod data;
pub mod fmt;
pub mod model;

pub use cycle::{
    classify_series, classify_step, detect_buffer, BehaviorLabel, CycleClass, MacroObservation,
    MacroSeries, MigrationStep, Thresholds,
};
pub use data::{balanced_path_regression, china_fixture, RegressionReport, RegressionResult};
pub use model::{
    integrate, long_run_regime, LongRunRegime, MoneySupplySchedule, ScenarioParams, Trajectory,
};

// Keep the book's code snippets honest: every fenced Rust block in the guide
// is compiled and executed by `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/relaxation.md")]
    pub mod relaxation {}
    #[doc = include_str!("../../../book/src/long_run.md")]
    pub mod long_run {}
    #[doc = include_str!("../../../book/src/behaviors.md")]
    pub mod behaviors {}
    #[doc = include_str!("../../../book/src/rules.md")]
    pub mod rules {}
    #[doc = include_str!("../../../book/src/regression.md")]
    pub mod regression {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
