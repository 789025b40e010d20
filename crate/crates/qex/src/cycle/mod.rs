//! Business-cycle behavior classification on annual `(q, g, c)` series:
//! money growth, real output growth and inflation, all in percent per year.
//!
//! On the balanced path `c = q − g` the economy moves along a line of slope
//! −1 in `(g, c)` space. A state migration either stays on such a line (the
//! natural cycle, split into golden growth and stagflation), slides to a new
//! line while keeping the seesaw between output and inflation (the relative
//! natural cycle: GI, GO, LI, LO), or breaks the seesaw entirely when money
//! growth changes hard enough (the strong driving cycle: double rise and
//! double drop).

mod buffer;
mod classify;
mod observation;
mod sensitivity;
mod thresholds;
mod triangle;

pub use buffer::{detect_buffer, BufferEpisode, BufferReport};
pub use classify::{
    classify_series, classify_step, elasticity, BehaviorLabel, CoarseTag, CycleClass,
    MigrationStep, PeriodTag, QDirection, Spectrum,
};
pub use observation::{MacroObservation, MacroSeries};
pub use sensitivity::{
    classify_money_change, sensitivity_index, MoneyChangeClass, SensitivityFlag, SensitivityIndex,
};
pub use thresholds::Thresholds;
pub use triangle::{
    resolve_behavior, resolve_elasticity_class, resolve_q_direction, resolve_triangle,
    ElasticityClass, GrowthDirection, TriangleAnswer, TriangleQuery,
};

/// Errors from series validation and triangle resolution.
#[derive(Debug, thiserror::Error)]
pub enum CycleError {
    #[error("elasticity undefined: output growth did not change between the two observations")]
    UndefinedSlope,

    #[error("no matching taxonomy row: {0}")]
    NoMatchingRow(String),

    #[error(
        "natural-cycle row is ambiguous without the output-growth direction; \
         supply whether g moved up or down"
    )]
    AmbiguousNaturalCycle,

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid threshold `{name}`: {reason}")]
    InvalidThreshold { name: &'static str, reason: String },
}
