//! Macro-series ingestion and the balanced-path regression: the embedded
//! China fixture, CSV panels, a World Bank style indicator fetcher, and the
//! log-log OLS of average inflation against the average money-output growth
//! gap.

mod aggregate;
mod fixture;
mod regression;
mod series_io;
mod worldbank;

pub use aggregate::{country_aggregates, AggregateOutcome, CountryAggregate};
pub use fixture::china_fixture;
pub use regression::{
    balanced_path_regression, ols, run_balanced_path, OlsFit, RegressionReport, RegressionResult,
};
pub use series_io::{load_series, write_panel_csv, LoadedSeries, Panel};
pub use worldbank::{
    fetch_worldbank, merge_panel, FetchConfig, FetchReport, IndicatorSet, WORLDBANK_API_BASE,
};

/// Errors from file ingestion, fetching and regression.
#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV in {path}: {reason}")]
    MalformedCsv { path: String, reason: String },

    #[error("non-numeric value `{value}` in {path}, row {row}, column {column}")]
    NonNumericCell {
        path: String,
        row: usize,
        column: String,
        value: String,
    },

    #[error("duplicate key ({country}, {period}) in {path}")]
    DuplicateKey {
        path: String,
        country: String,
        period: String,
    },

    #[error("{path} contains no usable observations")]
    EmptySeries { path: String },

    #[error("invalid series: {0}")]
    InvalidSeries(#[from] crate::cycle::CycleError),

    #[error("regression needs at least 3 usable points, got {got}")]
    InsufficientData { got: usize },

    #[error("unknown indicator code `{code}`: {reason}")]
    UnknownIndicator { code: String, reason: String },

    #[error(
        "fetch of `{indicator}` failed after {attempts} attempts: {reason}; \
         indicators already cached: [{cached}]"
    )]
    FetchFailed {
        indicator: String,
        attempts: u32,
        reason: String,
        cached: String,
    },

    #[error("unexpected response for `{indicator}`: {reason}")]
    BadResponse { indicator: String, reason: String },

    #[error("invalid argument {name}: {reason}")]
    InvalidArgument { name: &'static str, reason: String },
}
