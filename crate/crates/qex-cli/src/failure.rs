use qex::cycle::CycleError;
use qex::data::DataError;
use qex::model::ModelError;

/// Exit codes: 0 ok, 2 input error, 3 numeric/domain/runtime error,
/// 4 insufficient data.
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INSUFFICIENT: i32 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub fn fail(code: i32, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        let code = match &e {
            ModelError::InvalidParameter { .. } => EXIT_INPUT,
            ModelError::MissingSalesValue | ModelError::UnexpectedSalesValue => EXIT_INPUT,
            ModelError::StepTooLarge { .. }
            | ModelError::TimeOutOfRange { .. }
            | ModelError::NonPositiveSales { .. }
            | ModelError::NoAsymptoticRegime
            | ModelError::ZeroOutputGrowth
            | ModelError::SubcriticalMoneyGrowth => EXIT_DOMAIN,
        };
        fail(code, e)
    }
}

impl From<CycleError> for Failure {
    fn from(e: CycleError) -> Self {
        fail(EXIT_INPUT, e)
    }
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        let code = match &e {
            DataError::InsufficientData { .. } => EXIT_INSUFFICIENT,
            DataError::FetchFailed { .. } | DataError::BadResponse { .. } => EXIT_DOMAIN,
            _ => EXIT_INPUT,
        };
        fail(code, e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        fail(EXIT_DOMAIN, format!("i/o error: {e}"))
    }
}
