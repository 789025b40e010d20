use serde::{Deserialize, Serialize};

use super::{ModelError, MoneySupplySchedule};

/// The scenario constants shared by every schedule: relaxation time `k`,
/// initial sales value `W0`, initial real output `Y0` and the constant real
/// output growth rate `g` (output follows `Y(t) = Y0·e^(g t)`).
///
/// All quantities are unit-free; `g` may be negative. `W0 = 0` is accepted so
/// the closed forms can be evaluated from an empty start, but the integrator
/// requires a strictly positive initial sales value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    relaxation_time: f64,
    initial_sales: f64,
    initial_output: f64,
    output_growth: f64,
}

impl ScenarioParams {
    pub fn new(
        relaxation_time: f64,
        initial_sales: f64,
        initial_output: f64,
        output_growth: f64,
    ) -> Result<Self, ModelError> {
        let bad = |name: &'static str, reason: &str| ModelError::InvalidParameter {
            name,
            reason: reason.to_string(),
        };
        if !(relaxation_time > 0.0) || !relaxation_time.is_finite() {
            return Err(bad("k", "must be a positive finite number"));
        }
        if !(initial_sales >= 0.0) || !initial_sales.is_finite() {
            return Err(bad("W0", "must be finite and non-negative"));
        }
        if !(initial_output > 0.0) || !initial_output.is_finite() {
            return Err(bad("Y0", "must be a positive finite number"));
        }
        if !output_growth.is_finite() {
            return Err(bad("g", "must be finite"));
        }
        Ok(Self {
            relaxation_time,
            initial_sales,
            initial_output,
            output_growth,
        })
    }

    /// Relaxation time `k`.
    pub fn k(&self) -> f64 {
        self.relaxation_time
    }

    /// Initial sales value `W0`.
    pub fn initial_sales(&self) -> f64 {
        self.initial_sales
    }

    /// Initial real output `Y0`.
    pub fn initial_output(&self) -> f64 {
        self.initial_output
    }

    /// Real output growth rate `g`.
    pub fn output_growth(&self) -> f64 {
        self.output_growth
    }

    /// Real output `Y(t) = Y0·e^(g t)`.
    pub fn output_at(&self, t: f64) -> f64 {
        self.initial_output * (self.output_growth * t).exp()
    }
}

/// On-disk scenario description: schedule plus scenario constants plus the
/// integration window, as accepted by `qex simulate --config`.
///
/// ```json
/// {"schedule": {"type": "exponential", "M0": 100.0, "q": 0.1},
///  "k": 1.0, "W0": 50.0, "Y0": 10.0, "g": 0.03,
///  "t_end": 100.0, "dt": 0.01}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub schedule: MoneySupplySchedule,
    pub k: f64,
    #[serde(rename = "W0")]
    pub initial_sales: f64,
    #[serde(rename = "Y0")]
    pub initial_output: f64,
    pub g: f64,
    pub t_end: f64,
    /// Integration step; when omitted the integrator's default step is used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
}

impl ScenarioConfig {
    /// Validates the schedule and scenario constants, returning the params.
    pub fn params(&self) -> Result<ScenarioParams, ModelError> {
        self.schedule.validate()?;
        ScenarioParams::new(self.k, self.initial_sales, self.initial_output, self.g)
    }
}
