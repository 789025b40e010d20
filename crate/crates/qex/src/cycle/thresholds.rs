use serde::{Deserialize, Serialize};

use super::CycleError;

/// Tuning knobs for the series classifier.
///
/// The defaults are the empirical values calibrated on China's 2002-2016
/// record; they are deliberately parameters rather than constants because the
/// calibration does not transfer to other economies unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// An evident money-growth increase, percentage points (default 3).
    pub evident_up: f64,
    /// An evident money-growth decrease, percentage points (default 4).
    pub evident_down: f64,
    /// The sensitive zone: money growth less than this fraction above real
    /// output growth (default 0.35).
    pub sensitivity_ratio: f64,
    /// In the sensitive zone a money-growth change of this size already
    /// counts as evident, percentage points (default 1).
    pub sensitive_trigger: f64,
    /// Deltas within this band count as flat, percentage points
    /// (default 0.05).
    pub tie_eps: f64,
    /// Migration slopes within this band of −1 count as moves along the
    /// balanced line (default 0.1).
    pub slope_delta: f64,
    /// Longest run of buffer steps accepted between an evident money-growth
    /// decrease and the double drop it causes (default 2).
    pub max_buffer_steps: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            evident_up: 3.0,
            evident_down: 4.0,
            sensitivity_ratio: 0.35,
            sensitive_trigger: 1.0,
            tie_eps: 0.05,
            slope_delta: 0.1,
            max_buffer_steps: 2,
        }
    }
}

impl Thresholds {
    /// Checks the thresholds. `tie_eps` and `slope_delta` may be zero (an
    /// exact-tie regime); everything else must be strictly positive.
    pub fn validate(&self) -> Result<(), CycleError> {
        let positive = [
            ("evident_up", self.evident_up),
            ("evident_down", self.evident_down),
            ("sensitivity_ratio", self.sensitivity_ratio),
            ("sensitive_trigger", self.sensitive_trigger),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CycleError::InvalidThreshold {
                    name,
                    reason: "must be strictly positive".to_string(),
                });
            }
        }
        for (name, v) in [("tie_eps", self.tie_eps), ("slope_delta", self.slope_delta)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(CycleError::InvalidThreshold {
                    name,
                    reason: "must be non-negative".to_string(),
                });
            }
        }
        if self.max_buffer_steps == 0 {
            return Err(CycleError::InvalidThreshold {
                name: "max_buffer_steps",
                reason: "must be at least 1".to_string(),
            });
        }
        Ok(())
    }
}
