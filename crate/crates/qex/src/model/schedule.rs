use serde::{Deserialize, Serialize};

use super::ModelError;

/// How the money supply `M(t)` evolves over a scenario.
///
/// The three parametric forms (constant, linear, exponential) have closed-form
/// sales-value solutions; the output-feedback form `M = W^alpha` and tabulated
/// replay data are handled by the integrator only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MoneySupplySchedule {
    /// `M(t) = M0`.
    Constant {
        #[serde(rename = "M0")]
        level: f64,
    },
    /// `M(t) = V0 · t`, money injected at a constant rate.
    Linear {
        #[serde(rename = "V0")]
        rate: f64,
    },
    /// `M(t) = M0 · e^(q t)`.
    Exponential {
        #[serde(rename = "M0")]
        initial: f64,
        #[serde(rename = "q")]
        growth: f64,
    },
    /// `M(t) = W(t)^alpha` with `0 < alpha < 1`; supply fed back from the
    /// current sales value.
    OutputPower {
        #[serde(rename = "alpha")]
        exponent: f64,
    },
    /// Piecewise-linear interpolation through `(time, money)` knots. Used to
    /// replay observed money series. No extrapolation outside the knot range.
    Tabulated { knots: Vec<(f64, f64)> },
}

impl MoneySupplySchedule {
    /// Checks the schedule's own invariants.
    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |name: &'static str, reason: &str| ModelError::InvalidParameter {
            name,
            reason: reason.to_string(),
        };
        match self {
            Self::Constant { level } => {
                if !(*level > 0.0) {
                    return Err(bad("M0", "must be positive"));
                }
            }
            Self::Linear { rate } => {
                if !(*rate > 0.0) {
                    return Err(bad("V0", "must be positive"));
                }
            }
            Self::Exponential { initial, growth } => {
                if !(*initial > 0.0) {
                    return Err(bad("M0", "must be positive"));
                }
                if !growth.is_finite() {
                    return Err(bad("q", "must be finite"));
                }
            }
            Self::OutputPower { exponent } => {
                if !(*exponent > 0.0 && *exponent < 1.0) {
                    return Err(bad("alpha", "must lie strictly between 0 and 1"));
                }
            }
            Self::Tabulated { knots } => {
                if knots.len() < 2 {
                    return Err(bad("knots", "need at least 2 knots"));
                }
                for pair in knots.windows(2) {
                    if !(pair[1].0 > pair[0].0) {
                        return Err(bad("knots", "times must be strictly increasing"));
                    }
                }
                if knots.iter().any(|&(_, m)| !(m > 0.0)) {
                    return Err(bad("knots", "money values must be strictly positive"));
                }
            }
        }
        Ok(())
    }

    /// True for the output-feedback form, whose evaluation needs the current
    /// sales value.
    pub fn is_output_feedback(&self) -> bool {
        matches!(self, Self::OutputPower { .. })
    }

    /// Evaluates `M(t)`.
    ///
    /// `sales` must be supplied if and only if the schedule is the
    /// output-feedback form. Tabulated schedules reject times outside the
    /// knot range rather than extrapolate.
    pub fn eval(&self, t: f64, sales: Option<f64>) -> Result<f64, ModelError> {
        if !t.is_finite() || t < 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "t",
                reason: "must be finite and non-negative".to_string(),
            });
        }
        if sales.is_some() != self.is_output_feedback() {
            return Err(if sales.is_some() {
                ModelError::UnexpectedSalesValue
            } else {
                ModelError::MissingSalesValue
            });
        }
        match self {
            Self::Constant { level } => Ok(*level),
            Self::Linear { rate } => Ok(rate * t),
            Self::Exponential { initial, growth } => Ok(initial * (growth * t).exp()),
            Self::OutputPower { exponent } => {
                let w = sales.expect("checked above");
                if !(w > 0.0) {
                    return Err(ModelError::NonPositiveSales { t });
                }
                Ok(w.powf(*exponent))
            }
            Self::Tabulated { knots } => {
                let (t_min, _) = knots[0];
                let (t_max, _) = knots[knots.len() - 1];
                if t < t_min || t > t_max {
                    return Err(ModelError::TimeOutOfRange {
                        t,
                        min: t_min,
                        max: t_max,
                    });
                }
                // Knot times are strictly increasing, so the partition point
                // brackets t.
                let hi = knots.partition_point(|&(kt, _)| kt < t).min(knots.len() - 1);
                let lo = hi.saturating_sub(1);
                let (t0, m0) = knots[lo];
                let (t1, m1) = knots[hi];
                if t1 == t0 {
                    return Ok(m0);
                }
                let frac = (t - t0) / (t1 - t0);
                Ok(m0 + frac * (m1 - m0))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_with_zero_growth_is_constant() {
        let s = MoneySupplySchedule::Exponential {
            initial: 100.0,
            growth: 0.0,
        };
        assert_eq!(s.eval(5.0, None).unwrap(), 100.0);
    }

    #[test]
    fn linear_starts_at_zero() {
        let s = MoneySupplySchedule::Linear { rate: 10.0 };
        assert_eq!(s.eval(0.0, None).unwrap(), 0.0);
    }

    #[test]
    fn exponential_growth_matches_high_precision_value() {
        let s = MoneySupplySchedule::Exponential {
            initial: 100.0,
            growth: 0.1,
        };
        // 100 * e, frozen from a high-precision exponentiation oracle.
        assert_relative_eq!(
            s.eval(10.0, None).unwrap(),
            271.828182845904523536,
            max_relative = 1e-15
        );
    }

    #[test]
    fn output_feedback_requires_sales_value() {
        let s = MoneySupplySchedule::OutputPower { exponent: 0.5 };
        assert!(matches!(
            s.eval(1.0, None),
            Err(ModelError::MissingSalesValue)
        ));
        assert_eq!(s.eval(1.0, Some(4.0)).unwrap(), 2.0);

        let c = MoneySupplySchedule::Constant { level: 100.0 };
        assert!(matches!(
            c.eval(1.0, Some(4.0)),
            Err(ModelError::UnexpectedSalesValue)
        ));
    }

    #[test]
    fn tabulated_interpolates_and_rejects_out_of_range() {
        let s = MoneySupplySchedule::Tabulated {
            knots: vec![(0.0, 100.0), (10.0, 200.0)],
        };
        assert_relative_eq!(s.eval(2.5, None).unwrap(), 125.0);
        assert_relative_eq!(s.eval(10.0, None).unwrap(), 200.0);
        assert!(matches!(
            s.eval(10.5, None),
            Err(ModelError::TimeOutOfRange { .. })
        ));
    }

    #[test]
    fn validation_catches_bad_shapes() {
        assert!(MoneySupplySchedule::Constant { level: 0.0 }.validate().is_err());
        assert!(MoneySupplySchedule::OutputPower { exponent: 1.0 }.validate().is_err());
        assert!(MoneySupplySchedule::Tabulated {
            knots: vec![(0.0, 1.0)]
        }
        .validate()
        .is_err());
        assert!(MoneySupplySchedule::Tabulated {
            knots: vec![(0.0, 1.0), (0.0, 2.0)]
        }
        .validate()
        .is_err());
        assert!(MoneySupplySchedule::Tabulated {
            knots: vec![(0.0, 1.0), (1.0, -2.0)]
        }
        .validate()
        .is_err());
    }

    #[test]
    fn schedule_json_round_trip() {
        let s = MoneySupplySchedule::Exponential {
            initial: 100.0,
            growth: 0.1,
        };
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"type":"exponential","M0":100.0,"q":0.1}"#);
        let back: MoneySupplySchedule = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }
}
