use serde::{Deserialize, Serialize};

use super::{ModelError, MoneySupplySchedule, ScenarioParams};

/// Which long-run branch the scenario settles on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeBranch {
    /// Exponential supply with `q > −1/k`: the balanced path `c = q − g`.
    Typical,
    /// Exponential supply with `q < −1/k`: money withdrawn faster than the
    /// market can relax; `c = −g − 1/k` no longer depends on money growth.
    Disordered,
    /// Constant, linear or output-feedback supply: inflation and output
    /// growth stay opposed, `c = −g`.
    Seesaw,
    /// The boundary `k·q = −1`; `c = −g − 1/k` with an algebraic transient.
    Resonance,
}

/// Sign of the asymptotic inflation rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriceTrend {
    Inflation,
    Deflation,
    Neutral,
}

/// Long-run behavior of a scenario: asymptotic inflation rate, branch, and
/// asymptotic velocity where one exists (1 for the non-exponential schedules,
/// `1/(1 + kq)` for exponential supply above the threshold, divergent below).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongRunRegime {
    pub branch: RegimeBranch,
    pub c_inf: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_inf: Option<f64>,
    pub sign: PriceTrend,
}

fn trend_of(c_inf: f64) -> PriceTrend {
    if c_inf > 0.0 {
        PriceTrend::Inflation
    } else if c_inf < 0.0 {
        PriceTrend::Deflation
    } else {
        PriceTrend::Neutral
    }
}

/// Classifies the long-run regime of a scenario.
///
/// Tabulated schedules cover a finite window and have no asymptotics; they
/// return [`ModelError::NoAsymptoticRegime`].
pub fn long_run_regime(
    schedule: &MoneySupplySchedule,
    params: &ScenarioParams,
) -> Result<LongRunRegime, ModelError> {
    schedule.validate()?;
    let k = params.k();
    let g = params.output_growth();
    let regime = match schedule {
        MoneySupplySchedule::Constant { .. }
        | MoneySupplySchedule::Linear { .. }
        | MoneySupplySchedule::OutputPower { .. } => LongRunRegime {
            branch: RegimeBranch::Seesaw,
            c_inf: -g,
            v_inf: Some(1.0),
            sign: trend_of(-g),
        },
        MoneySupplySchedule::Exponential { growth: q, .. } => {
            let threshold_gap = q + 1.0 / k;
            if threshold_gap > 0.0 {
                let c_inf = q - g;
                LongRunRegime {
                    branch: RegimeBranch::Typical,
                    c_inf,
                    v_inf: Some(1.0 / (1.0 + k * q)),
                    sign: trend_of(c_inf),
                }
            } else {
                let c_inf = -g - 1.0 / k;
                LongRunRegime {
                    branch: if threshold_gap == 0.0 {
                        RegimeBranch::Resonance
                    } else {
                        RegimeBranch::Disordered
                    },
                    c_inf,
                    v_inf: None,
                    sign: trend_of(c_inf),
                }
            }
        }
        MoneySupplySchedule::Tabulated { .. } => return Err(ModelError::NoAsymptoticRegime),
    };
    Ok(regime)
}
