use serde::{Deserialize, Serialize};

use super::{MacroObservation, Thresholds};

/// Whether inflation is in the zone where it reacts hard to small
/// money-growth changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensitivityFlag {
    Sensitive,
    NotSensitive,
    /// Real output growth non-positive: the relative gap is undefined.
    Unknown,
}

/// The relative money-output gap `q/g − 1` and its sensitivity reading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityIndex {
    /// `q/g − 1`; `None` when `g ≤ 0`.
    pub relative_gap: Option<f64>,
    pub flag: SensitivityFlag,
}

/// How far money growth sits above real output growth, and whether that puts
/// the economy in the sensitive zone (gap below `sensitivity_ratio`, the
/// 35% default).
pub fn sensitivity_index(obs: &MacroObservation, th: &Thresholds) -> SensitivityIndex {
    if obs.output_growth <= 0.0 {
        return SensitivityIndex {
            relative_gap: None,
            flag: SensitivityFlag::Unknown,
        };
    }
    let gap = obs.money_growth / obs.output_growth - 1.0;
    SensitivityIndex {
        relative_gap: Some(gap),
        flag: if gap < th.sensitivity_ratio {
            SensitivityFlag::Sensitive
        } else {
            SensitivityFlag::NotSensitive
        },
    }
}

/// Size classification of a money-growth change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoneyChangeClass {
    EvidentIncrease,
    EvidentDecrease,
    /// Below the evident bar but inside the sensitive zone, where even small
    /// changes move the economy.
    Slight,
    None,
}

/// Classifies a money-growth delta `dq` (percentage points).
///
/// Away from the sensitive zone an increase of `evident_up` (+3pp) or a
/// decrease of `evident_down` (−4pp) counts as evident and anything smaller
/// as no event. Inside the sensitive zone the bar drops to
/// `sensitive_trigger` (1pp) in either direction, and sub-trigger changes
/// are reported as slight rather than dismissed.
pub fn classify_money_change(
    dq: f64,
    flag: SensitivityFlag,
    th: &Thresholds,
) -> MoneyChangeClass {
    match flag {
        SensitivityFlag::Sensitive => {
            if dq >= th.sensitive_trigger {
                MoneyChangeClass::EvidentIncrease
            } else if dq <= -th.sensitive_trigger {
                MoneyChangeClass::EvidentDecrease
            } else if dq.abs() > th.tie_eps {
                MoneyChangeClass::Slight
            } else {
                MoneyChangeClass::None
            }
        }
        SensitivityFlag::NotSensitive | SensitivityFlag::Unknown => {
            if dq >= th.evident_up {
                MoneyChangeClass::EvidentIncrease
            } else if dq <= -th.evident_down {
                MoneyChangeClass::EvidentDecrease
            } else {
                MoneyChangeClass::None
            }
        }
    }
}
