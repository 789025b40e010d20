//! The buffer rule: an evident money-growth decrease does not produce its
//! double drop immediately — a short interlude of seesaw (natural or
//! relative-natural) steps sits in between. The response is asymmetric: a
//! double rise follows an evident increase with no such interlude, so the
//! detector never looks for buffers ahead of DR runs.

use serde::Serialize;

use super::classify::{BehaviorLabel, MigrationStep};
use super::sensitivity::{classify_money_change, sensitivity_index, MoneyChangeClass};
use super::{MacroSeries, Thresholds};

/// One detected decrease → buffer → double-drop episode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BufferEpisode {
    /// First period of the (possibly multi-step) evident-decrease run.
    pub trigger_from: String,
    /// Last period of the evident-decrease run.
    pub trigger_to: String,
    /// The buffer steps between trigger and drop, as `(from, to)` pairs.
    pub buffer: Vec<(String, String)>,
    /// Period in which the double drop lands.
    pub dd_period: String,
}

/// Episodes plus everything that looked off: drops with no preceding
/// decrease, drops with no buffer at all, buffers longer than expected.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BufferReport {
    pub episodes: Vec<BufferEpisode>,
    pub anomalies: Vec<String>,
}

fn is_dd(step: &MigrationStep) -> bool {
    step.label == Some(BehaviorLabel::DoubleDrop)
}

fn buffer_eligible(step: &MigrationStep) -> bool {
    !matches!(
        step.label,
        Some(BehaviorLabel::DoubleDrop) | Some(BehaviorLabel::DoubleRise)
    )
}

/// Scans a classified series for buffer episodes.
///
/// For each double-drop run the detector walks back over the seesaw steps
/// directly before it (the buffer candidates), finds the latest evident
/// money-growth decrease inside that window or immediately before it, and
/// extends the trigger backwards over consecutive decrease steps. Sensitivity
/// is judged at each step's starting observation, so a small decrease in the
/// sensitive zone still triggers.
pub fn detect_buffer(
    series: &MacroSeries,
    steps: &[MigrationStep],
    th: &Thresholds,
) -> BufferReport {
    let obs = series.observations();
    debug_assert_eq!(obs.len(), steps.len() + 1, "steps must match the series");

    let changes: Vec<MoneyChangeClass> = steps
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let flag = sensitivity_index(&obs[i], th).flag;
            classify_money_change(step.dq, flag, th)
        })
        .collect();

    let mut report = BufferReport::default();

    for d in 0..steps.len() {
        let run_start = is_dd(&steps[d]) && (d == 0 || !is_dd(&steps[d - 1]));
        if !run_start {
            continue;
        }
        let dd_period = steps[d].to.clone();

        // Buffer candidates: the maximal run of non-double steps just before
        // the drop.
        let mut j = d;
        while j > 0 && buffer_eligible(&steps[j - 1]) {
            j -= 1;
        }
        let buffer_range = j..d;

        // Latest evident decrease inside the buffer or immediately before it.
        let window_start = j.saturating_sub(1);
        let trigger_end = (window_start..d)
            .rev()
            .find(|&i| changes[i] == MoneyChangeClass::EvidentDecrease);

        let Some(trigger_end) = trigger_end else {
            report.anomalies.push(format!(
                "double drop at {dd_period} has no preceding evident money-growth decrease"
            ));
            continue;
        };

        let mut trigger_start = trigger_end;
        while trigger_start > 0 && changes[trigger_start - 1] == MoneyChangeClass::EvidentDecrease {
            trigger_start -= 1;
        }

        if buffer_range.is_empty() {
            report.anomalies.push(format!(
                "double drop at {dd_period} followed the money-growth decrease with no buffer period"
            ));
        } else if buffer_range.len() > th.max_buffer_steps {
            report.anomalies.push(format!(
                "buffer before the double drop at {dd_period} spans {} steps, more than the expected {}",
                buffer_range.len(),
                th.max_buffer_steps
            ));
        }

        report.episodes.push(BufferEpisode {
            trigger_from: steps[trigger_start].from.clone(),
            trigger_to: steps[trigger_end].to.clone(),
            buffer: buffer_range
                .map(|i| (steps[i].from.clone(), steps[i].to.clone()))
                .collect(),
            dd_period,
        });
    }

    report
}
