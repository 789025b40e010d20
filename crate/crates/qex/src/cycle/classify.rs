use serde::{Deserialize, Serialize};

use super::triangle::ElasticityClass;
use super::{CycleError, MacroObservation, MacroSeries, Thresholds};

/// Direction the behavior taxonomy attributes to money growth over a step.
///
/// For seesaw steps this is the sign of the same-period money-growth delta
/// (flat within `tie_eps`). For double moves it is implied by the behavior
/// itself — expansion for a double rise, contraction for a double drop —
/// which can differ in timing from the same-period delta when the causing
/// change landed a period earlier; the raw delta is always kept in `dq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QDirection {
    Up,
    Down,
    Flat,
}

/// The eight behaviors an economy can show between two observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BehaviorLabel {
    /// Natural cycle, output up and inflation down along the balanced line.
    #[serde(rename = "golden-growth")]
    GoldenGrowth,
    /// Natural cycle, output down and inflation up along the balanced line.
    #[serde(rename = "stagflation")]
    Stagflation,
    /// Money up, slope below −1: inflation reacts harder than output.
    #[serde(rename = "GI")]
    GreaterInflation,
    /// Money up, slope in (−1, 0): output reacts harder than inflation.
    #[serde(rename = "GO")]
    GreaterOutput,
    /// Money down, slope in (−1, 0).
    #[serde(rename = "LI")]
    LessInflation,
    /// Money down, slope below −1.
    #[serde(rename = "LO")]
    LessOutput,
    /// Inflation and output growth falling together.
    #[serde(rename = "DD")]
    DoubleDrop,
    /// Inflation and output growth rising together.
    #[serde(rename = "DR")]
    DoubleRise,
}

impl BehaviorLabel {
    pub const ALL: [BehaviorLabel; 8] = [
        BehaviorLabel::GoldenGrowth,
        BehaviorLabel::Stagflation,
        BehaviorLabel::GreaterInflation,
        BehaviorLabel::GreaterOutput,
        BehaviorLabel::LessInflation,
        BehaviorLabel::LessOutput,
        BehaviorLabel::DoubleDrop,
        BehaviorLabel::DoubleRise,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            BehaviorLabel::GoldenGrowth => "golden-growth",
            BehaviorLabel::Stagflation => "stagflation",
            BehaviorLabel::GreaterInflation => "GI",
            BehaviorLabel::GreaterOutput => "GO",
            BehaviorLabel::LessInflation => "LI",
            BehaviorLabel::LessOutput => "LO",
            BehaviorLabel::DoubleDrop => "DD",
            BehaviorLabel::DoubleRise => "DR",
        }
    }
}

impl std::fmt::Display for BehaviorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// Which cycle family a step belongs to: absolute natural cycle, relative
/// natural cycle, or strong driving cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CycleClass {
    Anc,
    Rnc,
    Sdc,
}

/// The coarse per-period tag used in spectrum summaries: DR and DD runs
/// stand out, everything else (including natural-cycle moves) reads RNC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CoarseTag {
    Dr,
    Dd,
    Rnc,
}

impl std::fmt::Display for CoarseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CoarseTag::Dr => "DR",
            CoarseTag::Dd => "DD",
            CoarseTag::Rnc => "RNC",
        })
    }
}

/// One classified state migration between consecutive observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MigrationStep {
    pub from: String,
    pub to: String,
    /// Raw money-growth delta, percentage points.
    pub dq: f64,
    /// Output-growth delta, percentage points.
    pub dg: f64,
    /// Inflation delta, percentage points.
    pub dc: f64,
    /// Migration slope `dc/dg`; `None` when `dg = 0`.
    pub elasticity: Option<f64>,
    pub q_direction: QDirection,
    /// Slope class consistent with the label (see [`ElasticityClass`]).
    pub elasticity_class: Option<ElasticityClass>,
    /// `None` only for a flat step with no earlier label to carry.
    pub label: Option<BehaviorLabel>,
    pub cycle_class: Option<CycleClass>,
    /// Both deltas within the tie band: no migration to classify.
    pub degenerate: bool,
    /// Label inherited from the previous step of a series.
    pub carried: bool,
}

/// Migration slope `∂c/∂g` between two observations.
///
/// Errors when output growth did not change.
pub fn elasticity(prev: &MacroObservation, next: &MacroObservation) -> Result<f64, CycleError> {
    let dg = next.output_growth - prev.output_growth;
    if dg == 0.0 {
        return Err(CycleError::UndefinedSlope);
    }
    Ok((next.inflation - prev.inflation) / dg)
}

/// Classifies one state migration.
///
/// Double moves first: both deltas beyond the tie band and of equal sign are
/// DR/DD, and a delta inside the band inherits the other's direction, so a
/// flat inflation reading does not interrupt a double-drop run. What remains
/// is a seesaw step, refined by the money-growth direction and the slope:
/// flat money on a slope near −1 is a natural-cycle move, otherwise the sign
/// of `dq` and the slope against −1 pick one of GI, GO, LI, LO.
pub fn classify_step(
    prev: &MacroObservation,
    next: &MacroObservation,
    th: &Thresholds,
) -> MigrationStep {
    let dq = next.money_growth - prev.money_growth;
    let dg = next.output_growth - prev.output_growth;
    let dc = next.inflation - prev.inflation;
    let eps = th.tie_eps;
    let slope = if dg != 0.0 { Some(dc / dg) } else { None };

    let raw_q_dir = if dq > eps {
        QDirection::Up
    } else if dq < -eps {
        QDirection::Down
    } else {
        QDirection::Flat
    };

    let mut step = MigrationStep {
        from: prev.period.clone(),
        to: next.period.clone(),
        dq,
        dg,
        dc,
        elasticity: slope,
        q_direction: raw_q_dir,
        elasticity_class: None,
        label: None,
        cycle_class: None,
        degenerate: false,
        carried: false,
    };

    let flat_dg = dg.abs() <= eps;
    let flat_dc = dc.abs() <= eps;

    if flat_dg && flat_dc {
        step.degenerate = true;
        return step;
    }

    // Tie inheritance: a flat delta takes the direction of the live one.
    let dg_sign = if flat_dg { dc.signum() } else { dg.signum() };
    let dc_sign = if flat_dc { dg.signum() } else { dc.signum() };

    if dg_sign > 0.0 && dc_sign > 0.0 {
        step.label = Some(BehaviorLabel::DoubleRise);
        step.cycle_class = Some(CycleClass::Sdc);
        step.q_direction = QDirection::Up;
        step.elasticity_class = Some(ElasticityClass::Positive);
        return step;
    }
    if dg_sign < 0.0 && dc_sign < 0.0 {
        step.label = Some(BehaviorLabel::DoubleDrop);
        step.cycle_class = Some(CycleClass::Sdc);
        step.q_direction = QDirection::Down;
        step.elasticity_class = Some(ElasticityClass::Positive);
        return step;
    }

    // Seesaw: both deltas are live and opposed, so the slope exists and is
    // negative.
    let slope = slope.expect("seesaw step has dg != 0");
    let on_balanced_line = (slope + 1.0).abs() <= th.slope_delta;

    if raw_q_dir == QDirection::Flat && (on_balanced_line || dq == 0.0) {
        // A move along the balanced line. An exactly-zero money delta is
        // always read this way, whatever the slope measured.
        step.label = Some(if dg > 0.0 {
            BehaviorLabel::GoldenGrowth
        } else {
            BehaviorLabel::Stagflation
        });
        step.cycle_class = Some(CycleClass::Anc);
        step.q_direction = QDirection::Flat;
        step.elasticity_class = Some(ElasticityClass::EqMinusOne);
        return step;
    }

    // Money did move (possibly within the tie band but not exactly zero):
    // classify by its sign and the slope against -1.
    let dir = if dq > 0.0 { QDirection::Up } else { QDirection::Down };
    let class = if slope <= -1.0 {
        ElasticityClass::BelowMinusOne
    } else {
        ElasticityClass::BetweenMinusOneAndZero
    };
    step.label = Some(match (dir, class) {
        (QDirection::Up, ElasticityClass::BelowMinusOne) => BehaviorLabel::GreaterInflation,
        (QDirection::Up, _) => BehaviorLabel::GreaterOutput,
        (_, ElasticityClass::BelowMinusOne) => BehaviorLabel::LessOutput,
        _ => BehaviorLabel::LessInflation,
    });
    step.cycle_class = Some(CycleClass::Rnc);
    step.q_direction = dir;
    step.elasticity_class = Some(class);
    step
}

/// Coarse tag for one period of a spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodTag {
    pub period: String,
    pub tag: CoarseTag,
    pub carried: bool,
}

/// A classified series: every consecutive migration plus the coarse
/// per-period spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub steps: Vec<MigrationStep>,
    pub spectrum: Vec<PeriodTag>,
}

impl Spectrum {
    /// The coarse tags as a plain `period -> tag` list, ignoring carried
    /// markers.
    pub fn coarse(&self) -> Vec<(String, CoarseTag)> {
        self.spectrum
            .iter()
            .map(|t| (t.period.clone(), t.tag))
            .collect()
    }
}

fn coarse_of(label: BehaviorLabel) -> CoarseTag {
    match label {
        BehaviorLabel::DoubleRise => CoarseTag::Dr,
        BehaviorLabel::DoubleDrop => CoarseTag::Dd,
        _ => CoarseTag::Rnc,
    }
}

/// Classifies every consecutive pair of a series.
///
/// Degenerate (both-flat) steps carry the previous step's label forward and
/// are marked `carried`; a wholly flat series yields no coarse tags at all.
pub fn classify_series(series: &MacroSeries, th: &Thresholds) -> Result<Spectrum, CycleError> {
    th.validate()?;
    let obs = series.observations();
    if obs.len() < 2 {
        return Err(CycleError::InvalidSeries(
            "need at least 2 observations to classify".to_string(),
        ));
    }

    let mut steps = Vec::with_capacity(obs.len() - 1);
    let mut tags = Vec::new();
    for pair in obs.windows(2) {
        let mut step = classify_step(&pair[0], &pair[1], th);
        if step.degenerate {
            if let Some(prev_label) = steps.last().and_then(|s: &MigrationStep| s.label) {
                let prev_class = steps.last().and_then(|s: &MigrationStep| s.cycle_class);
                step.label = Some(prev_label);
                step.cycle_class = prev_class;
                step.carried = true;
            }
        }
        if let Some(label) = step.label {
            tags.push(PeriodTag {
                period: step.to.clone(),
                tag: coarse_of(label),
                carried: step.carried,
            });
        }
        steps.push(step);
    }
    Ok(Spectrum {
        steps,
        spectrum: tags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn obs(period: &str, q: f64, g: f64, c: f64) -> MacroObservation {
        MacroObservation::new(period, q, g, c)
    }

    #[test]
    fn published_migration_slopes() {
        let th = Thresholds::default();
        // 2004 -> 2005: (g 10.1, c 3.9) to (g 11.4, c 1.8).
        let e = elasticity(&obs("2004", 16.4, 10.1, 3.9), &obs("2005", 16.0, 11.4, 1.8)).unwrap();
        assert_relative_eq!(e, -1.6153846153846154, max_relative = 1e-12);
        // 2005 -> 2006.
        let e = elasticity(&obs("2005", 16.0, 11.4, 1.8), &obs("2006", 16.8, 12.7, 1.5)).unwrap();
        assert_relative_eq!(e, -0.23076923076923078, max_relative = 1e-12);
        // 2015 -> 2016.
        let e = elasticity(&obs("2015", 11.8, 6.9, 1.4), &obs("2016", 12.1, 6.7, 2.0)).unwrap();
        assert_relative_eq!(e, -3.0, max_relative = 1e-12);

        // Labels that go with them.
        let s = classify_step(&obs("2004", 16.4, 10.1, 3.9), &obs("2005", 16.0, 11.4, 1.8), &th);
        assert_eq!(s.label, Some(BehaviorLabel::LessOutput));
        let s = classify_step(&obs("2015", 11.8, 6.9, 1.4), &obs("2016", 12.1, 6.7, 2.0), &th);
        assert_eq!(s.label, Some(BehaviorLabel::GreaterInflation));
    }

    #[test]
    fn undefined_slope_when_output_growth_is_unchanged() {
        assert!(matches!(
            elasticity(&obs("a", 1.0, 5.0, 2.0), &obs("b", 2.0, 5.0, 3.0)),
            Err(CycleError::UndefinedSlope)
        ));
    }

    #[test]
    fn double_rise_and_double_drop() {
        let th = Thresholds::default();
        let s = classify_step(&obs("2002", 16.8, 9.1, -0.8), &obs("2003", 19.9, 10.0, 1.2), &th);
        assert_eq!(s.label, Some(BehaviorLabel::DoubleRise));
        assert_eq!(s.cycle_class, Some(CycleClass::Sdc));
        assert_eq!(s.q_direction, QDirection::Up);

        let s = classify_step(&obs("2008", 16.5, 9.7, 5.9), &obs("2009", 26.2, 9.4, -0.7), &th);
        assert_eq!(s.label, Some(BehaviorLabel::DoubleDrop));
        // The raw money delta rose; the taxonomy direction is the drop's.
        assert!(s.dq > 0.0);
        assert_eq!(s.q_direction, QDirection::Down);
    }

    #[test]
    fn flat_inflation_tie_continues_a_double_drop() {
        let th = Thresholds::default();
        // China 2012 -> 2013: dg = -0.1, dc = 0.0.
        let s = classify_step(&obs("2012", 17.3, 7.9, 2.6), &obs("2013", 14.8, 7.8, 2.6), &th);
        assert_eq!(s.label, Some(BehaviorLabel::DoubleDrop));
        assert!(!s.degenerate);
    }

    #[test]
    fn balanced_line_moves_with_flat_money() {
        let th = Thresholds::default();
        let s = classify_step(&obs("a", 10.0, 4.0, 6.0), &obs("b", 10.0, 8.0, 2.0), &th);
        assert_eq!(s.label, Some(BehaviorLabel::GoldenGrowth));
        assert_eq!(s.cycle_class, Some(CycleClass::Anc));
        let s = classify_step(&obs("a", 10.0, 8.0, 2.0), &obs("b", 10.0, 4.0, 6.0), &th);
        assert_eq!(s.label, Some(BehaviorLabel::Stagflation));
    }

    #[test]
    fn degenerate_steps_have_no_label_without_history() {
        let th = Thresholds::default();
        let s = classify_step(&obs("a", 10.0, 4.0, 6.0), &obs("b", 10.0, 4.0, 6.0), &th);
        assert!(s.degenerate);
        assert_eq!(s.label, None);
    }

    #[test]
    fn series_carries_labels_over_flat_steps() {
        let th = Thresholds::default();
        let series = MacroSeries::new(vec![
            obs("2001", 10.0, 4.0, 1.0),
            obs("2002", 14.0, 6.0, 3.0),  // DR
            obs("2003", 14.0, 6.0, 3.0),  // flat, carries DR
            obs("2004", 10.0, 4.0, 1.0),  // DD
        ])
        .unwrap();
        let spec = classify_series(&series, &th).unwrap();
        assert_eq!(spec.steps[1].label, Some(BehaviorLabel::DoubleRise));
        assert!(spec.steps[1].carried);
        assert_eq!(
            spec.coarse(),
            vec![
                ("2002".to_string(), CoarseTag::Dr),
                ("2003".to_string(), CoarseTag::Dr),
                ("2004".to_string(), CoarseTag::Dd),
            ]
        );
    }

    #[test]
    fn constant_series_yields_only_degenerate_steps() {
        let th = Thresholds::default();
        let series = MacroSeries::new(vec![
            obs("2001", 10.0, 4.0, 1.0),
            obs("2002", 10.0, 4.0, 1.0),
            obs("2003", 10.0, 4.0, 1.0),
        ])
        .unwrap();
        let spec = classify_series(&series, &th).unwrap();
        assert!(spec.steps.iter().all(|s| s.degenerate && s.label.is_none()));
        assert!(spec.spectrum.is_empty());
    }

    #[test]
    fn synthetic_balanced_path_is_all_natural_cycle() {
        // c = q - g with q fixed and g alternating: every step must come out
        // as a natural-cycle move with slope -1.
        let th = Thresholds::default();
        let q = 10.0;
        let mut rows = Vec::new();
        for (i, g) in [4.0, 8.0, 4.0, 8.0, 4.0, 8.0].iter().enumerate() {
            rows.push(obs(&format!("{}", 2000 + i), q, *g, q - *g));
        }
        let series = MacroSeries::new(rows).unwrap();
        let spec = classify_series(&series, &th).unwrap();
        for step in &spec.steps {
            assert_eq!(step.cycle_class, Some(CycleClass::Anc), "step {step:?}");
            assert_relative_eq!(step.elasticity.unwrap(), -1.0);
        }
    }
}
