//! The deterministic triangle between money-growth direction, migration
//! slope class, and behavior: knowing any two pins down the third.
//!
//! | q direction | slope ∂c/∂g        | behavior                        |
//! |-------------|--------------------|---------------------------------|
//! | flat        | = −1               | golden growth (g↑) / stagflation (g↓) |
//! | up          | < −1               | GI                              |
//! | up          | in (−1, 0)         | GO                              |
//! | up          | > 0                | DR                              |
//! | down        | < −1               | LO                              |
//! | down        | in (−1, 0)         | LI                              |
//! | down        | > 0                | DD                              |

use serde::{Deserialize, Serialize};

use super::classify::{BehaviorLabel, QDirection};
use super::CycleError;

/// Where a migration slope sits relative to the balanced line's −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElasticityClass {
    EqMinusOne,
    BelowMinusOne,
    BetweenMinusOneAndZero,
    Positive,
}

impl ElasticityClass {
    /// Classifies a numeric slope. Slopes within `delta` of −1 count as the
    /// balanced-line class; zero counts as positive (no inflation response).
    pub fn of_slope(slope: f64, delta: f64) -> Self {
        if (slope + 1.0).abs() <= delta {
            Self::EqMinusOne
        } else if slope >= 0.0 {
            Self::Positive
        } else if slope < -1.0 {
            Self::BelowMinusOne
        } else {
            Self::BetweenMinusOneAndZero
        }
    }
}

/// Direction of the output-growth delta, used to split the natural-cycle row
/// into its two behaviors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthDirection {
    Up,
    Down,
}

/// The canonical (q direction, slope class) pair for each behavior.
fn row(behavior: BehaviorLabel) -> (QDirection, ElasticityClass) {
    use BehaviorLabel::*;
    use ElasticityClass::*;
    match behavior {
        GoldenGrowth | Stagflation => (QDirection::Flat, EqMinusOne),
        GreaterInflation => (QDirection::Up, BelowMinusOne),
        GreaterOutput => (QDirection::Up, BetweenMinusOneAndZero),
        DoubleRise => (QDirection::Up, Positive),
        LessOutput => (QDirection::Down, BelowMinusOne),
        LessInflation => (QDirection::Down, BetweenMinusOneAndZero),
        DoubleDrop => (QDirection::Down, Positive),
    }
}

/// Resolves the behavior from money direction and slope class. The
/// natural-cycle row needs `dg` to split golden growth from stagflation.
pub fn resolve_behavior(
    q_direction: QDirection,
    class: ElasticityClass,
    dg: Option<GrowthDirection>,
) -> Result<BehaviorLabel, CycleError> {
    use BehaviorLabel::*;
    use ElasticityClass::*;
    match (q_direction, class) {
        (QDirection::Flat, EqMinusOne) => match dg {
            Some(GrowthDirection::Up) => Ok(GoldenGrowth),
            Some(GrowthDirection::Down) => Ok(Stagflation),
            None => Err(CycleError::AmbiguousNaturalCycle),
        },
        (QDirection::Up, BelowMinusOne) => Ok(GreaterInflation),
        (QDirection::Up, BetweenMinusOneAndZero) => Ok(GreaterOutput),
        (QDirection::Up, Positive) => Ok(DoubleRise),
        (QDirection::Down, BelowMinusOne) => Ok(LessOutput),
        (QDirection::Down, BetweenMinusOneAndZero) => Ok(LessInflation),
        (QDirection::Down, Positive) => Ok(DoubleDrop),
        (q, e) => Err(CycleError::NoMatchingRow(format!(
            "q {q:?} with slope class {e:?}"
        ))),
    }
}

/// Resolves the money-growth direction from slope class and behavior.
pub fn resolve_q_direction(
    class: ElasticityClass,
    behavior: BehaviorLabel,
) -> Result<QDirection, CycleError> {
    let (q, e) = row(behavior);
    if e == class {
        Ok(q)
    } else {
        Err(CycleError::NoMatchingRow(format!(
            "behavior {behavior:?} pairs with slope class {e:?}, not {class:?}"
        )))
    }
}

/// Resolves the slope class from money-growth direction and behavior.
pub fn resolve_elasticity_class(
    q_direction: QDirection,
    behavior: BehaviorLabel,
) -> Result<ElasticityClass, CycleError> {
    let (q, e) = row(behavior);
    if q == q_direction {
        Ok(e)
    } else {
        Err(CycleError::NoMatchingRow(format!(
            "behavior {behavior:?} pairs with q {q:?}, not {q_direction:?}"
        )))
    }
}

/// A triangle query: whichever element is wanted, given the other two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TriangleQuery {
    Behavior {
        q_direction: QDirection,
        class: ElasticityClass,
        dg: Option<GrowthDirection>,
    },
    QDirection {
        class: ElasticityClass,
        behavior: BehaviorLabel,
    },
    ElasticityClass {
        q_direction: QDirection,
        behavior: BehaviorLabel,
    },
}

/// The resolved third element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleAnswer {
    Behavior(BehaviorLabel),
    QDirection(QDirection),
    ElasticityClass(ElasticityClass),
}

/// One-call form of the three resolvers.
pub fn resolve_triangle(query: TriangleQuery) -> Result<TriangleAnswer, CycleError> {
    match query {
        TriangleQuery::Behavior {
            q_direction,
            class,
            dg,
        } => resolve_behavior(q_direction, class, dg).map(TriangleAnswer::Behavior),
        TriangleQuery::QDirection { class, behavior } => {
            resolve_q_direction(class, behavior).map(TriangleAnswer::QDirection)
        }
        TriangleQuery::ElasticityClass {
            q_direction,
            behavior,
        } => resolve_elasticity_class(q_direction, behavior).map(TriangleAnswer::ElasticityClass),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BehaviorLabel::*;

    #[test]
    fn flat_balanced_slope_splits_on_output_direction() {
        assert_eq!(
            resolve_behavior(
                QDirection::Flat,
                ElasticityClass::EqMinusOne,
                Some(GrowthDirection::Up)
            )
            .unwrap(),
            GoldenGrowth
        );
        assert_eq!(
            resolve_behavior(
                QDirection::Flat,
                ElasticityClass::EqMinusOne,
                Some(GrowthDirection::Down)
            )
            .unwrap(),
            Stagflation
        );
        assert!(matches!(
            resolve_behavior(QDirection::Flat, ElasticityClass::EqMinusOne, None),
            Err(CycleError::AmbiguousNaturalCycle)
        ));
    }

    #[test]
    fn rising_money_with_positive_slope_is_double_rise() {
        assert_eq!(
            resolve_behavior(QDirection::Up, ElasticityClass::Positive, None).unwrap(),
            DoubleRise
        );
    }

    #[test]
    fn falling_money_with_steep_slope_is_less_output() {
        assert_eq!(
            resolve_behavior(QDirection::Down, ElasticityClass::BelowMinusOne, None).unwrap(),
            LessOutput
        );
    }

    #[test]
    fn inconsistent_pairs_have_no_row() {
        assert!(resolve_behavior(QDirection::Flat, ElasticityClass::Positive, None).is_err());
        assert!(resolve_q_direction(ElasticityClass::Positive, GreaterInflation).is_err());
        assert!(resolve_elasticity_class(QDirection::Down, GreaterOutput).is_err());
    }

    #[test]
    fn slope_classification_boundaries() {
        assert_eq!(
            ElasticityClass::of_slope(-1.0, 0.1),
            ElasticityClass::EqMinusOne
        );
        assert_eq!(
            ElasticityClass::of_slope(-1.6, 0.1),
            ElasticityClass::BelowMinusOne
        );
        assert_eq!(
            ElasticityClass::of_slope(-0.23, 0.1),
            ElasticityClass::BetweenMinusOneAndZero
        );
        assert_eq!(ElasticityClass::of_slope(0.5, 0.1), ElasticityClass::Positive);
        assert_eq!(ElasticityClass::of_slope(0.0, 0.1), ElasticityClass::Positive);
    }
}
