//! The price–output curve under exponential money supply.
//!
//! Eliminating time between the price path and `Y = Y0·e^(g t)` gives the
//! price as a function of real output,
//!
//! ```text
//! P(Y) = [ M0·Y0^(−q/|g|)·Y^(−1 + q/|g|)
//!        + (W0 − M0 + k·q·W0)·Y0^(1/(|g|·k))·Y^(−1 − 1/(|g|·k)) ] / (1 + k·q)
//! ```
//!
//! The second term always decays in `Y`; the first grows precisely when
//! `q > |g|`. So at large output the demand the curve describes is *rigid*
//! (price rising with output) for `q > |g|` and *elastic* (price falling)
//! for `q < |g|` — fast enough money growth flips the apparent demand
//! elasticity of the market.

use serde::{Deserialize, Serialize};

use super::{ModelError, ScenarioParams};

/// Demand regime read off the large-output tail of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DemandRegime {
    /// `q > |g|`: price increases with output at large output.
    Rigid,
    /// `q < |g|`: price decreases with output.
    Elastic,
    /// `q = |g|`: the leading term goes flat.
    Boundary,
}

/// The sampled curve plus its demand-regime tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceOutputCurve {
    /// `(output, price)` pairs on the requested grid.
    pub points: Vec<(f64, f64)>,
    pub regime: DemandRegime,
}

/// Evaluates the price–output curve for exponential supply `M0·e^(q t)` on
/// `y_grid` and tags the demand regime.
///
/// Requires `g ≠ 0` (the curve's exponents carry `1/|g|`) and `q > −1/k`
/// (below the threshold the long-run term the tag reasons about no longer
/// dominates).
pub fn price_output_curve(
    initial_money: f64,
    money_growth: f64,
    params: &ScenarioParams,
    y_grid: &[f64],
) -> Result<PriceOutputCurve, ModelError> {
    if !(initial_money > 0.0) {
        return Err(ModelError::InvalidParameter {
            name: "M0",
            reason: "must be positive".to_string(),
        });
    }
    let k = params.k();
    let g = params.output_growth();
    if g == 0.0 {
        return Err(ModelError::ZeroOutputGrowth);
    }
    if !(money_growth + 1.0 / k > 0.0) {
        return Err(ModelError::SubcriticalMoneyGrowth);
    }
    if y_grid.iter().any(|y| !(*y > 0.0) || !y.is_finite()) {
        return Err(ModelError::InvalidParameter {
            name: "y_grid",
            reason: "outputs must be positive and finite".to_string(),
        });
    }

    let g_abs = g.abs();
    let y0 = params.initial_output();
    let w0 = params.initial_sales();
    let denom = 1.0 + k * money_growth;
    let trailing_coeff = w0 - initial_money + k * money_growth * w0;
    let points = y_grid
        .iter()
        .map(|&y| {
            let r = y / y0;
            let leading = (initial_money / y0) * r.powf(money_growth / g_abs - 1.0);
            let trailing = (trailing_coeff / y0) * r.powf(-1.0 - 1.0 / (g_abs * k));
            (y, (leading + trailing) / denom)
        })
        .collect();

    let regime = if money_growth > g_abs {
        DemandRegime::Rigid
    } else if money_growth < g_abs {
        DemandRegime::Elastic
    } else {
        DemandRegime::Boundary
    };

    Ok(PriceOutputCurve { points, regime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::closed_form::price_exponential;
    use approx::assert_relative_eq;

    fn params(k: f64, w0: f64, y0: f64, g: f64) -> ScenarioParams {
        ScenarioParams::new(k, w0, y0, g).unwrap()
    }

    #[test]
    fn regime_tags_follow_money_versus_output_growth() {
        let p = params(1.0, 50.0, 10.0, 0.04);
        let grid = [10.0, 100.0, 1000.0];
        let rigid = price_output_curve(100.0, 0.10, &p, &grid).unwrap();
        assert_eq!(rigid.regime, DemandRegime::Rigid);
        assert!(rigid.points[2].1 > rigid.points[1].1);

        let p2 = params(1.0, 50.0, 10.0, 0.05);
        let elastic = price_output_curve(100.0, 0.02, &p2, &grid).unwrap();
        assert_eq!(elastic.regime, DemandRegime::Elastic);
        assert!(elastic.points[2].1 < elastic.points[1].1);

        let boundary = price_output_curve(100.0, 0.05, &p2, &grid).unwrap();
        assert_eq!(boundary.regime, DemandRegime::Boundary);
    }

    #[test]
    fn curve_starts_at_initial_price_ratio() {
        // At Y = Y0 the curve collapses to W0/Y0 regardless of the other
        // parameters.
        let p = params(2.0, 30.0, 6.0, -0.07);
        let curve = price_output_curve(100.0, 0.1, &p, &[6.0]).unwrap();
        assert_relative_eq!(curve.points[0].1, 5.0, max_relative = 1e-12);
    }

    #[test]
    fn parametric_elimination_matches_price_path_for_growing_output() {
        // With g > 0, substituting Y(t) = Y0·e^(g t) must reproduce the
        // closed-form price path exactly.
        let p = params(1.0, 50.0, 10.0, 0.04);
        let (m0, q) = (100.0, 0.1);
        let times = [0.0, 1.0, 5.0, 20.0, 60.0];
        let ys: Vec<f64> = times.iter().map(|&t| p.output_at(t)).collect();
        let curve = price_output_curve(m0, q, &p, &ys).unwrap();
        for (i, &t) in times.iter().enumerate() {
            assert_relative_eq!(
                curve.points[i].1,
                price_exponential(m0, q, &p, t),
                max_relative = 1e-8
            );
        }
    }

    #[test]
    fn rejects_zero_growth_and_subcritical_money() {
        let p = params(1.0, 50.0, 10.0, 0.0);
        assert!(matches!(
            price_output_curve(100.0, 0.1, &p, &[10.0]),
            Err(ModelError::ZeroOutputGrowth)
        ));
        let p2 = params(1.0, 50.0, 10.0, 0.04);
        assert!(matches!(
            price_output_curve(100.0, -1.0, &p2, &[10.0]),
            Err(ModelError::SubcriticalMoneyGrowth)
        ));
    }
}
