//! The balanced-path regression: ordinary least squares of `ln(avg c)` on
//! `ln(avg q − avg g)` across country aggregates. On the balanced path the
//! two are equal, so the fitted slope should sit near 1.

use serde::Serialize;

use super::{country_aggregates, CountryAggregate, DataError, Panel};

/// Simple OLS fit of `y` on `x` with intercept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OlsFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope, `sqrt(SSE / ((n−2)·Sxx))`.
    pub stderr: f64,
    /// Pearson correlation of `x` and `y`.
    pub correlation: f64,
    pub n: usize,
}

/// Closed-form simple OLS via centered sums.
///
/// Needs at least 3 points and variation in `x`.
pub fn ols(points: &[(f64, f64)]) -> Result<OlsFit, DataError> {
    let n = points.len();
    if n < 3 {
        return Err(DataError::InsufficientData { got: n });
    }
    let nf = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let (mut sxx, mut syy, mut sxy) = (0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in points {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 {
        return Err(DataError::InvalidArgument {
            name: "points",
            reason: "no variation in the regressor".to_string(),
        });
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    // Residuals summed directly: the algebraic shortcut Syy − slope²·Sxx
    // cancels catastrophically on near-exact fits.
    let sse: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let stderr = (sse / ((nf - 2.0) * sxx)).sqrt();
    let correlation = if syy == 0.0 {
        0.0
    } else {
        sxy / (sxx * syy).sqrt()
    };
    Ok(OlsFit {
        slope,
        intercept,
        stderr,
        correlation,
        n,
    })
}

/// The regression outcome in the shape reports use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegressionResult {
    pub slope: f64,
    pub stderr: f64,
    pub correlation: f64,
    pub intercept: f64,
    pub n_points: usize,
}

/// Regression result plus full exclusion accounting:
/// `n_input = n_used + n_excluded_positivity + n_excluded_coverage`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionReport {
    pub result: RegressionResult,
    pub n_input: usize,
    pub n_used: usize,
    /// Countries with non-positive average inflation or non-positive average
    /// money-output gap, outside the log domain.
    pub n_excluded_positivity: usize,
    /// Countries below the minimum coverage (zero when the aggregates were
    /// built elsewhere).
    pub n_excluded_coverage: usize,
    /// The aggregates that entered the fit.
    pub used: Vec<CountryAggregate>,
}

/// Fits `ln(avg c) = a + b·ln(avg q − avg g)` over the given aggregates,
/// excluding (and counting) countries outside the log domain.
pub fn balanced_path_regression(
    aggregates: &[CountryAggregate],
) -> Result<RegressionReport, DataError> {
    let mut used = Vec::new();
    let mut points = Vec::new();
    for agg in aggregates {
        let gap = agg.growth_gap();
        if agg.avg_inflation > 0.0 && gap > 0.0 {
            points.push((gap.ln(), agg.avg_inflation.ln()));
            used.push(agg.clone());
        }
    }
    let excluded = aggregates.len() - used.len();
    if points.len() < 3 {
        return Err(DataError::InsufficientData { got: points.len() });
    }
    let fit = ols(&points)?;
    Ok(RegressionReport {
        result: RegressionResult {
            slope: fit.slope,
            stderr: fit.stderr,
            correlation: fit.correlation,
            intercept: fit.intercept,
            n_points: fit.n,
        },
        n_input: aggregates.len(),
        n_used: used.len(),
        n_excluded_positivity: excluded,
        n_excluded_coverage: 0,
        used,
    })
}

/// The whole pipeline: aggregate a panel, then regress, with the coverage
/// exclusions folded into the accounting.
pub fn run_balanced_path(
    panel: &Panel,
    year_range: Option<(i32, i32)>,
    min_coverage: usize,
) -> Result<RegressionReport, DataError> {
    let outcome = country_aggregates(panel, year_range, min_coverage);
    let mut report = balanced_path_regression(&outcome.aggregates)?;
    report.n_input = panel.len();
    report.n_excluded_coverage = outcome.excluded_coverage;
    debug_assert_eq!(
        report.n_input,
        report.n_used + report.n_excluded_positivity + report.n_excluded_coverage
    );
    Ok(report)
}
