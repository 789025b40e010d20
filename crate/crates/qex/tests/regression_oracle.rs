//! The OLS implementation against an independent textbook oracle, and the
//! aggregate/regression pipeline against brute-force recomputation on
//! synthetic panels.

use qex::cycle::{MacroObservation, MacroSeries};
use qex::data::{balanced_path_regression, country_aggregates, ols, CountryAggregate, Panel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Literal textbook formulas on raw sums: slope = Sxy/Sxx,
/// stderr = sqrt(SSE/((n-2)·Sxx)), r = Sxy/sqrt(Sxx·Syy).
fn textbook_ols(points: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    let n = points.len() as f64;
    let sum_x: f64 = points.iter().map(|p| p.0).sum();
    let sum_y: f64 = points.iter().map(|p| p.1).sum();
    let sum_xx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sum_yy: f64 = points.iter().map(|p| p.1 * p.1).sum();
    let sum_xy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let sxx = sum_xx - sum_x * sum_x / n;
    let syy = sum_yy - sum_y * sum_y / n;
    let sxy = sum_xy - sum_x * sum_y / n;
    let slope = sxy / sxx;
    let intercept = sum_y / n - slope * sum_x / n;
    let sse = (syy - slope * sxy).max(0.0);
    let stderr = (sse / ((n - 2.0) * sxx)).sqrt();
    let r = sxy / (sxx * syy).sqrt();
    (slope, stderr, r, intercept)
}

#[test]
fn ols_matches_the_textbook_oracle_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x01_5);
    for _ in 0..200 {
        let n = rng.random_range(3usize..50);
        let slope = rng.random_range(-3.0f64..3.0);
        let intercept = rng.random_range(-5.0f64..5.0);
        let points: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let x = rng.random_range(-10.0f64..10.0);
                let y = intercept + slope * x + rng.random_range(-1.0f64..1.0);
                (x, y)
            })
            .collect();
        let fit = ols(&points).unwrap();
        let (slope_o, stderr_o, r_o, intercept_o) = textbook_ols(&points);
        assert!((fit.slope - slope_o).abs() <= 1e-10, "slope mismatch");
        assert!((fit.stderr - stderr_o).abs() <= 1e-10, "stderr mismatch");
        assert!((fit.correlation - r_o).abs() <= 1e-10, "correlation mismatch");
        assert!((fit.intercept - intercept_o).abs() <= 1e-10, "intercept mismatch");
    }
}

fn synthetic_panel(
    rng: &mut ChaCha8Rng,
    n_countries: usize,
    years: std::ops::Range<i32>,
    noise: f64,
) -> Panel {
    let normal = Normal::new(0.0, 1.0).unwrap();
    let mut panel = Panel::new();
    for i in 0..n_countries {
        let g_level = rng.random_range(1.0f64..6.0);
        let gap_level = rng.random_range(0.5f64..40.0);
        let rows: Vec<MacroObservation> = years
            .clone()
            .map(|year| {
                let g = g_level + 0.3 * normal.sample(rng);
                let q = g + gap_level + 0.5 * normal.sample(rng);
                let c = q - g + noise * normal.sample(rng);
                MacroObservation::new(year.to_string(), q, g, c)
            })
            .collect();
        panel.insert(format!("C{i:03}"), MacroSeries::new(rows).unwrap());
    }
    panel
}

#[test]
fn aggregates_match_a_brute_force_mean_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x01_6);
    let panel = synthetic_panel(&mut rng, 50, 1960..2016, 0.3);
    let outcome = country_aggregates(&panel, Some((1960, 2015)), 10);
    assert_eq!(outcome.aggregates.len(), 50);
    for agg in &outcome.aggregates {
        let series = &panel[&agg.country];
        let n = series.len() as f64;
        let mean = |f: &dyn Fn(&MacroObservation) -> f64| {
            series.observations().iter().map(|o| f(o)).sum::<f64>() / n
        };
        assert!((agg.avg_money_growth - mean(&|o| o.money_growth)).abs() < 1e-12);
        assert!((agg.avg_output_growth - mean(&|o| o.output_growth)).abs() < 1e-12);
        assert!((agg.avg_inflation - mean(&|o| o.inflation)).abs() < 1e-12);
        assert_eq!(agg.n_years, series.len());
    }
}

#[test]
fn exact_balanced_panel_recovers_the_unit_slope_exactly() {
    // No noise: every country sits exactly on c = q - g, so the log-log fit
    // is the identity line to machine precision.
    let mut rng = ChaCha8Rng::seed_from_u64(0x01_7);
    let mut panel = Panel::new();
    for i in 0..30 {
        let gap = rng.random_range(0.5f64..30.0);
        let rows: Vec<MacroObservation> = (1960..2016)
            .map(|year| {
                let g = 3.0;
                MacroObservation::new(year.to_string(), g + gap, g, gap)
            })
            .collect();
        panel.insert(format!("C{i:03}"), MacroSeries::new(rows).unwrap());
    }
    let outcome = country_aggregates(&panel, None, 10);
    let report = balanced_path_regression(&outcome.aggregates).unwrap();
    let r = report.result;
    assert!((r.slope - 1.0).abs() <= 1e-12, "slope - 1 = {:e}", r.slope - 1.0);
    assert!(
        (r.correlation - 1.0).abs() <= 1e-12,
        "corr - 1 = {:e}",
        r.correlation - 1.0
    );
    assert!(r.stderr.abs() <= 1e-12, "stderr = {:e}", r.stderr);
    assert!(r.intercept.abs() <= 1e-10, "intercept = {:e}", r.intercept);
}

#[test]
fn noisy_panel_recovers_the_slope_within_three_stderr() {
    // log c = 1.0 · log(q - g) + N(0, 0.3²) across 161 countries.
    let mut rng = ChaCha8Rng::seed_from_u64(0x01_8);
    let normal = Normal::new(0.0, 0.3).unwrap();
    let aggregates: Vec<CountryAggregate> = (0..161)
        .map(|i| {
            let gap: f64 = rng.random_range(0.2f64..50.0);
            let c = (gap.ln() + normal.sample(&mut rng)).exp();
            let g = rng.random_range(1.0f64..5.0);
            CountryAggregate {
                country: format!("C{i:03}"),
                avg_money_growth: g + gap,
                avg_output_growth: g,
                avg_inflation: c,
                n_years: 56,
            }
        })
        .collect();
    let report = balanced_path_regression(&aggregates).unwrap();
    let r = report.result;
    assert_eq!(report.n_used, 161);
    assert!(
        (r.slope - 1.0).abs() <= 3.0 * r.stderr,
        "slope {} with stderr {} strays from 1.0",
        r.slope,
        r.stderr
    );
    assert!(r.correlation > 0.8);
}

#[test]
fn exclusion_accounting_balances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x01_9);
    let mut panel = synthetic_panel(&mut rng, 40, 1960..2016, 0.3);
    // Two short-coverage countries and one deflation country.
    panel.insert(
        "SHORT1".to_string(),
        MacroSeries::new(vec![MacroObservation::new("2000", 10.0, 3.0, 7.0)]).unwrap(),
    );
    panel.insert(
        "SHORT2".to_string(),
        MacroSeries::new(vec![MacroObservation::new("2001", 9.0, 3.0, 6.0)]).unwrap(),
    );
    let deflation: Vec<MacroObservation> = (1960..2016)
        .map(|y| MacroObservation::new(y.to_string(), 2.0, 3.0, -1.0))
        .collect();
    panel.insert("DEFL".to_string(), MacroSeries::new(deflation).unwrap());

    let report = qex::data::run_balanced_path(&panel, None, 10).unwrap();
    assert_eq!(report.n_input, 43);
    assert_eq!(report.n_excluded_coverage, 2);
    assert_eq!(report.n_excluded_positivity, 1);
    assert_eq!(
        report.n_input,
        report.n_used + report.n_excluded_positivity + report.n_excluded_coverage
    );
}
