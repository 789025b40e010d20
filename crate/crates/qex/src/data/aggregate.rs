use serde::Serialize;

use super::Panel;

/// Per-country arithmetic means over the covered years.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountryAggregate {
    pub country: String,
    /// Mean money growth, percent per year.
    pub avg_money_growth: f64,
    /// Mean real output growth, percent per year.
    pub avg_output_growth: f64,
    /// Mean inflation, percent per year.
    pub avg_inflation: f64,
    /// Years with a complete `(q, g, c)` triple inside the range.
    pub n_years: usize,
}

impl CountryAggregate {
    /// The average money-output growth gap `avg_q − avg_g`.
    pub fn growth_gap(&self) -> f64 {
        self.avg_money_growth - self.avg_output_growth
    }
}

/// Aggregates plus the coverage-exclusion count.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateOutcome {
    pub aggregates: Vec<CountryAggregate>,
    /// Countries dropped for having fewer covered years than the minimum.
    pub excluded_coverage: usize,
}

/// Averages each country's series over the years in `year_range` (inclusive,
/// `None` for no restriction), excluding countries with fewer than
/// `min_coverage` covered years.
///
/// Observations enter a country's mean only when their period parses as a
/// calendar year inside the range; rows in a loaded panel are complete
/// triples by construction.
pub fn country_aggregates(
    panel: &Panel,
    year_range: Option<(i32, i32)>,
    min_coverage: usize,
) -> AggregateOutcome {
    let mut aggregates = Vec::new();
    let mut excluded = 0usize;
    for (country, series) in panel {
        let mut n = 0usize;
        let (mut sq, mut sg, mut sc) = (0.0f64, 0.0f64, 0.0f64);
        for obs in series.observations() {
            let year = obs.period.trim().parse::<i32>().ok();
            let in_range = match (year, year_range) {
                (Some(y), Some((lo, hi))) => y >= lo && y <= hi,
                (Some(_), None) => true,
                // Non-year labels only count when no range is requested.
                (None, None) => true,
                (None, Some(_)) => false,
            };
            if in_range {
                n += 1;
                sq += obs.money_growth;
                sg += obs.output_growth;
                sc += obs.inflation;
            }
        }
        if n < min_coverage.max(1) {
            excluded += 1;
            continue;
        }
        aggregates.push(CountryAggregate {
            country: country.clone(),
            avg_money_growth: sq / n as f64,
            avg_output_growth: sg / n as f64,
            avg_inflation: sc / n as f64,
            n_years: n,
        });
    }
    AggregateOutcome {
        aggregates,
        excluded_coverage: excluded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::{MacroObservation, MacroSeries};
    use approx::assert_relative_eq;

    fn constant_country(years: std::ops::Range<i32>, q: f64, g: f64, c: f64) -> MacroSeries {
        MacroSeries::new(
            years
                .map(|y| MacroObservation::new(y.to_string(), q, g, c))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn constant_series_average_to_themselves() {
        let mut panel = Panel::new();
        panel.insert("AAA".to_string(), constant_country(1990..2010, 10.0, 4.0, 6.0));
        let out = country_aggregates(&panel, None, 10);
        assert_eq!(out.aggregates.len(), 1);
        let a = &out.aggregates[0];
        assert_relative_eq!(a.growth_gap(), 6.0);
        assert_relative_eq!(a.avg_inflation, 6.0);
        assert_eq!(a.n_years, 20);
    }

    #[test]
    fn short_coverage_is_excluded_and_counted() {
        let mut panel = Panel::new();
        panel.insert("AAA".to_string(), constant_country(2000..2005, 10.0, 4.0, 6.0));
        panel.insert("BBB".to_string(), constant_country(1990..2010, 9.0, 3.0, 6.0));
        let out = country_aggregates(&panel, None, 10);
        assert_eq!(out.aggregates.len(), 1);
        assert_eq!(out.aggregates[0].country, "BBB");
        assert_eq!(out.excluded_coverage, 1);
    }

    #[test]
    fn year_range_restricts_the_mean() {
        let mut panel = Panel::new();
        let rows = vec![
            MacroObservation::new("2000", 10.0, 4.0, 1.0),
            MacroObservation::new("2001", 20.0, 6.0, 3.0),
            MacroObservation::new("2002", 30.0, 8.0, 5.0),
        ];
        panel.insert("AAA".to_string(), MacroSeries::new(rows).unwrap());
        let out = country_aggregates(&panel, Some((2001, 2002)), 1);
        let a = &out.aggregates[0];
        assert_relative_eq!(a.avg_money_growth, 25.0);
        assert_eq!(a.n_years, 2);
    }
}
