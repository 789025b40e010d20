use super::CycleError;

/// One annual observation: money growth `q`, real output growth `g` and
/// inflation `c`, each in percent per year. `q` and `g` need not be positive.
#[derive(Debug, Clone, PartialEq)]
pub struct MacroObservation {
    /// Period label, normally a calendar year like `"2009"`.
    pub period: String,
    /// Broad money growth, percent per year.
    pub money_growth: f64,
    /// Real output growth, percent per year.
    pub output_growth: f64,
    /// Inflation, percent per year.
    pub inflation: f64,
}

impl MacroObservation {
    pub fn new(
        period: impl Into<String>,
        money_growth: f64,
        output_growth: f64,
        inflation: f64,
    ) -> Self {
        Self {
            period: period.into(),
            money_growth,
            output_growth,
            inflation,
        }
    }

    fn validate(&self) -> Result<(), CycleError> {
        if self.period.trim().is_empty() {
            return Err(CycleError::InvalidSeries("empty period label".to_string()));
        }
        for (name, v) in [
            ("q", self.money_growth),
            ("g", self.output_growth),
            ("c", self.inflation),
        ] {
            if !v.is_finite() {
                return Err(CycleError::InvalidSeries(format!(
                    "non-finite {name} in period {}",
                    self.period
                )));
            }
        }
        Ok(())
    }
}

/// An ordered annual series of observations.
///
/// Periods that all parse as integers (calendar years) must be strictly
/// increasing; otherwise the labels only need to be distinct and the given
/// order is taken as chronological.
#[derive(Debug, Clone, PartialEq)]
pub struct MacroSeries {
    observations: Vec<MacroObservation>,
}

impl MacroSeries {
    pub fn new(observations: Vec<MacroObservation>) -> Result<Self, CycleError> {
        if observations.is_empty() {
            return Err(CycleError::InvalidSeries("empty series".to_string()));
        }
        for obs in &observations {
            obs.validate()?;
        }
        let years: Option<Vec<i64>> = observations
            .iter()
            .map(|o| o.period.trim().parse::<i64>().ok())
            .collect();
        match years {
            Some(years) => {
                if years.windows(2).any(|p| p[1] <= p[0]) {
                    return Err(CycleError::InvalidSeries(
                        "periods must be strictly increasing".to_string(),
                    ));
                }
            }
            None => {
                let mut seen = std::collections::HashSet::new();
                for obs in &observations {
                    if !seen.insert(obs.period.as_str()) {
                        return Err(CycleError::InvalidSeries(format!(
                            "duplicate period {}",
                            obs.period
                        )));
                    }
                }
            }
        }
        Ok(Self { observations })
    }

    pub fn observations(&self) -> &[MacroObservation] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }
}
