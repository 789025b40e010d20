use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use crate::cycle::{MacroObservation, MacroSeries};

use super::DataError;

/// Per-country annual series, keyed by country identifier.
pub type Panel = BTreeMap<String, MacroSeries>;

/// What a CSV file turned out to hold: one series, or a per-country panel
/// when the optional `country` column is present. `dropped_rows` counts rows
/// discarded for missing fields.
#[derive(Debug)]
pub enum LoadedSeries {
    Single {
        series: MacroSeries,
        dropped_rows: usize,
    },
    Panel {
        panel: Panel,
        dropped_rows: usize,
    },
}

impl LoadedSeries {
    pub fn dropped_rows(&self) -> usize {
        match self {
            LoadedSeries::Single { dropped_rows, .. } => *dropped_rows,
            LoadedSeries::Panel { dropped_rows, .. } => *dropped_rows,
        }
    }
}

fn parse_cell(
    raw: &str,
    path: &str,
    row: usize,
    column: &str,
) -> Result<Option<f64>, DataError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Ok(None);
    }
    trimmed
        .parse::<f64>()
        .map(Some)
        .map_err(|_| DataError::NonNumericCell {
            path: path.to_string(),
            row,
            column: column.to_string(),
            value: trimmed.to_string(),
        })
}

/// Loads a macro series CSV with schema `period,q,g,c`, or a panel when a
/// leading `country` column is present.
///
/// Rows with any missing field are dropped and counted; non-numeric cells and
/// duplicate `(country, period)` keys are hard errors; a file with no usable
/// rows is an error. Panel rows are sorted by calendar year per country.
pub fn load_series(path: impl AsRef<Path>) -> Result<LoadedSeries, DataError> {
    let path = path.as_ref();
    let path_str = path.display().to_string();
    let io_err = |source| DataError::Io {
        path: path_str.clone(),
        source,
    };
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(source) => io_err(source),
            other => DataError::MalformedCsv {
                path: path_str.clone(),
                reason: format!("{other:?}"),
            },
        })?;

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| DataError::MalformedCsv {
            path: path_str.clone(),
            reason: e.to_string(),
        })?
        .iter()
        .map(|h| h.trim().to_ascii_lowercase())
        .collect();

    let has_country = headers.first().map(String::as_str) == Some("country");
    let expected: &[&str] = if has_country {
        &["country", "period", "q", "g", "c"]
    } else {
        &["period", "q", "g", "c"]
    };
    if headers != expected {
        return Err(DataError::MalformedCsv {
            path: path_str,
            reason: format!("expected header {expected:?}, found {headers:?}"),
        });
    }

    let mut dropped = 0usize;
    let mut rows: Vec<(String, MacroObservation)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, record) in reader.records().enumerate() {
        let row_no = idx + 2; // header is row 1
        let record = record.map_err(|e| DataError::MalformedCsv {
            path: path_str.clone(),
            reason: e.to_string(),
        })?;
        if record.len() != expected.len() {
            return Err(DataError::MalformedCsv {
                path: path_str.clone(),
                reason: format!(
                    "row {row_no} has {} fields, expected {}",
                    record.len(),
                    expected.len()
                ),
            });
        }
        let offset = usize::from(has_country);
        let country = if has_country {
            record[0].trim().to_string()
        } else {
            String::new()
        };
        let period = record[offset].trim().to_string();
        if period.is_empty() {
            dropped += 1;
            continue;
        }
        let q = parse_cell(&record[offset + 1], &path_str, row_no, "q")?;
        let g = parse_cell(&record[offset + 2], &path_str, row_no, "g")?;
        let c = parse_cell(&record[offset + 3], &path_str, row_no, "c")?;
        let (Some(q), Some(g), Some(c)) = (q, g, c) else {
            dropped += 1;
            continue;
        };
        if !seen.insert((country.clone(), period.clone())) {
            return Err(DataError::DuplicateKey {
                path: path_str.clone(),
                country,
                period,
            });
        }
        rows.push((country, MacroObservation::new(period, q, g, c)));
    }

    if rows.is_empty() {
        return Err(DataError::EmptySeries { path: path_str });
    }

    if !has_country {
        let series = MacroSeries::new(rows.into_iter().map(|(_, o)| o).collect())?;
        return Ok(LoadedSeries::Single {
            series,
            dropped_rows: dropped,
        });
    }

    let mut grouped: BTreeMap<String, Vec<MacroObservation>> = BTreeMap::new();
    for (country, obs) in rows {
        grouped.entry(country).or_default().push(obs);
    }
    let mut panel = Panel::new();
    for (country, mut obs) in grouped {
        obs.sort_by_key(|o| o.period.trim().parse::<i64>().ok());
        panel.insert(country, MacroSeries::new(obs)?);
    }
    Ok(LoadedSeries::Panel {
        panel,
        dropped_rows: dropped,
    })
}

/// Writes a panel back out as `country,period,q,g,c`, countries and periods
/// in order, so identical panels produce byte-identical files.
pub fn write_panel_csv(panel: &Panel, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "country,period,q,g,c")?;
    for (country, series) in panel {
        for o in series.observations() {
            writeln!(
                out,
                "{},{},{},{},{}",
                country, o.period, o.money_growth, o.output_growth, o.inflation
            )?;
        }
    }
    Ok(())
}
