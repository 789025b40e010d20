//! Indicator fetcher in the World Bank API v2 shape: paged JSON per
//! indicator, normalized into `country,period,<column>` CSV caches and merged
//! into a `country,period,q,g,c` panel.
//!
//! The base URL is configurable so tests (or another provider speaking the
//! same shape) can point it elsewhere. Fetches retry with doubling backoff;
//! a warm cache is never re-fetched, so reruns over the same cache are
//! byte-identical and make zero network calls.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;

use super::DataError;

/// Public World Bank API v2 root.
pub const WORLDBANK_API_BASE: &str = "https://api.worldbank.org/v2";

/// Which indicator code feeds each panel column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndicatorSet {
    /// Column `q`: broad money growth, annual percent.
    pub money_growth: String,
    /// Column `g`: real GDP growth, annual percent.
    pub output_growth: String,
    /// Column `c`: CPI inflation, annual percent.
    pub inflation: String,
}

impl Default for IndicatorSet {
    fn default() -> Self {
        Self {
            money_growth: "FM.LBL.BMNY.ZG".to_string(),
            output_growth: "NY.GDP.MKTP.KD.ZG".to_string(),
            inflation: "FP.CPI.TOTL.ZG".to_string(),
        }
    }
}

impl IndicatorSet {
    fn columns(&self) -> [(&'static str, &str); 3] {
        [
            ("q", self.money_growth.as_str()),
            ("g", self.output_growth.as_str()),
            ("c", self.inflation.as_str()),
        ]
    }
}

/// Fetch parameters.
#[derive(Debug, Clone)]
pub struct FetchConfig {
    pub base_url: String,
    pub cache_dir: PathBuf,
    /// Inclusive year range requested from the provider.
    pub year_range: (i32, i32),
    /// Attempts per page before giving up.
    pub attempts: u32,
    /// First retry delay; doubles per further attempt.
    pub backoff: Duration,
    pub per_page: usize,
}

impl FetchConfig {
    pub fn new(base_url: impl Into<String>, cache_dir: impl Into<PathBuf>) -> Self {
        Self {
            base_url: base_url.into(),
            cache_dir: cache_dir.into(),
            year_range: (1960, 2015),
            attempts: 3,
            backoff: Duration::from_millis(500),
            per_page: 20_000,
        }
    }
}

/// One indicator's cache state after a fetch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FetchedIndicator {
    pub column: String,
    pub code: String,
    pub path: PathBuf,
    pub rows: usize,
    /// True when the cache was already warm and no request was made.
    pub from_cache: bool,
}

/// Outcome of [`fetch_worldbank`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FetchReport {
    pub indicators: Vec<FetchedIndicator>,
}

fn cache_path(cache_dir: &Path, code: &str) -> PathBuf {
    cache_dir.join(format!("{code}.csv"))
}

fn http_get(url: &str, attempts: u32, backoff: Duration) -> Result<String, String> {
    let mut delay = backoff;
    let mut last_err = String::new();
    for attempt in 0..attempts.max(1) {
        if attempt > 0 {
            std::thread::sleep(delay);
            delay *= 2;
        }
        match ureq::get(url).call() {
            Ok(mut response) => match response.body_mut().read_to_string() {
                Ok(text) => return Ok(text),
                Err(e) => last_err = format!("body read failed: {e}"),
            },
            Err(e) => last_err = format!("request failed: {e}"),
        }
    }
    Err(last_err)
}

/// Parses one page of the provider's JSON: `[meta, rows]` where `meta.pages`
/// gives the page count and each row holds `countryiso3code`, `date` and a
/// nullable `value`. Returns `(pages, rows)`.
fn parse_page(
    indicator: &str,
    text: &str,
) -> Result<(u64, Vec<(String, String, f64)>), DataError> {
    let bad = |reason: String| DataError::BadResponse {
        indicator: indicator.to_string(),
        reason,
    };
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let arr = value
        .as_array()
        .ok_or_else(|| bad("expected a top-level array".to_string()))?;
    // An error document is a single-element array whose object carries
    // `message` entries.
    if let Some(first) = arr.first() {
        if let Some(messages) = first.get("message").and_then(|m| m.as_array()) {
            let detail = messages
                .iter()
                .filter_map(|m| m.get("value").and_then(|v| v.as_str()))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(DataError::UnknownIndicator {
                code: indicator.to_string(),
                reason: if detail.is_empty() {
                    "provider returned an error document".to_string()
                } else {
                    detail
                },
            });
        }
    }
    if arr.len() < 2 {
        return Err(bad("expected [meta, rows]".to_string()));
    }
    let pages = arr[0]
        .get("pages")
        .and_then(|p| p.as_u64())
        .ok_or_else(|| bad("meta lacks a numeric `pages`".to_string()))?;
    let rows = arr[1]
        .as_array()
        .ok_or_else(|| bad("rows element is not an array".to_string()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let country = row
            .get("countryiso3code")
            .and_then(|v| v.as_str())
            .unwrap_or("");
        let date = row.get("date").and_then(|v| v.as_str()).unwrap_or("");
        let value = row.get("value").and_then(|v| v.as_f64());
        if country.is_empty() || date.is_empty() {
            continue;
        }
        if let Some(value) = value {
            out.push((country.to_string(), date.to_string(), value));
        }
    }
    Ok((pages, out))
}

fn fetch_indicator(
    cfg: &FetchConfig,
    column: &str,
    code: &str,
    cached_so_far: &[String],
) -> Result<FetchedIndicator, DataError> {
    let path = cache_path(&cfg.cache_dir, code);
    if path.exists() {
        let rows = std::fs::read_to_string(&path)
            .map_err(|source| DataError::Io {
                path: path.display().to_string(),
                source,
            })?
            .lines()
            .skip(1)
            .count();
        return Ok(FetchedIndicator {
            column: column.to_string(),
            code: code.to_string(),
            path,
            rows,
            from_cache: true,
        });
    }

    let (y0, y1) = cfg.year_range;
    let mut rows: Vec<(String, String, f64)> = Vec::new();
    let mut page = 1u64;
    loop {
        let url = format!(
            "{}/country/all/indicator/{}?format=json&per_page={}&date={}:{}&page={}",
            cfg.base_url.trim_end_matches('/'),
            code,
            cfg.per_page,
            y0,
            y1,
            page
        );
        let text = http_get(&url, cfg.attempts, cfg.backoff).map_err(|reason| {
            DataError::FetchFailed {
                indicator: code.to_string(),
                attempts: cfg.attempts,
                reason,
                cached: cached_so_far.join(", "),
            }
        })?;
        let (pages, mut page_rows) = parse_page(code, &text)?;
        rows.append(&mut page_rows);
        if page >= pages {
            break;
        }
        page += 1;
    }

    rows.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    rows.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);

    std::fs::create_dir_all(&cfg.cache_dir).map_err(|source| DataError::Io {
        path: cfg.cache_dir.display().to_string(),
        source,
    })?;
    let mut file = std::fs::File::create(&path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let io_err = |source| DataError::Io {
        path: path.display().to_string(),
        source,
    };
    writeln!(file, "country,period,{column}").map_err(io_err)?;
    for (country, period, value) in &rows {
        writeln!(file, "{country},{period},{value}").map_err(io_err)?;
    }

    Ok(FetchedIndicator {
        column: column.to_string(),
        code: code.to_string(),
        path,
        rows: rows.len(),
        from_cache: false,
    })
}

/// Fetches (or reuses from cache) one normalized CSV per indicator.
pub fn fetch_worldbank(
    cfg: &FetchConfig,
    indicators: &IndicatorSet,
) -> Result<FetchReport, DataError> {
    let mut done: Vec<String> = Vec::new();
    let mut report = FetchReport {
        indicators: Vec::new(),
    };
    for (column, code) in indicators.columns() {
        let fetched = fetch_indicator(cfg, column, code, &done)?;
        done.push(code.to_string());
        report.indicators.push(fetched);
    }
    Ok(report)
}

fn read_indicator_csv(path: &Path) -> Result<BTreeMap<(String, String), f64>, DataError> {
    let text = std::fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        let mut parts = line.splitn(3, ',');
        let (Some(country), Some(period), Some(value)) =
            (parts.next(), parts.next(), parts.next())
        else {
            return Err(DataError::MalformedCsv {
                path: path.display().to_string(),
                reason: format!("row {} has fewer than 3 fields", i + 1),
            });
        };
        let value: f64 = value.trim().parse().map_err(|_| DataError::NonNumericCell {
            path: path.display().to_string(),
            row: i + 1,
            column: "value".to_string(),
            value: value.to_string(),
        })?;
        map.insert((country.to_string(), period.to_string()), value);
    }
    Ok(map)
}

/// Inner-joins the three cached indicator CSVs into a
/// `country,period,q,g,c` panel file, sorted by country then period.
/// Returns the number of complete rows written.
pub fn merge_panel(
    cache_dir: &Path,
    indicators: &IndicatorSet,
    out_path: &Path,
) -> Result<usize, DataError> {
    let q = read_indicator_csv(&cache_path(cache_dir, &indicators.money_growth))?;
    let g = read_indicator_csv(&cache_path(cache_dir, &indicators.output_growth))?;
    let c = read_indicator_csv(&cache_path(cache_dir, &indicators.inflation))?;

    let mut file = std::fs::File::create(out_path).map_err(|source| DataError::Io {
        path: out_path.display().to_string(),
        source,
    })?;
    let io_err = |source| DataError::Io {
        path: out_path.display().to_string(),
        source,
    };
    writeln!(file, "country,period,q,g,c").map_err(io_err)?;
    let mut rows = 0usize;
    for (key, qv) in &q {
        let (Some(gv), Some(cv)) = (g.get(key), c.get(key)) else {
            continue;
        };
        writeln!(file, "{},{},{},{},{}", key.0, key.1, qv, gv, cv).map_err(io_err)?;
        rows += 1;
    }
    Ok(rows)
}
