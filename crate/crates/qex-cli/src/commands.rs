use std::path::PathBuf;
use std::time::Duration;

use serde_json::json;

use qex::cycle::{
    classify_series, detect_buffer, resolve_triangle, BehaviorLabel, ElasticityClass,
    GrowthDirection, QDirection, Spectrum, TriangleAnswer, TriangleQuery,
};
use qex::data::{
    china_fixture, fetch_worldbank, load_series, merge_panel, run_balanced_path, FetchConfig,
    IndicatorSet, LoadedSeries, RegressionReport,
};
use qex::model::{
    default_step, integrate, long_run_regime, ModelError, MoneySupplySchedule, ScenarioConfig,
};

use crate::failure::{fail, Failure, EXIT_INPUT};
use crate::manifest::write_manifest;
use crate::{
    BehaviorArg, ClassifyArgs, Cli, Command, DgArg, FetchArgs, Format, QDirArg, RegressArgs,
    ResolveArgs, ScheduleKind, SimulateArgs, SlopeClassArg,
};

pub fn run(cli: &Cli) -> Result<(), Failure> {
    std::fs::create_dir_all(&cli.out_dir)
        .map_err(|e| fail(EXIT_INPUT, format!("cannot create --out-dir: {e}")))?;
    match &cli.command {
        Command::Simulate(args) => simulate(cli, args),
        Command::Classify(args) => classify(cli, args),
        Command::Resolve(args) => resolve(cli, args),
        Command::Regress(args) => regress(cli, args),
        Command::Fetch(args) => fetch(cli, args),
    }
}

fn seed_json(cli: &Cli) -> serde_json::Value {
    cli.seed.map(|s| json!(s)).unwrap_or(serde_json::Value::Null)
}

// ---------------------------------------------------------------- simulate

fn parse_knots(text: &str) -> Result<Vec<(f64, f64)>, Failure> {
    text.split(',')
        .map(|pair| {
            let (t, m) = pair.split_once(':').ok_or_else(|| {
                fail(
                    EXIT_INPUT,
                    format!("--knots entry `{pair}` is not a t:M pair"),
                )
            })?;
            let t: f64 = t
                .trim()
                .parse()
                .map_err(|_| fail(EXIT_INPUT, format!("--knots time `{t}` is not a number")))?;
            let m: f64 = m
                .trim()
                .parse()
                .map_err(|_| fail(EXIT_INPUT, format!("--knots money `{m}` is not a number")))?;
            Ok((t, m))
        })
        .collect()
}

fn need(value: Option<f64>, flag: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| fail(EXIT_INPUT, format!("missing required flag {flag}")))
}

fn config_from_flags(args: &SimulateArgs) -> Result<ScenarioConfig, Failure> {
    let kind = args
        .schedule
        .ok_or_else(|| fail(EXIT_INPUT, "missing required flag --schedule (or --config)"))?;
    let schedule = match kind {
        ScheduleKind::Constant => MoneySupplySchedule::Constant {
            level: need(args.m0, "--M0")?,
        },
        ScheduleKind::Linear => MoneySupplySchedule::Linear {
            rate: need(args.v0, "--V0")?,
        },
        ScheduleKind::Exponential => MoneySupplySchedule::Exponential {
            initial: need(args.m0, "--M0")?,
            growth: need(args.q, "--q")?,
        },
        ScheduleKind::OutputPower => MoneySupplySchedule::OutputPower {
            exponent: need(args.alpha, "--alpha")?,
        },
        ScheduleKind::Tabulated => MoneySupplySchedule::Tabulated {
            knots: parse_knots(
                args.knots
                    .as_deref()
                    .ok_or_else(|| fail(EXIT_INPUT, "missing required flag --knots"))?,
            )?,
        },
    };
    Ok(ScenarioConfig {
        schedule,
        k: need(args.k, "--k")?,
        initial_sales: need(args.w0, "--W0")?,
        initial_output: need(args.y0, "--Y0")?,
        g: need(args.g, "--g")?,
        t_end: need(args.t_end, "--t-end")?,
        dt: args.dt,
    })
}

fn simulate(cli: &Cli, args: &SimulateArgs) -> Result<(), Failure> {
    let mut inputs = Vec::new();
    let config = match &args.config {
        Some(path) => {
            inputs.push(path.clone());
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail(EXIT_INPUT, format!("cannot read --config: {e}")))?;
            serde_json::from_str::<ScenarioConfig>(&text)
                .map_err(|e| fail(EXIT_INPUT, format!("invalid config: {e}")))?
        }
        None => config_from_flags(args)?,
    };
    let params = config.params()?;
    let dt = config
        .dt
        .unwrap_or_else(|| default_step(&config.schedule, &params));
    let trajectory = integrate(&config.schedule, &params, config.t_end, dt)?;

    let regime_json = match long_run_regime(&config.schedule, &params) {
        Ok(regime) => serde_json::to_value(&regime).expect("regime serializes"),
        Err(ModelError::NoAsymptoticRegime) => json!({
            "branch": "undefined",
            "reason": "no asymptotic regime for a tabulated schedule",
        }),
        Err(e) => return Err(e.into()),
    };

    let trajectory_path = cli.out_dir.join("trajectory.csv");
    std::fs::write(&trajectory_path, trajectory.to_csv_string())?;
    let regime_path = cli.out_dir.join("regime.json");
    let mut regime_text = serde_json::to_string_pretty(&regime_json).expect("json");
    regime_text.push('\n');
    std::fs::write(&regime_path, &regime_text)?;

    write_manifest(
        &cli.out_dir,
        "simulate",
        json!({
            "config": serde_json::to_value(&config).expect("config serializes"),
            "dt_resolved": dt,
            "seed": seed_json(cli),
        }),
        &inputs,
        &[trajectory_path.clone(), regime_path],
    )?;

    match cli.format {
        Format::Json => print!("{regime_text}"),
        Format::Csv => print!("{}", trajectory.to_csv_string()),
        Format::Table => {
            let last = trajectory.last();
            println!("samples: {}", trajectory.len());
            println!(
                "final state: t={} W={:.6} P={:.6} c={:.6} v={:.6}",
                last.t, last.sales, last.price, last.inflation, last.velocity
            );
            println!("regime: {regime_json}");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- classify

#[derive(serde::Serialize)]
struct ClassifyReport {
    steps: Vec<qex::cycle::MigrationStep>,
    spectrum: Vec<qex::cycle::PeriodTag>,
    buffers: Vec<qex::cycle::BufferEpisode>,
    anomalies: Vec<String>,
    dropped_rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn classify_table(spec: &Spectrum, report: &ClassifyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<6} {:<6} {:>7} {:>7} {:>7} {:>8}  {:<14} {:<5}\n",
        "from", "to", "dq", "dg", "dc", "slope", "label", "class"
    ));
    for s in &spec.steps {
        let slope = s
            .elasticity
            .map(|e| format!("{e:.3}"))
            .unwrap_or_else(|| "-".to_string());
        let label = match (s.label, s.degenerate, s.carried) {
            (Some(l), _, true) => format!("{l} (carried)"),
            (Some(l), _, false) => l.to_string(),
            (None, true, _) => "degenerate-flat".to_string(),
            (None, false, _) => "-".to_string(),
        };
        let class = s
            .cycle_class
            .map(|c| format!("{c:?}").to_uppercase())
            .unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "{:<6} {:<6} {:>7.1} {:>7.1} {:>7.1} {:>8}  {:<14} {:<5}\n",
            s.from, s.to, s.dq, s.dg, s.dc, slope, label, class
        ));
    }
    out.push_str("\nspectrum: ");
    let tags: Vec<String> = spec
        .spectrum
        .iter()
        .map(|t| format!("{}:{}", t.period, t.tag))
        .collect();
    out.push_str(&tags.join(" "));
    out.push('\n');
    for ep in &report.buffers {
        out.push_str(&format!(
            "buffer: decrease {}->{} buffers {:?} before DD at {}\n",
            ep.trigger_from, ep.trigger_to, ep.buffer, ep.dd_period
        ));
    }
    for a in &report.anomalies {
        out.push_str(&format!("anomaly: {a}\n"));
    }
    if let Some(note) = &report.note {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

fn classify(cli: &Cli, args: &ClassifyArgs) -> Result<(), Failure> {
    let thresholds = args.thresholds();
    let mut inputs = Vec::new();
    let (series, dropped) = match (&args.input, &args.fixture) {
        (Some(path), None) => {
            inputs.push(path.clone());
            match load_series(path)? {
                LoadedSeries::Single {
                    series,
                    dropped_rows,
                } => (series, dropped_rows),
                LoadedSeries::Panel { .. } => {
                    return Err(fail(
                        EXIT_INPUT,
                        "classify expects a single series; this file has a country column",
                    ))
                }
            }
        }
        (None, Some(name)) if name == "china" => (china_fixture(), 0),
        (None, Some(name)) => {
            return Err(fail(
                EXIT_INPUT,
                format!("unknown fixture `{name}`; available: china"),
            ))
        }
        _ => return Err(fail(EXIT_INPUT, "provide exactly one of --input or --fixture")),
    };

    let spectrum = classify_series(&series, &thresholds)?;
    let buffers = detect_buffer(&series, &spectrum.steps, &thresholds);
    let all_flat = spectrum.steps.iter().all(|s| s.degenerate);
    let report = ClassifyReport {
        steps: spectrum.steps.clone(),
        spectrum: spectrum.spectrum.clone(),
        buffers: buffers.episodes,
        anomalies: buffers.anomalies,
        dropped_rows: dropped,
        note: all_flat.then(|| "all steps degenerate-flat; nothing to label".to_string()),
    };

    let json_path = cli.out_dir.join("spectrum.json");
    let mut body = serde_json::to_string_pretty(&report).expect("report serializes");
    body.push('\n');
    std::fs::write(&json_path, &body)?;

    write_manifest(
        &cli.out_dir,
        "classify",
        json!({
            "input": args.input.as_ref().map(|p| p.display().to_string()),
            "fixture": args.fixture,
            "thresholds": serde_json::to_value(thresholds).expect("thresholds serialize"),
            "seed": seed_json(cli),
        }),
        &inputs,
        &[json_path],
    )?;

    match cli.format {
        Format::Json => print!("{body}"),
        Format::Table => print!("{}", classify_table(&spectrum, &report)),
        Format::Csv => {
            println!("from,to,dq,dg,dc,elasticity,label,cycle_class");
            for s in &spectrum.steps {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    s.from,
                    s.to,
                    s.dq,
                    s.dg,
                    s.dc,
                    s.elasticity.map(|e| e.to_string()).unwrap_or_default(),
                    s.label.map(|l| l.to_string()).unwrap_or_default(),
                    s.cycle_class
                        .map(|c| format!("{c:?}").to_uppercase())
                        .unwrap_or_default(),
                );
            }
        }
    }
    Ok(())
}

// ----------------------------------------------------------------- resolve

fn resolve(cli: &Cli, args: &ResolveArgs) -> Result<(), Failure> {
    let q_dir = args.q_dir.map(|d| match d {
        QDirArg::Up => QDirection::Up,
        QDirArg::Down => QDirection::Down,
        QDirArg::Flat => QDirection::Flat,
    });
    let class = match (args.slope, args.slope_class) {
        (Some(slope), None) => Some(ElasticityClass::of_slope(slope, args.slope_delta)),
        (None, Some(c)) => Some(match c {
            SlopeClassArg::EqMinusOne => ElasticityClass::EqMinusOne,
            SlopeClassArg::BelowMinusOne => ElasticityClass::BelowMinusOne,
            SlopeClassArg::BetweenMinusOneAndZero => ElasticityClass::BetweenMinusOneAndZero,
            SlopeClassArg::Positive => ElasticityClass::Positive,
        }),
        (None, None) => None,
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let behavior = args.behavior.map(|b| match b {
        BehaviorArg::GoldenGrowth => BehaviorLabel::GoldenGrowth,
        BehaviorArg::Stagflation => BehaviorLabel::Stagflation,
        BehaviorArg::Gi => BehaviorLabel::GreaterInflation,
        BehaviorArg::Go => BehaviorLabel::GreaterOutput,
        BehaviorArg::Li => BehaviorLabel::LessInflation,
        BehaviorArg::Lo => BehaviorLabel::LessOutput,
        BehaviorArg::Dd => BehaviorLabel::DoubleDrop,
        BehaviorArg::Dr => BehaviorLabel::DoubleRise,
    });
    let dg = args.dg.map(|d| match d {
        DgArg::Up => GrowthDirection::Up,
        DgArg::Down => GrowthDirection::Down,
    });

    let query = match (q_dir, class, behavior) {
        (Some(q_direction), Some(class), None) => TriangleQuery::Behavior {
            q_direction,
            class,
            dg,
        },
        (None, Some(class), Some(behavior)) => TriangleQuery::QDirection { class, behavior },
        (Some(q_direction), None, Some(behavior)) => TriangleQuery::ElasticityClass {
            q_direction,
            behavior,
        },
        _ => {
            return Err(fail(
                EXIT_INPUT,
                "provide exactly two of --q-dir, --slope/--slope-class, --behavior",
            ))
        }
    };

    let answer = resolve_triangle(query)?;
    let answer_json = serde_json::to_value(&answer).expect("answer serializes");
    let path = cli.out_dir.join("resolve.json");
    let mut body = serde_json::to_string_pretty(&answer_json).expect("json");
    body.push('\n');
    std::fs::write(&path, &body)?;

    write_manifest(
        &cli.out_dir,
        "resolve",
        json!({
            "q_dir": q_dir.map(|q| format!("{q:?}").to_lowercase()),
            "slope": args.slope,
            "slope_class": class.map(|c| format!("{c:?}")),
            "behavior": behavior.map(|b| b.to_string()),
            "dg": dg.map(|d| format!("{d:?}").to_lowercase()),
            "slope_delta": args.slope_delta,
            "seed": seed_json(cli),
        }),
        &[],
        &[path],
    )?;

    match cli.format {
        Format::Json => print!("{body}"),
        _ => match answer {
            TriangleAnswer::Behavior(b) => println!("behavior: {b}"),
            TriangleAnswer::QDirection(q) => println!("q-direction: {q:?}"),
            TriangleAnswer::ElasticityClass(c) => println!("slope class: {c:?}"),
        },
    }
    Ok(())
}

// ----------------------------------------------------------------- regress

fn scatter_csv(report: &RegressionReport) -> String {
    let mut out = String::from("country,n_years,avg_q,avg_g,gap,avg_c,log_gap,log_c\n");
    for a in &report.used {
        let gap = a.growth_gap();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            a.country,
            a.n_years,
            a.avg_money_growth,
            a.avg_output_growth,
            gap,
            a.avg_inflation,
            gap.ln(),
            a.avg_inflation.ln(),
        ));
    }
    out
}

fn regress(cli: &Cli, args: &RegressArgs) -> Result<(), Failure> {
    let year_range = match (args.year_start, args.year_end) {
        (None, None) => None,
        (lo, hi) => Some((lo.unwrap_or(i32::MIN), hi.unwrap_or(i32::MAX))),
    };
    let panel = match load_series(&args.input)? {
        LoadedSeries::Panel { panel, .. } => panel,
        LoadedSeries::Single { .. } => {
            return Err(fail(
                EXIT_INPUT,
                "regress expects a panel CSV with a country column",
            ))
        }
    };
    let report = run_balanced_path(&panel, year_range, args.min_coverage)?;

    let regression_path = cli.out_dir.join("regression.json");
    let mut body = serde_json::to_string_pretty(&report).expect("report serializes");
    body.push('\n');
    std::fs::write(&regression_path, &body)?;
    let scatter_path = cli.out_dir.join("scatter.csv");
    std::fs::write(&scatter_path, scatter_csv(&report))?;

    write_manifest(
        &cli.out_dir,
        "regress",
        json!({
            "input": args.input.display().to_string(),
            "year_start": args.year_start,
            "year_end": args.year_end,
            "min_coverage": args.min_coverage,
            "seed": seed_json(cli),
        }),
        &[args.input.clone()],
        &[regression_path, scatter_path],
    )?;

    match cli.format {
        Format::Json => print!("{body}"),
        Format::Csv => print!("{}", scatter_csv(&report)),
        Format::Table => {
            let r = &report.result;
            println!(
                "slope {:.4} (stderr {:.4}), correlation {:.4}, intercept {:.4}, n {}",
                r.slope, r.stderr, r.correlation, r.intercept, r.n_points
            );
            println!(
                "countries: {} in, {} used, {} outside log domain, {} under coverage",
                report.n_input,
                report.n_used,
                report.n_excluded_positivity,
                report.n_excluded_coverage
            );
        }
    }
    Ok(())
}

// ------------------------------------------------------------------- fetch

fn fetch(cli: &Cli, args: &FetchArgs) -> Result<(), Failure> {
    let (start, end) = args
        .years
        .split_once(':')
        .and_then(|(a, b)| Some((a.trim().parse::<i32>().ok()?, b.trim().parse::<i32>().ok()?)))
        .ok_or_else(|| fail(EXIT_INPUT, "--years must look like 1960:2015"))?;
    if end < start {
        return Err(fail(EXIT_INPUT, "--years end before start"));
    }

    let indicators = IndicatorSet {
        money_growth: args.q_code.clone(),
        output_growth: args.g_code.clone(),
        inflation: args.c_code.clone(),
    };
    let mut config = FetchConfig::new(&args.base_url, &args.cache_dir);
    config.year_range = (start, end);
    config.attempts = args.attempts;
    config.backoff = Duration::from_millis(args.backoff_ms);

    let report = fetch_worldbank(&config, &indicators)?;
    let mut outputs: Vec<PathBuf> = report.indicators.iter().map(|i| i.path.clone()).collect();
    let mut merged_rows = None;
    if let Some(panel_out) = &args.panel_out {
        let rows = merge_panel(&args.cache_dir, &indicators, panel_out)?;
        merged_rows = Some(rows);
        outputs.push(panel_out.clone());
    }

    write_manifest(
        &cli.out_dir,
        "fetch",
        json!({
            "base_url": args.base_url,
            "cache_dir": args.cache_dir.display().to_string(),
            "years": [start, end],
            "indicators": serde_json::to_value(&indicators).expect("indicators serialize"),
            "panel_out": args.panel_out.as_ref().map(|p| p.display().to_string()),
            "seed": seed_json(cli),
        }),
        &[],
        &outputs,
    )?;

    let summary = json!({
        "indicators": report.indicators,
        "merged_rows": merged_rows,
    });
    match cli.format {
        Format::Table => {
            for ind in &report.indicators {
                println!(
                    "{} <- {}: {} rows{}",
                    ind.column,
                    ind.code,
                    ind.rows,
                    if ind.from_cache { " (cache)" } else { "" }
                );
            }
            if let Some(rows) = merged_rows {
                println!("panel rows: {rows}");
            }
        }
        _ => println!(
            "{}",
            serde_json::to_string_pretty(&summary).expect("summary serializes")
        ),
    }
    Ok(())
}
