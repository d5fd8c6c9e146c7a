//! Command-line front end: data ingestion, test execution, curve export,
//! null-table management, and the benchmark harness.
//!
//! Every command is a pure function of (input files, configuration, seed):
//! reruns produce byte-identical output. Configuration resolves as built-in
//! defaults, overridden by the `--config` JSON file, overridden by explicit
//! flags.

pub mod args;

pub use args::{Cli, Command, CommonArgs};

use crate::bench::{
    evaluate_statistic, power_bench, rate_bench, PowerBenchConfig, PooledEvaluator, PowerRow,
    RateBenchConfig, RateReport, StatChoice, StatContext,
};
use crate::calibration::{
    asymptotic_pvalue, bridge_functional_for, permutation_pvalue_indexed,
    simulate_bridge_functional, NullModel, NullModelKind, QuantileTable, TestReport,
};
use crate::empirical::{auc, odc_curve, roc_curve, EmpiricalDistribution};
use crate::error::{Error, Result};
use crate::generators::Generator;
use crate::sample::Sample;
use crate::univariate::{compute, refinement_intervals, UnivariateKind};
use clap::Parser;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

/// Environment variable selecting the default rayon thread count.
pub const THREADS_ENV: &str = "TWOSAMPLE_THREADS";

/// Effective run configuration: every knob of every subcommand.
///
/// All fields are optional so that three layers can merge cleanly; after
/// [`RunConfig::resolve`] the fields a command reads are guaranteed present.
/// The resolved struct is echoed verbatim into reports.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub x: Option<String>,
    pub y: Option<String>,
    pub stats: Option<Vec<String>>,
    pub p: Option<f64>,
    pub lambda: Option<f64>,
    pub gamma: Option<f64>,
    pub alpha: Option<f64>,
    pub perms: Option<usize>,
    pub seed: Option<u64>,
    pub calib: Option<String>,
    pub out: Option<String>,
    pub format: Option<String>,
    pub table: Option<String>,
    pub paths: Option<usize>,
    pub grid: Option<usize>,
    pub trials: Option<usize>,
    pub sizes: Option<Vec<usize>>,
    pub dim: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub delta: Option<f64>,
    pub generator: Option<String>,
    pub pair: Option<String>,
}

impl RunConfig {
    /// Copies every `Some` field of `upper` over `self`.
    pub fn overlay(&mut self, upper: &RunConfig) {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if upper.$field.is_some() {
                    self.$field = upper.$field.clone();
                })*
            };
        }
        take!(
            x, y, stats, p, lambda, gamma, alpha, perms, seed, calib, out, format, table,
            paths, grid, trials, sizes, dim, dims, delta, generator, pair
        );
    }

    /// Builds the layer contributed by command-line flags.
    pub fn from_args(args: &CommonArgs) -> Self {
        RunConfig {
            x: args.x.clone(),
            y: args.y.clone(),
            stats: args.stat.clone(),
            p: args.p,
            lambda: args.lambda,
            gamma: args.gamma,
            alpha: args.alpha,
            perms: args.perms,
            seed: args.seed,
            calib: args.calib.clone(),
            out: args.out.clone(),
            format: args.format.clone(),
            table: args.table.clone(),
            paths: args.paths,
            grid: args.grid,
            trials: args.trials,
            sizes: args.sizes.clone(),
            dim: args.dim,
            dims: args.dims.clone(),
            delta: args.delta,
            generator: args.generator.clone(),
            pair: args.pair.clone(),
        }
    }

    /// Loads a JSON config file. Unknown keys are rejected so typos fail
    /// loudly instead of silently falling back to defaults.
    pub fn from_file(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::ReadFile {
            path: path.to_string(),
            source,
        })?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidConfig(format!("{path}: {e}")))
    }

    /// Merges defaults, the optional config file, and flags.
    pub fn merged(args: &CommonArgs) -> Result<Self> {
        let mut config = match &args.config {
            Some(path) => Self::from_file(path)?,
            None => Self::default(),
        };
        config.overlay(&Self::from_args(args));
        Ok(config)
    }

    /// Fills every general-purpose default plus the per-command ones, so the
    /// echoed config states exactly what the run used.
    pub fn resolve(mut self, command: &str) -> Self {
        self.stats.get_or_insert_with(|| match command {
            "power-bench" => vec!["energy".into(), "mmd".into()],
            _ => vec!["ks".into()],
        });
        self.p.get_or_insert(1.0);
        self.lambda.get_or_insert(1.0);
        self.alpha.get_or_insert(0.05);
        self.perms.get_or_insert(999);
        self.seed.get_or_insert(0);
        self.calib.get_or_insert_with(|| "perm".into());
        self.format.get_or_insert_with(|| match command {
            "test" => "json".into(),
            _ => "csv".into(),
        });
        self.paths.get_or_insert(100_000);
        self.grid.get_or_insert(2048);
        self.trials.get_or_insert(200);
        self.sizes.get_or_insert_with(|| match command {
            "rate-bench" => vec![32, 64, 128, 256],
            _ => vec![25, 50, 100, 200],
        });
        self.dim.get_or_insert(1);
        self.dims.get_or_insert_with(|| vec![1, 2, 3]);
        self.delta.get_or_insert(0.5);
        self.generator.get_or_insert_with(|| "uniform".into());
        self.pair.get_or_insert_with(|| "normal-mean-shift".into());
        self
    }
}

fn required_str<'a>(field: &'a Option<String>, flag: &str) -> Result<&'a str> {
    field
        .as_deref()
        .ok_or_else(|| Error::InvalidConfig(format!("missing required {flag}")))
}

fn single_stat(config: &RunConfig) -> Result<StatChoice> {
    let stats = config.stats.as_ref().expect("resolved");
    if stats.len() != 1 {
        return Err(Error::InvalidConfig(format!(
            "this command takes exactly one --stat, got {}",
            stats.len()
        )));
    }
    StatChoice::parse(&stats[0])
}

fn stat_context(config: &RunConfig) -> StatContext {
    StatContext {
        p: config.p,
        lambda: config.lambda.expect("resolved"),
        gamma: config.gamma,
    }
}

/// Reads a CSV sample: one observation per row, numeric cells, optional
/// header detected by a non-numeric first row. Errors carry 1-based line
/// numbers from the original file.
pub fn ingest(path: &str) -> Result<Sample> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::ReadFile {
        path: path.to_string(),
        source,
    })?;
    let parse_error = |line: usize, reason: String| Error::Parse {
        path: path.to_string(),
        line,
        reason,
    };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut expected_cols: Option<usize> = None;
    let mut saw_content = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            cells.iter().map(|c| c.parse::<f64>()).collect();
        let values = match parsed {
            Ok(values) => values,
            Err(_) if !saw_content => {
                // Non-numeric first content line: header row.
                saw_content = true;
                continue;
            }
            Err(_) => {
                let bad = cells
                    .iter()
                    .find(|c| c.parse::<f64>().is_err())
                    .expect("at least one cell failed to parse");
                return Err(parse_error(line_no, format!("invalid number '{bad}'")));
            }
        };
        saw_content = true;
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(parse_error(line_no, format!("non-finite value {bad}")));
        }
        match expected_cols {
            None => expected_cols = Some(values.len()),
            Some(expected) if expected != values.len() => {
                return Err(parse_error(
                    line_no,
                    format!("expected {expected} columns, got {}", values.len()),
                ));
            }
            _ => {}
        }
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(parse_error(1, "no numeric rows found".into()));
    }
    Sample::new(rows)
}

/// The outcome of one executed command.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    /// Primary rendered payload (report, table, or bench results).
    pub payload: String,
    /// Files written, in order.
    pub files: Vec<String>,
}

/// Runs a resolved configuration under the named command.
pub fn execute(command: &str, config: &RunConfig) -> Result<Execution> {
    match command {
        "test" => cmd_test(config),
        "curves" => cmd_curves(config),
        "null-sim" => cmd_null_sim(config),
        "power-bench" => cmd_power_bench(config),
        "rate-bench" => cmd_rate_bench(config),
        other => Err(Error::InvalidConfig(format!("unknown command '{other}'"))),
    }
}

fn write_file(path: &str, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|source| Error::WriteFile {
        path: path.to_string(),
        source,
    })
}

fn finish(config: &RunConfig, payload: String) -> Result<Execution> {
    let mut files = Vec::new();
    if let Some(out) = &config.out {
        write_file(out, &payload)?;
        files.push(out.clone());
    }
    Ok(Execution { payload, files })
}

fn csv_field(value: &str) -> String {
    if value.contains(',') || value.contains('"') || value.contains('\n') {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

fn optional(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

fn bridge_model_kind(kind: UnivariateKind) -> NullModelKind {
    match kind {
        UnivariateKind::OdcW2 => NullModelKind::OdcBridgeL2,
        UnivariateKind::OdcLinf => NullModelKind::OdcBridgeSup,
        _ => NullModelKind::BridgeSup,
    }
}

fn cmd_test(config: &RunConfig) -> Result<Execution> {
    let x = ingest(required_str(&config.x, "--x FILE")?)?;
    let y = ingest(required_str(&config.y, "--y FILE")?)?;
    let choice = single_stat(config)?;
    let ctx = stat_context(config);
    let alpha = config.alpha.expect("resolved");
    let seed = config.seed.expect("resolved");

    let observed = evaluate_statistic(choice, &ctx, &x, &y)?;
    let (p_value, calibration) = match config.calib.as_deref().expect("resolved") {
        "perm" => {
            let perms = config.perms.expect("resolved");
            let model = NullModel::permutation(perms, seed)?;
            let evaluator = PooledEvaluator::new(&x, &y, choice, &ctx)?;
            let identity: Vec<usize> = (0..x.len() + y.len()).collect();
            let t_obs = evaluator.evaluate(&identity[..x.len()], &identity[x.len()..])?;
            let p = permutation_pvalue_indexed(
                x.len(),
                y.len(),
                t_obs,
                |ix, iy| evaluator.evaluate(ix, iy),
                perms,
                seed,
            )?;
            (p, model.describe())
        }
        "asymp" => {
            let kind = match choice {
                StatChoice::Univariate(kind) => kind,
                other => {
                    return Err(Error::AsymptoticUnavailable {
                        kind: other.name().to_string(),
                    })
                }
            };
            let functional = bridge_functional_for(kind)?;
            let stat = compute(kind, ctx.p, &x, &y)?;
            match &config.table {
                Some(path) => {
                    let file = std::fs::File::open(path).map_err(|source| Error::ReadFile {
                        path: path.clone(),
                        source,
                    })?;
                    let table = QuantileTable::read_csv(std::io::BufReader::new(file), path)?;
                    let p = asymptotic_pvalue(&stat, &table)?;
                    (p, format!("imported table {path} ({} values)", table.len()))
                }
                None => {
                    let paths = config.paths.expect("resolved");
                    let grid = config.grid.expect("resolved");
                    let model =
                        NullModel::bridge(bridge_model_kind(kind), paths, grid, seed)?;
                    let table = simulate_bridge_functional(functional, paths, grid, seed)?;
                    let p = asymptotic_pvalue(&stat, &table)?;
                    (p, model.describe())
                }
            }
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown calibration '{other}' (expected perm or asymp)"
            )))
        }
    };

    let mut report = TestReport::new(
        choice.name(),
        observed.raw,
        observed.scaled,
        p_value,
        alpha,
        calibration,
        x.len(),
        y.len(),
    )?;
    let uses_order = matches!(
        choice,
        StatChoice::Univariate(UnivariateKind::WassersteinP) | StatChoice::SmoothedWasserstein
    );
    report.p = uses_order.then(|| ctx.p.unwrap_or(1.0));
    report.lambda = matches!(choice, StatChoice::SmoothedWasserstein).then_some(ctx.lambda);
    report.gamma = observed.gamma;
    report.config = serde_json::to_value(config)?;

    let payload = match config.format.as_deref().expect("resolved") {
        "json" => serde_json::to_string_pretty(&report)? + "\n",
        "csv" => render_report_csv(&report),
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown format '{other}' (expected csv or json)"
            )))
        }
    };
    finish(config, payload)
}

fn render_report_csv(report: &TestReport) -> String {
    let mut out = String::new();
    out.push_str(
        "schema,statistic,p,lambda,gamma,raw_value,scaled_value,p_value,alpha,reject,calibration,n,m\n",
    );
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        report.schema,
        report.statistic,
        optional(report.p),
        optional(report.lambda),
        optional(report.gamma),
        report.raw_value,
        report.scaled_value,
        report.p_value,
        report.alpha,
        report.reject,
        csv_field(&report.calibration),
        report.n,
        report.m
    );
    out
}

fn cmd_curves(config: &RunConfig) -> Result<Execution> {
    let x = ingest(required_str(&config.x, "--x FILE")?)?;
    let y = ingest(required_str(&config.y, "--y FILE")?)?;
    if x.dim() != 1 || y.dim() != 1 {
        return Err(Error::NotUnivariate {
            dim: x.dim().max(y.dim()),
        });
    }
    let out_dir = required_str(&config.out, "--out DIRECTORY (curves writes several files)")?;
    std::fs::create_dir_all(out_dir).map_err(|source| Error::WriteFile {
        path: out_dir.to_string(),
        source,
    })?;

    let fx = EmpiricalDistribution::from_sample(&x)?;
    let gy = EmpiricalDistribution::from_sample(&y)?;

    // PP curve: both empirical CDFs at every pooled point.
    let mut pooled: Vec<f64> = fx
        .sorted_values()
        .iter()
        .chain(gy.sorted_values())
        .copied()
        .collect();
    pooled.sort_by(f64::total_cmp);
    pooled.dedup();
    let mut pp = String::from("z,fx,gy\n");
    for &z in &pooled {
        let _ = writeln!(pp, "{},{},{}", z, fx.cdf(z), gy.cdf(z));
    }

    // QQ curve: both quantile functions on the common refinement.
    let mut qq = String::from("t_lo,t_hi,x_quantile,y_quantile\n");
    refinement_intervals(&fx, &gy, |t_lo, t_hi, qx, qy| {
        let _ = writeln!(qq, "{},{},{},{}", t_lo, t_hi, qx, qy);
    });

    let odc = odc_curve(&fx, &gy);
    let roc = roc_curve(&fx, &gy);
    let roc_auc = auc(&roc);

    let mut files = Vec::new();
    let emit = |name: &str, content: &str, files: &mut Vec<String>| -> Result<()> {
        let path = Path::new(out_dir).join(name);
        let path = path.to_string_lossy().into_owned();
        write_file(&path, content)?;
        files.push(path);
        Ok(())
    };
    emit("pp.csv", &pp, &mut files)?;
    emit("qq.csv", &qq, &mut files)?;

    let mut odc_text = Vec::new();
    odc.write_csv(&mut odc_text).expect("in-memory write");
    emit("odc.csv", std::str::from_utf8(&odc_text).unwrap(), &mut files)?;
    let mut roc_text = Vec::new();
    roc.write_csv(&mut roc_text).expect("in-memory write");
    emit("roc.csv", std::str::from_utf8(&roc_text).unwrap(), &mut files)?;

    let summary = serde_json::json!({
        "schema": "v1",
        "command": "curves",
        "n": x.len(),
        "m": y.len(),
        "auc": roc_auc,
        "files": files,
        "config": config,
    });
    let payload = serde_json::to_string_pretty(&summary)? + "\n";
    emit("summary.json", &payload, &mut files)?;
    Ok(Execution { payload, files })
}

fn cmd_null_sim(config: &RunConfig) -> Result<Execution> {
    let choice = single_stat(config)?;
    let kind = match choice {
        StatChoice::Univariate(kind) => kind,
        other => {
            return Err(Error::AsymptoticUnavailable {
                kind: other.name().to_string(),
            })
        }
    };
    let functional = bridge_functional_for(kind)?;
    let paths = config.paths.expect("resolved");
    let grid = config.grid.expect("resolved");
    let seed = config.seed.expect("resolved");
    // Validates paths/grid up front and documents the model in JSON output.
    let model = NullModel::bridge(bridge_model_kind(kind), paths, grid, seed)?;
    let table = simulate_bridge_functional(functional, paths, grid, seed)?;

    let payload = match config.format.as_deref().expect("resolved") {
        "csv" => {
            let mut text = Vec::new();
            table.write_csv(&mut text).expect("in-memory write");
            String::from_utf8(text).expect("csv is utf-8")
        }
        "json" => {
            let body = serde_json::json!({
                "schema": "v1",
                "command": "null-sim",
                "statistic": kind.name(),
                "functional": functional.name(),
                "model": model.describe(),
                "values": table.values(),
                "config": config,
            });
            serde_json::to_string_pretty(&body)? + "\n"
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown format '{other}' (expected csv or json)"
            )))
        }
    };
    finish(config, payload)
}

fn cmd_power_bench(config: &RunConfig) -> Result<Execution> {
    let statistics = config
        .stats
        .as_ref()
        .expect("resolved")
        .iter()
        .map(|name| StatChoice::parse(name))
        .collect::<Result<Vec<_>>>()?;
    let bench = PowerBenchConfig {
        pair: config.pair.clone().expect("resolved"),
        delta: config.delta.expect("resolved"),
        dim: config.dim.expect("resolved"),
        sizes: config.sizes.clone().expect("resolved"),
        trials: config.trials.expect("resolved"),
        alpha: config.alpha.expect("resolved"),
        permutations: config.perms.expect("resolved"),
        seed: config.seed.expect("resolved"),
        statistics,
        context: stat_context(config),
    };
    let rows = power_bench(&bench)?;
    let payload = match config.format.as_deref().expect("resolved") {
        "csv" => render_power_csv(&rows),
        "json" => {
            let body = serde_json::json!({
                "schema": "v1",
                "command": "power-bench",
                "rows": rows,
                "config": config,
            });
            serde_json::to_string_pretty(&body)? + "\n"
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown format '{other}' (expected csv or json)"
            )))
        }
    };
    finish(config, payload)
}

fn render_power_csv(rows: &[PowerRow]) -> String {
    let mut out = String::from("statistic,n,dim,delta,trials,rejection_rate\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.statistic, row.n, row.dim, row.delta, row.trials, row.rejection_rate
        );
    }
    out
}

fn cmd_rate_bench(config: &RunConfig) -> Result<Execution> {
    let bench = RateBenchConfig {
        generator: Generator::parse(config.generator.as_deref().expect("resolved"))?,
        dims: config.dims.clone().expect("resolved"),
        sizes: config.sizes.clone().expect("resolved"),
        trials: config.trials.expect("resolved"),
        seed: config.seed.expect("resolved"),
    };
    let report = rate_bench(&bench)?;
    let payload = match config.format.as_deref().expect("resolved") {
        "csv" => render_rate_csv(&report),
        "json" => {
            let body = serde_json::json!({
                "schema": "v1",
                "command": "rate-bench",
                "report": report,
                "config": config,
            });
            serde_json::to_string_pretty(&body)? + "\n"
        }
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown format '{other}' (expected csv or json)"
            )))
        }
    };
    finish(config, payload)
}

fn render_rate_csv(report: &RateReport) -> String {
    let mut out = String::from("dim,n,mean_w1,slope\n");
    for cell in &report.cells {
        let slope = report.slope_for(cell.dim).expect("slope fitted per dim");
        let _ = writeln!(out, "{},{},{},{}", cell.dim, cell.n, cell.mean_w1, slope);
    }
    out
}

/// Applies `TWOSAMPLE_THREADS` to the global rayon pool. Results never
/// depend on the thread count; this only tunes resource usage.
pub fn configure_threads() {
    if let Ok(value) = std::env::var(THREADS_ENV) {
        if let Ok(threads) = value.trim().parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

/// Binary entry point.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let command = cli.command.name();
    let result = RunConfig::merged(cli.command.args())
        .map(|config| config.resolve(command))
        .and_then(|config| execute(command, &config));
    match result {
        Ok(execution) => {
            if execution.files.is_empty() {
                print!("{}", execution.payload);
            } else {
                for file in &execution.files {
                    eprintln!("wrote {file}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::FAILURE
        }
    }
}
