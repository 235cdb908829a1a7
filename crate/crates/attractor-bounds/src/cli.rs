//! Command-line wiring: JSON configs in, CSV/JSON reports out.
//!
//! `attractor-bounds <spectrum|bounds|simulate|report> --config <file>`
//! with scalar override flags. Exit codes: 0 success, 1 verification
//! failure, 2 config error, 3 numerical blow-up. Sweep points run
//! concurrently (capped by `ATTRACTOR_BOUNDS_THREADS`), each writing its own
//! suffixed files; every file is written to a temp name and renamed, so a
//! failing run leaves no partial outputs.

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};

use crate::bounds::{self, DimensionReport, Regime};
use crate::config::{CommandKind, RunConfig, ScalarOverrides};
use crate::error::{Error, Result};
use crate::sim::{self, RunSummary, Simulation};
use crate::spectrum;

#[derive(Debug, Parser)]
#[command(
    name = "attractor-bounds",
    version,
    about = "Eigenvalue-sum bounds and attractor-dimension estimates for the Dirichlet complex Ginzburg-Landau equation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Enumerate box eigenvalues and verify the eigenvalue-sum bounds
    Spectrum(CommonArgs),
    /// Compute the dimension-bound report (JSON; CSV when sweeping)
    Bounds(CommonArgs),
    /// Run the CGL simulator with tangent/trace diagnostics
    Simulate(CommonArgs),
    /// Simulate to estimate delta, then bound the dimension and cross-check q_m
    Report(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON run configuration
    #[arg(long)]
    pub config: PathBuf,
    /// Override params.gamma
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Override consts.c (Melas numerator)
    #[arg(long)]
    pub c: Option<f64>,
    /// Override the verification row count
    #[arg(long = "m-max")]
    pub m_max: Option<usize>,
    /// Override sim.dt
    #[arg(long)]
    pub dt: Option<f64>,
    /// Override sim.t_end
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    /// Override the random initial-condition seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory (overrides config output_dir)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Entry point for the binary: parse, execute, return the exit code.
pub fn main() -> i32 {
    execute(Cli::parse())
}

pub fn execute(cli: Cli) -> i32 {
    let (kind, args) = match &cli.command {
        CliCommand::Spectrum(a) => (CommandKind::Spectrum, a),
        CliCommand::Bounds(a) => (CommandKind::Bounds, a),
        CliCommand::Simulate(a) => (CommandKind::Simulate, a),
        CliCommand::Report(a) => (CommandKind::Report, a),
    };
    let text = match fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read config {}: {e}", args.config.display());
            return 2;
        }
    };
    let mut base = match RunConfig::from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if let Some(declared) = base.command {
        if declared != kind {
            eprintln!("error: config declares command '{declared}' but '{kind}' was invoked");
            return 2;
        }
    }
    if let Some(out) = &args.out {
        base.output_dir = out.clone();
    }
    let flag_overrides = ScalarOverrides {
        gamma: args.gamma,
        c: args.c,
        delta: None,
        m_max: args.m_max,
        dt: args.dt,
        t_end: args.t_end,
        seed: args.seed,
    };
    let base = base.with_overrides(&flag_overrides);

    match kind {
        CommandKind::Bounds => run_bounds(&base),
        _ => {
            let points = base.sweep_points();
            let suffixes = suffixes(points.len());
            in_sweep_pool(|| {
                points
                    .par_iter()
                    .zip(&suffixes)
                    .map(|(ov, suffix)| {
                        let cfg = base.with_overrides(ov);
                        let result = match kind {
                            CommandKind::Spectrum => cmd_spectrum(&cfg, suffix),
                            CommandKind::Simulate => cmd_simulate(&cfg, suffix),
                            CommandKind::Report => cmd_report(&cfg, suffix),
                            CommandKind::Bounds => unreachable!(),
                        };
                        result.unwrap_or_else(|e| {
                            eprintln!("error: {e}");
                            e.exit_code()
                        })
                    })
                    .max()
                    .unwrap_or(0)
            })
        }
    }
}

fn suffixes(n: usize) -> Vec<Option<usize>> {
    if n == 1 {
        vec![None]
    } else {
        (0..n).map(Some).collect()
    }
}

fn in_sweep_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("ATTRACTOR_BOUNDS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1);
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

fn file_name(stem: &str, suffix: &Option<usize>, ext: &str) -> String {
    match suffix {
        Some(i) => format!("{stem}_{i:03}.{ext}"),
        None => format!("{stem}.{ext}"),
    }
}

/// Write-then-rename so interrupted or failed runs never leave a partial file.
fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let tmp = dir.join(format!("{name}.tmp"));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

fn to_json_pretty<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Spectrum verification: writes the CSV table, exits 0 only if every
/// inequality row passes.
fn cmd_spectrum(cfg: &RunConfig, suffix: &Option<usize>) -> Result<i32> {
    let consts = cfg.build_consts()?;
    let m_max = cfg
        .m_max
        .ok_or_else(|| Error::InvalidConfig("spectrum command requires m_max".into()))?;
    let verification = spectrum::verify_bounds(&cfg.domain, m_max, &consts)?;
    let mut csv = Vec::new();
    verification.write_csv(&mut csv)?;
    write_atomic(&cfg.output_dir, &file_name("verification", suffix, "csv"), &csv)?;
    Ok(if verification.all_pass { 0 } else { 1 })
}

#[derive(Serialize)]
struct BoundsDocument<'a> {
    config: &'a RunConfig,
    report: DimensionReport,
}

fn bounds_report(cfg: &RunConfig) -> Result<DimensionReport> {
    let consts = cfg.build_consts()?;
    let delta = match cfg.delta {
        Some(d) => d,
        None => {
            eprintln!("warning: delta not set in config; defaulting to 0");
            0.0
        }
    };
    bounds::build_report(&cfg.domain, &cfg.params, delta, &consts, cfg.lambda1)
}

fn run_bounds(base: &RunConfig) -> i32 {
    let points = base.sweep_points();
    let suffixes = suffixes(points.len());
    let results: Vec<(RunConfig, Result<DimensionReport>)> = in_sweep_pool(|| {
        points
            .par_iter()
            .map(|ov| {
                let cfg = base.with_overrides(ov);
                let report = bounds_report(&cfg);
                (cfg, report)
            })
            .collect()
    });

    let mut code = 0;
    let mut csv = String::from(
        "index,gamma,c,c_star,delta,Lambda1,regime,A,B,d_star,d_star_baseline\n",
    );
    for ((cfg, result), suffix) in results.iter().zip(&suffixes) {
        match result {
            Ok(report) => {
                let doc = BoundsDocument { config: cfg, report: report.clone() };
                let body = match to_json_pretty(&doc) {
                    Ok(b) => b,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return e.exit_code();
                    }
                };
                if let Err(e) = write_atomic(
                    &cfg.output_dir,
                    &file_name("dimension_report", suffix, "json"),
                    &body,
                ) {
                    eprintln!("error: {e}");
                    return e.exit_code();
                }
                let regime = match report.regime {
                    Regime::Trivial => "trivial",
                    Regime::Nontrivial => "nontrivial",
                };
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    suffix.map_or(0, |i| i),
                    cfg.params.gamma,
                    cfg.consts.c,
                    cfg.consts.c_star,
                    report.delta,
                    report.lambda1,
                    regime,
                    report.a,
                    report.b,
                    report.d_star,
                    report.d_star_baseline
                ));
            }
            Err(e) => {
                eprintln!("error: {e}");
                code = code.max(e.exit_code());
            }
        }
    }
    if code == 0 && base.has_sweep() {
        if let Err(e) = write_atomic(&base.output_dir, "dimension_sweep.csv", csv.as_bytes()) {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    }
    code
}

#[derive(Serialize)]
struct SimulateDocument<'a> {
    config: &'a RunConfig,
    summary: &'a RunSummary,
}

fn cmd_simulate(cfg: &RunConfig, suffix: &Option<usize>) -> Result<i32> {
    let consts = cfg.build_consts()?;
    let sim_cfg = cfg.build_sim_config()?;
    let mut simulation = Simulation::new(sim_cfg, cfg.params)?;
    let output = simulation.run()?;
    if let Some(witness) = output.summary.lieb_thirring_witness {
        if consts.c_star < witness {
            eprintln!(
                "warning: configured C_* = {} is below the run's empirical Lieb-Thirring witness {witness}",
                consts.c_star
            );
        }
    }
    let mut csv = Vec::new();
    sim::write_diagnostics_csv(&output.records, &mut csv)?;
    write_atomic(&cfg.output_dir, &file_name("diagnostics", suffix, "csv"), &csv)?;
    let doc = SimulateDocument {
        config: cfg,
        summary: &output.summary,
    };
    write_atomic(
        &cfg.output_dir,
        &file_name("summary", suffix, "json"),
        &to_json_pretty(&doc)?,
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct AdvisoryRow {
    m: usize,
    q_m: f64,
    /// −A m^{(n+2)/n} + B_emp with the measured delta.
    bound: f64,
    pass: bool,
}

#[derive(Serialize)]
struct Advisory {
    /// B recomputed with the measured delta (equals the report's B).
    b_emp: f64,
    /// Smallest integer m with −A m^{(n+2)/n} + B_emp < 0.
    m_star: u64,
    /// Configured C_* against the run's empirical Lieb–Thirring witness; the
    /// q_m bound chain presumes c_star_ok.
    c_star_ok: bool,
    lieb_thirring_witness: Option<f64>,
    rows: Vec<AdvisoryRow>,
    pass: bool,
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    config: &'a RunConfig,
    report: &'a DimensionReport,
    summary: &'a RunSummary,
    advisory: Option<Advisory>,
}

fn cmd_report(cfg: &RunConfig, suffix: &Option<usize>) -> Result<i32> {
    let consts = cfg.build_consts()?;
    let sim_cfg = cfg.build_sim_config()?;
    let mut simulation = Simulation::new(sim_cfg, cfg.params)?;
    let output = simulation.run()?;
    let delta = output.summary.delta;
    let report = bounds::build_report(&cfg.domain, &cfg.params, delta, &consts, cfg.lambda1)?;

    let advisory = match report.regime {
        Regime::Trivial => None,
        Regime::Nontrivial => {
            let n = consts.n as f64;
            let (a, b_emp) = (report.a, report.b);
            let witness = output.summary.lieb_thirring_witness;
            let c_star_ok = witness.is_none_or(|w| consts.c_star >= w);
            if !c_star_ok {
                eprintln!(
                    "warning: configured C_* = {} is below the run's empirical Lieb-Thirring witness {:?}",
                    consts.c_star, witness
                );
            }
            let rows: Vec<AdvisoryRow> = output
                .summary
                .qm
                .iter()
                .map(|entry| {
                    let bound = -a * (entry.m as f64).powf((n + 2.0) / n) + b_emp;
                    let pass = entry.q_m <= bound + 1e-9 * bound.abs().max(1.0);
                    AdvisoryRow {
                        m: entry.m,
                        q_m: entry.q_m,
                        bound,
                        pass,
                    }
                })
                .collect();
            let x_star = (b_emp / a).powf(n / (n + 2.0));
            Some(Advisory {
                b_emp,
                m_star: x_star.floor() as u64 + 1,
                c_star_ok,
                lieb_thirring_witness: witness,
                pass: rows.iter().all(|r| r.pass) && c_star_ok,
                rows,
            })
        }
    };

    let mut csv = Vec::new();
    sim::write_diagnostics_csv(&output.records, &mut csv)?;
    write_atomic(&cfg.output_dir, &file_name("diagnostics", suffix, "csv"), &csv)?;
    let doc = ReportDocument {
        config: cfg,
        report: &report,
        summary: &output.summary,
        advisory,
    };
    write_atomic(
        &cfg.output_dir,
        &file_name("report", suffix, "json"),
        &to_json_pretty(&doc)?,
    )?;
    Ok(0)
}
