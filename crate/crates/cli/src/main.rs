//! `twogreedy`: single runs, scaling scans, trajectory tables and the
//! small-n oracle.
//!
//! Exit codes: 0 on success, 2 when an internal invariant fails, 64 on a
//! usage error. Summaries go to standard output as JSON, diagnostics to
//! standard error.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use twogreedy::experiments::{scan, scan_csv, ScanConfig};
use twogreedy::oracle::{exhaustive, monte_carlo, MAX_EXHAUSTIVE_N};
use twogreedy::trajectory::{
    cubic_residual, envelopes, eval_a, eval_b, eval_phi, integrate_ode_grid, limit_ratio, EnvelopeConstants,
};
use twogreedy::{run, Error, RunOptions, Stride, RNG_ID, VERSION};

const EXIT_INVARIANT: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "twogreedy", version, about = "2-matching greedy on random cubic multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One run; prints a JSON summary and optionally writes the trace.
    Run(RunArgs),
    /// Runs over a grid of sizes and fits the growth exponent of κ.
    Scan(ScanArgs),
    /// Tabulates a(t), b(t), Φ(t) and the envelopes, with self-checks.
    Trajectory(TrajectoryArgs),
    /// Exhaustive or sampled verification at n = 2 or 4.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trace CSV destination.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// `auto` or a positive step count.
    #[arg(long, default_value = "auto", value_parser = parse_stride)]
    stride: Stride,
    /// Condition on a simple graph.
    #[arg(long)]
    simple: bool,
    /// Full state audit every this many steps.
    #[arg(long)]
    validate_every: Option<usize>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Comma separated, strictly increasing even sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    grid: Vec<usize>,
    #[arg(long, default_value_t = 30)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON destination; the per-n CSV is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    simple: bool,
    /// Record traces and compare them with the envelopes.
    #[arg(long)]
    envelopes: bool,
    /// Worker threads.
    #[arg(long, env = "TWOGREEDY_JOBS")]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct TrajectoryArgs {
    #[arg(long, default_value_t = 10_000)]
    grid_points: usize,
    /// Largest grid time; the grid is uniform on `[0, t_max]`.
    #[arg(long, default_value_t = 0.9999)]
    t_max: f64,
    /// Size used for the envelope columns.
    #[arg(long, default_value_t = 1_000_000)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleMode {
    Exhaustive,
    Mc,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = OracleMode::Exhaustive)]
    mode: OracleMode,
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_stride(s: &str) -> Result<Stride, String> {
    if s == "auto" {
        return Ok(Stride::Auto);
    }
    match s.parse::<usize>() {
        Ok(k) if k > 0 => Ok(Stride::Every(k)),
        _ => Err(format!("stride must be `auto` or a positive integer, got {s:?}")),
    }
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_invariant() {
            EXIT_INVARIANT
        } else {
            match e {
                Error::OddVertexCount(_) | Error::TooFewVertices(_) | Error::Config(_) => EXIT_USAGE,
                Error::RunFailed { ref source, .. } if !source.is_invariant() => EXIT_USAGE,
                _ => 1,
            }
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Error::from(e).into()
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure { code: 1, message: format!("cannot create {}: {e}", path.display()) })
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    serde_json::to_writer(&mut lock, value)?;
    writeln!(lock)?;
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let options = RunOptions {
        stride: args.stride,
        keep_trace: args.trace.is_some(),
        track_alpha: args.trace.is_some(),
        validate_every: args.validate_every,
        simple_only: args.simple,
        ..RunOptions::default()
    };
    let result = run(args.n, args.seed, &options)?;
    if let (Some(path), Some(trace)) = (&args.trace, &result.trace) {
        let mut out = create(path)?;
        trace.write_csv(&mut out)?;
        out.flush()?;
    }
    print_json(&result.summary())
}

#[derive(Serialize)]
struct ScanOutput<'a> {
    version: &'static str,
    rng: &'static str,
    config: &'a ScanConfig,
    per_n: &'a [twogreedy::experiments::PerN],
    slope: Option<f64>,
    intercept: Option<f64>,
    slope_se: Option<f64>,
}

fn cmd_scan(args: ScanArgs) -> Result<(), Failure> {
    let mut config = ScanConfig::new(args.grid, args.runs, args.seed);
    config.simple_only = args.simple;
    config.check_envelopes = args.envelopes;
    config.jobs = args.jobs;
    let result = scan(&config)?;
    let view = ScanOutput {
        version: VERSION,
        rng: RNG_ID,
        config: &result.config,
        per_n: &result.per_n,
        slope: result.slope,
        intercept: result.intercept,
        slope_se: result.slope_se,
    };
    if let Some(path) = &args.out {
        let mut out = create(path)?;
        serde_json::to_writer_pretty(&mut out, &view)?;
        writeln!(out)?;
        out.flush()?;
        let mut csv = create(&path.with_extension("csv"))?;
        scan_csv(&result, &mut csv)?;
        csv.flush()?;
    }
    print_json(&view)
}

#[derive(Serialize)]
struct TrajectoryReport {
    version: &'static str,
    grid_points: usize,
    t_max: f64,
    n: usize,
    max_cubic_residual: f64,
    max_ode_discrepancy: f64,
    bound_violations: usize,
    limit_ratio: f64,
}

fn cmd_trajectory(args: TrajectoryArgs) -> Result<(), Failure> {
    if args.grid_points == 0 {
        return Err(Failure::usage("at least one grid point is needed"));
    }
    if !(0.0..=0.9999).contains(&args.t_max) {
        return Err(Failure::usage("t-max must lie in [0, 0.9999]"));
    }
    if args.n < 2 {
        return Err(Failure::usage("n must be at least 2"));
    }
    let k = args.grid_points;
    let ts: Vec<f64> =
        (0..k).map(|i| if k == 1 { 0.0 } else { args.t_max * i as f64 / (k - 1) as f64 }).collect();
    let ode = integrate_ode_grid(&ts, 1e-6)?;
    let consts = EnvelopeConstants::default();
    let lower = limit_ratio::<f64>();
    let mut out = match &args.out {
        Some(path) => {
            let mut w = create(path)?;
            writeln!(w, "# twogreedy trajectory version={VERSION} n={} grid_points={k}", args.n)?;
            writeln!(w, "t,a,b,phi,f_a,f_b,f_zeta")?;
            Some(w)
        }
        None => None,
    };
    let mut report = TrajectoryReport {
        version: VERSION,
        grid_points: k,
        t_max: args.t_max,
        n: args.n,
        max_cubic_residual: 0.0,
        max_ode_discrepancy: 0.0,
        bound_violations: 0,
        limit_ratio: lower,
    };
    for (&t, &a_ode) in ts.iter().zip(&ode) {
        let a = eval_a(t)?;
        let b = eval_b(t);
        let phi = eval_phi(t)?;
        report.max_cubic_residual = report.max_cubic_residual.max(cubic_residual(t, a).abs());
        report.max_ode_discrepancy = report.max_ode_discrepancy.max((a - a_ode).abs());
        let s = (1.0 - t).powf(1.5);
        if a < lower * s || a > s {
            report.bound_violations += 1;
        }
        if let Some(w) = out.as_mut() {
            let e = envelopes(t, args.n as f64, &consts);
            writeln!(w, "{t},{a},{b},{phi},{},{},{}", e.f_a, e.f_b, e.f_zeta)?;
        }
    }
    if let Some(mut w) = out {
        w.flush()?;
    }
    print_json(&report)
}

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    if !matches!(args.n, 2 | 4) {
        return Err(Failure::usage(format!(
            "oracle supports n = 2 or n = {MAX_EXHAUSTIVE_N}, got {}",
            args.n
        )));
    }
    let violations = match args.mode {
        OracleMode::Exhaustive => {
            let r = exhaustive(args.n)?;
            print_json(&r)?;
            (r.violations, r.first_violation)
        }
        OracleMode::Mc => {
            if args.trials == 0 {
                return Err(Failure::usage("trials must be positive"));
            }
            let r = monte_carlo(args.n, args.trials, args.seed)?;
            print_json(&r)?;
            (r.violations, r.first_violation)
        }
    };
    match violations {
        (0, _) => Ok(()),
        (k, first) => Err(Failure {
            code: EXIT_INVARIANT,
            message: format!("{k} runs violated invariants; first: {}", first.unwrap_or_default()),
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Trajectory(a) => cmd_trajectory(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("twogreedy: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
