//! Command-line front end: compute the supremal p-negative type of a graph
//! or distance matrix, trace the determinant curves, run the fixture
//! regression table, and scan small graphs for the gap interval.

// Fixture checks read better with explicit indices, and `!(x > 0.0)`-style
// guards are deliberate: they reject NaN along with the wrong sign.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

mod gapscan;
mod input;
mod report;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use input::LoadedInput;
use negtype_core::{extremal_vector, supremal_pnt, trace_table, PntConfig, PntStatus};

const EXIT_FAILURES: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_NOT_FINITE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "negtype",
    about = "Supremal p-negative type of finite metric spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the supremal p-negative type and the extremal simplex
    Compute(ComputeArgs),
    /// Sample det, bordered det, inner product and lambda_max over a p range
    Trace(TraceArgs),
    /// Run the built-in fixture regression table
    Verify(VerifyArgs),
    /// Check every small connected graph against the gap interval
    GapScan(GapScanArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Edge-list file (`u v` or `u v w` lines, optional `n <count>` header)
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Distance-matrix CSV file (n rows of n comma-separated decimals)
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Generator spec: complete:N, path:N, cycle:N, kbipartite:N,M, fixture:NAME
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,
}

impl InputArgs {
    fn load(&self, normalize: bool) -> Result<LoadedInput, String> {
        if let Some(path) = &self.graph {
            input::load_graph_file(path)
        } else if let Some(path) = &self.matrix {
            input::load_matrix_file(path, normalize)
        } else if let Some(spec) = &self.gen {
            input::load_generator(spec)
        } else {
            unreachable!("clap enforces exactly one input")
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Upper end of the exponent scan
    #[arg(long, default_value_t = 20.0)]
    p_max: f64,
    /// Grid step for the sign-change scan
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    /// Relative tolerance for eigenvalue and determinant tests
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Rescale matrix input so the minimum distance is 1 (graphs always are)
    #[arg(long)]
    normalize: bool,
    /// Exit with code 3 if no finite value is found up to p_max
    #[arg(long)]
    require_finite: bool,
    /// Suppress the human-readable summary on stderr
    #[arg(long)]
    quiet: bool,
    /// Worker threads for the grid scan
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Start of the exponent range
    #[arg(long)]
    p_from: f64,
    /// End of the exponent range
    #[arg(long)]
    p_to: f64,
    /// Sample spacing
    #[arg(long)]
    step: f64,
    /// Relative determinant tolerance for blanking the inner column
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Rescale matrix input so the minimum distance is 1
    #[arg(long)]
    normalize: bool,
    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    trace_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Tolerance for comparing computed values against closed forms
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Print only failures
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct GapScanArgs {
    /// Largest vertex count to scan (2..=6)
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Grid step for each per-graph scan
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    /// Worker threads (default: all cores)
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Compute(args) => cmd_compute(args),
        Command::Trace(args) => cmd_trace(args),
        Command::Verify(args) => cmd_verify(args),
        Command::GapScan(args) => cmd_gap_scan(args),
    }
}

fn bad_input(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_BAD_INPUT)
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())
}

fn cmd_compute(args: ComputeArgs) -> ExitCode {
    if args.threads == 0 {
        return bad_input("--threads must be at least 1");
    }
    let loaded = match args.input.load(args.normalize) {
        Ok(loaded) => loaded,
        Err(e) => return bad_input(&e),
    };
    let cfg = PntConfig {
        p_max: args.p_max,
        grid_step: args.grid_step,
        tol_eig: args.tol,
        tol_det: args.tol,
        ..PntConfig::default()
    };
    if !(cfg.p_max > 0.0) || !(cfg.grid_step > 0.0) || !(cfg.tol_eig > 0.0) {
        return bad_input("--p-max, --grid-step and --tol must be positive");
    }
    let pool = match thread_pool(args.threads) {
        Ok(pool) => pool,
        Err(e) => return bad_input(&e),
    };
    let started = Instant::now();
    let result = pool.install(|| supremal_pnt(&loaded.space, &cfg));
    let certificate = match result.status {
        PntStatus::Finite(_) => match extremal_vector(&loaded.space, &result) {
            Ok(cert) => Some(cert),
            Err(e) => return bad_input(&format!("extremal vector extraction failed: {e}")),
        },
        PntStatus::InfiniteBeyond(_) => None,
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    let report = report::build_report(&loaded, &cfg, &result, certificate.as_ref(), wall_ms);
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report is serializable")
    );
    if !args.quiet {
        match result.status {
            PntStatus::Finite(p) => eprintln!(
                "{}: wp = {p:.9} ({}), bracket width {:.1e}, det {:.3e}, bordered {:.3e}, {wall_ms:.1} ms",
                loaded.descriptor,
                report.trigger,
                result.bracket.1 - result.bracket.0,
                result.diagnostics.det,
                result.diagnostics.bordered_det,
            ),
            PntStatus::InfiniteBeyond(pm) => eprintln!(
                "{}: negative type holds through p_max = {pm} (lambda_max {:.3e}), {wall_ms:.1} ms",
                loaded.descriptor, result.lambda_max_at_p,
            ),
        }
    }
    if args.require_finite && result.p().is_none() {
        return ExitCode::from(EXIT_NOT_FINITE);
    }
    ExitCode::SUCCESS
}

fn cmd_trace(args: TraceArgs) -> ExitCode {
    let loaded = match args.input.load(args.normalize) {
        Ok(loaded) => loaded,
        Err(e) => return bad_input(&e),
    };
    let table = match trace_table(&loaded.space, args.p_from, args.p_to, args.step, args.tol) {
        Ok(table) => table,
        Err(e) => return bad_input(&e.to_string()),
    };
    let csv = table.to_csv();
    match &args.trace_out {
        Some(path) => {
            if let Err(e) = fs::write(path, csv) {
                return bad_input(&format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{csv}"),
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    if !(args.tol > 0.0) {
        return bad_input("--tol must be positive");
    }
    let outcome = verify::run_verify(args.tol, args.quiet);
    println!(
        "{} fixtures passed, {} failed",
        outcome.passed,
        outcome.failures.len()
    );
    if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURES)
    }
}

fn cmd_gap_scan(args: GapScanArgs) -> ExitCode {
    if !(2..=6).contains(&args.n_max) {
        return bad_input("--n-max must be between 2 and 6");
    }
    if !(args.grid_step > 0.0) {
        return bad_input("--grid-step must be positive");
    }
    let pool = match thread_pool(args.threads.unwrap_or_default()) {
        Ok(pool) => pool,
        Err(e) => return bad_input(&e),
    };
    let report = pool.install(|| gapscan::run_gap_scan(args.n_max, args.grid_step));
    gapscan::print_report(&report);
    if report.violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURES)
    }
}
