//! `khtot`: total Khovanov-type homology and upright-set s-invariants of
//! link diagrams.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors
//! and invalid input.

mod commands;
mod input;
mod report;

use clap::{Parser, Subcommand};
use report::{Format, RunReport, SCHEMA};
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(name = "khtot", version, about = "Perturbed geometric Khovanov complexes over F2[H,W] and their s-invariants")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, env = "KHTOT_THREADS")]
    threads: Option<usize>,
    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Homology tables of one or more specializations.
    Homology(commands::HomologyArgs),
    /// Upright-set s-invariants of a knot.
    S(commands::SArgs),
    /// Run verification suites; exits 1 on failure.
    Verify(commands::VerifyArgs),
    /// Export the complex after cancelling all unit entries.
    Reduce(commands::ReduceArgs),
    /// Apply Reidemeister moves and re-check homology.
    Moves(commands::MovesArgs),
    /// Dump a cube configuration and classify its labelings.
    Debug(commands::DebugArgs),
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: the thread count must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Homology(a) => commands::homology(a),
        Command::S(a) => commands::s_values(a),
        Command::Verify(a) => commands::verify(a),
        Command::Reduce(a) => commands::reduce(a),
        Command::Moves(a) => commands::moves(a),
        Command::Debug(a) => commands::debug(a),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let report = RunReport {
        schema: SCHEMA,
        command: argv[1..].to_vec(),
        input: outcome.input,
        result: outcome.result,
        passed: outcome.passed,
        wall_time_ms: cli.timing.then(|| start.elapsed().as_millis()),
        tables: outcome.tables,
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(report.render(cli.format).as_bytes()).is_err() {
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
