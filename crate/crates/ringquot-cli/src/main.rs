//! Command-line front end for the quotient-ring engine.
//!
//! A job file names a field, an algebra, a task, and options; command-line
//! flags override the file. The report goes to stdout as stable `key =
//! value` lines (optionally followed by a machine-readable JSON block) and
//! is byte-identical across repeated runs of the same job.
//!
//! Exit codes: 0 success, 1 a requested property fails under `--assert`,
//! 2 bad input (unreadable file, syntax, or an algebra description that
//! does not define a unital associative algebra), 3 engine failure.

mod build;
mod parse;
mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use crate::parse::{parse_job, FieldChoice, JobSpec, Task};
use crate::run::CliError;

#[derive(Parser)]
#[command(name = "ringquot", version, about = "exact rings of quotients of finite-dimensional algebras")]
struct Cli {
    /// Job file to run.
    #[arg(long)]
    input: PathBuf,
    /// Task override: qmax, qlmax, qsigmamax, qtot, qltot, qsigmatot, qcl,
    /// check-perfect, or report-all.
    #[arg(long)]
    task: Option<String>,
    /// Field override: QQ or GF(p) with p prime, p < 2^16.
    #[arg(long)]
    field: Option<String>,
    /// Seed recorded with the job (all scans are deterministic; the seed is
    /// echoed so a report names the job that produced it).
    #[arg(long)]
    seed: Option<u64>,
    /// Cap on the dimension of the constructed algebra.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Exit with code 1 when a verdict in the report is negative.
    #[arg(long)]
    assert: bool,
    /// Append a machine-readable JSON block after the text report.
    #[arg(long)]
    emit_machine_block: bool,
}

fn parse_field_flag(s: &str) -> Result<FieldChoice, String> {
    if s == "QQ" {
        return Ok(FieldChoice::Rational);
    }
    if let Some(body) = s.strip_prefix("GF(").and_then(|t| t.strip_suffix(')')) {
        if let Ok(p) = body.parse::<u64>() {
            return Ok(FieldChoice::Finite(p));
        }
    }
    Err(format!("bad --field {s:?}: expected QQ or GF(p)"))
}

/// Folds the command-line overrides into the parsed job.
fn apply_flags(spec: &mut JobSpec, cli: &Cli) -> Result<(), String> {
    if let Some(t) = &cli.task {
        spec.task = Some(
            Task::from_name(t).ok_or_else(|| format!("unknown --task {t:?}"))?,
        );
    }
    if let Some(f) = &cli.field {
        spec.field = parse_field_flag(f)?;
    }
    if cli.seed.is_some() {
        spec.options.seed = cli.seed;
    }
    if cli.max_dim.is_some() {
        spec.options.max_dim = cli.max_dim;
    }
    spec.options.assert |= cli.assert;
    spec.options.emit_machine_block |= cli.emit_machine_block;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(2);
        }
    };
    let mut spec = match parse_job(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}:{e}", cli.input.display());
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = apply_flags(&mut spec, &cli) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let outcome = match run::run(&spec) {
        Ok(o) => o,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Engine(msg)) => {
            eprintln!("engine error: {msg}");
            return ExitCode::from(3);
        }
    };
    print!("{}", outcome.report.render_text());
    if spec.options.emit_machine_block {
        print!("{}", outcome.report.render_machine());
    }
    if outcome.negative && spec.options.assert {
        eprintln!("assertion failed: a requested property does not hold (see report)");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
