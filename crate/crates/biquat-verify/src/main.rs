use std::path::PathBuf;
use std::process::ExitCode;

use biquat_verify::coverage;
use biquat_verify::registry::DEFAULT_SEED;
use biquat_verify::report::{emit, Backend, Format, Report};
use biquat_verify::{run, RunConfig, VerifyError};
use clap::Parser;

/// Runs the verification suites and writes a report.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    /// Glob over suite ids.
    #[arg(long, default_value = "*")]
    suite: String,
    #[arg(long, env = "BIQUAT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Preferred backend; suites without it run on their default.
    #[arg(long, value_enum)]
    backend: Option<Backend>,
    /// Tolerance override for suites executed on the requested backend.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the coverage table instead of running suites.
    #[arg(long)]
    coverage: bool,
    /// List suite ids with their anchors.
    #[arg(long)]
    list: bool,
}

fn write(out: &Option<PathBuf>, text: &str) -> Result<(), VerifyError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| VerifyError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if args.coverage {
        return match write(&args.out, &coverage::render(args.format)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
        };
    }
    if args.list {
        let text: String = biquat_verify::suites::all().iter().map(|s| format!("{}\t{}\n", s.id, s.anchor)).collect();
        print!("{text}");
        return ExitCode::SUCCESS;
    }
    let cfg = RunConfig { filter: args.suite, seed: args.seed, backend: args.backend, tol: args.tol };
    let results = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let report = Report::new(results);
    if let Err(e) = write(&args.out, &emit(&report, args.format)) {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    for r in report.results.iter().filter(|r| !r.status.is_success()) {
        eprintln!("FAIL {} ({}) residual {:e}", r.suite_id, r.paper_anchor, r.max_residual);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
