use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rholog_cli::{run_batch, run_repl, Session, SessionConfig, EXIT_LOAD_ERROR};

/// Interpreter for rhoLog strategy programs.
#[derive(Parser, Debug)]
#[command(name = "rholog", version)]
struct Args {
    /// Program file to load (repeatable).
    #[arg(long = "load", value_name = "FILE")]
    load: Vec<PathBuf>,
    /// Proximity relation file with `prox(a, b, 0.6).` lines.
    #[arg(long, value_name = "FILE")]
    prox: Option<PathBuf>,
    /// Run a query non-interactively (repeatable).
    #[arg(long = "query", value_name = "QUERY")]
    query: Vec<String>,
    /// Stop each query after this many answers.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    answers: Option<u64>,
    /// Maximum number of steps along one nf derivation.
    #[arg(long = "nf-limit", value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    nf_limit: Option<u64>,
    /// Print selected literals and tried clauses to stderr.
    #[arg(long)]
    trace: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let batch = !args.query.is_empty();
    let cfg = SessionConfig {
        program_paths: args.load,
        proximity_path: args.prox,
        nf_step_limit: args.nf_limit.map(|n| n as usize),
        answer_limit: args.answers.map(|n| n as usize),
        batch_queries: args.query,
        trace: args.trace,
    };
    let session = match Session::load(&cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_LOAD_ERROR as u8);
        }
    };
    for w in session.db.warnings() {
        eprintln!("warning: {w}");
    }
    let result = if batch {
        run_batch(
            &session,
            &cfg.batch_queries,
            &mut io::stdout().lock(),
            &mut io::stderr().lock(),
        )
    } else {
        run_repl(&session, io::stdin().lock(), io::stdout().lock()).map(|()| 0)
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
