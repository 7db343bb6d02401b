//! `k3pf`: batch front end for the Picard-Fuchs pipeline. Results go to
//! stdout as JSON. Exit status is 0 on success, 1 on a domain error (with
//! `{"error": kind, "detail": ...}` on stdout) and 2 on a usage error.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

pub enum Failure {
    Usage(String),
    Domain(k3pf::Error),
}

impl From<k3pf::Error> for Failure {
    fn from(e: k3pf::Error) -> Self {
        Failure::Domain(e)
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("K3PF_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("K3PF_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match commands::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = configure_threads().and_then(|()| commands::run(cli.command));
    match out {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            emit(&json!({"error": e.kind(), "detail": e.to_string()}));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(v: &serde_json::Value) {
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{v}");
}
