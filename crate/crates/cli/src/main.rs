//! `hyperdiag` command-line harness.
//!
//! Exit codes: 0 confirmed or true, 1 refuted (a certificate is in the
//! report), 2 usage or input error, 3 search budget exhausted.

mod args;
mod run;

use std::fs;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use run::{document, error_code, execute, Output, USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = &cli.command;
    let run = match execute(cmd) {
        Ok(run) => run,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_code(&e));
        }
    };
    let text = match run.output {
        Output::Report(result) => {
            let mut s = serde_json::to_string_pretty(&document(cmd, result)).expect("json value");
            s.push('\n');
            s
        }
        Output::Text(s) => s,
    };
    if let Some(path) = &cmd.common().out {
        if let Err(e) = fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(USAGE);
        }
    }
    print!("{text}");
    ExitCode::from(run.code)
}
