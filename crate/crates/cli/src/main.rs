//! `betamoments` command-line driver.
//!
//! Exit codes: 0 on success, 1 on usage or parameter errors, 2 when backends
//! disagree or a verification fails.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

fn run() -> Result<ExitCode, String> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(ExitCode::SUCCESS);
        }
        Err(e) => return Err(e.render().to_string().trim_end().to_string()),
    };
    let report = match &cli.command {
        Command::Moment(a) => commands::moment(a),
        Command::Paths(a) => commands::paths(a),
        Command::Series(a) => commands::series(a),
        Command::Verify(a) => commands::verify(a),
        Command::Sample(a) => commands::sample(a),
    }
    .map_err(|e| format!("error: {}", e.0))?;

    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = report.render(cli.format)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("error: cannot write {}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &report.failures {
            eprintln!("{f}");
        }
        Ok(ExitCode::from(2))
    }
}

fn main() -> ExitCode {
    run().unwrap_or_else(|msg| {
        eprintln!("{msg}");
        ExitCode::from(1)
    })
}
