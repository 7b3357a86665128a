//! `treepack` command-line front end.
//!
//! Exit status: 0 success, 1 usage or domain error, 2 infeasible (valid
//! input without a solution, or a negative decision), 3 resource limit.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Settings};
use commands::Status;

const EXIT_ERROR: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(Status::Found) => ExitCode::SUCCESS,
        Ok(Status::Infeasible) => ExitCode::from(EXIT_INFEASIBLE),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<Status> {
    let settings = Settings::resolve(cli.common)?;
    let output = commands::run(&cli.command, &settings)?;
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(output.render(settings.format)?.as_bytes())?;
    stdout.flush()?;
    Ok(output.status)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<treepack::Error>() {
        Some(treepack::Error::Infeasible(_)) => EXIT_INFEASIBLE,
        Some(treepack::Error::Resource(_)) => EXIT_RESOURCE,
        _ => EXIT_ERROR,
    }
}
