use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    ExitCode::from(aqg_cli::run(aqg_cli::Cli::parse()))
}
