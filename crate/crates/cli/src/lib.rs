//! Command-line front end: run configuration, on-disk formats, and the
//! `simulate`, `verify`, `classify` and `plot` subcommands.
//!
//! Exit codes are 0 for success, 1 for a runtime failure or an
//! explicit-constant violation found by `verify`, 2 for usage and
//! configuration errors, and 3 when a simulation detects blow-up.

pub mod classify;
pub mod config;
pub mod error;
pub mod ndjson;
pub mod plot;
pub mod simulate;
pub mod snapshot;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use error::{CliError, EXIT_BLOWUP, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "aqg",
    version,
    about = "Anisotropic SQG simulator and inequality lab"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a simulation described by a TOML configuration file.
    Simulate {
        config: PathBuf,
        /// Run directory; overrides `output_dir` and `$AQG_OUTPUT_DIR`.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Check one family of inequalities on sampled fields.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        #[command(flatten)]
        options: verify::VerifyOptions,
        /// Directory for reports.ndjson.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Report the regularity region and critical exponent of (α, β).
    Classify {
        #[arg(allow_negative_numbers = true)]
        alpha: f64,
        #[arg(allow_negative_numbers = true)]
        beta: f64,
    },
    /// Draw figures from a run directory into <run-dir>/plots.
    Plot {
        run_dir: PathBuf,
        #[arg(value_enum)]
        kind: plot::PlotKind,
    },
}

/// Executes a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

fn dispatch(cmd: Command) -> Result<u8, CliError> {
    match cmd {
        Command::Simulate { config, output_dir } => {
            let out = simulate::simulate(&config, output_dir.as_deref())?;
            let s = &out.summary;
            println!("run directory: {}", out.run_dir.display());
            match &s.blow_up {
                Some(b) => println!("blow-up at t = {}: {}", b.t, b.reason),
                None => println!("completed {} steps, t = {}", s.steps, s.t_final),
            }
            println!("ledger: {}", if s.ledger.passed { "pass" } else { "FAIL" });
            if let Some(d) = &s.decay {
                println!(
                    "decay: ‖θ(T)‖/‖θ⁰‖ = {:.6e}, monotone = {}, {}",
                    d.terminal_fraction,
                    d.monotone,
                    if d.passed { "pass" } else { "fail" }
                );
            }
            Ok(out.exit_code)
        }
        Command::Verify {
            suite,
            options,
            output_dir,
        } => {
            let out = verify::verify(suite, &options, output_dir.as_deref())?;
            println!("reports: {}", out.path.display());
            Ok(out.exit_code)
        }
        Command::Classify { alpha, beta } => {
            print!("{}", classify::classify(alpha, beta)?.render());
            Ok(EXIT_OK)
        }
        Command::Plot { run_dir, kind } => {
            for p in plot::plot(&run_dir, kind)? {
                println!("{}", p.display());
            }
            Ok(EXIT_OK)
        }
    }
}
