//! File formats, case studies and the command-line front end for
//! `hamadv-core`.

pub mod cases;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod json;

use clap::{Parser, Subcommand};

pub use config::ExperimentConfig;
pub use error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(name = "hamadv", version, about = "Spectral adversary bounds for continuous-time query algorithms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute λ(Γ), max_j λ(Γ_j), their ratio and the minimum-time bound
    Bound(ExperimentConfig),
    /// Evolve a schedule and check the progress-measure bounds
    Verify(ExperimentConfig),
    /// Search for adversary weights with a large bound ratio
    Optimize(ExperimentConfig),
    /// Write the compiled driver schedule as JSON
    ExportSchedule(ExperimentConfig),
}

impl Command {
    pub fn config(&self) -> &ExperimentConfig {
        match self {
            Command::Bound(c) | Command::Verify(c) | Command::Optimize(c) | Command::ExportSchedule(c) => c,
        }
    }

    pub fn execute(&self) -> error::Result<commands::Outcome> {
        match self {
            Command::Bound(c) => commands::bound(c),
            Command::Verify(c) => commands::verify(c),
            Command::Optimize(c) => commands::optimize(c),
            Command::ExportSchedule(c) => commands::export_schedule(c),
        }
    }
}

/// Runs a parsed command, printing a summary, and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match cli.command.config().threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(CliError::from)
            .and_then(|pool| pool.install(|| cli.command.execute())),
        None => cli.command.execute(),
    };
    match result {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            if outcome.pass {
                exit::PASS
            } else {
                exit::VERIFICATION_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
