//! Command-line front end for ordinal-pattern transcript analysis.
//!
//! Subcommands: `symbolize` (real-valued CSV → ordinal symbol CSV),
//! `measures` (entropic/coupling/metric records over two streams), `group`
//! (finite-group tables: distances, order classes, regular embedding), and
//! `henon` (coupled-map sweep experiments). Every written data file gets a
//! `.manifest.json` sidecar recording the command, parameters, input
//! digests, tool version, and timestamp; identical invocations produce
//! byte-identical data files.
//!
//! Exit codes: 0 success, 2 missing input file, 64 usage error, 65 bad
//! data, 70 internal error. `TRANSCRIPTA_THREADS` bounds sweep parallelism.

mod commands;
mod manifest;
mod output;
mod table_io;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::process::ExitCode;

pub const EXIT_MISSING: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_INTERNAL: u8 = 70;

/// A command failure carrying its process exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    pub fn missing(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_MISSING,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }

    /// Library errors surfaced while processing input data.
    pub fn from_library(err: transcripta::Error) -> Self {
        Failure::data(err.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

#[derive(Parser)]
#[command(
    name = "transcripta",
    version,
    about = "Ordinal-pattern transcript analysis",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Turn a real-valued CSV column into an ordinal symbol stream.
    Symbolize(commands::symbolize::SymbolizeArgs),
    /// Compute entropic, coupling, and metric records over two streams.
    Measures(commands::measures::MeasuresArgs),
    /// Distance matrices, order classes, and embeddings of a group table.
    Group(commands::group::GroupArgs),
    /// Coupled Hénon-map sweep experiments.
    Henon(commands::henon::HenonArgs),
}

fn bound_threads() -> CmdResult {
    if let Ok(raw) = std::env::var("TRANSCRIPTA_THREADS") {
        let threads: usize = raw
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| {
                Failure::usage(format!(
                    "TRANSCRIPTA_THREADS must be a positive integer, got {raw:?}"
                ))
            })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::internal(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = bound_threads().and_then(|()| match cli.command {
        Command::Symbolize(args) => commands::symbolize::run(args),
        Command::Measures(args) => commands::measures::run(args),
        Command::Group(args) => commands::group::run(args),
        Command::Henon(args) => commands::henon::run(args),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
