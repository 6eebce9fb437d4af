//! `sarkisov` command-line front end.
//!
//! Exit codes: 0 success, 1 self-check failure, 2 usage or input error,
//! 3 node verification failure.

mod bound;
mod links;
mod nodal;
mod selfcheck;

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "sarkisov", version, about = "Sarkisov links through Fano 3-folds and defects of nodal quartics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the links through a weak Fano 3-fold of the given genus.
    Links(links::Args),
    /// Upper bounds on the defect.
    Bound(bound::Args),
    /// Defect of a configuration of nodes on a quartic 3-fold.
    Nodal(nodal::Args),
    /// Run the built-in acceptance suite.
    Selfcheck(selfcheck::Args),
}

/// A failure carrying its exit code.
pub enum Failure {
    Selfcheck,
    Usage(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Selfcheck => 1,
            Failure::Usage(_) => 2,
            Failure::Verification(_) => 3,
        }
    }
}

/// Whether ANSI colour may be written to standard output.
pub fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Links(a) => links::run(a),
        Command::Bound(a) => bound::run(a),
        Command::Nodal(a) => nodal::run(a),
        Command::Selfcheck(a) => selfcheck::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Verification(m) => eprintln!("error: {m}"),
                Failure::Selfcheck => {}
            }
            ExitCode::from(f.code())
        }
    }
}
