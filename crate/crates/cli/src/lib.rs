//! Command-line front end: argument definitions and subcommand dispatch.

pub mod cmd;
pub mod io;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use micromacro::properties::WITNESS_CAP;

use crate::io::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "micromacro",
    version,
    about = "Exact micro-macro dynamical systems"
)]
pub struct Cli {
    /// Worker threads for the parallel scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print every witness instead of the first few.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    /// Write the result to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a random system from a seed.
    Random(cmd::system::RandomArgs),
    /// Full report on a system.
    Analyze(cmd::system::AnalyzeArgs),
    /// Decide one property; exit code 0 iff it holds.
    Check(cmd::system::CheckArgs),
    /// Exhaustive scans and closed-form counts.
    Enumerate(cmd::enumerate::EnumerateArgs),
    /// Probabilities through lattice points of zone polytopes.
    Polytope(cmd::polytope::PolytopeArgs),
    /// Reversible constructions and identities.
    Reversible(cmd::reversible::ReversibleArgs),
    /// Maximum-entropy thermodynamic limits.
    Thermo(cmd::thermo::ThermoArgs),
}

/// Runs a parsed command line and reports whether the checked property holds.
pub fn run(cli: Cli) -> Result<bool, Failure> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::usage(format!("cannot size the thread pool: {e}")))?;
    }
    let cap = if cli.verbose { None } else { Some(WITNESS_CAP) };
    let report = match &cli.command {
        Command::Random(a) => cmd::system::random(a)?,
        Command::Analyze(a) => cmd::system::analyze(a, cap)?,
        Command::Check(a) => cmd::system::check(a, cap)?,
        Command::Enumerate(a) => cmd::enumerate::run(a)?,
        Command::Polytope(a) => cmd::polytope::run(a)?,
        Command::Reversible(a) => cmd::reversible::run(a)?,
        Command::Thermo(a) => cmd::thermo::run(a)?,
    };
    io::emit(&report.text, cli.output.as_deref())?;
    Ok(report.holds)
}
