//! `belyi`: enumerate passports, compute pointed data and statistics, and
//! run the series tools and ramification checks.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "belyi", version)]
#[command(about = "Passports of Belyi maps: enumeration, statistics, pointed descent and verification")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags every subcommand accepts.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output file (JSONL for passport records, JSON otherwise).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Working precision in decimal digits for numerical commands (default 50).
    #[arg(long, global = true)]
    pub digits: Option<usize>,
}

/// Where passport records come from: a JSONL file, or a fresh enumeration.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Passport records (JSONL) written by `enumerate`.
    pub input: Option<PathBuf>,
    /// Degree `d` or range `a..b` to enumerate when no input file is given.
    #[arg(long)]
    pub degree: Option<String>,
    /// Allow degrees 10 and 11 (slow).
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate passports of a degree (or range), optionally per group.
    Enumerate {
        /// Degree `d` or range `a..b`.
        #[arg(long)]
        degree: Option<String>,
        /// Keep only passports of this genus.
        #[arg(long)]
        genus: Option<usize>,
        /// Generators of a transitive group, one per line in cycle notation
        /// or as an image array; enumerates triples generating that group.
        #[arg(long)]
        group_file: Option<PathBuf>,
        /// Allow degrees 10 and 11 (slow).
        #[arg(long)]
        allow_large: bool,
        /// Also compute pointed passports and descent flags.
        #[arg(long)]
        pointed: bool,
    },
    /// Count tables, largest passport sizes and irreducibility statistics.
    Stats {
        #[command(flatten)]
        source: Source,
        /// Galois orbit sizes per passport key (JSONL).
        #[arg(long)]
        orbits: Option<PathBuf>,
    },
    /// Pointed passports and the descent-by-size criterion.
    Pointed {
        #[command(flatten)]
        source: Source,
        /// Print only passports the criterion applies to.
        #[arg(long)]
        only_descending: bool,
    },
    /// Check the ramification of a map given as JSON.
    Verify {
        /// Map, curve and expected partitions over 0, 1, inf.
        fixture: PathBuf,
    },
    /// Series-level tools on hyperelliptic models and Newton systems.
    #[command(subcommand)]
    Series(SeriesCommand),
}

#[derive(Subcommand, Debug)]
pub enum SeriesCommand {
    /// Polynomial part of x^j·y at the second point at infinity.
    LaurentTail {
        /// Model JSON: {"genus", "u", "v"}.
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0)]
        j: usize,
    },
    /// Basis of functions with poles only at infinity, up to a pole order.
    RrBasis {
        #[arg(long)]
        model: PathBuf,
        /// Largest pole order.
        #[arg(long)]
        pole_order: usize,
    },
    /// Newton refinement of a Belyi map system.
    NewtonRefine {
        /// Problem JSON: ansatz, points, ramification and pins.
        problem: PathBuf,
        /// Target residual, e.g. 1e-30 (default: 10^-(digits-10)).
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::error_code(&e))
        }
    }
}
