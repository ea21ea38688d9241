//! `unitdist`: bound tables, construction checks and certificate runs.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad invocation or input.

mod commands;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "unitdist", version, about = "Unit distance bounds, constructions and certificates")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Decimals shown for approximate values.
    #[arg(long, default_value_t = 6, global = true)]
    pub precision: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Upper-bound table for u(n) next to the catalog lower bounds.
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// `table1_known`, an inline map such as `{21:68}`, or a file holding either.
        #[arg(long, default_value = "table1_known")]
        seed: String,
    },
    /// Check catalog coordinates and certify them exactly.
    Verify {
        /// Catalog file; the built-in catalog when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        only: Option<String>,
        /// Tolerance on |distance - 1| for claimed edges, as a decimal.
        #[arg(long, default_value = "0.02")]
        tol: String,
    },
    /// Evaluate one named bound.
    Bounds {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Threshold values where one bound overtakes another.
    Crossover {
        #[arg(long, default_value = "table1_known")]
        seed: String,
        /// Last n of the small-n comparison table.
        #[arg(long, default_value_t = 40)]
        to: u64,
    },
    /// Arc multigraph and circle intersection counts of a construction.
    Arcs {
        #[arg(long, default_value = "n15")]
        construction: String,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Exact certificates for the 15-point case analysis.
    Case15 {
        /// One of c6, p5p1, p4p2, p3p3 (also accepted: P5+P1 and so on).
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        case: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Crossings, harmonic sum and random planarization of a drawing file.
    Drawing {
        /// JSON with `positions` and `edges`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
}

pub enum CmdError {
    /// Bad input; exit 2.
    Usage(String),
    /// A check ran and failed, or the computation itself failed; exit 1.
    Failed(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
