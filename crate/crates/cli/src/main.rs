//! `pentafold`: batch verification of the pentagonal-number identities.
//!
//! Exit status is 0 when every check passes, 1 when one fails and 2 on a
//! usage error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "pentafold", version, about = "Verify pentagonal-number identities exactly")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Divisor-sum cache file (`N,sigma` lines).
    #[arg(long, env = "PENTAFOLD_CACHE", global = true)]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigmaMethod {
    Brute,
    Recurrence,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generalized pentagonal numbers in stream order.
    Seq {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Classify a single value instead.
        #[arg(long)]
        value: Option<String>,
    },
    /// Divisor-sum table, cross-checked between recurrence and trial division.
    Sigma {
        #[arg(long = "max", value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = SigmaMethod::Recurrence)]
        method: SigmaMethod,
        /// Print the recurrence expansion for N = max on stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Product expansion against the sparse pentagonal series.
    VerifyPnt {
        #[arg(long, default_value_t = 1000)]
        degree: usize,
        /// Emit the series as `degree,coefficient` lines.
        #[arg(long)]
        dump: bool,
    },
    /// Period and basis cancellation for every root order up to `m`.
    VerifyPeriods {
        #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Only this residue in the basis checks.
        #[arg(long)]
        r: Option<u64>,
        /// Number of consecutive 4m-term blocks.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Elementary symmetric functions and power sums against divisor sums.
    VerifyPowersums {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Exact branch sums of the λ-power series.
    Sum {
        #[arg(long, default_value_t = 1)]
        lambda: u32,
    },
    /// Damped evaluation at every m-th root of unity and per residue class.
    Abel {
        #[arg(long, default_value_t = 1)]
        lambda: u32,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Only this residue class.
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, default_value_t = 0.999)]
        rho: f64,
        /// Radius the decay is measured against.
        #[arg(long, default_value_t = 0.9)]
        reference: f64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Run every end-to-end check.
    Report,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.render(cli.format));
            for failure in &outcome.failures {
                eprintln!("FAIL: {failure}");
            }
            if outcome.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::RunError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
