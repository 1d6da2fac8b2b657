//! `signed-poset`: build signed differential posets and check their
//! identities from the command line.
//!
//! Exit status is 0 when every requested check holds, 1 when a check fails
//! and 2 for malformed input.

mod commands;
mod spec;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use signed_poset::{Axiom, PosetError};
use thiserror::Error;

use crate::spec::{ExtendBase, Family, PosetSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Whether every check a command ran came out as expected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "signed-poset", version, about = "Exact checks on signed differential posets")]
struct Cli {
    /// Poset to work on.
    #[arg(long, global = true, value_enum, default_value = "young-alpha")]
    poset: Family,

    /// Base of a reflection extension: family:rank:variant:iterations.
    #[arg(long, global = true)]
    extend_base: Option<ExtendBase>,

    /// Highest rank to build (10 for Young families, 12 for Fibonacci).
    #[arg(long, global = true)]
    max_rank: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Truncation order for series.
    #[arg(long, global = true, default_value_t = 8)]
    order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdentityName {
    Signfact,
    Signsum,
    Stanley,
    Fibonacci,
    Sjostrand,
    Fk,
    Gk,
    Nfact,
    Involution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeFamily {
    Partition,
    Fibonacci,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the weak and signed axioms on every checkable rank.
    Verify {
        /// Comma-separated subset of weak, alpha, beta, adjoint; defaults to
        /// weak plus the poset's own variant.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<Axiom>,
        /// Highest rank to check; defaults to max rank - 1.
        #[arg(long)]
        max_check_rank: Option<usize>,
    },
    /// Tabulate an enumerative identity over a range of n.
    Identity {
        #[arg(long, value_enum)]
        name: IdentityName,
        /// `a..b` (inclusive) or a single value. For fk/gk this is the range of k or l.
        #[arg(long, value_parser = parse_range, default_value = "2..10")]
        n: RangeInclusive<usize>,
        /// Largest |λ| for sjostrand.
        #[arg(long, default_value_t = 8)]
        max_weight: usize,
    },
    /// Signed and unsigned maximal-chain sums for every element.
    Chains {
        /// Restrict to one rank.
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Sign-imbalance of partition or Fibonacci shapes.
    Imbalance {
        #[arg(long, value_enum)]
        family: ShapeFamily,
        /// One shape, e.g. `5,3,1` or `212112`.
        #[arg(long, conflicts_with = "n")]
        shape: Option<String>,
        /// Every shape of this size.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Expand a product formula or a series computed from the poset.
    Series {
        /// partition, g-young[:l], fk-skew:k, g2l-skew:l, fib-signed, rank,
        /// signed-rank, kappa:k, tau:k, tau-ratio:k, check-kappa:k, check-tau:k
        #[arg(long)]
        which: String,
    },
    /// Write the poset as JSON, DOT or a CSV list of covers.
    Export {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let number = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad number {t:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (number(a)?, number(b.trim_start_matches('='))?),
        None => {
            let v = number(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let spec = || PosetSpec::new(cli.poset, cli.max_rank, cli.extend_base.clone());
    let format = cli.format;
    let reject_dot = || {
        if format == Format::Dot {
            Err(CliError::Usage("--format dot is only available for export".into()))
        } else {
            Ok(())
        }
    };
    match cli.command {
        Command::Verify { axioms, max_check_rank } => {
            reject_dot()?;
            commands::verify(&spec()?, &axioms, max_check_rank, format)
        }
        Command::Identity { name, n, max_weight } => {
            reject_dot()?;
            commands::identity(name, &spec()?, n, max_weight, cli.order, format)
        }
        Command::Chains { rank } => {
            reject_dot()?;
            commands::chains(&spec()?, rank, format)
        }
        Command::Imbalance { family, shape, n } => {
            reject_dot()?;
            commands::imbalance(family, shape.as_deref(), n, format)
        }
        Command::Series { which } => {
            reject_dot()?;
            commands::series(&which, cli.poset, cli.max_rank, cli.extend_base.clone(), cli.order, format)
        }
        Command::Export { output } => commands::export(&spec()?, format, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..10").unwrap(), 2..=10);
        assert_eq!(parse_range("2..=4").unwrap(), 2..=4);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
