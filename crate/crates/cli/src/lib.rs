//! Library behind the `calogero` command-line tool.

pub mod commands;
pub mod expr;

use std::path::PathBuf;

use calogero_core::coxgroup::Kappa;
use clap::{Args, Parser, Subcommand};

pub use commands::{nu_samples, run, table_row, verify, CliError, SuiteStatus, TableRow, VerifyReport, STANDARD_SYSTEMS};
pub use expr::{parse_expr, to_element, Expr, ExprError, ExprKind};

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "CALOGERO_SEED";

#[derive(Debug, Parser)]
#[command(name = "calogero", version, about = "Traces and supertraces of the algebras H_W(nu)")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Machine-readable output; scalars are exact strings
    #[arg(long, global = true)]
    pub json: bool,
    /// Append decimal approximations to exact values
    #[arg(long, global = true)]
    pub approx: bool,
    /// Seed for sampled coupling constants (CALOGERO_SEED takes precedence)
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group order, conjugacy classes and trace counts
    Info { system: String },
    /// Solve the ground level conditions
    Glc {
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: Kappa,
        /// Comma-separated rational values, one per reflection class
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// Solve over polynomials in nu
        #[arg(long, conflicts_with = "nu")]
        symbolic: bool,
    },
    /// Evaluate a trace on an element
    Trace {
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: Kappa,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// 1-based index into the solution basis, or a file of class values
        #[arg(long, default_value = "1")]
        central: String,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Use randomized reduction choices with this seed
        #[arg(long)]
        strategy: Option<u64>,
    },
    /// Rank of the bilinear form str(xy) on low-degree monomials
    Gram {
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: Kappa,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, default_value = "1")]
        central: String,
    },
    /// Check the Dunkl representation identities
    Dunkl {
        system: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Run every invariant suite; exits nonzero on the first failure
    Verify { system: String },
    /// Dimension table of traces and supertraces
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Every cataloged system of the standard list
    #[arg(long, conflicts_with = "systems")]
    pub all: bool,
    pub systems: Vec<String>,
}

/// Where a central function comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralSource {
    Index(usize),
    File(PathBuf),
}

impl CentralSource {
    pub fn parse(text: &str) -> CentralSource {
        match text.parse::<usize>() {
            Ok(k) => CentralSource::Index(k),
            Err(_) => CentralSource::File(PathBuf::from(text)),
        }
    }
}

/// The effective seed: `CALOGERO_SEED` if set and valid, otherwise the flag.
pub fn effective_seed(flag: u64) -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(flag)
}
