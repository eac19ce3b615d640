//! `qinv`: command-line access to the invariants in `qinv-core`.
//!
//! [`run`] is the whole program; `main` only wires it to the process.

pub mod commands;
pub mod literal;
pub mod output;
pub mod selftest;

use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::io::{self, Write};
use thiserror::Error;

pub use output::{Format, ResultRecord};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "QINV_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{name}: {source}", name = source.name())]
    Domain {
        #[from]
        source: qinv_core::Error,
    },
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl From<literal::LiteralError> for CliError {
    fn from(e: literal::LiteralError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qinv", version, about = "Non-semi-simple quantum invariants of 3-manifolds")]
pub struct Cli {
    /// Level: q = exp(i pi / r).
    #[arg(long, global = true)]
    pub r: Option<i64>,
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// 6j-symbol with six colors.
    Sixj {
        /// Six comma-separated complex literals.
        #[arg(long, allow_hyphen_values = true)]
        colors: String,
    },
    /// Modified dimension d(alpha).
    Dmod {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Closed-form and Gauss-sum values of Delta_+ and Delta_-.
    Delta,
    /// Colored chain link, or surgery on a chain link at a class.
    Chain {
        #[arg(long, allow_hyphen_values = true)]
        framings: String,
        /// Colors of the components, one per framing.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "class", required_unless_present = "class")]
        colors: Option<String>,
        /// Class index k, giving the meridian value 2k/p on the first component.
        #[arg(long, allow_hyphen_values = true)]
        class: Option<i64>,
        /// Even lift offsets, one per component.
        #[arg(long, allow_hyphen_values = true, requires = "class")]
        lifts: Option<String>,
    },
    /// Sum of N_r over the nonzero classes of a lens space.
    LensSum {
        #[arg(long, allow_hyphen_values = true)]
        framings: String,
        /// Also report every class value.
        #[arg(long)]
        multiset: bool,
    },
    /// Surgery on the (2, 2n+1) torus knot with f extra twists.
    TorusSurgery {
        #[arg(long, allow_hyphen_values = true)]
        f: i64,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        class: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        lift: i64,
    },
    /// Order-zero invariant of the Poincare sphere by every available route.
    Poincare,
    /// (2 pi / r) log of the fundamental link norm over a range of levels.
    Volume {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long)]
        rmin: i64,
        #[arg(long)]
        rmax: i64,
        #[arg(long, default_value_t = 2)]
        step: i64,
    },
    /// Seeded run of the identity and invariance checks.
    Selftest {
        /// Random samples per randomized check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

/// Sizes the global rayon pool from [`THREADS_ENV`] if it is set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV}={v} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_out = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if to_out { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if to_out { 0 } else { 2 };
        }
    };
    match commands::dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
