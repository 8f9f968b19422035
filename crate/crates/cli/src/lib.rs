//! The `rectlab` command line.

pub mod commands;
pub mod config;
pub mod output;
pub mod transport;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use config::{FileConfig, Format, Network, RunConfig};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error(transparent)]
    Core(#[from] rectlab::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use rectlab::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Core(e) => match e {
                E::Parse(_) | E::UnknownRow(_) | E::InvalidPath(_) | E::NotSeparable { .. } => EXIT_USAGE,
                E::BoundExceeded { .. } | E::Oeis(_) | E::Io(_) => EXIT_RESOURCE,
                _ => EXIT_MISMATCH,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rectlab", version, about = "Exact enumeration of pattern-avoiding rectangulations")]
pub struct Cli {
    /// Config file with `key = value` lines (format, cache, network).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory for OEIS b-files.
    #[arg(long, global = true, env = "RECTLAB_CACHE")]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub network: Option<Network>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    /// Every method that applies at each size.
    Auto,
    Bijective,
    Oracle,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem1,
    Bijection,
    Translation,
    WhirlTree,
    Funceq,
    Pipeline,
    Recurrence,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Gf {
    Catalan,
    #[value(name = "V")]
    V,
    #[value(name = "P")]
    P,
    #[value(name = "W")]
    W,
    #[value(name = "Z")]
    Z,
    #[value(name = "F4")]
    F4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenMethod {
    Bijective,
    Oracle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class sizes for a pattern set, by one or more methods.
    Count {
        /// Avoided patterns as a table entry (e.g. 1234), 1345678 for vortices, or `none`.
        #[arg(long)]
        row: String,
        #[arg(long = "max-n", default_value_t = 7)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = CountMethod::Auto)]
        method: CountMethod,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Series order for theorem1, funceq and pipeline.
        #[arg(long)]
        order: Option<usize>,
        /// Size bound for bijection and translation.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Bijectivity and round trip of the map to separable permutations.
    VerifyBijection {
        #[arg(long, default_value_t = 7)]
        n: usize,
    },
    /// Level sizes of the simple-whirl generating tree.
    WhirlTree {
        #[arg(long, default_value_t = 9)]
        depth: usize,
    },
    /// Coefficient table of a case or a named generating function.
    Series {
        /// Case number 1..10 or a variant name such as 7-without-t.
        #[arg(long, conflicts_with = "gf", required_unless_present = "gf")]
        case: Option<String>,
        #[arg(long, value_enum)]
        gf: Option<Gf>,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Compare computed prefixes with OEIS b-files.
    Oeis {
        /// Sequence ids; default all cited sequences.
        ids: Vec<String>,
        /// Also check the total class count (A342141).
        #[arg(long)]
        all: bool,
    },
    /// Emit drawings of a class as JSON lines.
    Generate {
        #[arg(long)]
        row: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        method: Option<GenMethod>,
    },
}

/// Output and exit code of a command.
#[derive(Debug, Default)]
pub struct Outcome {
    pub body: String,
    pub code: u8,
}

impl Outcome {
    pub fn new(body: String, passed: bool) -> Self {
        Outcome { body, code: if passed { EXIT_PASS } else { EXIT_MISMATCH } }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let cfg = RunConfig::merge(cli.format, cli.cache.clone(), cli.network, file);
    commands::dispatch(&cli.command, &cfg)
}
