use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 20231;

#[derive(Debug, Clone, Parser)]
#[command(name = "psc", version, about = "Square coloring of embedded planar graphs")]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Write a generated graph in .pg format.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, env = "PSC_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Square-color a graph and verify the result.
    Color {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Constructive)]
        mode: Mode,
        /// Palette size to check against instead of the proven bound.
        #[arg(long)]
        budget: Option<usize>,
        /// Seconds allowed for the exact search.
        #[arg(long, default_value_t = 60)]
        timeout: u64,
        /// Coloring JSON destination.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// Reduction trace destination (constructive mode).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the discharging rules and report every charge.
    Audit {
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Report reducible configurations.
    Detect {
        input: PathBuf,
        /// Every witness instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Check a coloring against a graph.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Generate a corpus and run checks over it.
    Corpus {
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Vertex count range `lo..hi` (inclusive) or a single value.
        #[arg(long, default_value = "20..200")]
        n: NRange,
        /// Minimum maximum degree.
        #[arg(long, default_value_t = 0)]
        delta: usize,
        /// Maximum maximum degree.
        #[arg(long)]
        delta_max: Option<usize>,
        #[arg(long, env = "PSC_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = Check::all())]
        checks: Vec<Check>,
    },
    /// Table of lower and upper bounds on the square chromatic number.
    Bounds {
        #[arg(long, default_value = "3..26")]
        delta: NRange,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Wegner,
    Stacked,
    Random,
    Cycle,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Greedy,
    Dsatur,
    Constructive,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Check {
    Euler,
    Lemmas,
    Completeness,
    Constructive,
    Greedy,
}

impl Check {
    pub fn all() -> Vec<Check> {
        vec![
            Check::Euler,
            Check::Lemmas,
            Check::Completeness,
            Check::Constructive,
            Check::Greedy,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Check::Euler => "euler",
            Check::Lemmas => "lemmas",
            Check::Completeness => "completeness",
            Check::Constructive => "constructive",
            Check::Greedy => "greedy",
        }
    }
}

/// Inclusive range parsed from `lo..hi` or `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad range {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let k = num(s)?;
                (k, k)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(NRange { lo, hi })
    }
}
