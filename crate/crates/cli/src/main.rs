//! `jointslab`: generate line configurations, count joints, build vanishing
//! polynomials, run the refinement step and the lemma campaigns.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
//! input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "jointslab",
    version,
    about = "Joints of lines over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Generator {
    Grid,
    Plane,
    Heisenberg,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Transversals {
    None,
    PerPoint,
    Greedy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum InterpKind {
    Points,
    Lines,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Campaign {
    Lemma1,
    Lemma2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a line configuration as line-set JSON
    Gen {
        kind: Generator,
        /// Grid side length
        #[arg(long)]
        m: Option<u64>,
        /// Ambient dimension
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Field characteristic
        #[arg(long)]
        p: Option<u64>,
        /// Extension degree (random only)
        #[arg(long, default_value_t = 1)]
        q: u32,
        /// Number of lines (random only)
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra lines through the surface points (heisenberg only)
        #[arg(long, value_enum, default_value_t = Transversals::None)]
        transversals: Transversals,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find joints and their multiplicities
    Joints {
        file: PathBuf,
        /// Write the bound report (CSV, or markdown with --markdown)
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        markdown: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimal-degree vanishing polynomial for a multiplicity spec or a line set
    Interp {
        kind: InterpKind,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One weighted-incidence refinement step
    Prune {
        file: PathBuf,
        #[arg(long)]
        factors: PathBuf,
        /// Richness threshold, default 3n
        #[arg(long = "M")]
        big_m: Option<u64>,
        /// Cap weights at the available vanishing order instead of failing
        #[arg(long)]
        allow_shortfall: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Randomized interpolation campaign
    Verify {
        which: Campaign,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare high-multiplicity points against the degrees of n-1 hypersurfaces
    Kollar {
        #[arg(long, num_args = 1.., required = true)]
        surfaces: Vec<PathBuf>,
        #[arg(long)]
        lines: PathBuf,
        #[arg(long = "M")]
        big_m: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e.error);
            ExitCode::from(e.code)
        }
    }
}
