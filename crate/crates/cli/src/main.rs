//! `penney`: exact win probabilities, property checks and searches for
//! Penney's ante from the command line.
//!
//! Exit codes: 0 on success, 1 on bad input (one JSON line on stderr), 2 when
//! a verification did not pass.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use render::CliError;

#[derive(Debug, Parser)]
#[command(name = "penney", version, about = "Exact arithmetic for Penney's ante")]
struct Cli {
    /// Worker threads for searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format; each command documents which ones it supports.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Human,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Win(v, w; p) as a rational function, optionally evaluated.
    Win {
        v: String,
        w: String,
        /// Exact bias `a/b` or decimal, strictly inside (0, 1).
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Overlap sets, correlation polynomials and bad prefix sets.
    Corr { v: String, w: String },
    /// Decide property R or E, or verify the bijection behind E.
    Check {
        #[command(subcommand)]
        check: Check,
    },
    /// The prefix-pair automaton, or the single-word one when `w` is omitted.
    Graph {
        v: String,
        w: Option<String>,
        /// Write to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Absorption probability and expected time on the automaton.
    Oracle {
        v: String,
        w: Option<String>,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        at: String,
    },
    /// Exhaustive and sampled sweeps.
    Search {
        #[command(subcommand)]
        search: Search,
    },
    /// Symmetry classes of all pairs of length `n`.
    Census {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    R { v: String, w: String },
    E {
        v: String,
        w: String,
        /// Also require the literal form of condition IV.
        #[arg(long)]
        strict: bool,
    },
    Phi {
        v: String,
        w: String,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Args)]
pub struct NK {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum Search {
    /// Longer words by one letter never beat the shorter word.
    LongerByOne {
        #[arg(long)]
        n: usize,
    },
    /// Strict bound `2/(1+2^k)` for a length gap of `k`.
    GapBound(NK),
    /// Best pair in W(n, k) at the bias `--at`.
    Argmax {
        #[command(flatten)]
        nk: NK,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Isolating interval of the shape-switch threshold.
    Threshold {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "1/1000000000000")]
        tol: String,
    },
    /// Closed-form asymptotic maxima at `--at`.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Proportion of favorable longer-word pairs along a grid of biases.
    Curve {
        #[arg(long)]
        max_len: usize,
        /// Comma-separated biases (default 1/20, ..., 9/20).
        #[arg(long)]
        grid: Option<String>,
        /// Sample this many pairs instead of scanning all of them.
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
    },
    /// Density of property-R pairs among all pairs of length `n`.
    Density {
        #[arg(long)]
        n: usize,
        /// Required from n = 13 on.
        #[arg(long)]
        confirm_long_run: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Scan biases for the switch between the two conjectured shapes.
    Crossover {
        #[command(flatten)]
        nk: NK,
        #[arg(long)]
        grid: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(CliError::Usage(first_line(&e.to_string()))),
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            return fail(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("global pool is configured once");
    }
    match commands::run(&cli.command, cli.format) {
        Ok(out) => {
            print!("{}", out.text);
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => fail(e),
    }
}

fn first_line(s: &str) -> String {
    s.lines().next().unwrap_or("").trim_start_matches("error: ").to_string()
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("{}", e.to_json_line());
    ExitCode::from(1)
}
