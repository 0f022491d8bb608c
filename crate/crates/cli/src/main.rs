//! `vdw`: build, check, sweep and tabulate van der Waerden lower bounds.
//!
//! Every successful run ends with one `RESULT key=value ...` line on stdout.
//! Logs go to stderr. Exit status: 0 on success, 1 when the input violates a
//! precondition or a check fails, 2 on a usage error.

mod commands;
mod summary;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vdw_core::verifier::DEFAULT_VERIFY_CAP;

#[derive(Debug, Parser)]
#[command(name = "vdw", version, about = "Van der Waerden lower-bound toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Shared direct-verification limit.
#[derive(Debug, Clone, Copy, clap::Args)]
pub struct CapArg {
    /// Longest certificate to verify position by position.
    #[arg(long, env = "VDW_CAP", default_value_t = DEFAULT_VERIFY_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Markdown,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComposeMethod {
    Blankenship,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep a prime range with the discrete-log construction.
    Sweep {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        /// Comma-separated color counts.
        #[arg(long, value_delimiter = ',', required = true)]
        colors: Vec<u32>,
        #[arg(long)]
        kmax: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Identifier written into the result file; defaults to `<lo>-<hi>`.
        #[arg(long)]
        unit_id: Option<String>,
    },
    /// Build, validate and verify one discrete-log certificate.
    Rabung {
        #[arg(long)]
        prime: u64,
        /// Primitive root; defaults to the smallest.
        #[arg(long)]
        root: Option<u64>,
        #[arg(long)]
        colors: u32,
        #[arg(long)]
        k: u32,
        /// Write the certificate here.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Zip the block of a discrete-log certificate and reassemble it.
    Zip {
        #[arg(long = "in")]
        input: PathBuf,
        /// Quadruple the period instead of doubling it (experimental).
        #[arg(long)]
        twice: bool,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Multiply a ring coloring by a certificate.
    Product {
        /// Certificate file read as a coloring of the ring Z_n.
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        inner: PathBuf,
        #[arg(long)]
        k: u32,
        /// Build even when the product theorem's hypotheses fail.
        #[arg(long)]
        permissive: bool,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Compose a bound from a smaller one.
    Compose {
        #[arg(long, value_enum)]
        method: ComposeMethod,
        #[arg(long)]
        p: u64,
        /// Known bound W(k, inner colors) > B.
        #[arg(long)]
        inner_bound: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        colors: u32,
    },
    /// Check a certificate for monochromatic progressions.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        k: u32,
        /// Treat the coloring as a ring and allow wraparound.
        #[arg(long)]
        cyclic: bool,
        /// Progression scanner by name; an unknown name lists the choices.
        #[arg(long, default_value = "run")]
        scanner: String,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Compute W(k, r) exactly by exhaustive search.
    Bruteforce {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        colors: u32,
        /// Give up once a valid coloring of this length is found.
        #[arg(long)]
        limit: u64,
    },
    /// Evaluate a named bound formula.
    Bounds {
        /// Formula name; `--list` shows them.
        #[arg(long, required_unless_present = "list")]
        formula: Option<String>,
        /// Positional arguments for the formula.
        #[arg(long, num_args = 1.., allow_hyphen_values = false)]
        args: Vec<String>,
        #[arg(long)]
        list: bool,
    },
    /// Merge sweep results or bound tables into one table.
    Merge {
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a bounds table, optionally with growth ratios.
    Report {
        /// Bounds TSV; defaults to the embedded reference table.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        ratios: bool,
        #[arg(long, value_enum, default_value = "markdown")]
        format: ReportFormat,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(2),
            };
        }
    };
    match commands::run(cli.command) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
