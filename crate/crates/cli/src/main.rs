//! Separability analysis from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or validation
//! error, 3 internal numerical fault.

// Same loop idiom as the core crate: indexed loops over fixed 4x4 layouts.
#![allow(clippy::needless_range_loop)]

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sepmix_core::Tolerances;

use commands::{CliError, RandomKind, ScanFamily};

#[derive(Parser)]
#[command(
    name = "sepmix",
    version,
    about = "Decide two-qubit separability and emit verifiable local decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Eigenvalue threshold for numerical rank decisions.
    #[arg(long, global = true)]
    tol_rank: Option<f64>,

    /// Dead band for positive-semidefiniteness checks.
    #[arg(long, global = true)]
    tol_psd: Option<f64>,

    /// Frobenius bound on reconstruction residuals.
    #[arg(long, global = true)]
    tol_recon: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a state file: product, separable, or entangled.
    Check {
        /// State file (JSON density matrix).
        file: PathBuf,
        /// Also write a verdict-only certificate here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Produce a local mixture (separable) or pseudomixture (entangled)
    /// certificate.
    Decompose {
        /// State file (JSON density matrix).
        file: PathBuf,
        /// Certificate destination; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Independently re-check a certificate against its state file.
    Verify {
        /// State file the certificate claims to describe.
        state: PathBuf,
        /// Certificate produced by decompose or check.
        certificate: PathBuf,
    },
    /// Generate a random state file, reproducible from the seed.
    Random {
        /// State family to draw from.
        #[arg(long, value_enum)]
        kind: RandomKind,
        /// Rank (mixed, entangled) or product-term count (separable); 1-4.
        #[arg(long)]
        rank: Option<usize>,
        /// 64-bit seed; equal seeds give byte-identical files.
        #[arg(long)]
        seed: u64,
        /// Destination; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweep a one-parameter family and tabulate verdicts (TSV).
    Scan {
        /// Family to sweep.
        #[arg(long, value_enum)]
        family: ScanFamily,
        /// Number of grid points over the parameter range (at least 2).
        #[arg(long)]
        grid: usize,
        /// Destination; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let defaults = Tolerances::default();
    let tolerances = Tolerances {
        rank: cli.tol_rank.unwrap_or(defaults.rank),
        psd: cli.tol_psd.unwrap_or(defaults.psd),
        recon: cli.tol_recon.unwrap_or(defaults.recon),
    };
    let explicit_tols = cli.tol_rank.is_some() || cli.tol_psd.is_some() || cli.tol_recon.is_some();

    let result = match &cli.command {
        Command::Check { file, output } => {
            commands::cmd_check(file, output.as_ref(), &tolerances)
        }
        Command::Decompose { file, output } => {
            commands::cmd_decompose(file, output.as_ref(), &tolerances)
        }
        Command::Verify { state, certificate } => {
            // Certificates carry their own tolerances; flags override them.
            let tol = if explicit_tols { Some(tolerances) } else { None };
            commands::cmd_verify(state, certificate, tol)
        }
        Command::Random { kind, rank, seed, output } => {
            commands::cmd_random(*kind, *rank, *seed, output.as_ref(), &tolerances)
        }
        Command::Scan { family, grid, output } => {
            commands::cmd_scan(*family, *grid, output.as_ref(), &tolerances)
        }
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerificationFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
