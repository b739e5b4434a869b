//! `matapprox` command-line driver.
//!
//! Exit status: 0 on success, 1 when a certificate or convergence check
//! failed (outputs are still written), 2 on parse, I/O or argument errors.

mod approx;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matapprox::io::ReportFormat;
use matapprox::DEFAULT_SEED;

pub const DEFAULT_DELTA: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "matapprox", version, about = "Approximation primitives for sparse symmetric matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a scalar approximant; write its coefficients and an error curve.
    Approx(approx::ApproxArgs),
    /// Distribution of the random walk after `s` steps.
    Walk(run::WalkArgs),
    /// Heat kernel `exp(-s 𝓛) v0` on a graph.
    Heat(run::HeatArgs),
    /// Solve `A x = b` with conjugate gradient or gradient descent.
    Solve(run::SolveArgs),
    /// Largest eigenvalues by Lanczos, or the full spectrum with `--dense`.
    Eig(run::EigArgs),
    /// `exp(-A) v` by the polynomial or rational approximant.
    Expv(run::ExpvArgs),
    /// `A^{-1} v` through a sum of exponentials.
    Inv(run::InvArgs),
    /// Low-conductance cut of a graph.
    Cut(run::CutArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FormatArg {
    #[default]
    Text,
    Csv,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => ReportFormat::Text,
            FormatArg::Csv => ReportFormat::Csv,
        }
    }
}

/// Flags shared by the commands that emit a report.
#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Report destination; standard output when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

/// Graph input with its indexing convention.
#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    /// Edge list `u v [weight]`.
    #[arg(long)]
    pub graph: PathBuf,
    /// Vertices in the edge list are numbered from 1.
    #[arg(long)]
    pub one_based: bool,
}

/// Result of a command that ran to completion.
pub enum Outcome {
    Ok,
    /// A certificate or convergence check failed.
    Failed(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Approx(a) => approx::run(&a),
        Command::Walk(a) => run::walk(&a),
        Command::Heat(a) => run::heat(&a),
        Command::Solve(a) => run::solve(&a),
        Command::Eig(a) => run::eig(&a),
        Command::Expv(a) => run::expv(&a),
        Command::Inv(a) => run::inv(&a),
        Command::Cut(a) => run::cut(&a),
    };
    match res {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed(msg)) => {
            eprintln!("matapprox: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("matapprox: error: {e}");
            ExitCode::from(2)
        }
    }
}
