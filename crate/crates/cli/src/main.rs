//! `resfin` command-line interface.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "resfin", version, about = "Detecting quotients and residual finiteness growth experiments")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "OUT")]
    pub json: Option<PathBuf>,
    /// Write the tabular part of the report as CSV.
    #[arg(long, global = true, value_name = "OUT")]
    pub csv: Option<PathBuf>,
    /// JSON config file with generator sets, ring descriptors and budgets.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Certify a finite quotient detecting a word.
    Detect(commands::DetectArgs),
    /// Exact growth records on a small Chevalley group.
    Growth(commands::GrowthArgs),
    /// Build a witness element and check its index lower bounds.
    Witness(commands::WitnessArgs),
    /// Splitting-prime counts against the density bound.
    Cheb(commands::ChebArgs),
    /// Constants of the nine families and the invariant-ideal spot checks.
    Tables,
    /// Sampled check of the codimension lemma.
    LieCheck(commands::LieCheckArgs),
    /// Order of G(F_q) or G(O / pi^k).
    GroupOrder(commands::GroupArgs),
    /// Minimal index of a proper subgroup of G(F_q).
    MinimalIndex(commands::GroupArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.global.sequential {
        resfin::par::set_mode(resfin::par::Mode::Sequential);
    }
    match commands::run(&cli) {
        Ok(out) => {
            if let Err(e) = output::emit(&cli.global, &out) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if out.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                for v in &out.violations {
                    eprintln!("theorem check violated: {v}");
                }
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let violated = e.downcast_ref::<resfin::error::Error>().is_some_and(|e| matches!(e, resfin::error::Error::TheoremViolation(_)));
            ExitCode::from(if violated { 2 } else { 1 })
        }
    }
}
