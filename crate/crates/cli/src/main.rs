mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use vwtower::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// κ and every κ_v with their valuations
    Kappa,
    /// Matrix-tree identities of the weighted Laplacians
    MttCheck,
    /// The derived graph at level --levels, as a graph file
    Derive,
    /// h(ψ, 1) for every character at level --levels
    Hfun,
    /// The Q-series and its invariants
    Qpoly,
    /// μ, λ, ν fitted to levels 0..=--levels
    Invariants,
    /// The level table of the tower and the fitted invariants
    Tower,
    /// Kida comparison against the cover given by --beta
    Kida,
    /// Brute-force spanning trees against the determinants
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// Exact computations on vertex-weighted graphs and their Z_p^d-towers.
#[derive(Debug, Parser)]
#[command(name = "vwtower", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Graph file (JSON)
    pub input: PathBuf,
    /// Tower level, or the largest level for tower commands [default: from file, else 2]
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=4))]
    pub levels: Option<u32>,
    /// Root vertex id: restricts κ_v output, rooted mode for towers
    #[arg(long)]
    pub root: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Cross-check determinants against spanning-tree enumeration
    #[arg(long)]
    pub oracle: bool,
    /// Per-edge key holding the second voltage for `kida`
    #[arg(long, default_value = "beta")]
    pub beta: String,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidSqrt(_) | Error::NotPrime(_) | Error::UnknownLabel(_) => 2,
        Error::Disconnected { .. } => 3,
        Error::CheckFailed(_) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match commands::run(&config) {
        Ok(report) => {
            match config.format {
                Format::Table => print!("{}", report.table),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("json")),
            }
            ExitCode::from(report.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
