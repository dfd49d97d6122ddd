//! `vosa`: twisted Zhu algebras and twisted modules of free fermions.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{Outcome, Suite};
use config::{CommonArgs, Format, RunConfig};

#[derive(Parser)]
#[command(name = "vosa", version, about = "Exact twisted Zhu algebras of free fermion vertex operator superalgebras")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute A_g(V): basis, products, center and blocks
    Zhu,
    /// Run an exact identity suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Graded dimensions of V or of the twisted modules
    Basis,
    /// Lowest-weight spaces of the twisted modules
    Omega,
    /// Truncated generalized Verma modules on the ground states
    Induce,
}

fn emit(cfg: &RunConfig, out: &Outcome) -> Result<()> {
    let text = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json)?;
            s.push('\n');
            s
        }
        Format::Table => out.table.clone(),
    };
    match &cfg.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let out = match cli.command {
        Command::Zhu => commands::zhu(&cfg)?,
        Command::Verify { suite } => commands::verify(&cfg, suite)?,
        Command::Basis => commands::basis(&cfg)?,
        Command::Omega => commands::omega(&cfg)?,
        Command::Induce => commands::induce(&cfg)?,
    };
    emit(&cfg, &out)?;
    Ok(out.exit)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
