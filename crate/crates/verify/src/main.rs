use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use gps_verify::{emit_csv, run, to_csv, ExperimentConfig, SUITES};

#[derive(Parser)]
#[command(name = "gps", version, about = "Numerical verification of generalized partial-slice monogenic operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a CSV of results.
    Verify {
        /// Suite to run; defaults to the `suites` list of the config.
        #[arg(long)]
        suite: Option<String>,
        /// TOML config; built-in defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the suite names and exit.
        #[arg(long)]
        list_suites: bool,
    },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> anyhow::Result<bool> {
    let Command::Verify { suite, config, out, list_suites } = Cli::parse().command;
    if list_suites {
        for s in SUITES.iter().chain(std::iter::once(&"all")) {
            println!("{s}");
        }
        return Ok(true);
    }
    let cfg = match &config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    let suites = match suite {
        Some(s) => vec![s],
        None => cfg.suites.clone(),
    };
    let rows = run(&cfg, &suites)?;
    match &out {
        Some(path) => emit_csv(&rows, path)?,
        None => std::io::stdout().write_all(to_csv(&rows).as_bytes()).context("writing to stdout")?,
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    eprintln!("{} rows, {} failed", rows.len(), failed);
    Ok(failed == 0)
}
