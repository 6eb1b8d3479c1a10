use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use dyncov_cli::config::{ExperimentConfig, Format, Overrides, Scenario};
use dyncov_cli::{report, scenarios};

/// Run one dynamic-coverage verification scenario.
#[derive(Debug, Parser)]
#[command(name = "dyncov", version)]
struct Args {
    /// Scenario to run, e.g. area-coverage or game-equilibrium.
    scenario: Scenario,
    /// JSON experiment config. Omitted fields take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Replications (samples, windows or timelines, depending on the scenario).
    #[arg(long)]
    reps: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write only this output instead of both.
    #[arg(long)]
    format: Option<Format>,
    /// Worker threads for the replication pool.
    #[arg(long, env = "DYNCOV_WORKERS")]
    workers: Option<usize>,
}

fn run(args: Args) -> Result<bool> {
    if let Some(n) = args.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("workers")?;
    }
    let file = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    let flags = Overrides {
        seed: args.seed,
        replications: args.reps,
        out: args.out,
        format: args.format,
    };
    let config = file.resolve(args.scenario, &flags)?;
    let report = scenarios::run(&config)?;
    for path in report::write(&config, &report)? {
        eprintln!("wrote {}", path.display());
    }
    for claim in &report.claims {
        let status = if claim.pass { "PASS" } else { "FAIL" };
        eprintln!(
            "[{status}] {}: predicted {}, empirical {} ({})",
            claim.name, claim.predicted, claim.empirical, claim.criterion
        );
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
