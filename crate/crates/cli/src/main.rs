// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! `cntring` — batch front end for the ring-cavity simulator.
//!
//! Exit codes: 0 success, 1 validation error, 2 numerical failure,
//! 3 invariant violation.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use cntring::evolve::Tolerances;

use cntring_cli::config::{self, Config};
use cntring_cli::csvfmt::write_csv;
use cntring_cli::error::{CliError, Result};
use cntring_cli::manifest::RunManifest;
use cntring_cli::reproduce::reproduce;
use cntring_cli::run::{
    coupling_command, dynamics_command, fidelity_command, spectrum_command, CommandOutput,
};
use cntring_cli::scan::scan_command;

#[derive(Parser)]
#[command(
    name = "cntring",
    version,
    about = "Flux-tunable ring cavity, chiral coupling, and tripod transfer scans"
)]
struct Cli {
    /// Configuration file (TOML); defaults to the built-in parameter set.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for CSV files and manifests.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Override a config key, e.g. --set rates.kappa_0_ghz=0.5 (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Absolute integrator tolerance.
    #[arg(long = "tol-abs", global = true, default_value_t = 1e-10)]
    tol_abs: f64,

    /// Relative integrator tolerance.
    #[arg(long = "tol-rel", global = true, default_value_t = 1e-8)]
    tol_rel: f64,

    /// Worker threads for scan points (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Flux-resolved cavity resonance for the configured mode.
    Spectrum,
    /// Vacuum coupling g and fiber outcoupling bound kappa_R.
    Coupling,
    /// Integrate the master equation and write the population trace.
    Dynamics,
    /// Analytic fidelity breakdown cross-checked against one dynamics run.
    Fidelity,
    /// Multi-point scan driven by the `[scan]` config section.
    Scan,
    /// Regenerate a canned figure scan.
    Reproduce {
        /// One of: fig3-a, fig3-b, fig-couple-a, fig-couple-b,
        /// fig-couple-c, fig-couple-d, spectrum-flux.
        figure: String,
    },
}

fn load(cli: &Cli) -> Result<Config> {
    let mut overrides = Vec::with_capacity(cli.set.len());
    for arg in &cli.set {
        overrides.push(config::parse_set_flag(arg)?);
    }
    match &cli.config {
        Some(path) => config::load_config(path, &overrides),
        None => config::parse_config(config::DEFAULT_CONFIG, &overrides),
    }
}

fn run_with_pool<F>(jobs: Option<usize>, f: F) -> Result<CommandOutput>
where
    F: FnOnce() -> Result<CommandOutput> + Send,
{
    match jobs {
        None => f(),
        Some(0) => Err(CliError::Validation("--jobs must be >= 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Validation(format!("--jobs: {e}")))?;
            pool.install(f)
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let tol = Tolerances {
        abs: cli.tol_abs,
        rel: cli.tol_rel,
    };
    tol.validate().map_err(CliError::from)?;
    let config = load(cli)?;

    let (command_label, output) = match &cli.command {
        Command::Spectrum => ("spectrum".to_string(), spectrum_command(&config)?),
        Command::Coupling => ("coupling".to_string(), coupling_command(&config)?),
        Command::Dynamics => ("dynamics".to_string(), dynamics_command(&config, tol)?),
        Command::Fidelity => ("fidelity".to_string(), fidelity_command(&config, tol)?),
        Command::Scan => (
            "scan".to_string(),
            run_with_pool(cli.jobs, || scan_command(&config, tol))?,
        ),
        Command::Reproduce { figure } => (
            format!("reproduce {figure}"),
            run_with_pool(cli.jobs, || reproduce(figure, &config, tol))?,
        ),
    };

    std::fs::create_dir_all(&cli.out)?;
    let csv_path = cli.out.join(format!("{}.csv", output.name));
    let manifest_path = cli.out.join(format!("{}.manifest.json", output.name));
    let header: Vec<&str> = output.header.iter().map(String::as_str).collect();
    write_csv(&csv_path, &header, &output.rows)?;

    let manifest = RunManifest::new(
        command_label,
        tol,
        vec![format!("{}.csv", output.name)],
        output.checks.clone(),
        &config.table,
    );
    manifest.write(&manifest_path)?;

    println!(
        "wrote {} ({} rows) and {}",
        csv_path.display(),
        output.rows.len(),
        manifest_path.display()
    );

    if let Some(checks) = &output.checks {
        if let Some(violation) = checks.bounds_violation() {
            return Err(CliError::Invariant(violation));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
