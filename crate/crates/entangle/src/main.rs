use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use entangle::output::write_run;
use entangle::selftest::selftest;
use entangle::sweep::{sweep, GridSpec};
use entangle::{run, CliError, RawConfig, ScenarioConfig};

/// Entanglement dynamics of coupled oscillators.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write `<out>.csv` plus `<out>.json`.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// CSV path; the summary goes next to it with a `.json` extension.
        /// Without it (and without `output` in the config) the CSV goes to
        /// stdout and the summary to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override a config key, e.g. `--set kappa=0.5`. Repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Run a Cartesian grid of overrides concurrently.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// `key=v1,v2;key2=a,b`
        #[arg(long)]
        grid: String,
        /// Output directory (default: the config's `output`, else `sweep`).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Run the built-in invariant suite.
    Selftest,
}

fn load(path: &Path, set: &[String]) -> Result<RawConfig, CliError> {
    let mut raw = RawConfig::load(path)?;
    for s in set {
        raw.set(s)?;
    }
    Ok(raw)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, out, set } => {
            let config = ScenarioConfig::from_raw(&load(&config, &set)?)?;
            let output = run(&config)?;
            write_run(&output, out.as_deref().or(config.output.as_deref()))?;
            output.check()
        }
        Command::Sweep { config, grid, out, set } => {
            let raw = load(&config, &set)?;
            let grid = GridSpec::parse(&grid)?;
            let dir = out.or_else(|| raw.get("output").map(PathBuf::from)).unwrap_or_else(|| "sweep".into());
            let manifest = sweep(&raw, &grid, &dir)?;
            for p in manifest.points.iter().filter(|p| p.exit_code != 0) {
                eprintln!("point {}: {}", p.index, p.status);
            }
            eprintln!("{} of {} points ok; manifest in {}", grid.len() - manifest.failed, grid.len(), dir.display());
            match manifest.exit_code() {
                0 => Ok(()),
                2 => Err(CliError::Config(entangle::ConfigError::Grid(format!("{} points failed", manifest.failed)))),
                _ => Err(CliError::Invariant(format!("{} points failed", manifest.failed))),
            }
        }
        Command::Selftest => {
            let results = selftest();
            let mut failed = 0;
            for r in &results {
                match &r.outcome {
                    Ok(detail) => println!("PASS {}: {detail}", r.name),
                    Err(detail) => {
                        failed += 1;
                        println!("FAIL {}: {detail}", r.name);
                    }
                }
            }
            if failed == 0 {
                Ok(())
            } else {
                Err(CliError::Invariant(format!("{failed} of {} checks failed", results.len())))
            }
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
