//! Scenario runner for the `entangle-core` simulations: key=value configs,
//! deterministic CSV time series, JSON summaries and parallel sweeps.

pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod selftest;
pub mod sweep;

pub use config::{RawConfig, Scenario, ScenarioConfig, ScenarioKind, TimeGrid};
pub use error::{CliError, ConfigError};
pub use run::{run, RunOutput, Summary, TimeSeries};
