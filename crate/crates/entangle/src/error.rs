use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key=value, found {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: duplicate key {key:?}")]
    Duplicate { line: usize, key: String },
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("missing required field {field:?} for scenario {scenario}")]
    Missing { field: &'static str, scenario: &'static str },
    #[error("field {field:?} is not used by scenario {scenario}")]
    Unused { field: String, scenario: &'static str },
    #[error("field {field:?}: {message}")]
    Invalid { field: String, message: String },
    #[error("grid: {0}")]
    Grid(String),
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
}

impl ConfigError {
    pub fn invalid(field: &str, message: impl Into<String>) -> Self {
        ConfigError::Invalid { field: field.to_owned(), message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("numerical error: {0}")]
    Numerics(entangle_core::Error),
    #[error("io error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<entangle_core::Error> for CliError {
    fn from(e: entangle_core::Error) -> Self {
        use entangle_core::Error as E;
        match e {
            E::InvalidQuantumNumbers { .. }
            | E::SpinCap { .. }
            | E::FactorialCap { .. }
            | E::DegenerateModes
            | E::UnsupportedSpin(_)
            | E::InvalidArgument(_) => CliError::Config(ConfigError::invalid("scenario", e.to_string())),
            other => CliError::Numerics(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Invariant(_) | CliError::Numerics(_) => 3,
            CliError::Io { .. } | CliError::Json(_) => 1,
        }
    }
}

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
