//! Experiment orchestration for the closed-loop simulations: JSON
//! configuration loading, single runs and parameter sweeps with
//! machine-readable CSV/JSON outputs, and certificate-only evaluation.

pub mod config;
pub mod experiment;
pub mod output;

pub use config::{load_config, ExperimentConfig, Sweep, SweepAxis};
pub use experiment::{certify, kernel_table, run_single, run_sweep, CertifyReport, RunSummary};

/// Errors surfaced by configuration loading and experiment runs.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid config: {0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] fhn_etc::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
