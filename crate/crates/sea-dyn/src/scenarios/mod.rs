//! Scenario execution.

mod composite;
mod ctqw;
mod nosignal;
mod qubit;
mod sweep;

use std::time::Instant;

use sea_core::SeaError;

use crate::config::{RunConfig, Scenario};
use crate::report::RunReport;

/// Scenario failure modes, mapped to process exit codes by the binary.
#[derive(Debug)]
pub enum RunError {
    /// Numeric failure (integration breakdown, singular constraint set, ...).
    Numeric(SeaError),
    /// The no-signaling harness found a violation.
    Signal(SeaError),
}

impl core::fmt::Display for RunError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RunError::Numeric(e) => write!(f, "numeric failure: {e}"),
            RunError::Signal(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<SeaError> for RunError {
    fn from(e: SeaError) -> Self {
        match e {
            SeaError::SignalDetected(_) => RunError::Signal(e),
            other => RunError::Numeric(other),
        }
    }
}

pub fn run(config: &RunConfig, jobs: usize) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let mut report = match config.scenario {
        Scenario::Qubit => qubit::run(config)?,
        Scenario::Ctqw => ctqw::run(config)?,
        Scenario::Composite => composite::run(config)?,
        Scenario::Sweep => sweep::run(config, jobs)?,
        Scenario::Nosignal => nosignal::run(config)?,
    };
    report.summary.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}
