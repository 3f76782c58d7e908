//! Scenario runner for SEA dynamics: configuration parsing, execution, and
//! tabular/machine-readable reports.

pub mod config;
pub mod report;
pub mod scenarios;

use std::path::Path;

use config::RunConfig;
use report::RunReport;

/// Exit codes of the `run` subcommand.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_SIGNAL: i32 = 3;

/// Execute a validated configuration and produce the report.
pub fn execute(config: &RunConfig, jobs: usize) -> Result<RunReport, scenarios::RunError> {
    scenarios::run(config, jobs)
}

/// Parse a config file, apply overrides, and validate; returns the resolved
/// config or the list of violations.
pub fn load_config(
    path: &Path,
    overrides: &[(String, String)],
    seed_override: Option<u64>,
) -> Result<RunConfig, Vec<String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| vec![format!("cannot read {}: {e}", path.display())])?;
    config::parse_and_validate(&text, overrides, seed_override)
}
