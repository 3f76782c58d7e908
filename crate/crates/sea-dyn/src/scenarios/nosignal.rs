//! No-signaling verification runs.

use sea_core::composite::{
    bell_diagonal, no_signaling_check, qubit_hamiltonian, separable_mixed_state, CompositeState,
};
use sea_core::random::{random_density, rng_from_seed};

use super::RunError;
use crate::config::{NosignalStateChoice, RunConfig};
use crate::report::{Cell, Row, RunReport, Summary};

pub const COLUMNS: [&str; 6] = [
    "trials",
    "max_dev_reduced_state",
    "max_dev_perception",
    "max_dev_reduced_rhs",
    "max_conservation_residual",
    "passed",
];

pub fn run(config: &RunConfig) -> Result<RunReport, RunError> {
    let n = config.nosignal.as_ref().expect("validated");
    let h_a = qubit_hamiltonian(n.omega_a, n.h_a);
    let h_b = qubit_hamiltonian(n.omega_b, n.h_b);
    let state = match n.state {
        NosignalStateChoice::BellDiagonal => {
            bell_diagonal(n.bell.expect("validated"), h_a, h_b)?
        }
        NosignalStateChoice::SeparableMixed => {
            let rho = separable_mixed_state(n.mu.expect("validated"), n.r_a.expect("validated"))?;
            CompositeState::new(rho, 2, 2, h_a, h_b)?
        }
        NosignalStateChoice::RandomCorrelated => {
            let mut rng = rng_from_seed(config.seed ^ 0xC0FFEE);
            CompositeState::new(random_density(4, &mut rng), 2, 2, h_a, h_b)?
        }
    };
    let report = no_signaling_check(&state, n.trials, config.seed, n.tau_a, n.tau_b)?;
    let rows = vec![Row {
        values: vec![
            Cell::Int(report.trials as i64),
            Cell::Float(report.max_reduced_state_dev),
            Cell::Float(report.max_perception_dev),
            Cell::Float(report.max_reduced_rhs_dev),
            Cell::Float(report.max_conservation_residual),
            Cell::Text("true".into()),
        ],
    }];
    let summary = Summary { signal_free: Some(true), ..Default::default() };
    Ok(RunReport { config: config.clone(), columns: COLUMNS.to_vec(), rows, summary })
}
