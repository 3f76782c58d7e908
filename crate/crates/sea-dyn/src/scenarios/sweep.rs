//! (τ, ε, t) sweep of the walker's entropy production, fanned out across a
//! worker pool. Rows are assembled in grid order regardless of completion
//! order.

use sea_core::qwalk::{cycle_graph, hamiltonian, sweep_cell, SweepGrid};
use sea_core::sea::SeaConfig;

use super::RunError;
use crate::config::RunConfig;
use crate::report::{Cell, Row, RunReport, Summary};

pub const COLUMNS: [&str; 7] = ["tau", "epsilon", "t", "pi_s", "S", "E", "error"];

pub fn run(config: &RunConfig, jobs: usize) -> Result<RunReport, RunError> {
    let s = config.sweep.as_ref().expect("validated");
    let graph = cycle_graph(s.n)?;
    let h = hamiltonian(&graph, s.mu);
    let grid = SweepGrid {
        tau_values: s.tau.clone(),
        epsilon_values: s.epsilon.clone(),
        observation_times: s.times.clone(),
    };
    grid.validate()?;
    let mut base = SeaConfig::new(1.0, vec![0.0, 1.0]);
    base.rk_tol = s.rk_tol;

    // independent (τ, ε) cells
    let cells: Vec<(f64, f64)> = grid
        .tau_values
        .iter()
        .flat_map(|&tau| grid.epsilon_values.iter().map(move |&eps| (tau, eps)))
        .collect();
    let jobs = jobs.max(1).min(cells.len().max(1));

    type CellOut = Result<Vec<sea_core::qwalk::SweepPoint>, String>;
    let mut outcomes: Vec<Option<CellOut>> = vec![None; cells.len()];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..jobs {
            let cells = &cells;
            let h = &h;
            let base = &base;
            let times = &grid.observation_times;
            handles.push(scope.spawn(move || {
                let mut local = Vec::new();
                for (idx, &(tau, eps)) in cells.iter().enumerate() {
                    if idx % jobs != worker {
                        continue;
                    }
                    let out = sweep_cell(h, tau, eps, times, base)
                        .map_err(|e| e.to_string());
                    local.push((idx, out));
                }
                local
            }));
        }
        for handle in handles {
            for (idx, out) in handle.join().expect("sweep worker panicked") {
                outcomes[idx] = Some(out);
            }
        }
    });

    let mut rows = Vec::new();
    for (outcome, &(tau, eps)) in outcomes.into_iter().zip(&cells) {
        let outcome = outcome.expect("every cell scheduled");
        match outcome {
            Ok(points) => {
                for (t, p) in grid.observation_times.iter().zip(points) {
                    rows.push(Row {
                        values: vec![
                            Cell::Float(tau),
                            Cell::Float(eps),
                            Cell::Float(*t),
                            Cell::Float(p.entropy_production),
                            Cell::Float(p.entropy),
                            Cell::Float(p.energy),
                            Cell::Empty,
                        ],
                    });
                }
            }
            Err(msg) => {
                for &t in &grid.observation_times {
                    rows.push(Row {
                        values: vec![
                            Cell::Float(tau),
                            Cell::Float(eps),
                            Cell::Float(t),
                            Cell::Empty,
                            Cell::Empty,
                            Cell::Empty,
                            Cell::Text(msg.clone()),
                        ],
                    });
                }
            }
        }
    }
    Ok(RunReport {
        config: config.clone(),
        columns: COLUMNS.to_vec(),
        rows,
        summary: Summary::default(),
    })
}
