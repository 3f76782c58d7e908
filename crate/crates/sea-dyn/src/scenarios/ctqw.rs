//! Cycle-graph walker relaxation: node-probability profiles per method.

use sea_core::qwalk::{cycle_graph, hamiltonian, sea_walk, WalkConfig, WalkMethod};
use sea_core::sea::SeaConfig;

use super::RunError;
use crate::config::{MethodChoice, RunConfig};
use crate::report::{Cell, Row, RunReport, Summary};

pub const COLUMNS: [&str; 4] = ["node", "tau", "p_num", "p_flm"];

pub fn run(config: &RunConfig) -> Result<RunReport, RunError> {
    let c = config.ctqw.as_ref().expect("validated");
    let graph = cycle_graph(c.n)?;
    let h = hamiltonian(&graph, c.mu);

    let mut rows = Vec::new();
    let mut summary = Summary::default();
    let mut max_gap: f64 = 0.0;
    let mut max_drift: f64 = 0.0;

    for &tau in &c.tau {
        let mut sea_config = SeaConfig::new(tau, vec![0.0, c.t]);
        sea_config.rk_tol = c.rk_tol;
        sea_config.flm_reference = c.flm_reference.into();
        let mut walk_config = WalkConfig::new(sea_config);
        walk_config.start_node = c.start_node;
        walk_config.renormalize_flm = c.renormalize_flm;

        let num = if c.method != MethodChoice::Flm {
            Some(sea_walk(&h, c.epsilon, &walk_config, WalkMethod::Num)?)
        } else {
            None
        };
        let flm = if c.method != MethodChoice::Num {
            Some(sea_walk(&h, c.epsilon, &walk_config, WalkMethod::Flm)?)
        } else {
            None
        };
        if let Some(f) = &flm {
            max_drift = max_drift.max(f.trace_drift[1]);
        }
        for node in 0..c.n {
            let p_num = num
                .as_ref()
                .map(|w| Cell::Float(w.node_probabilities[1][node]))
                .unwrap_or(Cell::Empty);
            let p_flm = flm
                .as_ref()
                .map(|w| Cell::Float(w.node_probabilities[1][node]))
                .unwrap_or(Cell::Empty);
            if let (Cell::Float(a), Cell::Float(b)) = (&p_num, &p_flm) {
                max_gap = max_gap.max((a - b).abs());
            }
            rows.push(Row {
                values: vec![Cell::Int(node as i64), Cell::Float(tau), p_num, p_flm],
            });
        }
    }
    if c.method == MethodChoice::Both {
        summary.max_flm_num_gap = Some(max_gap);
    }
    if c.method != MethodChoice::Num {
        summary.max_flm_trace_drift = Some(max_drift);
    }
    Ok(RunReport { config: config.clone(), columns: COLUMNS.to_vec(), rows, summary })
}
