//! Equatorial-qubit relaxation: numerical trajectory against the exact
//! closed-form decay and the frozen-multiplier approximation.

use sea_core::composite::qubit_hamiltonian;
use sea_core::linalg::{DensityMatrix, Matrix};
use sea_core::sea::{self, ConstraintSet, SeaConfig};

use super::RunError;
use crate::config::{MethodChoice, RunConfig};
use crate::report::{Cell, Row, RunReport, Summary};

pub const COLUMNS: [&str; 7] = ["t", "tau", "r_num", "r_gpb", "r_flm", "S", "E"];

pub fn run(config: &RunConfig) -> Result<RunReport, RunError> {
    let q = config.qubit.as_ref().expect("validated");
    let h = qubit_hamiltonian(q.omega, [0.0, 0.0, 1.0]);
    let cs = ConstraintSet::probability_energy(&h);
    // equatorial preparation: quench of |+⟩⟨+| to radius ε
    let plus = DensityMatrix::new(Matrix::from_real(2, &[0.5, 0.5, 0.5, 0.5]))
        .expect("|+><+| is a state");
    let rho0 = sea::quench(&plus, q.epsilon)?;

    let grid: Vec<f64> = (0..q.t_points)
        .map(|k| q.t_max * k as f64 / (q.t_points - 1) as f64)
        .collect();

    let mut rows = Vec::new();
    let mut summary = Summary::default();
    let mut max_gap: f64 = 0.0;
    let mut max_trace = 0.0f64;
    let mut max_energy = 0.0f64;
    let mut monotone = true;
    let h_norm = h.matrix().frobenius_norm();

    for &tau in &q.tau {
        let mut sea_config = SeaConfig::new(tau, grid.clone());
        sea_config.rk_tol = q.rk_tol;
        sea_config.flm_reference = q.flm_reference.into();

        let num_traj = if q.method != MethodChoice::Flm {
            Some(sea::integrate(&rho0, &cs, &sea_config, &h)?)
        } else {
            None
        };
        let flm = if q.method != MethodChoice::Num {
            Some(sea::flm_solve(&rho0, &cs, &sea_config)?)
        } else {
            None
        };

        let e0 = h.expectation(rho0.matrix());
        let mut last_s = f64::NEG_INFINITY;
        for (k, &t) in grid.iter().enumerate() {
            let r_gpb = sea::gpb_solution(q.epsilon, tau, t)?;
            let mut r_num = Cell::Empty;
            let mut s_cell = Cell::Empty;
            let mut e_cell = Cell::Empty;
            if let Some(traj) = &num_traj {
                let state = &traj[k].1;
                let r = 2.0 * state.spectrum()[0] - 1.0;
                r_num = Cell::Float(r);
                let s = sea::entropy(state);
                if s < last_s - 1e-9 {
                    monotone = false;
                }
                last_s = s;
                s_cell = Cell::Float(s);
                let e = h.expectation(state.matrix());
                e_cell = Cell::Float(e);
                max_trace = max_trace.max((state.matrix().trace().re - 1.0).abs());
                max_energy = max_energy.max((e - e0).abs() / h_norm);
                if let Some(f) = &flm {
                    let p = f.probabilities(t);
                    max_gap = max_gap.max((p[0] - p[1] - r).abs());
                }
            }
            let r_flm = match &flm {
                Some(f) => {
                    let p = f.probabilities(t);
                    Cell::Float(p[0] - p[1])
                }
                None => Cell::Empty,
            };
            rows.push(Row {
                values: vec![
                    Cell::Float(t),
                    Cell::Float(tau),
                    r_num,
                    Cell::Float(r_gpb),
                    r_flm,
                    s_cell,
                    e_cell,
                ],
            });
        }
    }
    if q.method == MethodChoice::Both {
        summary.max_flm_num_gap = Some(max_gap);
    }
    if q.method != MethodChoice::Flm {
        summary.max_trace_drift = Some(max_trace);
        summary.max_energy_drift = Some(max_energy);
        summary.entropy_monotone = Some(monotone);
    }
    Ok(RunReport { config: config.clone(), columns: COLUMNS.to_vec(), rows, summary })
}
