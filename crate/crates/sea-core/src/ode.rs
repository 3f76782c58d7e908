//! Adaptive embedded Runge-Kutta 4(5) for matrix-valued ODEs.
//!
//! Dormand-Prince coefficients with FSAL reuse. The local error is controlled
//! in absolute Frobenius norm, steps land exactly on requested sample times,
//! and a caller-supplied post-step hook can normalize the state or reject the
//! step (for positivity recovery).

use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::scalar;
use crate::{Result, SeaError};

/// Step-size floor below which integration aborts.
pub const H_MIN: f64 = 1e-14;

const SAFETY: f64 = 0.9;
const SHRINK_LIMIT: f64 = 0.2;
const GROW_LIMIT: f64 = 5.0;
const MAX_STEPS: usize = 2_000_000;

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] =
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Outcome of the post-step hook.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PostStep {
    Accept,
    /// Retry the step with a smaller size (e.g. positivity violated beyond
    /// the clamp window).
    Reject,
}

/// Integrate dy/dt = rhs(t, y) from `t_grid[0]`, invoking `on_sample` with the
/// state at every grid time (including the first).
///
/// `post_step` may mutate the accepted state in place (renormalization,
/// eigenvalue clamping) or reject it outright.
pub fn integrate_adaptive(
    y0: &Matrix,
    t_grid: &[f64],
    abs_tol: f64,
    mut rhs: impl FnMut(f64, &Matrix) -> Result<Matrix>,
    mut post_step: impl FnMut(&mut Matrix) -> Result<PostStep>,
    mut on_sample: impl FnMut(usize, f64, &Matrix) -> Result<()>,
) -> Result<()> {
    if t_grid.is_empty() {
        return Ok(());
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SeaError::InvalidArgument(
            "time grid must be strictly increasing".into(),
        ));
    }
    let mut t = t_grid[0];
    let mut y = y0.clone();
    on_sample(0, t, &y)?;
    if t_grid.len() == 1 {
        return Ok(());
    }
    let t_end = *t_grid.last().unwrap();

    let mut k1 = rhs(t, &y)?;
    let mut h = initial_step(&y, &k1, t_end - t, abs_tol);
    let mut next_sample = 1usize;
    let mut steps = 0usize;

    while next_sample < t_grid.len() {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(SeaError::InvalidArgument("step budget exhausted".into()));
        }
        if h < H_MIN {
            return Err(SeaError::StepSizeUnderflow { t, h });
        }
        let target = t_grid[next_sample];
        let mut landing = false;
        if t + h >= target - 1e-14 * (1.0 + scalar::abs(target)) {
            h = target - t;
            landing = true;
        }

        // Stages 2..7 (k1 carried over, FSAL).
        let mut stages: Vec<Matrix> = Vec::with_capacity(7);
        stages.push(k1.clone());
        for s in 1..7 {
            let mut arg = y.clone();
            for (j, stage) in stages.iter().enumerate() {
                let a = A[s - 1][j];
                if a != 0.0 {
                    arg.add_assign_scaled(stage, a * h);
                }
            }
            stages.push(rhs(t + C[s] * h, &arg)?);
        }

        // 5th-order solution and embedded error estimate.
        let mut y5 = y.clone();
        let mut err_mat = Matrix::zeros(y.rows(), y.cols());
        for (j, stage) in stages.iter().enumerate() {
            if B5[j] != 0.0 {
                y5.add_assign_scaled(stage, B5[j] * h);
            }
            let d = B5[j] - B4[j];
            if d != 0.0 {
                err_mat.add_assign_scaled(stage, d * h);
            }
        }
        let err = err_mat.frobenius_norm();

        if err <= abs_tol {
            match post_step(&mut y5)? {
                PostStep::Accept => {
                    t += h;
                    y = y5;
                    k1 = rhs(t, &y)?;
                    if landing {
                        on_sample(next_sample, t, &y)?;
                        next_sample += 1;
                    }
                    h *= step_factor(err, abs_tol);
                }
                PostStep::Reject => {
                    h *= 0.5;
                }
            }
        } else {
            h *= step_factor(err, abs_tol).min(1.0);
        }
    }
    Ok(())
}

fn step_factor(err: f64, tol: f64) -> f64 {
    if err == 0.0 {
        GROW_LIMIT
    } else {
        (SAFETY * scalar::powf(tol / err, 0.2)).clamp(SHRINK_LIMIT, GROW_LIMIT)
    }
}

fn initial_step(y0: &Matrix, f0: &Matrix, span: f64, tol: f64) -> f64 {
    let scale = y0.frobenius_norm().max(1e-6);
    let rate = f0.frobenius_norm();
    let h = if rate > 0.0 { 0.01 * scale / rate } else { 0.1 * span };
    h.max(tol.min(1e-4)).max(H_MIN * 10.0).min(0.1 * span).min(span)
}
