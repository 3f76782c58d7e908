//! Continuous-time quantum walks on graphs and their SEA relaxation.
//!
//! The walk Hamiltonian is H = μ(D − A), the graph Laplacian scaled by the
//! hopping rate. A walker prepared by quenching a node state relaxes toward
//! I/N under the SEA flow; trajectories come either from the full numerical
//! integrator (`WalkMethod::Num`) or the frozen-multiplier closed form
//! (`WalkMethod::Flm`). The entropy-production functional Π_S and a
//! (τ, ε, t) sweep driver round out the module.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{
    eigh, matrix_log_supported, DensityMatrix, HermitianMatrix, Matrix, SupportProjector,
};
use crate::scalar;
use crate::sea::{self, compute_multipliers, entropy, ConstraintSet, SeaConfig};
use crate::{Result, SeaError};

/// Undirected simple graph: no self-loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n_vertices: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for &(i, j) in edge_list {
            if i == j {
                return Err(SeaError::InvalidArgument("self-loops are not allowed".to_string()));
            }
            if i >= n_vertices || j >= n_vertices {
                return Err(SeaError::InvalidArgument("edge endpoint out of range".to_string()));
            }
            edges.insert((i.min(j), i.max(j)));
        }
        Ok(Self { n_vertices, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(i, j)| i == v || j == v).count()
    }
}

/// Cycle graph C_N (2-regular ring).
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(SeaError::InvalidArgument(
            "cycle graph needs at least 3 vertices".to_string(),
        ));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// Walk generator H = μ·L with L = D − A (positive semidefinite, zero row
/// sums).
#[derive(Debug, Clone)]
pub struct WalkHamiltonian {
    pub mu: f64,
    pub matrix: HermitianMatrix,
}

pub fn hamiltonian(graph: &Graph, mu: f64) -> WalkHamiltonian {
    let n = graph.n_vertices();
    let mut m = Matrix::zeros(n, n);
    for (i, j) in graph.edges() {
        m[(i, j)] = Complex64::new(-mu, 0.0);
        m[(j, i)] = Complex64::new(-mu, 0.0);
        m[(i, i)] += mu;
        m[(j, j)] += mu;
    }
    WalkHamiltonian {
        mu,
        matrix: HermitianMatrix::new(m).expect("Laplacian is real symmetric"),
    }
}

impl WalkHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Amplitudes exp(−iHt)|ψ0⟩ of the unitary walk.
pub fn unitary_walk(h: &WalkHamiltonian, psi0: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
    let n = h.dim();
    if psi0.len() != n {
        return Err(SeaError::DimensionMismatch { expected: n, found: psi0.len() });
    }
    let (vals, vecs) = eigh(h.matrix.matrix())?;
    // ψ(t) = V e^{−iEt} V† ψ0
    let mut proj = alloc::vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..n {
            acc += vecs[(r, k)].conj() * psi0[r];
        }
        let theta = -vals[k] * t;
        proj[k] = acc * Complex64::new(scalar::cos(theta), scalar::sin(theta));
    }
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); n];
    for r in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            acc += vecs[(r, k)] * proj[k];
        }
        out[r] = acc;
    }
    Ok(out)
}

/// Trajectory source: full numerical integration or the frozen-multiplier
/// closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkMethod {
    Num,
    Flm,
}

/// Walk scenario parameters beyond the `SeaConfig`.
#[derive(Debug, Clone)]
pub struct WalkConfig {
    pub sea: SeaConfig,
    /// Starting node; defaults to ⌊N/2⌋.
    pub start_node: Option<usize>,
    /// Rotate node indices so the start node is reported at index 0.
    pub shift_to_zero: bool,
    /// Divide FLM states by their trace before reporting. Off by default:
    /// the drift is the approximation error and is reported as a diagnostic.
    pub renormalize_flm: bool,
}

impl WalkConfig {
    pub fn new(sea: SeaConfig) -> Self {
        Self { sea, start_node: None, shift_to_zero: true, renormalize_flm: false }
    }
}

/// SEA walk output: per-sample node probabilities (index-shifted if
/// requested), full states, and FLM trace drift diagnostics.
#[derive(Debug, Clone)]
pub struct WalkTrajectory {
    pub times: Vec<f64>,
    /// [ρ(t)]_ii per node, one row per sample time.
    pub node_probabilities: Vec<Vec<f64>>,
    /// Full states as raw Hermitian matrices; the FLM path carries its trace
    /// drift here rather than renormalizing.
    pub states: Vec<Matrix>,
    /// |Tr ρ(t) − 1| per sample (zero for the numerical path).
    pub trace_drift: Vec<f64>,
    pub start_node: usize,
}

/// Relax a quenched node state under SEA on the walk graph.
pub fn sea_walk(
    h: &WalkHamiltonian,
    epsilon: f64,
    config: &WalkConfig,
    method: WalkMethod,
) -> Result<WalkTrajectory> {
    let n = h.dim();
    let start = config.start_node.unwrap_or(n / 2);
    if start >= n {
        return Err(SeaError::InvalidArgument("start node out of range".to_string()));
    }
    let rho0 = sea::quench(&DensityMatrix::basis_state(n, start), epsilon)?;
    let cs = ConstraintSet::probability_energy(&h.matrix);

    let shift = |p: &[f64]| -> Vec<f64> {
        if config.shift_to_zero {
            (0..n).map(|i| p[(i + start) % n]).collect()
        } else {
            p.to_vec()
        }
    };

    match method {
        WalkMethod::Num => {
            let traj = sea::integrate(&rho0, &cs, &config.sea, &h.matrix)?;
            let mut out = WalkTrajectory {
                times: Vec::new(),
                node_probabilities: Vec::new(),
                states: Vec::new(),
                trace_drift: Vec::new(),
                start_node: start,
            };
            for (t, state) in traj {
                let probs: Vec<f64> =
                    state.matrix().diagonal_entries().iter().map(|z| z.re).collect();
                out.times.push(t);
                out.node_probabilities.push(shift(&probs));
                out.trace_drift.push(scalar::abs(state.matrix().trace().re - 1.0));
                out.states.push(state.matrix().clone());
            }
            Ok(out)
        }
        WalkMethod::Flm => {
            let sol = sea::flm_solve(&rho0, &cs, &config.sea)?;
            let mut out = WalkTrajectory {
                times: Vec::new(),
                node_probabilities: Vec::new(),
                states: Vec::new(),
                trace_drift: Vec::new(),
                start_node: start,
            };
            for &t in &config.sea.t_grid {
                let rel = t - config.sea.t_grid[0];
                let mut state = sol.state(rel);
                if config.renormalize_flm {
                    let tr = state.trace().re;
                    state = state.scale_re(1.0 / tr);
                }
                let probs: Vec<f64> =
                    state.diagonal_entries().iter().map(|z| z.re).collect();
                out.times.push(t);
                out.node_probabilities.push(shift(&probs));
                out.trace_drift.push(sol.trace_drift(rel));
                out.states.push(state);
            }
            Ok(out)
        }
    }
}

/// Entropy production rate functional
///
/// ```text
/// Π_S = (1/2τ)[ Tr((lnρ+1){lnρ,ρ}) + Σ_i (−1)^i β_i Tr((lnρ+1){C_i,ρ}) ]
/// ```
///
/// evaluated over the support. Values in (−1e−9, 0) are round-off at
/// equilibrium and reported as 0.
pub fn entropy_production(
    rho: &DensityMatrix,
    constraints: &ConstraintSet,
    tau: f64,
) -> Result<f64> {
    if !tau.is_finite() {
        return Ok(0.0);
    }
    let b = SupportProjector::with_default_threshold(rho);
    let log_rho = matrix_log_supported(rho, &b);
    // lnρ + 1 restricted to the support (the flow never leaves it)
    let mut ln_plus_one = log_rho.into_matrix();
    ln_plus_one.add_assign_scaled(b.matrix(), 1.0);

    let mult = compute_multipliers(rho, constraints)?;
    // Tr((lnρ+1){lnρ,ρ}) = 2 Tr((lnρ+1)·ρlnρ)
    let rho_log = rho.map_spectrum(|l| {
        if l > b.threshold() {
            l * scalar::ln(l)
        } else {
            0.0
        }
    });
    let mut pi = 2.0 * ln_plus_one.trace_product(&rho_log).re;
    for (k, c) in constraints.generators().iter().enumerate() {
        // 1-based sign (−1)^i
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        let beta = mult.beta[k];
        if beta == 0.0 {
            continue;
        }
        let anti = &c.matrix().matmul(rho.matrix()) + &rho.matrix().matmul(c.matrix());
        pi += sign * beta * ln_plus_one.trace_product(&anti).re;
    }
    pi /= 2.0 * tau;
    if pi > -1e-9 && pi < 0.0 {
        pi = 0.0;
    }
    Ok(pi)
}

/// Axes of a (τ, ε, t) sweep.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub tau_values: Vec<f64>,
    pub epsilon_values: Vec<f64>,
    pub observation_times: Vec<f64>,
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        if self.tau_values.is_empty()
            || self.epsilon_values.is_empty()
            || self.observation_times.is_empty()
        {
            return Err(SeaError::InvalidArgument("sweep axes must be nonempty".to_string()));
        }
        if self.tau_values.iter().any(|&t| !(t > 0.0)) {
            return Err(SeaError::InvalidArgument("tau must be positive".to_string()));
        }
        if self.epsilon_values.iter().any(|&e| !(0.0..=1.0).contains(&e)) {
            return Err(SeaError::InvalidArgument("epsilon out of [0,1]".to_string()));
        }
        Ok(())
    }
}

/// One sweep observation.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub entropy_production: f64,
    pub entropy: f64,
    pub energy: f64,
}

/// Sweep cell outcome: a point or the error that produced no data.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub tau: f64,
    pub epsilon: f64,
    pub t: f64,
    pub outcome: core::result::Result<SweepPoint, String>,
}

/// Evaluate Π_S, S, and Tr(ρH) on every (τ, ε, t) grid point.
///
/// Rows are ordered τ-major, then ε, then t. A failing cell is recorded with
/// its error message and the sweep continues. Cells are independent; callers
/// may parallelize by splitting (τ, ε) pairs across workers and concatenating
/// rows in grid order.
pub fn sweep(h: &WalkHamiltonian, grid: &SweepGrid, base: &SeaConfig) -> Result<Vec<SweepRow>> {
    grid.validate()?;
    let mut rows = Vec::new();
    for &tau in &grid.tau_values {
        for &eps in &grid.epsilon_values {
            let rows_for_cell = sweep_cell(h, tau, eps, &grid.observation_times, base);
            match rows_for_cell {
                Ok(points) => {
                    for (t, point) in grid.observation_times.iter().zip(points) {
                        rows.push(SweepRow { tau, epsilon: eps, t: *t, outcome: Ok(point) });
                    }
                }
                Err(e) => {
                    for &t in &grid.observation_times {
                        let msg = alloc::format!("{e}");
                        rows.push(SweepRow { tau, epsilon: eps, t, outcome: Err(msg) });
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Single (τ, ε) trajectory evaluated at the observation times.
pub fn sweep_cell(
    h: &WalkHamiltonian,
    tau: f64,
    epsilon: f64,
    observation_times: &[f64],
    base: &SeaConfig,
) -> Result<Vec<SweepPoint>> {
    let n = h.dim();
    let rho0 = sea::quench(&DensityMatrix::basis_state(n, n / 2), epsilon)?;
    let cs = ConstraintSet::probability_energy(&h.matrix);
    let mut grid: Vec<f64> = observation_times.to_vec();
    if grid.first().map(|&t| t > 0.0).unwrap_or(false) {
        grid.insert(0, 0.0);
    }
    let mut config = base.clone();
    config.tau = tau;
    config.t_grid = grid.clone();
    let traj = sea::integrate(&rho0, &cs, &config, &h.matrix)?;
    let mut points = Vec::with_capacity(observation_times.len());
    for (t, state) in &traj {
        if observation_times.contains(t) {
            points.push(SweepPoint {
                entropy_production: entropy_production(state, &cs, tau)?,
                entropy: entropy(state),
                energy: h.matrix.expectation(state.matrix()),
            });
        }
    }
    Ok(points)
}
