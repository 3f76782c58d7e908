//! Single-system steepest-entropy-ascent dynamics.
//!
//! The equation of motion is
//!
//! ```text
//! dρ/dt = −i[H, ρ] − (1/τ)·[ B ρ ln ρ + ½ Σ_i (−1)^i β_i {C_i, ρ} ]
//! ```
//!
//! with C_1 = I, C_2 = H (and optional further conserved generators), B the
//! support projector, and the multipliers β_i solving the constraint system
//! Σ_j β_j Tr(ρ{C_i,C_j}/2) = Tr(ρ{C_i, B ln ρ}/2) by Cramer's rule. The sign
//! convention is pinned by the fixed point at ρ = I/N, where β_I = −ln N and
//! the dissipator vanishes.
//!
//! Trajectories are computed with an adaptive RK45; when every constraint
//! commutes with H the stiff Schrödinger rotation is factored out exactly and
//! only the dissipative flow is integrated, with states dressed by
//! exp(−iHt) on output.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{
    comm, eigh, reconstruct, unitary_exp, DensityMatrix, HermitianMatrix, Matrix,
    SUPPORT_THRESHOLD,
};
use crate::ode::{integrate_adaptive, PostStep};
use crate::scalar;
use crate::{Result, SeaError};

/// Ordered conserved generators C_1 = I, C_2 = H, optional extras.
#[derive(Debug, Clone)]
pub struct ConstraintSet {
    generators: Vec<HermitianMatrix>,
}

impl ConstraintSet {
    /// The first generator must be the identity; at least two are required.
    pub fn new(generators: Vec<HermitianMatrix>) -> Result<Self> {
        if generators.len() < 2 {
            return Err(SeaError::InvalidArgument(
                "constraint set needs at least C_1 = I and C_2 = H".to_string(),
            ));
        }
        let n = generators[0].dim();
        let id = Matrix::identity(n);
        if (generators[0].matrix() - &id).frobenius_norm() > 1e-12 {
            return Err(SeaError::InvalidArgument(
                "first constraint generator must be the identity".to_string(),
            ));
        }
        if generators.iter().any(|g| g.dim() != n) {
            return Err(SeaError::DimensionMismatch { expected: n, found: 0 });
        }
        Ok(Self { generators })
    }

    /// The standard probability + energy pair {I, H}.
    pub fn probability_energy(h: &HermitianMatrix) -> Self {
        Self {
            generators: vec![HermitianMatrix::identity(h.dim()), h.clone()],
        }
    }

    pub fn generators(&self) -> &[HermitianMatrix] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    /// Hamiltonian slot (C_2).
    pub fn hamiltonian(&self) -> &HermitianMatrix {
        &self.generators[1]
    }
}

/// Reference state at which the FLM scheme freezes the multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FlmReference {
    /// Freeze at the initial state: faithful far from equilibrium.
    #[default]
    Initial,
    /// Freeze at I/N: faithful near equilibrium.
    Equilibrium,
}

/// Integration and solver parameters. `tau` may be `f64::INFINITY` for the
/// pure Schrödinger limit.
#[derive(Debug, Clone)]
pub struct SeaConfig {
    pub tau: f64,
    pub t_grid: Vec<f64>,
    pub rk_tol: f64,
    pub support_threshold: f64,
    pub flm_reference: FlmReference,
}

impl SeaConfig {
    pub fn new(tau: f64, t_grid: Vec<f64>) -> Self {
        Self {
            tau,
            t_grid,
            rk_tol: 1e-9,
            support_threshold: SUPPORT_THRESHOLD,
            flm_reference: FlmReference::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0) {
            return Err(SeaError::InvalidArgument("tau must be positive".to_string()));
        }
        if self.t_grid.is_empty() || self.t_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SeaError::InvalidArgument(
                "time grid must be nonempty and strictly increasing".to_string(),
            ));
        }
        if !(self.rk_tol > 0.0) {
            return Err(SeaError::InvalidArgument("rk_tol must be positive".to_string()));
        }
        Ok(())
    }
}

/// Lagrange multipliers in the determinant convention of the equation of
/// motion: `beta[0]` = β_I, `beta[1]` = β_H. `omega` is the Gram determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct Multipliers {
    pub beta: Vec<f64>,
    pub omega: f64,
}

impl Multipliers {
    pub fn beta_i(&self) -> f64 {
        self.beta[0]
    }

    pub fn beta_h(&self) -> f64 {
        self.beta[1]
    }
}

/// von Neumann entropy −Tr(ρ ln ρ) over the support, in units of k_B = 1.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(rho.spectrum())
}

pub(crate) fn entropy_of_spectrum(spectrum: &[f64]) -> f64 {
    -spectrum
        .iter()
        .filter(|&&l| l > SUPPORT_THRESHOLD)
        .map(|&l| l * scalar::ln(l))
        .sum::<f64>()
}

/// Gram system for the constraint projection at state (vals, vecs):
/// G_ij = Tr(ρ{C_i,C_j}/2), b_i = Tr(ρ{C_i, B ln ρ}/2).
///
/// Returns the Cramer solution x of G x = b together with det G. The
/// equation-of-motion multipliers are β_i = (−1)^{i−1} x_i (1-based).
fn gram_solve(
    vals: &[f64],
    vecs: &Matrix,
    constraints: &ConstraintSet,
    support_threshold: f64,
) -> Result<(Vec<f64>, f64, Matrix)> {
    let rho = reconstruct(vals, vecs);
    let log_vals: Vec<f64> = vals
        .iter()
        .map(|&l| if l > support_threshold { scalar::ln(l) } else { 0.0 })
        .collect();
    // ρ·Blnρ shares the eigenbasis of ρ.
    let rho_log_vals: Vec<f64> = vals
        .iter()
        .zip(&log_vals)
        .map(|(&l, &ll)| if l > support_threshold { l * ll } else { 0.0 })
        .collect();
    let rho_log = reconstruct(&rho_log_vals, vecs);

    let nc = constraints.len();
    let mut g = vec![0.0f64; nc * nc];
    let mut b = vec![0.0f64; nc];
    // Products ρ·C_j reused for both the Gram entries and b.
    let rho_c: Vec<Matrix> = constraints
        .generators()
        .iter()
        .map(|c| rho.matmul(c.matrix()))
        .collect();
    for i in 0..nc {
        let ci = constraints.generators()[i].matrix();
        // b_i = Re Tr(ρ C_i Blnρ) = Re Tr(Blnρ ρ C_i) = Re Tr(ρLn · C_i)
        b[i] = rho_log.trace_product(ci).re;
        for j in i..nc {
            // G_ij = Re Tr(ρ C_i C_j) = Re Tr(C_j ρ C_i) = Re Tr((ρ C_i)† ...)
            let val = rho_c[j].trace_product(ci).re;
            g[i * nc + j] = val;
            g[j * nc + i] = val;
        }
    }
    let (x, det) = solve_symmetric(&mut g, &mut b, nc)?;
    Ok((x, det, rho_log))
}

/// Gaussian elimination with partial pivoting; returns solution and the
/// determinant.
///
/// A near-singular Gram with a vanishing right-hand side happens at states
/// where the constraints degenerate on the support (pure-state limit cycles):
/// the projection is then zero rather than ill-posed. A singular Gram with a
/// nonzero right-hand side is a genuinely degenerate constraint set.
fn solve_symmetric(g: &mut [f64], b: &mut [f64], n: usize) -> Result<(Vec<f64>, f64)> {
    // Hadamard-style scale for the singularity test.
    let mut scale = 1.0f64;
    let mut g_max = 0.0f64;
    for i in 0..n {
        let row_max = (0..n).map(|j| scalar::abs(g[i * n + j])).fold(0.0, f64::max);
        scale *= row_max.max(1e-300);
        g_max = g_max.max(row_max);
    }
    let b_norm = b.iter().map(|&v| scalar::abs(v)).fold(0.0, f64::max);
    let mut det = 1.0f64;
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = scalar::abs(g[col * n + col]);
        for r in col + 1..n {
            let v = scalar::abs(g[r * n + col]);
            if v > pivot_val {
                pivot_val = v;
                pivot_row = r;
            }
        }
        if pivot_row != col {
            for j in 0..n {
                g.swap(col * n + j, pivot_row * n + j);
            }
            b.swap(col, pivot_row);
            det = -det;
        }
        let p = g[col * n + col];
        det *= p;
        if scalar::abs(det) <= 1e-12 * scale {
            if b_norm <= 1e-12 * g_max.max(1.0) {
                return Ok((vec![0.0; n], det));
            }
            return Err(SeaError::SingularGram { det });
        }
        for r in col + 1..n {
            let f = g[r * n + col] / p;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                g[r * n + j] -= f * g[col * n + j];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in i + 1..n {
            acc -= g[i * n + j] * x[j];
        }
        x[i] = acc / g[i * n + i];
    }
    Ok((x, det))
}

/// Solve the constraint system at ρ and return the multipliers in the
/// equation-of-motion sign convention (β_I = −ln N at the uniform state).
pub fn compute_multipliers(
    rho: &DensityMatrix,
    constraints: &ConstraintSet,
) -> Result<Multipliers> {
    check_dims(rho, constraints)?;
    let (x, det, _) = gram_solve(
        rho.spectrum(),
        rho.eigvecs(),
        constraints,
        SUPPORT_THRESHOLD,
    )?;
    Ok(Multipliers { beta: to_beta_convention(&x), omega: det })
}

/// Map the Cramer solution x to the reported β (alternating determinant
/// column convention): β_i = (−1)^{i−1} x_i, 1-based.
fn to_beta_convention(x: &[f64]) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v } else { -v })
        .collect()
}

/// Dissipative bracket ρ·Blnρ − ½ Σ_i x_i {C_i, ρ}; dρ_D/dt = −(1/τ) times
/// this. Vanishes at fixed points (uniform state, pure states).
fn dissipative_bracket(
    vals: &[f64],
    vecs: &Matrix,
    constraints: &ConstraintSet,
    support_threshold: f64,
) -> Result<Matrix> {
    let (x, _, rho_log) = gram_solve(vals, vecs, constraints, support_threshold)?;
    let rho = reconstruct(vals, vecs);
    let mut out = rho_log;
    for (k, c) in constraints.generators().iter().enumerate() {
        if x[k] == 0.0 {
            continue;
        }
        if k == 0 {
            // {I, ρ} = 2ρ
            out.add_assign_scaled(&rho, -x[0]);
        } else {
            let anti = &c.matrix().matmul(&rho) + &rho.matmul(c.matrix());
            out.add_assign_scaled(&anti, -0.5 * x[k]);
        }
    }
    Ok(out)
}

/// Full right-hand side dρ/dt = −i[H,ρ] − (1/τ)·dissipative bracket.
///
/// The result is traceless Hermitian and annihilates every conserved
/// functional: Tr(result·C_i) = 0.
pub fn sea_rhs(
    rho: &DensityMatrix,
    constraints: &ConstraintSet,
    tau: f64,
    hamiltonian: &HermitianMatrix,
) -> Result<Matrix> {
    check_dims(rho, constraints)?;
    let mut rhs = comm(hamiltonian.matrix(), rho.matrix())?.scale(Complex64::new(0.0, -1.0));
    if tau.is_finite() {
        let bracket = dissipative_bracket(
            rho.spectrum(),
            rho.eigvecs(),
            constraints,
            SUPPORT_THRESHOLD,
        )?;
        rhs.add_assign_scaled(&bracket, -1.0 / tau);
    }
    Ok(rhs)
}

/// Dissipative part alone: −(1/τ)[Bρlnρ + ½Σ(−1)^iβ_i{C_i,ρ}].
pub fn sea_dissipative_rhs(
    rho: &DensityMatrix,
    constraints: &ConstraintSet,
    tau: f64,
) -> Result<Matrix> {
    check_dims(rho, constraints)?;
    if !tau.is_finite() {
        let n = rho.dim();
        return Ok(Matrix::zeros(n, n));
    }
    let bracket = dissipative_bracket(
        rho.spectrum(),
        rho.eigvecs(),
        constraints,
        SUPPORT_THRESHOLD,
    )?;
    Ok(bracket.scale_re(-1.0 / tau))
}

fn check_dims(rho: &DensityMatrix, constraints: &ConstraintSet) -> Result<()> {
    if rho.dim() != constraints.dim() {
        return Err(SeaError::DimensionMismatch {
            expected: constraints.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Quench preparation ρ → ε ρ0 + (1−ε) I/N.
pub fn quench(rho0: &DensityMatrix, epsilon: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(SeaError::InvalidArgument("epsilon out of [0,1]".to_string()));
    }
    let n = rho0.dim();
    let mut m = rho0.matrix().scale_re(epsilon);
    m.add_assign_scaled(&Matrix::identity(n), (1.0 - epsilon) / n as f64);
    DensityMatrix::new(m)
}

/// Exact equatorial-qubit relaxation r(t) = tanh[½ e^{−t/τ} ln((1+ε)/(1−ε))].
pub fn gpb_solution(epsilon: f64, tau: f64, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(SeaError::InvalidArgument("epsilon out of [0,1]".to_string()));
    }
    if epsilon == 1.0 {
        return Err(SeaError::EdgeOfDomain(
            "pure state (epsilon = 1) is a limit cycle and does not relax".to_string(),
        ));
    }
    if !(tau > 0.0) {
        return Err(SeaError::InvalidArgument("tau must be positive".to_string()));
    }
    let amplitude = 0.5 * scalar::ln((1.0 + epsilon) / (1.0 - epsilon));
    Ok(scalar::tanh(scalar::exp(-t / tau) * amplitude))
}

/// Numerically integrated SEA trajectory sampled on `config.t_grid`.
///
/// When every constraint commutes with H the Schrödinger rotation is factored
/// out exactly: the dissipative flow is integrated for σ(t) and states are
/// reported as ρ(t) = U_{t−t0} σ(t) U†_{t−t0} with U_s = exp(−iHs).
pub fn integrate(
    rho0: &DensityMatrix,
    constraints: &ConstraintSet,
    config: &SeaConfig,
    hamiltonian: &HermitianMatrix,
) -> Result<Vec<(f64, DensityMatrix)>> {
    config.validate()?;
    check_dims(rho0, constraints)?;
    if hamiltonian.dim() != rho0.dim() {
        return Err(SeaError::DimensionMismatch {
            expected: rho0.dim(),
            found: hamiltonian.dim(),
        });
    }
    let rotating = constraints.generators().iter().all(|c| {
        match comm(c.matrix(), hamiltonian.matrix()) {
            Ok(m) => {
                m.frobenius_norm()
                    <= 1e-12
                        * (1.0
                            + c.matrix().frobenius_norm() * hamiltonian.matrix().frobenius_norm())
            }
            Err(_) => false,
        }
    });
    let t0 = config.t_grid[0];
    let tau = config.tau;
    let threshold = config.support_threshold;
    let mut samples: Vec<(f64, Matrix)> = Vec::with_capacity(config.t_grid.len());

    let rhs_dissipative = |_t: f64, y: &Matrix| -> Result<Matrix> {
        if !tau.is_finite() {
            return Ok(Matrix::zeros(y.rows(), y.cols()));
        }
        let (vals, vecs) = eigh(&y.hermitize())?;
        let bracket = dissipative_bracket(&vals, &vecs, constraints, threshold)?;
        Ok(bracket.scale_re(-1.0 / tau))
    };

    let post_step = |y: &mut Matrix| -> Result<PostStep> {
        let sym = y.hermitize();
        let (mut vals, vecs) = eigh(&sym)?;
        if vals.last().copied().unwrap_or(0.0) < -1e-10 {
            return Ok(PostStep::Reject);
        }
        for v in &mut vals {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = vals.iter().sum();
        for v in &mut vals {
            *v /= sum;
        }
        *y = reconstruct(&vals, &vecs);
        Ok(PostStep::Accept)
    };

    if rotating {
        integrate_adaptive(
            rho0.matrix(),
            &config.t_grid,
            config.rk_tol,
            rhs_dissipative,
            post_step,
            |_, t, y| {
                samples.push((t, y.clone()));
                Ok(())
            },
        )?;
        // Dress with the unitary rotation on output.
        let mut out = Vec::with_capacity(samples.len());
        for (t, sigma) in samples {
            let s = t - t0;
            let m = if s == 0.0 {
                sigma
            } else {
                let u = unitary_exp(hamiltonian, s)?;
                u.matmul(&sigma).matmul(&u.adjoint())
            };
            out.push((t, DensityMatrix::new(m)?));
        }
        Ok(out)
    } else {
        let rhs_full = |t: f64, y: &Matrix| -> Result<Matrix> {
            let mut rhs = comm(hamiltonian.matrix(), y)?.scale(Complex64::new(0.0, -1.0));
            if tau.is_finite() {
                let diss = rhs_dissipative(t, y)?;
                rhs.add_assign_scaled(&diss, 1.0);
            }
            Ok(rhs)
        };
        integrate_adaptive(
            rho0.matrix(),
            &config.t_grid,
            config.rk_tol,
            rhs_full,
            post_step,
            |_, t, y| {
                samples.push((t, y.clone()));
                Ok(())
            },
        )?;
        samples
            .into_iter()
            .map(|(t, m)| Ok((t, DensityMatrix::new(m)?)))
            .collect()
    }
}

/// Frozen-multiplier closed-form solution.
///
/// Valid on the restricted class where the eigenbasis of ρ changes only
/// through the Hamiltonian rotation: either [ρ0, H] = 0, or the frozen
/// multiplier combination Σ(−1)^iβ_iC_i is diagonal in ρ0's eigenbasis
/// (e.g. β_H = 0). Probabilities follow p_m(t) = exp(ṽ_m e^{−t/τ} − μ^c_m)
/// with ṽ_m = ln p_m(0) + μ^c_m; the full state is dressed by exp(−iHt).
#[derive(Debug, Clone)]
pub struct FlmSolution {
    /// Multipliers frozen at the reference state.
    pub beta_fixed: Multipliers,
    /// μ^c_m = Σ_s (−1)^s β_s C^s_mm in the co-rotating eigenbasis.
    pub mu_c: Vec<f64>,
    /// ṽ_m = ln p_m(0) + μ^c_m (−∞ for initially unoccupied levels).
    pub v_tilde: Vec<f64>,
    /// Basis columns: projectors P_m = |u_m⟩⟨u_m|.
    basis: Matrix,
    p0: Vec<f64>,
    tau: f64,
    h_vals: Vec<f64>,
    h_vecs: Matrix,
}

pub fn flm_solve(
    rho0: &DensityMatrix,
    constraints: &ConstraintSet,
    config: &SeaConfig,
) -> Result<FlmSolution> {
    config.validate()?;
    check_dims(rho0, constraints)?;
    let n = rho0.dim();
    let reference = match config.flm_reference {
        FlmReference::Initial => rho0.clone(),
        FlmReference::Equilibrium => DensityMatrix::maximally_mixed(n),
    };
    let beta = compute_multipliers(&reference, constraints)?;

    // Basis in which ρ0 is diagonal; keep the standard basis when possible so
    // node labelings survive.
    let off_diag: f64 = {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += rho0.matrix()[(i, j)].norm_sqr();
                }
            }
        }
        scalar::sqrt(acc)
    };
    let (basis, p0): (Matrix, Vec<f64>) = if off_diag < 1e-12 {
        (
            Matrix::identity(n),
            rho0.matrix().diagonal_entries().iter().map(|z| z.re).collect(),
        )
    } else {
        (rho0.eigvecs().clone(), rho0.spectrum().to_vec())
    };

    // Frozen constraint combination in that basis; must be diagonal for the
    // closed form to hold.
    let mut k_mat = Matrix::zeros(n, n);
    for (idx, c) in constraints.generators().iter().enumerate() {
        let sign = if idx % 2 == 0 { -1.0 } else { 1.0 };
        let rotated = basis.adjoint().matmul(c.matrix()).matmul(&basis);
        k_mat.add_assign_scaled(&rotated, sign * beta.beta[idx]);
    }
    let mut off = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off += k_mat[(i, j)].norm_sqr();
            }
        }
    }
    let off = scalar::sqrt(off);
    if off > 1e-10 * (1.0 + k_mat.max_abs()) {
        return Err(SeaError::NotCodiagonal { off_diagonal_norm: off });
    }

    let mu_c: Vec<f64> = (0..n).map(|m| k_mat[(m, m)].re).collect();
    let v_tilde: Vec<f64> = p0
        .iter()
        .zip(&mu_c)
        .map(|(&p, &mu)| {
            if p > config.support_threshold {
                scalar::ln(p) + mu
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();

    let h = constraints.hamiltonian();
    let (h_vals, h_vecs) = eigh(h.matrix())?;
    Ok(FlmSolution {
        beta_fixed: beta,
        mu_c,
        v_tilde,
        basis,
        p0,
        tau: config.tau,
        h_vals,
        h_vecs,
    })
}

impl FlmSolution {
    /// Co-rotating level probabilities p_m(t). Their sum drifts from one —
    /// the FLM approximation does not conserve trace exactly — and the drift
    /// is reported, not renormalized.
    pub fn probabilities(&self, t: f64) -> Vec<f64> {
        let decay = scalar::exp(-t / self.tau);
        self.v_tilde
            .iter()
            .zip(&self.mu_c)
            .map(|(&v, &mu)| {
                if v == f64::NEG_INFINITY {
                    0.0
                } else {
                    scalar::exp(v * decay - mu)
                }
            })
            .collect()
    }

    /// |Σ_m p_m(t) − 1|.
    pub fn trace_drift(&self, t: f64) -> f64 {
        scalar::abs(self.probabilities(t).iter().sum::<f64>() - 1.0)
    }

    /// Full state: exp(−iHt) · Σ_m p_m(t) P_m · exp(iHt).
    ///
    /// Returned as a raw Hermitian matrix because its trace carries the FLM
    /// drift; normalize explicitly if a `DensityMatrix` is needed.
    pub fn state(&self, t: f64) -> Matrix {
        let p = self.probabilities(t);
        let core = self
            .basis
            .matmul(&Matrix::diagonal_real(&p))
            .matmul(&self.basis.adjoint());
        if t == 0.0 {
            return core;
        }
        let n = core.dim();
        let mut scaled = self.h_vecs.clone();
        for c in 0..n {
            let theta = -self.h_vals[c] * t;
            let phase = Complex64::new(scalar::cos(theta), scalar::sin(theta));
            for r in 0..n {
                scaled[(r, c)] *= phase;
            }
        }
        let u = scaled.matmul(&self.h_vecs.adjoint());
        u.matmul(&core).matmul(&u.adjoint())
    }

    /// Initial probabilities in the co-rotating basis.
    pub fn initial_probabilities(&self) -> &[f64] {
        &self.p0
    }

    /// Basis columns; the decay projectors are P_m = |u_m⟩⟨u_m|.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Projector P_m onto the m-th decay mode.
    pub fn projector(&self, m: usize) -> Matrix {
        let n = self.basis.dim();
        Matrix::from_fn(n, n, |i, j| self.basis[(i, m)] * self.basis[(j, m)].conj())
    }
}
