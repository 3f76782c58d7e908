//! Bipartite SEA dynamics built from local perception operators.
//!
//! For a noninteracting composite AB with H = H_A⊗I + I⊗H_B, each subsystem
//! carries a local dissipation operator
//!
//! ```text
//! 2τ_J D^J = (Bln ρ)^J + Σ_ℓ (−1)^ℓ β^J_ℓ (C_ℓ)^J
//! ```
//!
//! where (X)^J = Tr_J̄[(I_J ⊗ ρ_J̄) X] is the locally perceived operator and
//! the β^J solve the local conservation system. The overall motion is
//!
//! ```text
//! dρ/dt = −i[H, ρ] − {D^A, ρ_A} ⊗ ρ_B − ρ_A ⊗ {D^B, ρ_B} .
//! ```
//!
//! Local unitaries on one subsystem leave the other subsystem's reduced
//! state, perceived operators, and reduced equation of motion unchanged; the
//! no-signaling harness verifies exactly that on seeded Haar unitaries.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{SignalCheck, SignalReport};
use crate::linalg::{
    comm, eigh, matrix_log_supported, partial_trace, reconstruct, unitary_exp, DensityMatrix,
    HermitianMatrix, Keep, Matrix, SupportProjector, SUPPORT_THRESHOLD,
};
use crate::ode::{integrate_adaptive, PostStep};
use crate::random::{haar_unitary, rng_for_trial};
use crate::scalar;
use crate::{Result, SeaError};

/// Which tensor factor of the bipartite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Bipartite state with declared factor dimensions and local Hamiltonians.
#[derive(Debug, Clone)]
pub struct CompositeState {
    rho: DensityMatrix,
    d_a: usize,
    d_b: usize,
    h_a: HermitianMatrix,
    h_b: HermitianMatrix,
}

impl CompositeState {
    pub fn new(
        rho: DensityMatrix,
        d_a: usize,
        d_b: usize,
        h_a: HermitianMatrix,
        h_b: HermitianMatrix,
    ) -> Result<Self> {
        if rho.dim() != d_a * d_b {
            return Err(SeaError::DimensionMismatch { expected: d_a * d_b, found: rho.dim() });
        }
        if h_a.dim() != d_a {
            return Err(SeaError::DimensionMismatch { expected: d_a, found: h_a.dim() });
        }
        if h_b.dim() != d_b {
            return Err(SeaError::DimensionMismatch { expected: d_b, found: h_b.dim() });
        }
        Ok(Self { rho, d_a, d_b, h_a, h_b })
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d_a, self.d_b)
    }

    pub fn h_a(&self) -> &HermitianMatrix {
        &self.h_a
    }

    pub fn h_b(&self) -> &HermitianMatrix {
        &self.h_b
    }

    /// Same subsystem structure around a different global state.
    pub fn with_rho(&self, rho: DensityMatrix) -> Result<Self> {
        Self::new(rho, self.d_a, self.d_b, self.h_a.clone(), self.h_b.clone())
    }

    /// Reduced state of one subsystem.
    pub fn reduced(&self, sub: Subsystem) -> Result<DensityMatrix> {
        let keep = match sub {
            Subsystem::A => Keep::A,
            Subsystem::B => Keep::B,
        };
        DensityMatrix::new(partial_trace(self.rho.matrix(), self.d_a, self.d_b, keep)?)
    }

    /// H_A ⊗ I + I ⊗ H_B.
    pub fn total_hamiltonian(&self) -> HermitianMatrix {
        let mut h = self.h_a.matrix().kron(&Matrix::identity(self.d_b));
        h.add_assign_scaled(&Matrix::identity(self.d_a).kron(self.h_b.matrix()), 1.0);
        HermitianMatrix::new(h).expect("Kronecker sum of Hermitians")
    }

    fn dim_of(&self, sub: Subsystem) -> usize {
        match sub {
            Subsystem::A => self.d_a,
            Subsystem::B => self.d_b,
        }
    }
}

/// ω h·σ on a qubit, with h a real 3-direction.
pub fn qubit_hamiltonian(omega: f64, h: [f64; 3]) -> HermitianMatrix {
    let m = Matrix::from_rows(
        2,
        &[
            Complex64::new(h[2], 0.0),
            Complex64::new(h[0], -h[1]),
            Complex64::new(h[0], h[1]),
            Complex64::new(-h[2], 0.0),
        ],
    );
    HermitianMatrix::new(m.scale_re(omega)).expect("Pauli combination is Hermitian")
}

/// Locally perceived operator on one subsystem.
#[derive(Debug, Clone)]
pub struct PerceptionOperator {
    pub subsystem: Subsystem,
    pub matrix: Matrix,
}

fn perceive_raw(
    x: &Matrix,
    rho: &Matrix,
    d_a: usize,
    d_b: usize,
    sub: Subsystem,
) -> Result<Matrix> {
    match sub {
        Subsystem::A => {
            let rho_b = partial_trace(rho, d_a, d_b, Keep::B)?;
            let weighted = Matrix::identity(d_a).kron(&rho_b).matmul(x);
            partial_trace(&weighted, d_a, d_b, Keep::A)
        }
        Subsystem::B => {
            let rho_a = partial_trace(rho, d_a, d_b, Keep::A)?;
            let weighted = rho_a.kron(&Matrix::identity(d_b)).matmul(x);
            partial_trace(&weighted, d_a, d_b, Keep::B)
        }
    }
}

/// (X)^J = Tr_J̄[(I_J ⊗ ρ_J̄) X].
pub fn perceive(x: &Matrix, state: &CompositeState, sub: Subsystem) -> Result<PerceptionOperator> {
    if x.rows() != state.rho.dim() || !x.is_square() {
        return Err(SeaError::DimensionMismatch { expected: state.rho.dim(), found: x.rows() });
    }
    Ok(PerceptionOperator {
        subsystem: sub,
        matrix: perceive_raw(x, state.rho.matrix(), state.d_a, state.d_b, sub)?,
    })
}

/// Δ(X)^J = (X)^J − I_J Tr[ρ_J (X)^J].
pub fn deviation(x: &Matrix, state: &CompositeState, sub: Subsystem) -> Result<Matrix> {
    let perceived = perceive(x, state, sub)?.matrix;
    let rho_j = state.reduced(sub)?;
    let mean = rho_j.matrix().trace_product(&perceived).re;
    let mut out = perceived;
    out.add_assign_scaled(&Matrix::identity(state.dim_of(sub)), -mean);
    Ok(out)
}

/// (X, Y)^J = Tr[ρ_J {Δ(X)^J, Δ(Y)^J}]/2.
pub fn covariance(
    x: &Matrix,
    y: &Matrix,
    state: &CompositeState,
    sub: Subsystem,
) -> Result<f64> {
    let dx = deviation(x, state, sub)?;
    let dy = deviation(y, state, sub)?;
    let rho_j = state.reduced(sub)?;
    Ok(rho_j.matrix().matmul(&dx).trace_product(&dy).re)
}

/// Local multipliers in the determinant convention (β^J_2 = 0 for
/// Bell-diagonal states) together with the local Gram determinant Ω^J.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalMultipliers {
    pub omega: f64,
    pub beta_1: f64,
    pub beta_2: f64,
}

/// Perceived pieces entering the local constraint system.
struct LocalParts {
    rho_j: Matrix,
    bln_j: Matrix,
    h_j: Matrix,
}

fn local_parts(
    rho: &Matrix,
    bln: &Matrix,
    h_total: &Matrix,
    d_a: usize,
    d_b: usize,
    sub: Subsystem,
) -> Result<LocalParts> {
    let keep = match sub {
        Subsystem::A => Keep::A,
        Subsystem::B => Keep::B,
    };
    Ok(LocalParts {
        rho_j: partial_trace(rho, d_a, d_b, keep)?,
        bln_j: perceive_raw(bln, rho, d_a, d_b, sub)?,
        h_j: perceive_raw(h_total, rho, d_a, d_b, sub)?,
    })
}

/// Cramer solution of the local system G x = b with
/// G_kl = Tr(ρ_J {(C_k)^J, (C_l)^J}/2) and b_k = Tr(ρ_J {(C_k)^J, (Blnρ)^J}/2).
fn local_gram_solve(parts: &LocalParts) -> Result<(f64, f64, f64)> {
    let g11 = parts.rho_j.trace().re;
    let g12 = parts.rho_j.trace_product(&parts.h_j).re;
    let g22 = parts.rho_j.matmul(&parts.h_j).trace_product(&parts.h_j).re;
    let b1 = parts.rho_j.trace_product(&parts.bln_j).re;
    let b2 = parts.rho_j.matmul(&parts.h_j).trace_product(&parts.bln_j).re;
    let det = g11 * g22 - g12 * g12;
    let scale = (g11 * g22).max(g12 * g12).max(1e-300);
    if scalar::abs(det) <= 1e-12 * scale {
        // Degenerate constraints on the local support: zero right-hand side
        // means zero projection (limit-cycle states), anything else is a
        // genuinely singular constraint set.
        if scalar::abs(b1).max(scalar::abs(b2)) <= 1e-12 * (1.0 + g11.max(g22)) {
            return Ok((det, 0.0, 0.0));
        }
        return Err(SeaError::SingularGram { det });
    }
    let x1 = (b1 * g22 - b2 * g12) / det;
    let x2 = (g11 * b2 - g12 * b1) / det;
    Ok((det, x1, x2))
}

fn bln_of(rho: &DensityMatrix) -> Matrix {
    let b = SupportProjector::with_default_threshold(rho);
    matrix_log_supported(rho, &b).into_matrix()
}

/// Per-subsystem Lagrange multipliers (Ω^J, β^J_1, β^J_2).
pub fn composite_multipliers(state: &CompositeState, sub: Subsystem) -> Result<LocalMultipliers> {
    let bln = bln_of(&state.rho);
    let h = state.total_hamiltonian();
    let parts = local_parts(
        state.rho.matrix(),
        &bln,
        h.matrix(),
        state.d_a,
        state.d_b,
        sub,
    )?;
    let (det, x1, x2) = local_gram_solve(&parts)?;
    Ok(LocalMultipliers { omega: det, beta_1: x1, beta_2: -x2 })
}

/// Local dissipation contribution in anticommutator form. One formula covers
/// both the product-state and the correlated regime; the flag records which
/// one the input was.
#[derive(Debug, Clone)]
pub struct LocalDissipator {
    pub subsystem: Subsystem,
    /// {D^J, ρ_J}: traceless, with vanishing conservation contractions.
    pub anticommutator_form: Matrix,
    /// Whether the global state factorized as ρ_A ⊗ ρ_B (within 1e−10).
    pub input_was_product: bool,
}

fn dissipator_bracket(parts: &LocalParts, x1: f64, x2: f64, tau_j: f64) -> Matrix {
    // 2τ D^J = (Bln)^J − x1 I − x2 (H)^J, so
    // {D^J, ρ_J} = (1/2τ)({(Bln)^J, ρ_J} − 2 x1 ρ_J − x2 {(H)^J, ρ_J}).
    let mut op = parts.bln_j.clone();
    let n = op.dim();
    op.add_assign_scaled(&Matrix::identity(n), -x1);
    op.add_assign_scaled(&parts.h_j, -x2);
    let mut bracket = op.matmul(&parts.rho_j);
    bracket.add_assign_scaled(&parts.rho_j.matmul(&op), 1.0);
    bracket.scale_re(1.0 / (2.0 * tau_j))
}

/// {D^J, ρ_J} with the multipliers solved at the current state.
pub fn local_dissipator(
    state: &CompositeState,
    sub: Subsystem,
    tau_j: f64,
) -> Result<LocalDissipator> {
    let bln = bln_of(&state.rho);
    let h = state.total_hamiltonian();
    let parts = local_parts(
        state.rho.matrix(),
        &bln,
        h.matrix(),
        state.d_a,
        state.d_b,
        sub,
    )?;
    let (_, x1, x2) = local_gram_solve(&parts)?;
    Ok(LocalDissipator {
        subsystem: sub,
        anticommutator_form: dissipator_bracket(&parts, x1, x2, tau_j),
        input_was_product: is_product(state)?,
    })
}

/// {D^J, ρ_J} with caller-supplied multipliers (reported convention
/// β_1 = x_1, β_2 = −x_2); used by negative controls that corrupt the
/// constrained projection.
pub fn local_dissipator_with_multipliers(
    state: &CompositeState,
    sub: Subsystem,
    tau_j: f64,
    beta_1: f64,
    beta_2: f64,
) -> Result<LocalDissipator> {
    let bln = bln_of(&state.rho);
    let h = state.total_hamiltonian();
    let parts = local_parts(
        state.rho.matrix(),
        &bln,
        h.matrix(),
        state.d_a,
        state.d_b,
        sub,
    )?;
    Ok(LocalDissipator {
        subsystem: sub,
        anticommutator_form: dissipator_bracket(&parts, beta_1, -beta_2, tau_j),
        input_was_product: is_product(state)?,
    })
}

fn is_product(state: &CompositeState) -> Result<bool> {
    let rho_a = partial_trace(state.rho.matrix(), state.d_a, state.d_b, Keep::A)?;
    let rho_b = partial_trace(state.rho.matrix(), state.d_a, state.d_b, Keep::B)?;
    let gap = (state.rho.matrix() - &rho_a.kron(&rho_b)).frobenius_norm();
    Ok(gap < 1e-10)
}

/// Full composite equation of motion
/// dρ/dt = −i[H, ρ] − {D^A, ρ_A} ⊗ ρ_B − ρ_A ⊗ {D^B, ρ_B}.
pub fn composite_rhs(state: &CompositeState, tau_a: f64, tau_b: f64) -> Result<Matrix> {
    let h = state.total_hamiltonian();
    let mut rhs = comm(h.matrix(), state.rho.matrix())?.scale(Complex64::new(0.0, -1.0));
    let diss = composite_dissipative_rhs(state, tau_a, tau_b)?;
    rhs.add_assign_scaled(&diss, 1.0);
    Ok(rhs)
}

/// Dissipative part −Σ_J {D^J, ρ_J} ⊗ ρ_J̄ alone.
pub fn composite_dissipative_rhs(
    state: &CompositeState,
    tau_a: f64,
    tau_b: f64,
) -> Result<Matrix> {
    let bln = bln_of(&state.rho);
    let h = state.total_hamiltonian();
    dissipative_from_parts(
        state.rho.matrix(),
        &bln,
        h.matrix(),
        state.d_a,
        state.d_b,
        tau_a,
        tau_b,
    )
}

fn dissipative_from_parts(
    rho: &Matrix,
    bln: &Matrix,
    h_total: &Matrix,
    d_a: usize,
    d_b: usize,
    tau_a: f64,
    tau_b: f64,
) -> Result<Matrix> {
    let n = d_a * d_b;
    let mut out = Matrix::zeros(n, n);
    if tau_a.is_finite() {
        let parts = local_parts(rho, bln, h_total, d_a, d_b, Subsystem::A)?;
        let (_, x1, x2) = local_gram_solve(&parts)?;
        let bracket = dissipator_bracket(&parts, x1, x2, tau_a);
        let rho_b = partial_trace(rho, d_a, d_b, Keep::B)?;
        out.add_assign_scaled(&bracket.kron(&rho_b), -1.0);
    }
    if tau_b.is_finite() {
        let parts = local_parts(rho, bln, h_total, d_a, d_b, Subsystem::B)?;
        let (_, x1, x2) = local_gram_solve(&parts)?;
        let bracket = dissipator_bracket(&parts, x1, x2, tau_b);
        let rho_a = partial_trace(rho, d_a, d_b, Keep::A)?;
        out.add_assign_scaled(&rho_a.kron(&bracket), -1.0);
    }
    Ok(out)
}

/// Overall entropy rate ds/dt = −Σ_J Tr[{D^J, ρ_J} (S(ρ))^J] with
/// S(ρ) = −Bln(ρ).
pub fn entropy_rate(state: &CompositeState, tau_a: f64, tau_b: f64) -> Result<f64> {
    let bln = bln_of(&state.rho);
    let mut rate = 0.0;
    for (sub, tau) in [(Subsystem::A, tau_a), (Subsystem::B, tau_b)] {
        if !tau.is_finite() {
            continue;
        }
        let d = local_dissipator(state, sub, tau)?;
        let s_perceived =
            perceive_raw(&bln, state.rho.matrix(), state.d_a, state.d_b, sub)?.scale_re(-1.0);
        rate -= d.anticommutator_form.trace_product(&s_perceived).re;
    }
    Ok(rate)
}

/// Integrate the composite equation of motion on `t_grid`.
///
/// The Schrödinger rotation commutes with the noninteracting H and the
/// dissipative functional is unitarily covariant under exp(−iHt), so the
/// dissipative flow is integrated in the co-rotating frame and dressed on
/// output.
pub fn composite_integrate(
    state: &CompositeState,
    tau_a: f64,
    tau_b: f64,
    t_grid: &[f64],
    rk_tol: f64,
) -> Result<Vec<(f64, CompositeState)>> {
    if !(tau_a > 0.0) || !(tau_b > 0.0) {
        return Err(SeaError::InvalidArgument("tau must be positive".to_string()));
    }
    let (d_a, d_b) = (state.d_a, state.d_b);
    let h = state.total_hamiltonian();
    let t0 = *t_grid
        .first()
        .ok_or_else(|| SeaError::InvalidArgument("empty time grid".to_string()))?;

    let rhs = |_t: f64, y: &Matrix| -> Result<Matrix> {
        let (mut vals, vecs) = eigh(&y.hermitize())?;
        for v in &mut vals {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let rho = reconstruct(&vals, &vecs);
        let log_vals: Vec<f64> = vals
            .iter()
            .map(|&l| if l > SUPPORT_THRESHOLD { scalar::ln(l) } else { 0.0 })
            .collect();
        let bln = reconstruct(&log_vals, &vecs);
        dissipative_from_parts(&rho, &bln, h.matrix(), d_a, d_b, tau_a, tau_b)
    };
    let post_step = |y: &mut Matrix| -> Result<PostStep> {
        let (mut vals, vecs) = eigh(&y.hermitize())?;
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

    let mut samples = Vec::with_capacity(t_grid.len());
    integrate_adaptive(state.rho.matrix(), t_grid, rk_tol, rhs, post_step, |_, t, y| {
        samples.push((t, y.clone()));
        Ok(())
    })?;
    let mut out = Vec::with_capacity(samples.len());
    for (t, sigma) in samples {
        let s = t - t0;
        let dressed = if s == 0.0 {
            sigma
        } else {
            let u = unitary_exp(&h, s)?;
            u.matmul(&sigma).matmul(&u.adjoint())
        };
        out.push((t, state.with_rho(DensityMatrix::new(dressed)?)?));
    }
    Ok(out)
}

/// Per-trial maxima observed by the no-signaling harness.
#[derive(Debug, Clone, Default)]
pub struct NoSignalingReport {
    pub trials: usize,
    pub max_reduced_state_dev: f64,
    pub max_perception_dev: f64,
    pub max_reduced_rhs_dev: f64,
    pub max_conservation_residual: f64,
}

/// Tolerances of the harness sub-checks.
pub const TOL_REDUCED_STATE: f64 = 1e-10;
pub const TOL_PERCEPTION: f64 = 1e-9;
pub const TOL_REDUCED_RHS: f64 = 1e-8;
pub const TOL_CONSERVATION: f64 = 1e-8;

/// Verify that local unitaries on B cannot signal to A, with the library
/// equation of motion.
///
/// For each seeded Haar unitary U_B and ρ' = (I⊗U_B) ρ (I⊗U_B†):
/// (a) ρ'_A = ρ_A, (b) (F(ρ'))^A = (F(ρ))^A for F ∈ {Bln, square},
/// (c) Tr_B of the equation of motion is unchanged, and (d) the reduced
/// motion conserves trace and energy. Returns the worst deviations, or a
/// `SignalDetected` error naming the offending unitary and sub-check.
pub fn no_signaling_check(
    state: &CompositeState,
    trials: usize,
    seed: u64,
    tau_a: f64,
    tau_b: f64,
) -> Result<NoSignalingReport> {
    no_signaling_check_with(state, trials, seed, |s| composite_rhs(s, tau_a, tau_b))
}

/// No-signaling harness against a caller-supplied equation of motion
/// (negative controls pass a corrupted one).
pub fn no_signaling_check_with(
    state: &CompositeState,
    trials: usize,
    seed: u64,
    rhs: impl Fn(&CompositeState) -> Result<Matrix>,
) -> Result<NoSignalingReport> {
    if trials == 0 {
        return Err(SeaError::InvalidArgument("trials must be >= 1".to_string()));
    }
    let (d_a, d_b) = state.dims();
    let rho_a = state.reduced(Subsystem::A)?;
    let bln = bln_of(&state.rho);
    let sq = state.rho.matrix().matmul(state.rho.matrix());
    let perceived_bln = perceive_raw(&bln, state.rho.matrix(), d_a, d_b, Subsystem::A)?;
    let perceived_sq = perceive_raw(&sq, state.rho.matrix(), d_a, d_b, Subsystem::A)?;
    let base_rhs = rhs(state)?;
    let base_reduced_rhs = partial_trace(&base_rhs, d_a, d_b, Keep::A)?;
    let h_total = state.total_hamiltonian();
    let h_scale = 1.0 + h_total.matrix().frobenius_norm();

    let mut report = NoSignalingReport { trials, ..Default::default() };
    let fail = |trial: usize, check: SignalCheck, dev: f64, tol: f64, u: &Matrix| {
        SeaError::SignalDetected(alloc::boxed::Box::new(SignalReport {
            trial,
            check,
            deviation: dev,
            tolerance: tol,
            unitary: u.clone(),
        }))
    };

    for trial in 0..trials {
        let mut rng = rng_for_trial(seed, trial as u64);
        let u_b = haar_unitary(d_b, &mut rng);
        let u_full = Matrix::identity(d_a).kron(&u_b);
        let rotated = u_full.matmul(state.rho.matrix()).matmul(&u_full.adjoint());
        let rho_prime = DensityMatrix::new(rotated)?;
        let state_prime = state.with_rho(rho_prime)?;

        // (a) reduced state of A untouched
        let dev_a = (state_prime.reduced(Subsystem::A)?.matrix() - rho_a.matrix())
            .frobenius_norm();
        report.max_reduced_state_dev = report.max_reduced_state_dev.max(dev_a);
        if dev_a > TOL_REDUCED_STATE {
            return Err(fail(trial, SignalCheck::ReducedState, dev_a, TOL_REDUCED_STATE, &u_b));
        }

        // (b) perceived operator functions untouched
        let bln_prime = bln_of(state_prime.rho());
        let dev_bln = (&perceive_raw(
            &bln_prime,
            state_prime.rho().matrix(),
            d_a,
            d_b,
            Subsystem::A,
        )? - &perceived_bln)
            .frobenius_norm();
        let sq_prime = state_prime.rho().matrix().matmul(state_prime.rho().matrix());
        let dev_sq = (&perceive_raw(
            &sq_prime,
            state_prime.rho().matrix(),
            d_a,
            d_b,
            Subsystem::A,
        )? - &perceived_sq)
            .frobenius_norm();
        let dev_f = dev_bln.max(dev_sq);
        report.max_perception_dev = report.max_perception_dev.max(dev_f);
        if dev_f > TOL_PERCEPTION {
            return Err(fail(trial, SignalCheck::Perception, dev_f, TOL_PERCEPTION, &u_b));
        }

        // (c) reduced equation of motion untouched
        let rhs_prime = rhs(&state_prime)?;
        let reduced_prime = partial_trace(&rhs_prime, d_a, d_b, Keep::A)?;
        let dev_rhs = (&reduced_prime - &base_reduced_rhs).frobenius_norm();
        report.max_reduced_rhs_dev = report.max_reduced_rhs_dev.max(dev_rhs);
        if dev_rhs > TOL_REDUCED_RHS {
            return Err(fail(trial, SignalCheck::ReducedRhs, dev_rhs, TOL_REDUCED_RHS, &u_b));
        }

        // (d) the motion stays on the constraint manifold
        let trace_leak = scalar::abs(rhs_prime.trace().re);
        let energy_leak = scalar::abs(rhs_prime.trace_product(h_total.matrix()).re) / h_scale;
        let res = trace_leak.max(energy_leak);
        report.max_conservation_residual = report.max_conservation_residual.max(res);
        if res > TOL_CONSERVATION {
            return Err(fail(trial, SignalCheck::Conservation, res, TOL_CONSERVATION, &u_b));
        }
    }
    Ok(report)
}

/// Bell-diagonal two-qubit state ρ = ¼(I + Σ_i b_i σ_i⊗σ_i).
///
/// Covers the standard Bell states (b = ±(−1,∓1,∓1) patterns) and Werner
/// states (b_x = b_y = b_z = −w). Fails with `NotPositive` outside the
/// tetrahedron λ_k = (1 ∓ b_x ∓ b_y ∓ b_z)/4 ≥ 0.
pub fn bell_diagonal(
    b: [f64; 3],
    h_a: HermitianMatrix,
    h_b: HermitianMatrix,
) -> Result<CompositeState> {
    let [bx, by, bz] = b;
    let z = Complex64::new(0.0, 0.0);
    let m = Matrix::from_rows(
        4,
        &[
            Complex64::new(1.0 + bz, 0.0),
            z,
            z,
            Complex64::new(bx - by, 0.0),
            z,
            Complex64::new(1.0 - bz, 0.0),
            Complex64::new(bx + by, 0.0),
            z,
            z,
            Complex64::new(bx + by, 0.0),
            Complex64::new(1.0 - bz, 0.0),
            z,
            Complex64::new(bx - by, 0.0),
            z,
            z,
            Complex64::new(1.0 + bz, 0.0),
        ],
    )
    .scale_re(0.25);
    CompositeState::new(DensityMatrix::new(m)?, 2, 2, h_a, h_b)
}

/// Eigenvalues of a Bell-diagonal state: λ_k = (1 ∓ b_x ∓ b_y ∓ b_z)/4.
pub fn bell_diagonal_roots(b: [f64; 3]) -> [f64; 4] {
    let [bx, by, bz] = b;
    [
        (1.0 - bx - by - bz) / 4.0,
        (1.0 - bx + by + bz) / 4.0,
        (1.0 + bx - by + bz) / 4.0,
        (1.0 + bx + by - bz) / 4.0,
    ]
}

/// White-noise-mixed product state ρ_m = μ(ρ_A ⊗ I/2) + (1−μ)/4 I with
/// ρ_A = ½(I + r_A·σ).
pub fn separable_mixed_state(mu: f64, r_a: [f64; 3]) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(SeaError::InvalidArgument("mu out of [0,1]".to_string()));
    }
    let rho_a = qubit_density(scale3(r_a, mu))?;
    let m = rho_a.matrix().kron(&Matrix::identity(2).scale_re(0.5));
    DensityMatrix::new(m)
}

fn qubit_density(r: [f64; 3]) -> Result<DensityMatrix> {
    let m = Matrix::from_rows(
        2,
        &[
            Complex64::new(1.0 + r[2], 0.0),
            Complex64::new(r[0], -r[1]),
            Complex64::new(r[0], r[1]),
            Complex64::new(1.0 - r[2], 0.0),
        ],
    )
    .scale_re(0.5);
    DensityMatrix::new(m)
}

fn scale3(v: [f64; 3], s: f64) -> [f64; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Inputs of the separable-mixed analytic case: ρ_B = I/2, r_{A,3} = 0.
#[derive(Debug, Clone)]
pub struct SeparableCaseParams {
    pub mu: f64,
    pub r_a: [f64; 3],
    pub omega_a: f64,
    pub omega_b: f64,
    pub h_a: [f64; 3],
    pub h_b: [f64; 3],
    pub tau_a: f64,
    pub tau_b: f64,
}

/// Closed forms of the separable-mixed case next to the numeric pipeline.
#[derive(Debug, Clone)]
pub struct SeparableCaseReport {
    /// A = ln((1−r̄²)/16) + r̄ ln((1+r̄)/(1−r̄)).
    pub shorthand_a: f64,
    /// B = ln((1−r̄²)/16) + (1/r̄) ln((1+r̄)/(1−r̄)).
    pub shorthand_b: f64,
    pub closed_multipliers_a: LocalMultipliers,
    pub closed_multipliers_b: LocalMultipliers,
    pub numeric_multipliers_a: LocalMultipliers,
    pub numeric_multipliers_b: LocalMultipliers,
    pub closed_bracket_a: Matrix,
    pub closed_bracket_b: Matrix,
    pub numeric_bracket_a: Matrix,
    pub numeric_bracket_b: Matrix,
    /// Worst absolute deviation between the closed forms and the pipeline.
    pub max_deviation: f64,
}

/// Evaluate the closed-form separable-mixed case and verify the numeric
/// pipeline (perceive → multipliers → dissipator) reproduces it.
pub fn analytic_separable_case(p: &SeparableCaseParams) -> Result<SeparableCaseReport> {
    if scalar::abs(p.r_a[2]) > 1e-12 {
        return Err(SeaError::OutOfClass(
            "the solved case requires r_{A,3} = 0".to_string(),
        ));
    }
    if !(0.0..=1.0).contains(&p.mu) {
        return Err(SeaError::OutOfClass("mu out of [0,1]".to_string()));
    }
    let r_bar_vec = scale3(p.r_a, p.mu);
    let r_bar = scalar::sqrt(dot3(r_bar_vec, r_bar_vec));
    if r_bar >= 1.0 - 1e-9 {
        return Err(SeaError::OutOfClass(
            "mu·|r_A| must stay below 1 for full support".to_string(),
        ));
    }
    let r_e = dot3(p.h_a, r_bar_vec);

    let (shorthand_a, shorthand_b) = if r_bar > 1e-12 {
        let l = scalar::ln((1.0 + r_bar) / (1.0 - r_bar));
        let base = scalar::ln((1.0 - r_bar * r_bar) / 16.0);
        (base + r_bar * l, base + l / r_bar)
    } else {
        // r̄ → 0: A → ln(1/16), B → ln(1/16) + 2
        (scalar::ln(1.0 / 16.0), scalar::ln(1.0 / 16.0) + 2.0)
    };

    let omega_cap_a = p.omega_a * p.omega_a * (1.0 - r_e * r_e);
    let omega_cap_b = p.omega_b * p.omega_b;
    let closed_multipliers_a = LocalMultipliers {
        omega: omega_cap_a,
        beta_1: p.omega_a * p.omega_a * (shorthand_a - shorthand_b * r_e * r_e)
            / (2.0 * omega_cap_a),
        beta_2: p.omega_a * r_e * (shorthand_a - shorthand_b) / (2.0 * omega_cap_a),
    };
    let closed_multipliers_b = LocalMultipliers {
        omega: omega_cap_b,
        beta_1: shorthand_a / 2.0,
        beta_2: 0.0,
    };

    // {D^A, ρ_A} = (A−B)/(4τ_A(1−r_e²)) [(r_e) h_A − r̄_A]·σ; {D^B, ρ_B} = 0
    let coeff = (shorthand_a - shorthand_b) / (4.0 * p.tau_a * (1.0 - r_e * r_e));
    let dir = [
        r_e * p.h_a[0] - r_bar_vec[0],
        r_e * p.h_a[1] - r_bar_vec[1],
        r_e * p.h_a[2] - r_bar_vec[2],
    ];
    let closed_bracket_a = qubit_hamiltonian(1.0, dir).into_matrix().scale_re(coeff);
    let closed_bracket_b = Matrix::zeros(2, 2);

    // numeric pipeline
    let rho = separable_mixed_state(p.mu, p.r_a)?;
    let state = CompositeState::new(
        rho,
        2,
        2,
        qubit_hamiltonian(p.omega_a, p.h_a),
        qubit_hamiltonian(p.omega_b, p.h_b),
    )?;
    let numeric_multipliers_a = composite_multipliers(&state, Subsystem::A)?;
    let numeric_multipliers_b = composite_multipliers(&state, Subsystem::B)?;
    let numeric_bracket_a = local_dissipator(&state, Subsystem::A, p.tau_a)?.anticommutator_form;
    let numeric_bracket_b = local_dissipator(&state, Subsystem::B, p.tau_b)?.anticommutator_form;

    let mut max_deviation = 0.0f64;
    for (c, n) in [
        (&closed_multipliers_a, &numeric_multipliers_a),
        (&closed_multipliers_b, &numeric_multipliers_b),
    ] {
        max_deviation = max_deviation
            .max(scalar::abs(c.omega - n.omega))
            .max(scalar::abs(c.beta_1 - n.beta_1))
            .max(scalar::abs(c.beta_2 - n.beta_2));
    }
    max_deviation = max_deviation
        .max((&closed_bracket_a - &numeric_bracket_a).frobenius_norm())
        .max((&closed_bracket_b - &numeric_bracket_b).frobenius_norm());
    if max_deviation > 1e-8 {
        return Err(SeaError::OutOfClass(format!(
            "closed forms deviate from the numeric pipeline by {max_deviation:.3e}"
        )));
    }

    Ok(SeparableCaseReport {
        shorthand_a,
        shorthand_b,
        closed_multipliers_a,
        closed_multipliers_b,
        numeric_multipliers_a,
        numeric_multipliers_b,
        closed_bracket_a,
        closed_bracket_b,
        numeric_bracket_a,
        numeric_bracket_b,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density, rng_from_seed};

    fn default_hams() -> (HermitianMatrix, HermitianMatrix) {
        (
            qubit_hamiltonian(5.0, [0.0, 0.0, 1.0]),
            qubit_hamiltonian(3.0, [0.0, 0.0, 1.0]),
        )
    }

    fn random_two_qubit(seed: u64) -> CompositeState {
        let mut rng = rng_from_seed(seed);
        let rho = random_density(4, &mut rng);
        let (ha, hb) = default_hams();
        CompositeState::new(rho, 2, 2, ha, hb).unwrap()
    }

    #[test]
    fn perception_identity() {
        // Tr[ρ_A (X)^A] = Tr[(ρ_A⊗ρ_B) X] = Tr[ρ_B (X)^B]
        let mut rng = rng_from_seed(1);
        for _ in 0..50 {
            let state = {
                let rho = random_density(4, &mut rng);
                let (ha, hb) = default_hams();
                CompositeState::new(rho, 2, 2, ha, hb).unwrap()
            };
            let x = crate::random::random_hermitian(4, &mut rng);
            let pa = perceive(&x, &state, Subsystem::A).unwrap();
            let pb = perceive(&x, &state, Subsystem::B).unwrap();
            let rho_a = state.reduced(Subsystem::A).unwrap();
            let rho_b = state.reduced(Subsystem::B).unwrap();
            let lhs = rho_a.matrix().trace_product(&pa.matrix).re;
            let mid = rho_a
                .matrix()
                .kron(rho_b.matrix())
                .trace_product(&x)
                .re;
            let rhs = rho_b.matrix().trace_product(&pb.matrix).re;
            assert!((lhs - mid).abs() < 1e-10);
            assert!((rhs - mid).abs() < 1e-10);
        }
    }

    #[test]
    fn perception_of_separable_observable_is_local() {
        // X = X_A ⊗ I_B reduces to X_A regardless of correlations
        let state = random_two_qubit(7);
        let mut rng = rng_from_seed(8);
        let x_a = crate::random::random_hermitian(2, &mut rng);
        let x = x_a.kron(&Matrix::identity(2));
        let p = perceive(&x, &state, Subsystem::A).unwrap();
        assert!((&p.matrix - &x_a).frobenius_norm() < 1e-12);
        // and the deviation reduces to the local version
        let d = deviation(&x, &state, Subsystem::A).unwrap();
        let rho_a = state.reduced(Subsystem::A).unwrap();
        let mean = rho_a.matrix().trace_product(&x_a).re;
        let mut local = x_a.clone();
        local.add_assign_scaled(&Matrix::identity(2), -mean);
        assert!((&d - &local).frobenius_norm() < 1e-12);
    }

    #[test]
    fn product_state_energy_identity() {
        // uncorrelated state: Tr[ρ_A (H)^A] = Tr(ρH)
        let mut rng = rng_from_seed(11);
        let rho_a = random_density(2, &mut rng);
        let rho_b = random_density(2, &mut rng);
        let rho = DensityMatrix::new(rho_a.matrix().kron(rho_b.matrix())).unwrap();
        let (ha, hb) = default_hams();
        let state = CompositeState::new(rho, 2, 2, ha, hb).unwrap();
        let h = state.total_hamiltonian();
        let p = perceive(h.matrix(), &state, Subsystem::A).unwrap();
        let lhs = rho_a.matrix().trace_product(&p.matrix).re;
        let rhs = h.expectation(state.rho().matrix());
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn bell_diagonal_construction() {
        let (ha, hb) = default_hams();
        // b = 0 is the maximally mixed state
        let s = bell_diagonal([0.0, 0.0, 0.0], ha.clone(), hb.clone()).unwrap();
        assert!(
            (s.rho().matrix() - DensityMatrix::maximally_mixed(4).matrix()).frobenius_norm()
                < 1e-14
        );
        // b = (−1,−1,−1) is a pure Bell state
        let s = bell_diagonal([-1.0, -1.0, -1.0], ha.clone(), hb.clone()).unwrap();
        assert!((s.rho().purity() - 1.0).abs() < 1e-12);
        let ra = s.reduced(Subsystem::A).unwrap();
        assert!(
            (ra.matrix() - DensityMatrix::maximally_mixed(2).matrix()).frobenius_norm() < 1e-12
        );
        // Werner w = 0.5 eigenvalues match the closed pattern
        let s = bell_diagonal([-0.5, -0.5, -0.5], ha.clone(), hb).unwrap();
        let mut expected = bell_diagonal_roots([-0.5, -0.5, -0.5]);
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (got, want) in s.rho().spectrum().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
        // outside the tetrahedron
        let (ha, hb) = default_hams();
        assert!(matches!(
            bell_diagonal([1.0, 1.0, 1.0], ha, hb),
            Err(SeaError::NotPositive { .. })
        ));
    }

    #[test]
    fn bell_diagonal_perceived_entropy_is_quarter_log_product() {
        // (Blnρ)^A = (L/4) I with L = ln(λ1λ2λ3λ4); forced by the perception
        // identity since every Bell projector reduces to I/2.
        let (ha, hb) = default_hams();
        let state = bell_diagonal([-0.5, -0.3, -0.4], ha, hb).unwrap();
        let l: f64 = state.rho().spectrum().iter().map(|&x| x.ln()).sum();
        let p = perceive(&bln_of(state.rho()), &state, Subsystem::A).unwrap();
        let expected = Matrix::identity(2).scale_re(l / 4.0);
        assert!((&p.matrix - &expected).frobenius_norm() < 1e-10);
    }

    #[test]
    fn bell_diagonal_multipliers_and_dissipator_vanish() {
        let (ha, hb) = default_hams();
        let state = bell_diagonal([-0.5, -0.5, -0.5], ha, hb).unwrap();
        let ma = composite_multipliers(&state, Subsystem::A).unwrap();
        let mb = composite_multipliers(&state, Subsystem::B).unwrap();
        assert!((ma.omega - 25.0).abs() < 1e-9, "Ω^A = ω_A²");
        assert!((mb.omega - 9.0).abs() < 1e-9, "Ω^B = ω_B²");
        assert!(ma.beta_2.abs() < 1e-10);
        assert!(mb.beta_2.abs() < 1e-10);
        let l: f64 = state.rho().spectrum().iter().map(|&x| x.ln()).sum();
        assert!((ma.beta_1 - l / 4.0).abs() < 1e-9);
        // the Bell family is non-dissipative: {F^J, ρ_J} = 0
        let da = local_dissipator(&state, Subsystem::A, 0.7).unwrap();
        let db = local_dissipator(&state, Subsystem::B, 0.7).unwrap();
        assert!(da.anticommutator_form.frobenius_norm() < 1e-10);
        assert!(db.anticommutator_form.frobenius_norm() < 1e-10);
        assert!(!da.input_was_product, "Werner states are correlated");
        // so the full motion is purely unitary
        let rhs = composite_rhs(&state, 0.7, 0.7).unwrap();
        let h = state.total_hamiltonian();
        let unitary_part =
            comm(h.matrix(), state.rho().matrix()).unwrap().scale(Complex64::new(0.0, -1.0));
        assert!((&rhs - &unitary_part).frobenius_norm() < 1e-10);
    }

    #[test]
    fn maximally_mixed_is_stationary() {
        let (ha, hb) = default_hams();
        let state = CompositeState::new(DensityMatrix::maximally_mixed(4), 2, 2, ha, hb).unwrap();
        let rhs = composite_rhs(&state, 1.0, 1.0).unwrap();
        assert!(rhs.frobenius_norm() < 1e-10);
    }

    #[test]
    fn separable_case_closed_forms_match_pipeline() {
        let params = SeparableCaseParams {
            mu: 0.7,
            r_a: [0.8, 0.3, 0.0],
            omega_a: 5.0,
            omega_b: 3.0,
            h_a: [1.0, 0.0, 0.0],
            h_b: [0.0, 0.0, 1.0],
            tau_a: 0.9,
            tau_b: 1.3,
        };
        let report = analytic_separable_case(&params).unwrap();
        assert!(report.max_deviation < 1e-8, "dev = {}", report.max_deviation);
        // subsystem B carries no dissipation in this case
        assert!(report.numeric_bracket_b.frobenius_norm() < 1e-10);
        assert!(report.numeric_multipliers_b.beta_2.abs() < 1e-10);
        // μ = 0 is the global maximally mixed state: everything vanishes
        let quiet = SeparableCaseParams { mu: 0.0, ..params.clone() };
        let report = analytic_separable_case(&quiet).unwrap();
        assert!(report.numeric_bracket_a.frobenius_norm() < 1e-12);
        assert!(report.numeric_bracket_b.frobenius_norm() < 1e-12);
        // class restriction enforced
        let bad = SeparableCaseParams { r_a: [0.5, 0.0, 0.2], ..params };
        assert!(matches!(analytic_separable_case(&bad), Err(SeaError::OutOfClass(_))));
    }

    #[test]
    fn separable_bloch_components() {
        // nonzero GGM components of μ(ρ_A⊗I/2) + noise: r_5 = r_8 = r̄_1/√6,
        // r_11 = r_14 = r̄_2/√6 (1-based indices)
        let mu = 0.6;
        let r_a = [0.5, 0.7, 0.0];
        let rho = separable_mixed_state(mu, r_a).unwrap();
        let basis = crate::bloch::make_ggm(4).unwrap();
        let b = crate::bloch::density_to_bloch(&rho, &basis).unwrap();
        let s6 = 6.0f64.sqrt();
        for (idx, expected) in [
            (4usize, mu * r_a[0] / s6),
            (7, mu * r_a[0] / s6),
            (10, mu * r_a[1] / s6),
            (13, mu * r_a[1] / s6),
        ] {
            assert!(
                (b.r_vec[idx] - expected).abs() < 1e-12,
                "component {idx}: {} vs {expected}",
                b.r_vec[idx]
            );
        }
        let nonzero: usize = b.r_vec.iter().filter(|x| x.abs() > 1e-12).count();
        assert_eq!(nonzero, 4);
    }

    #[test]
    fn product_states_reduce_to_single_system_motion() {
        let mut rng = rng_from_seed(29);
        let rho_a = random_density(2, &mut rng);
        let rho_b = random_density(2, &mut rng);
        let rho = DensityMatrix::new(rho_a.matrix().kron(rho_b.matrix())).unwrap();
        let (ha, hb) = default_hams();
        let state = CompositeState::new(rho, 2, 2, ha.clone(), hb.clone()).unwrap();
        let (tau_a, tau_b) = (0.8, 1.7);
        let rhs = composite_rhs(&state, tau_a, tau_b).unwrap();
        // reduced motion equals the isolated single-system equation
        let reduced_a = partial_trace(&rhs, 2, 2, Keep::A).unwrap();
        let cs_a = crate::sea::ConstraintSet::probability_energy(&ha);
        let single_a = crate::sea::sea_rhs(&rho_a, &cs_a, tau_a, &ha).unwrap();
        assert!((&reduced_a - &single_a).frobenius_norm() < 1e-9);
        let reduced_b = partial_trace(&rhs, 2, 2, Keep::B).unwrap();
        let cs_b = crate::sea::ConstraintSet::probability_energy(&hb);
        let single_b = crate::sea::sea_rhs(&rho_b, &cs_b, tau_b, &hb).unwrap();
        assert!((&reduced_b - &single_b).frobenius_norm() < 1e-9);
        assert!(local_dissipator(&state, Subsystem::A, tau_a).unwrap().input_was_product);
    }

    #[test]
    fn composite_rhs_is_conserving() {
        let state = random_two_qubit(31);
        let rhs = composite_rhs(&state, 0.9, 1.1).unwrap();
        assert!(rhs.trace().re.abs() < 1e-10);
        let h = state.total_hamiltonian();
        assert!(rhs.trace_product(h.matrix()).re.abs() < 1e-8);
    }

    #[test]
    fn no_signaling_passes_for_correlated_states() {
        let state = random_two_qubit(37);
        let report = no_signaling_check(&state, 10, 99, 0.8, 1.2).unwrap();
        assert_eq!(report.trials, 10);
        assert!(report.max_reduced_state_dev <= TOL_REDUCED_STATE);
        assert!(report.max_perception_dev <= TOL_PERCEPTION);
        assert!(report.max_reduced_rhs_dev <= TOL_REDUCED_RHS);
    }

    #[test]
    fn identity_rotation_changes_nothing() {
        // U_B = I: reduced state, perceived functions, and the reduced
        // motion are bit-for-bit untouched
        let state = random_two_qubit(59);
        let u_full = Matrix::identity(4);
        let rotated = u_full.matmul(state.rho().matrix()).matmul(&u_full.adjoint());
        assert_eq!(rotated.data(), state.rho().matrix().data());
        let bln = bln_of(state.rho());
        let p = perceive_raw(&bln, &rotated, 2, 2, Subsystem::A).unwrap();
        let p0 = perceive_raw(&bln, state.rho().matrix(), 2, 2, Subsystem::A).unwrap();
        assert_eq!(p.data(), p0.data());
        let rhs0 = composite_rhs(&state, 0.8, 1.2).unwrap();
        let rhs1 = composite_rhs(&state.with_rho(DensityMatrix::new(rotated).unwrap()).unwrap(), 0.8, 1.2)
            .unwrap();
        assert!((&rhs0 - &rhs1).frobenius_norm() < 1e-14);
    }

    #[test]
    fn separable_case_drives_subsystem_a_toward_maximally_mixed() {
        // with h_A ⊥ r_A the perceived energy is zero and the reduced motion
        // shrinks A's Bloch radius monotonically
        let params = SeparableCaseParams {
            mu: 0.8,
            r_a: [0.9, 0.0, 0.0],
            omega_a: 5.0,
            omega_b: 3.0,
            h_a: [0.0, 0.0, 1.0], // r_e = 0
            h_b: [0.0, 0.0, 1.0],
            tau_a: 1.0,
            tau_b: 1.0,
        };
        let report = analytic_separable_case(&params).unwrap();
        // dρ_A/dt = −{D^A, ρ_A} − i[…]; radial component along r̄·σ must shrink
        let r_bar = qubit_hamiltonian(1.0, [params.mu * 0.9, 0.0, 0.0]);
        let radial = -report.numeric_bracket_a.trace_product(r_bar.matrix()).re;
        assert!(radial < 0.0, "radius should decay, got d<r>/dt ∝ {radial}");
    }

    #[test]
    fn no_signaling_negative_control_is_detected() {
        // Flipping the sign of β^A_1 both leaks trace and couples the reduced
        // motion of A to Tr(ρ'_B H_B), which B controls: either the
        // reduced-rhs or the conservation sub-check must fire.
        let state = random_two_qubit(41);
        let (tau_a, tau_b) = (0.8, 1.2);
        let corrupted = |s: &CompositeState| -> Result<Matrix> {
            let h = s.total_hamiltonian();
            let mut rhs =
                comm(h.matrix(), s.rho().matrix())?.scale(Complex64::new(0.0, -1.0));
            let ma = composite_multipliers(s, Subsystem::A)?;
            let da = local_dissipator_with_multipliers(
                s,
                Subsystem::A,
                tau_a,
                -ma.beta_1, // sign flip
                ma.beta_2,
            )?;
            let rho_b = s.reduced(Subsystem::B)?;
            rhs.add_assign_scaled(&da.anticommutator_form.kron(rho_b.matrix()), -1.0);
            let db = local_dissipator(s, Subsystem::B, tau_b)?;
            let rho_a = s.reduced(Subsystem::A)?;
            rhs.add_assign_scaled(&rho_a.matrix().kron(&db.anticommutator_form), -1.0);
            Ok(rhs)
        };
        let res = no_signaling_check_with(&state, 10, 99, corrupted);
        match res {
            Err(SeaError::SignalDetected(report)) => {
                assert!(matches!(
                    report.check,
                    SignalCheck::ReducedRhs | SignalCheck::Conservation
                ));
            }
            other => panic!("expected SignalDetected, got {other:?}"),
        }
    }

    #[test]
    fn integration_keeps_product_states_product() {
        let mut rng = rng_from_seed(43);
        let rho_a = random_density(2, &mut rng);
        let rho_b = random_density(2, &mut rng);
        let rho = DensityMatrix::new(rho_a.matrix().kron(rho_b.matrix())).unwrap();
        let (ha, hb) = default_hams();
        let state = CompositeState::new(rho, 2, 2, ha, hb).unwrap();
        let tau = 0.9;
        let grid = alloc::vec![0.0, 0.5, 2.0];
        let traj = composite_integrate(&state, tau, tau, &grid, 1e-9).unwrap();
        for (_, s) in &traj {
            let ra = s.reduced(Subsystem::A).unwrap();
            let rb = s.reduced(Subsystem::B).unwrap();
            let product = ra.matrix().kron(rb.matrix());
            assert!((s.rho().matrix() - &product).frobenius_norm() < 1e-7);
        }
    }

    #[test]
    fn entropy_rate_is_nonnegative_and_matches_dissipative_flow() {
        let state = random_two_qubit(53);
        let rate = entropy_rate(&state, 0.8, 1.2).unwrap();
        assert!(rate >= -1e-9);
        // cross-check against −Tr((Blnρ + B) dρ_D/dt)
        let d = composite_dissipative_rhs(&state, 0.8, 1.2).unwrap();
        let b = SupportProjector::with_default_threshold(state.rho());
        let mut ln_plus_one = bln_of(state.rho());
        ln_plus_one.add_assign_scaled(b.matrix(), 1.0);
        let indep = -ln_plus_one.trace_product(&d).re;
        assert!((rate - indep).abs() < 1e-8, "{rate} vs {indep}");
    }
}
