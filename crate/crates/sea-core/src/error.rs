use alloc::boxed::Box;
use alloc::string::String;

use crate::linalg::Matrix;

/// Errors surfaced by the state types and numerical kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeaError {
    #[error("matrix is not Hermitian (asymmetry {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not a valid density matrix: trace {trace:.17} differs from 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("Gram matrix of the constraint set is singular (det {det:.3e})")]
    SingularGram { det: f64 },

    #[error("initial state is not co-diagonal with the frozen constraint combination (off-diagonal norm {off_diagonal_norm:.3e})")]
    NotCodiagonal { off_diagonal_norm: f64 },

    #[error("state lies outside the analytically solved class: {0}")]
    OutOfClass(String),

    #[error("spectrum does not match the requested degeneracy pattern: {0}")]
    DegeneracyMismatch(String),

    #[error("reality conditions fail; quartic roots are complex ({0})")]
    ComplexRoots(String),

    #[error("parameter at the edge of the solution domain: {0}")]
    EdgeOfDomain(String),

    #[error("adaptive step size underflow at t = {t} (h = {h:.3e})")]
    StepSizeUnderflow { t: f64, h: f64 },

    #[error("eigensolver failed to converge within the iteration cap")]
    NoConvergence,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("local operation affected the other subsystem: {0}")]
    SignalDetected(Box<SignalReport>),
}

/// Details of a no-signaling violation: which trial and sub-check failed,
/// by how much, and the local unitary that exposed it.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalReport {
    pub trial: usize,
    pub check: SignalCheck,
    pub deviation: f64,
    pub tolerance: f64,
    pub unitary: Matrix,
}

/// Sub-checks of the no-signaling harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalCheck {
    /// Reduced state of the untouched subsystem changed.
    ReducedState,
    /// A locally perceived operator function changed.
    Perception,
    /// The reduced equation of motion changed.
    ReducedRhs,
    /// The reduced equation of motion leaks trace or energy.
    Conservation,
}

impl core::fmt::Display for SignalReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "trial {} failed {:?} (deviation {:.3e} > tolerance {:.3e})",
            self.trial, self.check, self.deviation, self.tolerance
        )
    }
}
