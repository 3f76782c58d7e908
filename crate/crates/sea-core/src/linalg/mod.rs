//! Hermitian-matrix numerics: dense complex matrices, a deterministic
//! eigensolver, validated operator/state types, spectral matrix functions,
//! and tensor algebra (Kronecker products, partial traces).

mod density;
mod eigen;
mod matrix;

pub use density::{
    matrix_exp, matrix_log_supported, reconstruct, spectral_decompose, unitary_exp,
    DensityMatrix, HermitianMatrix, SupportProjector, CLAMP_TOL, HERMITICITY_TOL,
    SUPPORT_THRESHOLD, TRACE_TOL,
};
pub use eigen::eigh;
pub use matrix::{acomm, comm, partial_trace, Keep, Matrix};
