//! Steepest-entropy-ascent (SEA) dynamics for finite-level quantum systems.
//!
//! The crate is organized around a small dense complex-matrix kernel with a
//! deterministic Hermitian eigensolver ([`linalg`]), on top of which sit:
//!
//! - [`bloch`] — generalized Gell-Mann parametrization, characteristic-polynomial
//!   invariants, and analytic eigenvalue roots for N = 2, 3, 4;
//! - [`sea`] — the single-system SEA equation of motion, Lagrange multipliers,
//!   a reference adaptive integrator, the exact equatorial-qubit solution, and
//!   the fixed-multiplier (FLM) closed-form solver;
//! - [`qwalk`] — continuous-time quantum walks on graphs and their SEA
//!   relaxation, entropy-production functional, and parameter sweeps;
//! - [`composite`] — bipartite SEA dynamics built from local perception
//!   operators, closed-form reference cases, and a no-signaling harness.
//!
//! Units: ħ = k_B = 1 throughout. All state types are immutable after
//! construction and safe to share across threads.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bloch;
pub mod composite;
mod error;
pub mod linalg;
pub mod ode;
pub mod qwalk;
pub mod random;
mod scalar;
pub mod sea;

pub use error::SeaError;
pub use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, SeaError>;
