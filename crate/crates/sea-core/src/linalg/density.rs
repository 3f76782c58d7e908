//! Validated Hermitian operator and density-matrix types with cached spectra,
//! support projectors, and spectral matrix functions.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::eigen::eigh;
use super::matrix::{Matrix, ZERO};
use crate::scalar;
use crate::{Result, SeaError};

/// Asymmetry accepted when constructing Hermitian operators.
pub const HERMITICITY_TOL: f64 = 1e-9;
/// Allowed deviation of Tr(ρ) from one at construction.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in [-CLAMP_TOL, 0) are clamped to zero; below is rejected.
pub const CLAMP_TOL: f64 = 1e-10;
/// Default support threshold: eigenvalues below count as exactly zero.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

/// Hermitian N×N operator. Construction symmetrizes exactly after validating
/// that the input deviates from Hermitian by at most `HERMITICITY_TOL`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    mat: Matrix,
}

impl HermitianMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(SeaError::DimensionMismatch { expected: m.rows(), found: m.cols() });
        }
        let dev = m.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(SeaError::NotHermitian { deviation: dev });
        }
        Ok(Self { mat: m.hermitize() })
    }

    pub fn identity(n: usize) -> Self {
        Self { mat: Matrix::identity(n) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { mat: Matrix::zeros(n, n) }
    }

    /// Real symmetric entries, row-major.
    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self> {
        Self::new(Matrix::from_real(n, entries))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    /// Real expectation value Tr(ρ·self) against any density-like matrix.
    pub fn expectation(&self, rho: &Matrix) -> f64 {
        self.mat.trace_product(rho).re
    }
}

/// Spectral decomposition of a Hermitian matrix: eigenvalues descending,
/// eigenvector columns unitary, deterministic phase convention.
pub fn spectral_decompose(m: &HermitianMatrix) -> Result<(Vec<f64>, Matrix)> {
    eigh(m.matrix())
}

/// Density matrix: Hermitian, unit trace, positive semidefinite, with the
/// spectral decomposition cached at construction. Eigenvalues in
/// [-1e-10, 0) are clamped to zero and the spectrum renormalized; entries are
/// rebuilt from the clamped spectrum so that the cached data reconstructs the
/// stored matrix exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: Matrix,
    spectrum: Vec<f64>,
    eigvecs: Matrix,
}

impl DensityMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let herm = HermitianMatrix::new(m)?;
        let trace = herm.matrix().trace().re;
        if scalar::abs(trace - 1.0) > TRACE_TOL {
            return Err(SeaError::TraceNotOne { trace });
        }
        let (mut vals, vecs) = eigh(herm.matrix())?;
        let min = vals.last().copied().unwrap_or(0.0);
        if min < -CLAMP_TOL {
            return Err(SeaError::NotPositive { min_eigenvalue: min });
        }
        let mut clamped = false;
        for v in &mut vals {
            if *v < 0.0 {
                *v = 0.0;
                clamped = true;
            }
        }
        let sum: f64 = vals.iter().sum();
        if scalar::abs(sum - 1.0) > 0.0 {
            for v in &mut vals {
                *v /= sum;
            }
            clamped = true;
        }
        let mat = if clamped {
            reconstruct(&vals, &vecs)
        } else {
            herm.into_matrix()
        };
        Ok(Self { mat, spectrum: vals, eigvecs: vecs })
    }

    /// Maximally mixed state I/N.
    pub fn maximally_mixed(n: usize) -> Self {
        Self::new(Matrix::identity(n).scale_re(1.0 / n as f64)).expect("I/N is a valid state")
    }

    /// Pure state |k⟩⟨k| in the standard basis.
    pub fn basis_state(n: usize, k: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        m[(k, k)] = Complex64::new(1.0, 0.0);
        Self::new(m).expect("basis projector is a valid state")
    }

    /// Diagonal state from a probability vector.
    pub fn from_probabilities(p: &[f64]) -> Result<Self> {
        Self::new(Matrix::diagonal_real(p))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// Eigenvalues, descending.
    #[inline]
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    /// Unitary eigenvector matrix (columns match `spectrum` order).
    #[inline]
    pub fn eigvecs(&self) -> &Matrix {
        &self.eigvecs
    }

    /// Rank at the given support threshold.
    pub fn rank(&self, threshold: f64) -> usize {
        self.spectrum.iter().filter(|&&l| l > threshold).count()
    }

    /// Purity Tr(ρ²).
    pub fn purity(&self) -> f64 {
        self.spectrum.iter().map(|l| l * l).sum()
    }

    /// Apply a scalar function over the spectrum: Σ f(λ_k) |v_k⟩⟨v_k|.
    pub fn map_spectrum(&self, mut f: impl FnMut(f64) -> f64) -> Matrix {
        let vals: Vec<f64> = self.spectrum.iter().map(|&l| f(l)).collect();
        reconstruct_with(&vals, &self.eigvecs)
    }
}

/// Support projector B: diagonal 0/1 operator in ρ's eigenbasis selecting
/// eigenvalues above the threshold. Idempotent and commuting with ρ.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportProjector {
    dim: usize,
    threshold: f64,
    mat: Matrix,
    rank: usize,
}

impl SupportProjector {
    pub fn of(rho: &DensityMatrix, threshold: f64) -> Self {
        let n = rho.dim();
        let vals: Vec<f64> = rho
            .spectrum()
            .iter()
            .map(|&l| if l > threshold { 1.0 } else { 0.0 })
            .collect();
        let rank = vals.iter().filter(|&&x| x == 1.0).count();
        let mat = reconstruct_with(&vals, rho.eigvecs());
        Self { dim: n, threshold, mat, rank }
    }

    pub fn with_default_threshold(rho: &DensityMatrix) -> Self {
        Self::of(rho, SUPPORT_THRESHOLD)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// ln ρ on the support, zero on the null space: Σ_{λ>threshold} ln λ |v⟩⟨v|.
pub fn matrix_log_supported(rho: &DensityMatrix, b: &SupportProjector) -> HermitianMatrix {
    let vals: Vec<f64> = rho
        .spectrum()
        .iter()
        .map(|&l| if l > b.threshold() { scalar::ln(l) } else { 0.0 })
        .collect();
    HermitianMatrix { mat: reconstruct_with(&vals, rho.eigvecs()) }
}

/// Eigenvalue-wise exponential of a Hermitian matrix.
pub fn matrix_exp(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    let (vals, vecs) = eigh(m.matrix())?;
    let evals: Vec<f64> = vals.iter().map(|&l| scalar::exp(l)).collect();
    Ok(HermitianMatrix { mat: reconstruct_with(&evals, &vecs) })
}

/// exp(−iHt); unitary to eigensolver accuracy.
pub fn unitary_exp(h: &HermitianMatrix, t: f64) -> Result<Matrix> {
    let (vals, vecs) = eigh(h.matrix())?;
    let phases: Vec<Complex64> = vals
        .iter()
        .map(|&e| {
            let theta = -e * t;
            Complex64::new(scalar::cos(theta), scalar::sin(theta))
        })
        .collect();
    let n = h.dim();
    let mut scaled = vecs.clone();
    for c in 0..n {
        for r in 0..n {
            scaled[(r, c)] *= phases[c];
        }
    }
    Ok(scaled.matmul(&vecs.adjoint()))
}

/// V diag(vals) V† for a real diagonal.
pub fn reconstruct(vals: &[f64], vecs: &Matrix) -> Matrix {
    reconstruct_with(vals, vecs)
}

fn reconstruct_with(vals: &[f64], vecs: &Matrix) -> Matrix {
    let n = vecs.rows();
    let mut out = Matrix::zeros(n, n);
    for (c, &l) in vals.iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        for r in 0..n {
            let vr = vecs[(r, c)] * l;
            if vr == ZERO {
                continue;
            }
            for r2 in 0..n {
                let add = vr * vecs[(r2, c)].conj();
                out[(r, r2)] += add;
            }
        }
    }
    out
}
