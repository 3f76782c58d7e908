//! Seeded random matrices and states for harnesses and tests.
//!
//! All sampling is driven by a portable counter-based generator so that a
//! master seed reproduces the same unitaries and states on every platform.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
pub use rand_core::RngCore;
use rand_core::SeedableRng;

use crate::linalg::{DensityMatrix, HermitianMatrix, Matrix};
use crate::scalar;

/// Deterministic RNG from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive the RNG for trial `index` from a master seed. Trials drawn this way
/// are independent of evaluation order.
pub fn rng_for_trial(master_seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(master_seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index + 1)))
}

/// Uniform f64 in [0, 1).
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal via Box-Muller.
pub fn standard_normal(rng: &mut impl RngCore) -> f64 {
    let u1 = loop {
        let u = uniform(rng);
        if u > 0.0 {
            break u;
        }
    };
    let u2 = uniform(rng);
    scalar::sqrt(-2.0 * scalar::ln(u1)) * scalar::cos(2.0 * core::f64::consts::PI * u2)
}

/// Complex standard Gaussian entry.
pub fn complex_normal(rng: &mut impl RngCore) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Ginibre matrix: i.i.d. complex Gaussian entries.
pub fn ginibre(n: usize, rng: &mut impl RngCore) -> Matrix {
    Matrix::from_fn(n, n, |_, _| complex_normal(rng))
}

/// Haar-distributed unitary via QR of a Ginibre matrix.
///
/// Modified Gram-Schmidt normalizes each column against a real positive R
/// diagonal, which is exactly the R-diagonal phase fix that makes the QR map
/// unique and its Q factor Haar-distributed.
pub fn haar_unitary(n: usize, rng: &mut impl RngCore) -> Matrix {
    let a = ginibre(n, rng);
    let mut q = a;
    for j in 0..n {
        for k in 0..j {
            let mut r = Complex64::new(0.0, 0.0);
            for i in 0..n {
                r += q[(i, k)].conj() * q[(i, j)];
            }
            for i in 0..n {
                let sub = r * q[(i, k)];
                q[(i, j)] -= sub;
            }
        }
        let norm = scalar::sqrt((0..n).map(|i| q[(i, j)].norm_sqr()).sum());
        if norm > 0.0 {
            for i in 0..n {
                q[(i, j)] /= norm;
            }
        }
    }
    q
}

/// Random Hermitian matrix (GUE-like, unnormalized).
pub fn random_hermitian(n: usize, rng: &mut impl RngCore) -> Matrix {
    let g = ginibre(n, rng);
    g.hermitize()
}

/// Random Hermitian wrapped in the validated type.
pub fn random_hermitian_operator(n: usize, rng: &mut impl RngCore) -> HermitianMatrix {
    HermitianMatrix::new(random_hermitian(n, rng)).expect("hermitized matrix is Hermitian")
}

/// Random full-rank density matrix: normalized G G† with a Ginibre G.
pub fn random_density(n: usize, rng: &mut impl RngCore) -> DensityMatrix {
    let g = ginibre(n, rng);
    let p = g.matmul(&g.adjoint());
    let tr = p.trace().re;
    DensityMatrix::new(p.scale_re(1.0 / tr)).expect("Wishart matrix is a valid state")
}

/// Random pure-state density matrix.
pub fn random_pure_density(n: usize, rng: &mut impl RngCore) -> DensityMatrix {
    let mut v: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
    let norm = scalar::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
    for z in &mut v {
        *z /= norm;
    }
    let m = Matrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
    DensityMatrix::new(m).expect("projector is a valid state")
}

/// Random real unit vector of dimension 3 (for Bloch/Hamiltonian directions).
pub fn random_unit3(rng: &mut impl RngCore) -> [f64; 3] {
    loop {
        let v = [standard_normal(rng), standard_normal(rng), standard_normal(rng)];
        let n = scalar::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if n > 1e-6 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_unitary_is_unitary_and_seeded() {
        let mut rng = rng_from_seed(42);
        let u = haar_unitary(5, &mut rng);
        let gram = u.adjoint().matmul(&u);
        assert!((&gram - &Matrix::identity(5)).frobenius_norm() < 1e-12);

        let mut rng2 = rng_from_seed(42);
        let u2 = haar_unitary(5, &mut rng2);
        assert_eq!(u.data(), u2.data());
    }

    #[test]
    fn trial_streams_are_decoupled() {
        let a = haar_unitary(3, &mut rng_for_trial(1, 0));
        let b = haar_unitary(3, &mut rng_for_trial(1, 1));
        assert!((&a - &b).frobenius_norm() > 1e-3);
    }

    #[test]
    fn random_density_is_valid() {
        let mut rng = rng_from_seed(9);
        let rho = random_density(4, &mut rng);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(rho.spectrum().iter().all(|&l| l >= 0.0));
    }
}
