//! Cross-module invariants on randomized inputs.

use proptest::prelude::*;

use sea_core::bloch::{bloch_to_density, density_to_bloch, make_ggm};
use sea_core::composite::{perceive, qubit_hamiltonian, CompositeState, Subsystem};
use sea_core::linalg::{
    matrix_log_supported, partial_trace, reconstruct, spectral_decompose, DensityMatrix,
    HermitianMatrix, Keep, Matrix, SupportProjector,
};
use sea_core::random::{
    haar_unitary, random_density, random_hermitian, random_hermitian_operator, rng_from_seed,
};
use sea_core::sea::{self, compute_multipliers, ConstraintSet};
use sea_core::Complex64;

fn trace_re(m: &Matrix) -> f64 {
    m.trace().re
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_is_adjoint_of_tensoring(seed in 0u64..1u64 << 48) {
        // Tr[(X_A ⊗ I_B) ρ] = Tr[X_A · Tr_B ρ]
        let mut rng = rng_from_seed(seed);
        let (da, db) = (2 + (seed % 3) as usize, 2 + (seed / 7 % 2) as usize);
        let rho = random_density(da * db, &mut rng);
        let x = random_hermitian(da, &mut rng);
        let lifted = x.kron(&Matrix::identity(db));
        let lhs = trace_re(&lifted.matmul(rho.matrix()));
        let reduced = partial_trace(rho.matrix(), da, db, Keep::A).unwrap();
        let rhs = trace_re(&x.matmul(&reduced));
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn partial_trace_sandwich_identity(seed in 0u64..1u64 << 48) {
        // Tr_A[(I_A ⊗ X_B) Z (I_A ⊗ Y_B)] = X_B · Tr_A(Z) · Y_B for any Z
        let mut rng = rng_from_seed(seed);
        let (da, db) = (2usize, 3usize);
        let z = Matrix::from_fn(da * db, da * db, |_, _| {
            Complex64::new(
                sea_core::random::standard_normal(&mut rng),
                sea_core::random::standard_normal(&mut rng),
            )
        });
        let x = random_hermitian(db, &mut rng);
        let y = random_hermitian(db, &mut rng);
        let lift = |m: &Matrix| Matrix::identity(da).kron(m);
        let lhs = partial_trace(&lift(&x).matmul(&z).matmul(&lift(&y)), da, db, Keep::B).unwrap();
        let rhs = x.matmul(&partial_trace(&z, da, db, Keep::B).unwrap()).matmul(&y);
        prop_assert!((&lhs - &rhs).frobenius_norm() < 1e-10);
    }

    #[test]
    fn density_matrices_are_valid_everywhere(seed in 0u64..1u64 << 48) {
        // every construction route yields Hermitian, unit-trace states with
        // spectrum in [0, 1] that reconstruct from cached spectral data
        let mut rng = rng_from_seed(seed);
        let n = 2 + (seed % 4) as usize;
        let candidates = [
            random_density(n, &mut rng),
            sea::quench(&random_density(n, &mut rng), 0.7).unwrap(),
            DensityMatrix::maximally_mixed(n),
        ];
        for rho in &candidates {
            prop_assert!(rho.matrix().hermiticity_deviation() < 1e-12);
            prop_assert!((trace_re(rho.matrix()) - 1.0).abs() < 1e-10);
            prop_assert!(rho.spectrum().iter().all(|&l| (-1e-10..=1.0 + 1e-10).contains(&l)));
            let recon = reconstruct(rho.spectrum(), rho.eigvecs());
            prop_assert!((&recon - rho.matrix()).frobenius_norm() < 1e-10);
            let s = sea::entropy(rho);
            prop_assert!(s >= -1e-12 && s <= (n as f64).ln() + 1e-12);
        }
    }

    #[test]
    fn bloch_roundtrip_and_purity(seed in 0u64..1u64 << 48, n in 2usize..5) {
        let basis = make_ggm(n).unwrap();
        let mut rng = rng_from_seed(seed);
        let rho = random_density(n, &mut rng);
        let b = density_to_bloch(&rho, &basis).unwrap();
        let back = bloch_to_density(&b, &basis).unwrap();
        prop_assert!((back.matrix() - rho.matrix()).frobenius_norm() < 1e-12);
        let r = b.r();
        let purity = rho.purity();
        prop_assert!((purity - (1.0 + (n as f64 - 1.0) * r * r) / n as f64).abs() < 1e-10);
    }

    #[test]
    fn multiplier_residual_is_small(seed in 0u64..1u64 << 48) {
        // the solved β satisfy the constraint system to 1e−8
        let mut rng = rng_from_seed(seed);
        let n = 2 + (seed % 5) as usize;
        let rho = random_density(n, &mut rng);
        let h = random_hermitian_operator(n, &mut rng);
        let cs = ConstraintSet::probability_energy(&h);
        let m = compute_multipliers(&rho, &cs).unwrap();
        // x = (β_I, −β_H): G x = b
        let x = [m.beta_i(), -m.beta_h()];
        let b_proj = SupportProjector::with_default_threshold(&rho);
        let log = matrix_log_supported(&rho, &b_proj);
        let gens = cs.generators();
        for i in 0..2 {
            let ci = gens[i].matrix();
            let b_i = trace_re(&rho.matrix().matmul(ci).matmul(log.matrix()));
            let mut lhs = 0.0;
            for (j, xj) in x.iter().enumerate() {
                let cj = gens[j].matrix();
                lhs += xj * trace_re(&rho.matrix().matmul(ci).matmul(cj));
            }
            prop_assert!((lhs - b_i).abs() < 1e-8, "residual {}", lhs - b_i);
        }
    }
}

#[test]
fn perception_identity_500_pairs() {
    // Tr[ρ_A (X)^A] = Tr[(ρ_A ⊗ ρ_B) X] = Tr[ρ_B (X)^B]
    let mut rng = rng_from_seed(2026);
    let h_a = qubit_hamiltonian(5.0, [0.0, 0.0, 1.0]);
    let h_b = qubit_hamiltonian(3.0, [0.0, 0.0, 1.0]);
    for _ in 0..500 {
        let state =
            CompositeState::new(random_density(4, &mut rng), 2, 2, h_a.clone(), h_b.clone())
                .unwrap();
        let x = random_hermitian(4, &mut rng);
        let pa = perceive(&x, &state, Subsystem::A).unwrap();
        let pb = perceive(&x, &state, Subsystem::B).unwrap();
        let rho_a = state.reduced(Subsystem::A).unwrap();
        let rho_b = state.reduced(Subsystem::B).unwrap();
        let mid = trace_re(&rho_a.matrix().kron(rho_b.matrix()).matmul(&x));
        let lhs = trace_re(&rho_a.matrix().matmul(&pa.matrix));
        let rhs = trace_re(&rho_b.matrix().matmul(&pb.matrix));
        assert!((lhs - mid).abs() < 1e-10);
        assert!((rhs - mid).abs() < 1e-10);
    }
}

#[test]
fn dissipative_direction_orthogonal_in_sqrt_rho_space() {
    // With γ = √ρ, Ψ_i = 2C_iγ, Φ = −2(Blnρ + B)γ and the inner product
    // ⟨A,B⟩ = Tr(A†B + B†A)/2, the component of Φ orthogonal to span{Ψ_i}
    // is exactly what the multipliers remove: ⟨Ψ_i, Φ − Σ_j c_j Ψ_j⟩ = 0
    // with c = −(x + e_1).
    let mut rng = rng_from_seed(4096);
    for _ in 0..25 {
        let n = 3 + (sea_core::random::uniform(&mut rng) * 3.0) as usize;
        let rho = random_density(n, &mut rng);
        let h = random_hermitian_operator(n, &mut rng);
        let cs = ConstraintSet::probability_energy(&h);
        let m = compute_multipliers(&rho, &cs).unwrap();
        let x = [m.beta_i(), -m.beta_h()];
        let c = [-x[0] - 1.0, -x[1]];

        let gamma = rho.map_spectrum(|l| l.max(0.0).sqrt());
        let b = SupportProjector::with_default_threshold(&rho);
        let log = matrix_log_supported(&rho, &b);
        let mut ln_plus_b = log.into_matrix();
        ln_plus_b.add_assign_scaled(b.matrix(), 1.0);
        let phi = ln_plus_b.matmul(&gamma).scale_re(-2.0);
        let psis: Vec<Matrix> = cs
            .generators()
            .iter()
            .map(|g| g.matrix().matmul(&gamma).scale_re(2.0))
            .collect();
        let mut perp = phi;
        for (j, psi) in psis.iter().enumerate() {
            perp.add_assign_scaled(psi, -c[j]);
        }
        let inner = |a: &Matrix, bm: &Matrix| -> f64 {
            0.5 * (a.adjoint().matmul(bm).trace() + bm.adjoint().matmul(a).trace()).re
        };
        for psi in &psis {
            assert!(inner(psi, &perp).abs() < 1e-8, "overlap {}", inner(psi, &perp));
        }
    }
}

#[test]
fn spectral_decompose_rejects_asymmetry() {
    let mut m = Matrix::identity(3);
    m[(0, 1)] = Complex64::new(0.5, 0.0);
    assert!(HermitianMatrix::new(m).is_err());
    // and on a valid operator returns a faithful factorization
    let mut rng = rng_from_seed(11);
    let h = random_hermitian_operator(4, &mut rng);
    let (vals, vecs) = spectral_decompose(&h).unwrap();
    let recon = reconstruct(&vals, &vecs);
    assert!((&recon - h.matrix()).frobenius_norm() < 1e-11);
    // unitary transform preserves the spectrum
    let u = haar_unitary(4, &mut rng);
    let rotated = HermitianMatrix::new(u.matmul(h.matrix()).matmul(&u.adjoint())).unwrap();
    let (vals2, _) = spectral_decompose(&rotated).unwrap();
    for (a, b) in vals.iter().zip(&vals2) {
        assert!((a - b).abs() < 1e-11);
    }
}
