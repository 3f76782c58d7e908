//! Generalized Gell-Mann (GGM) Bloch parametrization for N-level systems.
//!
//! Basis construction with structure constants, the Bloch ↔ density maps,
//! characteristic-polynomial coefficients via Newton's identities on power
//! traces, closed-form eigenvalue roots for the solved N = 3 and N = 4
//! families, and operator functions on degenerate spectra in the I/Γ split
//! form.
//!
//! The map r ↦ ρ is not surjective onto the unit ball for N > 2; positivity
//! is always verified by eigendecomposition after the fact.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{DensityMatrix, HermitianMatrix, Matrix};
use crate::scalar;
use crate::{Result, SeaError};

mod dd {
    //! Minimal double-double arithmetic for cancellation-prone scalar
    //! combinations (the quartic-resolvent coefficients).

    #[derive(Debug, Clone, Copy)]
    pub struct Dd {
        pub hi: f64,
        pub lo: f64,
    }

    #[inline]
    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    #[inline]
    fn two_prod(a: f64, b: f64) -> Dd {
        let p = a * b;
        let err = fma(a, b, -p);
        Dd { hi: p, lo: err }
    }

    #[inline]
    fn fma(a: f64, b: f64, c: f64) -> f64 {
        #[cfg(any(test, feature = "std"))]
        {
            a.mul_add(b, c)
        }
        #[cfg(not(any(test, feature = "std")))]
        {
            libm::fma(a, b, c)
        }
    }

    impl Dd {
        pub fn from(x: f64) -> Self {
            Dd { hi: x, lo: 0.0 }
        }

        pub fn add(self, other: Dd) -> Dd {
            let s = two_sum(self.hi, other.hi);
            let lo = s.lo + self.lo + other.lo;
            let r = two_sum(s.hi, lo);
            Dd { hi: r.hi, lo: r.lo }
        }

        pub fn sub(self, other: Dd) -> Dd {
            self.add(Dd { hi: -other.hi, lo: -other.lo })
        }

        pub fn mul(self, other: Dd) -> Dd {
            let p = two_prod(self.hi, other.hi);
            let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
            let r = two_sum(p.hi, lo);
            Dd { hi: r.hi, lo: r.lo }
        }

        pub fn scale(self, s: f64) -> Dd {
            self.mul(Dd::from(s))
        }

        pub fn value(self) -> f64 {
            self.hi + self.lo
        }
    }
}

use dd::Dd;

/// Generalized Gell-Mann basis for SU(N): N−1 diagonal generators, then the
/// symmetric and antisymmetric pair generators in (i < j) lexicographic
/// order. Structure constants satisfy Tr(Γ_i Γ_j Γ_k) = 2(g_ijk + i f_ijk).
#[derive(Debug, Clone)]
pub struct GgmBasis {
    dim: usize,
    generators: Vec<HermitianMatrix>,
    sym_constants: Vec<f64>,
    antisym_constants: Vec<f64>,
}

/// Build the GGM basis for an N-level system (N ≥ 2).
pub fn make_ggm(n: usize) -> Result<GgmBasis> {
    if n < 2 {
        return Err(SeaError::InvalidArgument("GGM basis needs N >= 2".to_string()));
    }
    let mut generators = Vec::with_capacity(n * n - 1);
    // diagonal: Γ_ℓ = √(2/(ℓ(ℓ+1))) (Σ_{j≤ℓ} P_jj − ℓ P_{ℓ+1,ℓ+1})
    for l in 1..n {
        let norm = scalar::sqrt(2.0 / (l as f64 * (l + 1) as f64));
        let mut m = Matrix::zeros(n, n);
        for j in 0..l {
            m[(j, j)] = Complex64::new(norm, 0.0);
        }
        m[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        generators.push(HermitianMatrix::new(m)?);
    }
    // symmetric pairs: P(j,i) + P(i,j)
    for i in 0..n {
        for j in i + 1..n {
            let mut m = Matrix::zeros(n, n);
            m[(i, j)] = Complex64::new(1.0, 0.0);
            m[(j, i)] = Complex64::new(1.0, 0.0);
            generators.push(HermitianMatrix::new(m)?);
        }
    }
    // antisymmetric pairs: i(P(j,i) − P(i,j))
    for i in 0..n {
        for j in i + 1..n {
            let mut m = Matrix::zeros(n, n);
            m[(i, j)] = Complex64::new(0.0, -1.0);
            m[(j, i)] = Complex64::new(0.0, 1.0);
            generators.push(HermitianMatrix::new(m)?);
        }
    }

    let count = generators.len();
    let mut sym = alloc::vec![0.0; count * count * count];
    let mut antisym = alloc::vec![0.0; count * count * count];
    // z_ijk = Tr(Γ_i Γ_j Γ_k)/2 = g_ijk + i f_ijk
    let mut products = Vec::with_capacity(count * count);
    for gi in &generators {
        for gj in &generators {
            products.push(gi.matrix().matmul(gj.matrix()));
        }
    }
    for i in 0..count {
        for j in 0..count {
            let pij = &products[i * count + j];
            for (k, gk) in generators.iter().enumerate() {
                let z = pij.trace_product(gk.matrix());
                sym[(i * count + j) * count + k] = 0.5 * z.re;
                antisym[(i * count + j) * count + k] = 0.5 * z.im;
            }
        }
    }
    Ok(GgmBasis { dim: n, generators, sym_constants: sym, antisym_constants: antisym })
}

impl GgmBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, N² − 1.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generators(&self) -> &[HermitianMatrix] {
        &self.generators
    }

    /// Symmetric structure constant g_ijk.
    pub fn g(&self, i: usize, j: usize, k: usize) -> f64 {
        let m = self.len();
        self.sym_constants[(i * m + j) * m + k]
    }

    /// Antisymmetric structure constant f_ijk.
    pub fn f(&self, i: usize, j: usize, k: usize) -> f64 {
        let m = self.len();
        self.antisym_constants[(i * m + j) * m + k]
    }
}

/// Real Bloch coordinates of an N-level state: ρ = (1/N)(I + √(N(N−1)/2) r·Γ).
#[derive(Debug, Clone, PartialEq)]
pub struct BlochState {
    pub dim: usize,
    pub r_vec: Vec<f64>,
}

impl BlochState {
    pub fn new(dim: usize, r_vec: Vec<f64>) -> Result<Self> {
        if r_vec.len() != dim * dim - 1 {
            return Err(SeaError::DimensionMismatch {
                expected: dim * dim - 1,
                found: r_vec.len(),
            });
        }
        Ok(Self { dim, r_vec })
    }

    /// Euclidean norm r of the Bloch vector.
    pub fn r(&self) -> f64 {
        scalar::sqrt(self.r_vec.iter().map(|x| x * x).sum())
    }
}

/// ρ = (1/N)(I + √(N(N−1)/2) r·Γ). Positivity is not guaranteed by r ≤ 1 for
/// N > 2 and is checked by eigendecomposition.
pub fn bloch_to_density(b: &BlochState, basis: &GgmBasis) -> Result<DensityMatrix> {
    if b.dim != basis.dim() {
        return Err(SeaError::DimensionMismatch { expected: basis.dim(), found: b.dim });
    }
    let n = b.dim;
    let coeff = scalar::sqrt(n as f64 * (n as f64 - 1.0) / 2.0);
    let mut m = Matrix::identity(n);
    for (r_i, gamma) in b.r_vec.iter().zip(basis.generators()) {
        if *r_i != 0.0 {
            m.add_assign_scaled(gamma.matrix(), coeff * r_i);
        }
    }
    DensityMatrix::new(m.scale_re(1.0 / n as f64))
}

/// Inverse Bloch map: r_i = N·Tr(ρ Γ_i) / (2√(N(N−1)/2)).
pub fn density_to_bloch(rho: &DensityMatrix, basis: &GgmBasis) -> Result<BlochState> {
    if rho.dim() != basis.dim() {
        return Err(SeaError::DimensionMismatch { expected: basis.dim(), found: rho.dim() });
    }
    let n = rho.dim();
    let coeff = scalar::sqrt(n as f64 * (n as f64 - 1.0) / 2.0);
    let r_vec: Vec<f64> = basis
        .generators()
        .iter()
        .map(|g| n as f64 * rho.matrix().trace_product(g.matrix()).re / (2.0 * coeff))
        .collect();
    BlochState::new(n, r_vec)
}

/// Characteristic-polynomial coefficients det(λI − ρ) = Σ (−1)^i a_i λ^{N−i}.
///
/// a_i ≥ 0 for all i iff the spectrum is nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPolyCoeffs {
    /// a_0 ..= a_N.
    pub coeffs: Vec<f64>,
}

impl CharPolyCoeffs {
    pub fn a(&self, i: usize) -> f64 {
        self.coeffs[i]
    }

    /// Positivity predicate: every coefficient nonnegative within `tol`.
    pub fn all_nonnegative(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|&a| a >= -tol)
    }
}

/// Coefficients from power traces via Newton's identities:
/// k·a_k = Σ_{i=1..k} (−1)^{i−1} Tr(ρ^i) a_{k−i}.
///
/// Power traces come from actual matrix products, independent of the cached
/// spectrum.
pub fn char_poly_coeffs(rho: &DensityMatrix) -> CharPolyCoeffs {
    let n = rho.dim();
    let mut power_traces = Vec::with_capacity(n + 1);
    power_traces.push(0.0); // index 0 unused
    let mut p = rho.matrix().clone();
    power_traces.push(p.trace().re);
    for _ in 2..=n {
        p = p.matmul(rho.matrix());
        power_traces.push(p.trace().re);
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    for k in 1..=n {
        let mut acc = 0.0;
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * power_traces[i] * coeffs[k - i];
        }
        coeffs.push(acc / k as f64);
    }
    CharPolyCoeffs { coeffs }
}

/// Bloch radius from purity: r² = (N·Tr(ρ²) − 1)/(N − 1).
pub fn bloch_radius(rho: &DensityMatrix) -> f64 {
    let n = rho.dim() as f64;
    let p = rho.matrix().trace_product(rho.matrix()).re;
    scalar::sqrt(((n * p - 1.0) / (n - 1.0)).max(0.0))
}

/// Closed-form qutrit roots on the degenerate family:
/// λ = ((1+2r)/3, (1−r)/3, (1−r)/3).
pub fn qutrit_roots(r: f64) -> Result<[f64; 3]> {
    if !(0.0..=1.0).contains(&r) {
        return Err(SeaError::InvalidArgument("r out of [0,1]".to_string()));
    }
    Ok([(1.0 + 2.0 * r) / 3.0, (1.0 - r) / 3.0, (1.0 - r) / 3.0])
}

/// Qutrit roots for a concrete state, verifying it lies on the solved family
/// (the realness condition is a runtime class check, not a closed-form
/// predicate on the Bloch direction).
pub fn qutrit_roots_for(rho: &DensityMatrix) -> Result<[f64; 3]> {
    if rho.dim() != 3 {
        return Err(SeaError::DimensionMismatch { expected: 3, found: rho.dim() });
    }
    let r = bloch_radius(rho);
    let roots = qutrit_roots(r.min(1.0))?;
    let spec = rho.spectrum();
    let dev = spec
        .iter()
        .zip(&roots)
        .map(|(s, t)| scalar::abs(s - t))
        .fold(0.0, f64::max);
    if dev > 1e-8 {
        return Err(SeaError::OutOfClass(format!(
            "spectrum deviates from the degenerate qutrit family by {dev:.3e}"
        )));
    }
    Ok(roots)
}

/// Resolvent parameters of the solved quartic families.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticRootParams {
    pub r: f64,
    pub alpha_1: f64,
    pub alpha_2: f64,
    pub alpha_3: f64,
    pub alpha_4: f64,
    /// Real part when the resolvent falls in the casus irreducibilis.
    pub alpha_5: f64,
    pub alpha_6: f64,
    pub alpha_7: f64,
    /// True when α_6² − α_7³ < 0 and the cube root was taken in ℂ.
    pub casus_irreducibilis: bool,
}

impl QuarticRootParams {
    /// Left-hand sides of the positivity conditions
    /// (2³a_2, 2⁴a_3, 2⁸a_4 in resolvent variables); all ≥ 0 iff λ ≥ 0.
    pub fn positivity_conditions(&self) -> [f64; 3] {
        let r2 = self.r * self.r;
        let a1 = self.alpha_1;
        let a2 = self.alpha_2;
        [
            3.0 * (1.0 - r2),
            a1 * a2 + 1.0 - 3.0 * r2,
            4.0 * a1 * a1 * (a1 * a1 - 3.0 * r2) + 4.0 * a1 * a2 - a2 * a2
                + (3.0 * r2 - 1.0) * (3.0 * r2 - 1.0),
        ]
    }
}

/// Evaluate the quartic root expressions from resolvent parameters:
/// 4λ = 1 ∓ α_1 ∓ √(3r² − α_1² ∓ α_2) in the labeled pattern.
pub fn quartic_root_formulas(r: f64, alpha_1: f64, alpha_2: f64) -> Result<[f64; 4]> {
    let r2 = r * r;
    let mut arg1 = 3.0 * r2 - alpha_1 * alpha_1 - alpha_2;
    let mut arg2 = 3.0 * r2 - alpha_1 * alpha_1 + alpha_2;
    let scale = 3.0 * r2 + alpha_1 * alpha_1 + scalar::abs(alpha_2);
    let tol = 1e-9 * (1.0 + scale);
    if arg1 < -tol || arg2 < -tol {
        return Err(SeaError::ComplexRoots(format!(
            "root arguments ({arg1:.3e}, {arg2:.3e}) are negative"
        )));
    }
    // Arguments at the roundoff floor are exact degeneracies; a square root
    // of the noise would split the pair by ~1e-8 for no reason.
    let snap = 1e-13 * (1.0 + scale);
    if scalar::abs(arg1) < snap {
        arg1 = 0.0;
    }
    if scalar::abs(arg2) < snap {
        arg2 = 0.0;
    }
    let s1 = scalar::sqrt(arg1.max(0.0));
    let s2 = scalar::sqrt(arg2.max(0.0));
    Ok([
        (1.0 - alpha_1 - s1) / 4.0,
        (1.0 + alpha_1 + s2) / 4.0,
        (1.0 + alpha_1 - s2) / 4.0,
        (1.0 - alpha_1 + s1) / 4.0,
    ])
}

/// Analytic quartic eigenvalues from the invariants (r, a_3, a_4).
///
/// The resolvent cubic ỹ³ − α_4 ỹ − 2α_6 = 0 in ỹ = r²α_3 is solved by
/// Cardano with the principal branch; when α_6² − α_7³ < 0 the conjugate
/// complex cube roots recombine to the real root 2·Re(α_5^{1/3}) (the real
/// cube root is used when α_5 is negative real). The cancellation-prone
/// coefficient combinations are evaluated in double-double arithmetic.
///
/// Near-degenerate resolvents are intrinsically ill-conditioned in these
/// scalar invariants; for the fully solved families prefer
/// [`quartic_roots_class1`] / [`quartic_roots_class2`], which invert the
/// class structure directly.
pub fn quartic_roots(r: f64, a3: f64, a4: f64) -> Result<([f64; 4], QuarticRootParams)> {
    if !(0.0..=1.0 + 1e-12).contains(&r) {
        return Err(SeaError::InvalidArgument("r out of [0,1]".to_string()));
    }
    if r < 1e-12 {
        // maximally mixed state: every α_j vanishes
        let params = QuarticRootParams {
            r,
            alpha_1: 0.0,
            alpha_2: 0.0,
            alpha_3: 0.0,
            alpha_4: 0.0,
            alpha_5: 0.0,
            alpha_6: 0.0,
            alpha_7: 0.0,
            casus_irreducibilis: false,
        };
        return Ok(([0.25; 4], params));
    }

    let r2d = Dd::from(r).mul(Dd::from(r));
    let one_minus = Dd::from(1.0).sub(r2d);
    // α_4 = 2⁸a_4 − 2⁶a_3 + 3(1−r²)²
    let alpha4_dd = Dd::from(256.0 * a4)
        .sub(Dd::from(64.0 * a3))
        .add(one_minus.mul(one_minus).scale(3.0));
    // α_6 = 2⁸a_4r² + 2⁸a_3² − 2⁵a_3(1−r²) + (1−r²)³
    let alpha6_dd = Dd::from(256.0 * a4)
        .mul(r2d)
        .add(Dd::from(a3).mul(Dd::from(a3)).scale(256.0))
        .sub(one_minus.mul(Dd::from(32.0 * a3)))
        .add(one_minus.mul(one_minus).mul(one_minus));
    let alpha7_dd = alpha4_dd.scale(1.0 / 3.0);
    let disc_dd = alpha6_dd
        .mul(alpha6_dd)
        .sub(alpha7_dd.mul(alpha7_dd).mul(alpha7_dd));

    let alpha4 = alpha4_dd.value();
    let alpha6 = alpha6_dd.value();
    let alpha7 = alpha7_dd.value();
    let disc = disc_dd.value();
    let r2 = r2d.value();

    let (y, alpha5, casus) = if disc >= 0.0 {
        let root = scalar::sqrt(disc);
        let s = if alpha6 >= 0.0 { alpha6 + root } else { alpha6 - root };
        if s == 0.0 {
            (0.0, 0.0, false)
        } else {
            let c = scalar::cbrt(s);
            (c + alpha7 / c, alpha6 + root, false)
        }
    } else {
        // conjugate cube roots recombine: |w|² = α_7 exactly
        let im = scalar::sqrt(-disc);
        let mag = scalar::powf(scalar::hypot(alpha6, im), 1.0 / 3.0);
        let theta = atan2(im, alpha6) / 3.0;
        (2.0 * mag * scalar::cos(theta), alpha6, true)
    };
    let alpha3 = y / r2;
    let alpha1 = scalar::sqrt((0.5 * y + r2).max(0.0));

    // α_2: Cramer form when α_1 is safely away from zero, otherwise the
    // magnitude from the a_4 relation with the sign carried by the numerator.
    let num_dd = Dd::from(16.0 * a3).add(r2d.scale(3.0)).sub(Dd::from(1.0));
    let num = num_dd.value();
    let alpha2 = if alpha1 > 1e-6 {
        num / alpha1
    } else {
        let d2 = 4.0 * alpha1 * alpha1 * (1.0 + alpha1 * alpha1 - 3.0 * r2) - 256.0 * a4
            + (3.0 * r2 - 1.0) * (3.0 * r2 - 1.0);
        let mag = scalar::sqrt(d2.max(0.0));
        let sign = if num >= 0.0 { 1.0 } else { -1.0 };
        2.0 * alpha1 + sign * mag
    };

    let roots = quartic_root_formulas(r, alpha1, alpha2)?;
    let params = QuarticRootParams {
        r,
        alpha_1: alpha1,
        alpha_2: alpha2,
        alpha_3: alpha3,
        alpha_4: alpha4,
        alpha_5: alpha5,
        alpha_6: alpha6,
        alpha_7: alpha7,
        casus_irreducibilis: casus,
    };
    Ok((roots, params))
}

/// Quartic roots on the triple-degenerate family (λ1 = λ3 = λ4): the class
/// structure fixes |α_1| = r and α_2 = 2r² exactly, leaving only the sign of
/// α_1 to the cubic invariant 16a_3 − 1 + 3r² = 2α_1³.
pub fn quartic_roots_class1(r: f64, a3: f64) -> Result<[f64; 4]> {
    let r2d = Dd::from(r).mul(Dd::from(r));
    let s = Dd::from(16.0 * a3).add(r2d.scale(3.0)).sub(Dd::from(1.0)).value();
    let alpha1 = if s >= 0.0 { r } else { -r };
    quartic_root_formulas(r, alpha1, 2.0 * r * r)
}

/// Quartic roots on the pairwise-degenerate family (λ1 = λ4, λ2 = λ3):
/// α_1 = √3·r, α_2 = 0.
pub fn quartic_roots_class2(r: f64) -> Result<[f64; 4]> {
    quartic_root_formulas(r, scalar::sqrt(3.0) * r, 0.0)
}

fn atan2(y: f64, x: f64) -> f64 {
    #[cfg(any(test, feature = "std"))]
    {
        y.atan2(x)
    }
    #[cfg(not(any(test, feature = "std")))]
    {
        libm::atan2(y, x)
    }
}

/// Degenerate spectral classes on which F(ρ) collapses to two projectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateClass {
    /// Any qubit with distinct eigenvalues.
    N2,
    /// Qutrit family (λ1, λ2, λ2) with λ1 the larger value.
    N3,
    /// Four-level state with exactly two distinct eigenvalues.
    N4TwoEigenvalue,
}

/// Operator function in the I/Γ split: trace part c·I plus a traceless
/// remainder.
#[derive(Debug, Clone)]
pub struct SpectralSplit {
    /// Coefficient of the identity.
    pub trace_coefficient: f64,
    /// Traceless Hermitian remainder.
    pub traceless: HermitianMatrix,
}

impl SpectralSplit {
    pub fn full(&self) -> HermitianMatrix {
        let n = self.traceless.dim();
        let mut m = self.traceless.matrix().clone();
        m.add_assign_scaled(&Matrix::identity(n), self.trace_coefficient);
        HermitianMatrix::new(m).expect("sum of Hermitians")
    }
}

/// F(ρ) = F(λ1)P_1 + F(λ2)P_2 on a two-eigenvalue spectrum, computed through
/// the affine projector identity P_1 = (ρ − λ2 I)/(λ1 − λ2) rather than the
/// eigenvectors.
pub fn fn_of_rho_degenerate(
    rho: &DensityMatrix,
    f: impl Fn(f64) -> f64,
    class: DegenerateClass,
) -> Result<SpectralSplit> {
    let n = rho.dim();
    let expected_dim = match class {
        DegenerateClass::N2 => 2,
        DegenerateClass::N3 => 3,
        DegenerateClass::N4TwoEigenvalue => 4,
    };
    if n != expected_dim {
        return Err(SeaError::DimensionMismatch { expected: expected_dim, found: n });
    }
    let spec = rho.spectrum();
    let tol = 1e-8;
    // two distinct values with the class's multiplicity pattern
    let (l1, l2) = match class {
        DegenerateClass::N2 => (spec[0], spec[1]),
        DegenerateClass::N3 => {
            if scalar::abs(spec[1] - spec[2]) > tol {
                return Err(SeaError::DegeneracyMismatch(format!(
                    "expected (λ1, λ2, λ2); got {spec:?}"
                )));
            }
            (spec[0], 0.5 * (spec[1] + spec[2]))
        }
        DegenerateClass::N4TwoEigenvalue => {
            // split the sorted spectrum into two level groups
            let gaps: Vec<f64> = spec.windows(2).map(|w| w[0] - w[1]).collect();
            let (split, _) = gaps
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap();
            let (hi, lo) = spec.split_at(split + 1);
            let spread = |xs: &[f64]| {
                xs.iter().fold(0.0f64, |m, &x| m.max(scalar::abs(x - xs[0])))
            };
            if spread(hi) > tol || spread(lo) > tol {
                return Err(SeaError::DegeneracyMismatch(format!(
                    "expected exactly two distinct eigenvalues; got {spec:?}"
                )));
            }
            (
                hi.iter().sum::<f64>() / hi.len() as f64,
                lo.iter().sum::<f64>() / lo.len() as f64,
            )
        }
    };
    if scalar::abs(l1 - l2) <= tol {
        return Err(SeaError::DegeneracyMismatch(
            "spectrum is fully degenerate; F(ρ) = F(1/N)·I carries no split".to_string(),
        ));
    }
    let f1 = f(l1);
    let f2 = f(l2);
    // F(ρ) = [λ1F(λ2) − λ2F(λ1)]/(λ1−λ2) · I + [F(λ1) − F(λ2)]/(λ1−λ2) · ρ
    let c_id = (l1 * f2 - l2 * f1) / (l1 - l2);
    let c_rho = (f1 - f2) / (l1 - l2);
    let mut full = Matrix::identity(n).scale_re(c_id);
    full.add_assign_scaled(rho.matrix(), c_rho);
    let trace_coefficient = full.trace().re / n as f64;
    let mut traceless = full;
    traceless.add_assign_scaled(&Matrix::identity(n), -trace_coefficient);
    Ok(SpectralSplit {
        trace_coefficient,
        traceless: HermitianMatrix::new(traceless)?,
    })
}

/// Spectral evaluation of F(ρ) split into trace and traceless parts; the
/// conjectured general closed form is exposed only through this numerical
/// helper.
pub fn fn_of_rho_spectral(rho: &DensityMatrix, f: impl Fn(f64) -> f64) -> SpectralSplit {
    let full = rho.map_spectrum(f);
    let n = rho.dim();
    let trace_coefficient = full.trace().re / n as f64;
    let mut traceless = full;
    traceless.add_assign_scaled(&Matrix::identity(n), -trace_coefficient);
    SpectralSplit {
        trace_coefficient,
        traceless: HermitianMatrix::new(traceless).expect("spectral function of Hermitian"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{haar_unitary, rng_from_seed};

    #[test]
    fn ggm_n2_is_the_pauli_set() {
        let basis = make_ggm(2).unwrap();
        assert_eq!(basis.len(), 3);
        // order: diagonal (σz), symmetric (σx), antisymmetric (σy)
        let sz = Matrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]);
        let sx = Matrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]);
        let sy = Matrix::from_rows(
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        assert!((basis.generators()[0].matrix() - &sz).frobenius_norm() < 1e-15);
        assert!((basis.generators()[1].matrix() - &sx).frobenius_norm() < 1e-15);
        assert!((basis.generators()[2].matrix() - &sy).frobenius_norm() < 1e-15);
    }

    #[test]
    fn ggm_diagonal_examples() {
        // N=3: Γ_2 = diag(1,1,−2)/√3
        let basis = make_ggm(3).unwrap();
        let g2 = basis.generators()[1].matrix();
        let s = 1.0 / 3.0f64.sqrt();
        assert!((g2[(0, 0)].re - s).abs() < 1e-15);
        assert!((g2[(1, 1)].re - s).abs() < 1e-15);
        assert!((g2[(2, 2)].re + 2.0 * s).abs() < 1e-15);
        // N=4: Γ_3 = diag(1,1,1,−3)/√6
        let basis = make_ggm(4).unwrap();
        let g3 = basis.generators()[2].matrix();
        let s = 1.0 / 6.0f64.sqrt();
        assert!((g3[(0, 0)].re - s).abs() < 1e-15);
        assert!((g3[(3, 3)].re + 3.0 * s).abs() < 1e-15);
    }

    #[test]
    fn ggm_orthonormality_and_structure_symmetries() {
        let basis = make_ggm(3).unwrap();
        let m = basis.len();
        for i in 0..m {
            assert!(basis.generators()[i].matrix().trace().norm_sqr() < 1e-24);
            for j in 0..m {
                let t = basis.generators()[i]
                    .matrix()
                    .trace_product(basis.generators()[j].matrix());
                let expected = if i == j { 2.0 } else { 0.0 };
                assert!((t.re - expected).abs() < 1e-12);
                assert!(t.im.abs() < 1e-12);
            }
        }
        // g fully symmetric, f fully antisymmetric under index permutation
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let g = basis.g(i, j, k);
                    assert!((g - basis.g(j, i, k)).abs() < 1e-12);
                    assert!((g - basis.g(k, j, i)).abs() < 1e-12);
                    let f = basis.f(i, j, k);
                    assert!((f + basis.f(j, i, k)).abs() < 1e-12);
                    assert!((f + basis.f(k, j, i)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn ggm_anticommutator_closure() {
        // {Γ_i, Γ_j} = (4/N)δ_ij I + 2 Σ_k g_ijk Γ_k
        let n = 3;
        let basis = make_ggm(n).unwrap();
        let m = basis.len();
        for i in 0..m {
            for j in 0..m {
                let lhs = crate::linalg::acomm(
                    basis.generators()[i].matrix(),
                    basis.generators()[j].matrix(),
                )
                .unwrap();
                let mut rhs = Matrix::zeros(n, n);
                if i == j {
                    rhs.add_assign_scaled(&Matrix::identity(n), 4.0 / n as f64);
                }
                for k in 0..m {
                    let g = basis.g(i, j, k);
                    if g.abs() > 1e-14 {
                        rhs.add_assign_scaled(basis.generators()[k].matrix(), 2.0 * g);
                    }
                }
                assert!((&lhs - &rhs).frobenius_norm() < 1e-10, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn bloch_map_roundtrip_and_purity() {
        let basis = make_ggm(3).unwrap();
        let mut rng = rng_from_seed(12);
        let rho = crate::random::random_density(3, &mut rng);
        let b = density_to_bloch(&rho, &basis).unwrap();
        let back = bloch_to_density(&b, &basis).unwrap();
        assert!((back.matrix() - rho.matrix()).frobenius_norm() < 1e-12);
        // Tr(ρ²) = (1 + (N−1)r²)/N
        let purity = rho.purity();
        let r = b.r();
        assert!((purity - (1.0 + 2.0 * r * r) / 3.0).abs() < 1e-10);
    }

    #[test]
    fn bloch_map_examples() {
        let basis = make_ggm(2).unwrap();
        // r = 0 → I/N
        let b = BlochState::new(2, alloc::vec![0.0, 0.0, 0.0]).unwrap();
        let rho = bloch_to_density(&b, &basis).unwrap();
        assert!((rho.matrix() - DensityMatrix::maximally_mixed(2).matrix()).frobenius_norm() < 1e-14);
        // N=2 pole along the diagonal generator → diag(1, 0)
        let b = BlochState::new(2, alloc::vec![1.0, 0.0, 0.0]).unwrap();
        let rho = bloch_to_density(&b, &basis).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(rho.matrix()[(1, 1)].re.abs() < 1e-12);
        // non-positive point of the ball for N = 3 is rejected
        let basis = make_ggm(3).unwrap();
        let mut r_vec = alloc::vec![0.0; 8];
        r_vec[1] = 1.0; // ρ = (I + √3 Γ_2)/3 = diag(2/3, 2/3, −1/3)
        let b = BlochState::new(3, r_vec).unwrap();
        assert!(matches!(
            bloch_to_density(&b, &basis),
            Err(SeaError::NotPositive { .. })
        ));
    }

    #[test]
    fn char_poly_maximally_mixed_n4() {
        let rho = DensityMatrix::maximally_mixed(4);
        let c = char_poly_coeffs(&rho);
        assert!((c.a(0) - 1.0).abs() < 1e-15);
        assert!((c.a(1) - 1.0).abs() < 1e-15);
        assert!((c.a(3) - 1.0 / 16.0).abs() < 1e-14);
        assert!((c.a(4) - 1.0 / 256.0).abs() < 1e-15);
    }

    #[test]
    fn char_poly_pure_state_has_zero_a2() {
        let mut rng = rng_from_seed(4);
        let rho = crate::random::random_pure_density(4, &mut rng);
        let c = char_poly_coeffs(&rho);
        assert!(c.a(2).abs() < 1e-12);
    }

    #[test]
    fn char_poly_matches_vieta_expansion() {
        // independent oracle: elementary symmetric polynomials of the spectrum
        let mut rng = rng_from_seed(14);
        let rho = crate::random::random_density(4, &mut rng);
        let c = char_poly_coeffs(&rho);
        let l = rho.spectrum();
        let e1: f64 = l.iter().sum();
        let mut e2 = 0.0;
        let mut e3 = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                e2 += l[i] * l[j];
                for k in j + 1..4 {
                    e3 += l[i] * l[j] * l[k];
                }
            }
        }
        let e4: f64 = l.iter().product();
        for (a, e) in [(c.a(1), e1), (c.a(2), e2), (c.a(3), e3), (c.a(4), e4)] {
            assert!((a - e).abs() < 1e-10, "{a} vs {e}");
        }
    }

    #[test]
    fn qutrit_roots_examples() {
        assert_eq!(qutrit_roots(0.0).unwrap(), [1.0 / 3.0; 3]);
        let pure = qutrit_roots(1.0).unwrap();
        assert!((pure[0] - 1.0).abs() < 1e-15 && pure[1].abs() < 1e-15);
        // r = 0.3 against the eigendecomposition oracle
        let r = 0.3;
        let expected = [(1.0 + 2.0 * r) / 3.0, (1.0 - r) / 3.0, (1.0 - r) / 3.0];
        let mut rng = rng_from_seed(6);
        let u = haar_unitary(3, &mut rng);
        let rho =
            DensityMatrix::new(u.matmul(&Matrix::diagonal_real(&expected)).matmul(&u.adjoint()))
                .unwrap();
        let roots = qutrit_roots_for(&rho).unwrap();
        for (a, b) in roots.iter().zip(rho.spectrum()) {
            assert!((a - b).abs() < 1e-12);
        }
        // out-of-class state is rejected
        let bad = DensityMatrix::from_probabilities(&[0.5, 0.3, 0.2]).unwrap();
        assert!(matches!(qutrit_roots_for(&bad), Err(SeaError::OutOfClass(_))));
    }

    #[test]
    fn quartic_uniform_state_limit() {
        let (roots, p) = quartic_roots(0.0, 1.0 / 16.0, 1.0 / 256.0).unwrap();
        assert_eq!(roots, [0.25; 4]);
        for a in [p.alpha_1, p.alpha_2, p.alpha_3, p.alpha_4, p.alpha_5, p.alpha_6, p.alpha_7] {
            assert_eq!(a, 0.0);
        }
    }

    #[test]
    fn quartic_werner_pure_ordering() {
        // α_1 = 1 family point: λ = (0, 1, 0, 0) in the labeled order
        let (roots, p) = quartic_roots(1.0, 0.0, 0.0).unwrap();
        assert!((p.alpha_1 - 1.0).abs() < 1e-10);
        assert!((p.alpha_2 - 2.0).abs() < 1e-10);
        let expected = [0.0, 1.0, 0.0, 0.0];
        for (a, b) in roots.iter().zip(expected) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn quartic_bell_diagonal_pattern() {
        // λ_k = (1 ∓ b_x ∓ b_y ∓ b_z)/4 with α_1 = b_z, α_2 = −2b_xb_y
        let (bx, by, bz) = (0.2, -0.1, 0.3);
        let lam = [
            (1.0 - bx - by - bz) / 4.0,
            (1.0 - bx + by + bz) / 4.0,
            (1.0 + bx - by + bz) / 4.0,
            (1.0 + bx + by - bz) / 4.0,
        ];
        let (r, a3, a4) = invariants_from_spectrum(&lam);
        let (roots, p) = quartic_roots(r, a3, a4).unwrap();
        assert!((p.alpha_1 - bz).abs() < 1e-9, "alpha_1 = {}", p.alpha_1);
        assert!((p.alpha_2 + 2.0 * bx * by).abs() < 1e-9);
        assert!((r * r - (bx * bx + by * by + bz * bz) / 3.0).abs() < 1e-12);
        let mut got = roots;
        let mut want = lam;
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!((roots.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    fn invariants_from_spectrum(lam: &[f64; 4]) -> (f64, f64, f64) {
        let p2: f64 = lam.iter().map(|l| l * l).sum();
        let r = ((4.0 * p2 - 1.0) / 3.0).max(0.0).sqrt();
        let mut a3 = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                for k in j + 1..4 {
                    a3 += lam[i] * lam[j] * lam[k];
                }
            }
        }
        let a4: f64 = lam.iter().product();
        (r, a3, a4)
    }

    #[test]
    fn quartic_class_helpers_are_well_conditioned() {
        // class-1: triple root in the resolvent makes the generic cascade
        // ε^{1/3}-limited; the class inversion stays at machine precision
        let alpha = 0.47;
        let lam = [
            (1.0 - alpha) / 4.0,
            (1.0 + 3.0 * alpha) / 4.0,
            (1.0 - alpha) / 4.0,
            (1.0 - alpha) / 4.0,
        ];
        let (r, a3, _) = invariants_from_spectrum(&lam);
        let roots = quartic_roots_class1(r, a3).unwrap();
        let mut got = roots;
        let mut want = lam;
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
        // class-2
        let alpha = -0.61;
        let lam = [
            (1.0 - alpha) / 4.0,
            (1.0 + alpha) / 4.0,
            (1.0 + alpha) / 4.0,
            (1.0 - alpha) / 4.0,
        ];
        let (r, _, _) = invariants_from_spectrum(&lam);
        let roots = quartic_roots_class2(r).unwrap();
        let mut got = roots;
        let mut want = lam;
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "got {got:?} want {want:?}");
        }
    }

    #[test]
    fn positivity_predicate_matches_eigen_sign() {
        let mut rng = rng_from_seed(19);
        for _ in 0..200 {
            // random unit-trace Hermitian with spectrum of mixed signs
            let u = haar_unitary(4, &mut rng);
            let mut vals: Vec<f64> =
                (0..4).map(|_| crate::random::standard_normal(&mut rng)).collect();
            let s: f64 = vals.iter().sum();
            for v in &mut vals {
                *v += (1.0 - s) / 4.0;
            }
            let m = u.matmul(&Matrix::diagonal_real(&vals)).matmul(&u.adjoint());
            // bypass positivity validation through raw power traces
            let mut power_traces = alloc::vec![0.0; 5];
            let mut p = m.clone();
            power_traces[1] = p.trace().re;
            for k in 2..=4 {
                p = p.matmul(&m);
                power_traces[k] = p.trace().re;
            }
            let mut coeffs = alloc::vec![1.0];
            for k in 1..=4usize {
                let mut acc = 0.0;
                for i in 1..=k {
                    let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
                    acc += sign * power_traces[i] * coeffs[k - i];
                }
                coeffs.push(acc / k as f64);
            }
            let c = CharPolyCoeffs { coeffs };
            let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            assert_eq!(
                c.all_nonnegative(1e-10),
                min >= -1e-10,
                "vals {vals:?} coeffs {:?}",
                c.coeffs
            );
        }
    }

    #[test]
    fn newton_identities_hold() {
        let mut rng = rng_from_seed(25);
        let rho = crate::random::random_density(4, &mut rng);
        let c = char_poly_coeffs(&rho);
        let mut power_traces = alloc::vec![0.0; 5];
        let mut p = rho.matrix().clone();
        power_traces[1] = p.trace().re;
        for k in 2..=4 {
            p = p.matmul(rho.matrix());
            power_traces[k] = p.trace().re;
        }
        for k in 1..=4usize {
            let mut rhs = 0.0;
            for i in 1..=k {
                let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
                rhs += sign * power_traces[i] * c.a(k - i);
            }
            assert!((k as f64 * c.a(k) - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn fn_of_rho_identity_returns_rho() {
        let mut rng = rng_from_seed(41);
        let u = haar_unitary(4, &mut rng);
        let lam = Matrix::diagonal_real(&[0.4, 0.4, 0.1, 0.1]);
        let rho = DensityMatrix::new(u.matmul(&lam).matmul(&u.adjoint())).unwrap();
        let split =
            fn_of_rho_degenerate(&rho, |x| x, DegenerateClass::N4TwoEigenvalue).unwrap();
        assert!((split.full().matrix() - rho.matrix()).frobenius_norm() < 1e-10);
        assert!(split.traceless.matrix().trace().norm_sqr() < 1e-20);
    }

    #[test]
    fn fn_of_rho_qubit_log_split() {
        // trace part ½(ln λ+ + ln λ−), traceless coefficient (ln λ+ − ln λ−)/(2r)
        let r = 0.62;
        let rho = DensityMatrix::from_probabilities(&[(1.0 + r) / 2.0, (1.0 - r) / 2.0]).unwrap();
        let split = fn_of_rho_degenerate(&rho, |x| x.ln(), DegenerateClass::N2).unwrap();
        let lp = ((1.0 + r) / 2.0f64).ln();
        let lm = ((1.0 - r) / 2.0f64).ln();
        assert!((split.trace_coefficient - 0.5 * (lp + lm)).abs() < 1e-12);
        // traceless part = coeff · σ_z here
        let coeff = split.traceless.matrix()[(0, 0)].re;
        assert!((coeff - (lp - lm) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn fn_of_rho_matches_spectral_oracle() {
        // second-class N=4 state under x ln x
        let mut rng = rng_from_seed(47);
        let u = haar_unitary(4, &mut rng);
        let alpha = 0.48;
        let lam = [
            (1.0 - alpha) / 4.0,
            (1.0 + alpha) / 4.0,
            (1.0 + alpha) / 4.0,
            (1.0 - alpha) / 4.0,
        ];
        let rho =
            DensityMatrix::new(u.matmul(&Matrix::diagonal_real(&lam)).matmul(&u.adjoint()))
                .unwrap();
        let f = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
        let split = fn_of_rho_degenerate(&rho, f, DegenerateClass::N4TwoEigenvalue).unwrap();
        let oracle = fn_of_rho_spectral(&rho, f);
        assert!(
            (split.full().matrix() - oracle.full().matrix()).frobenius_norm() < 1e-8
        );
        // degeneracy mismatch is flagged
        let generic = crate::random::random_density(4, &mut rng);
        assert!(matches!(
            fn_of_rho_degenerate(&generic, f, DegenerateClass::N4TwoEigenvalue),
            Err(SeaError::DegeneracyMismatch(_))
        ));
    }
}
