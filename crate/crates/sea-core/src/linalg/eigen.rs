//! Complex Hermitian eigendecomposition.
//!
//! Householder reduction to Hermitian tridiagonal form, phase absorption to a
//! real symmetric tridiagonal, then implicit-shift QL iteration with the
//! rotations accumulated directly into the complex transform. Eigenvalues are
//! returned in descending order with a deterministic eigenvector phase: the
//! first component of significant magnitude is made real and positive, so
//! repeated runs label degenerate projectors identically.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::{Matrix, ONE, ZERO};
use crate::scalar;
use crate::{Result, SeaError};

const MAX_QL_ITERS: usize = 64;

/// Eigenvalues (descending) and unitary eigenvector matrix of a Hermitian
/// matrix. `m` is symmetrized before reduction; callers are expected to have
/// validated Hermiticity at their own tolerance.
pub fn eigh(m: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !m.is_square() {
        return Err(SeaError::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    let n = m.dim();
    if n == 0 {
        return Ok((Vec::new(), Matrix::zeros(0, 0)));
    }
    let mut a = m.hermitize();
    let mut q = Matrix::identity(n);

    // Householder reduction: sub[i] = T[i, i-1] for i >= 1.
    let mut sub = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let mlen = n - k - 1;
        let mut x = Vec::with_capacity(mlen);
        for i in 0..mlen {
            x.push(a[(k + 1 + i, k)]);
        }
        let norm = scalar::sqrt(x.iter().map(|z| z.norm_sqr()).sum());
        if norm == 0.0 {
            sub[k + 1] = ZERO;
            continue;
        }
        let x0 = x[0];
        let x0_abs = scalar::hypot(x0.re, x0.im);
        let phase = if x0_abs > 0.0 { x0 / x0_abs } else { ONE };
        let alpha = -phase * norm;

        let mut v = x;
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        sub[k + 1] = alpha;
        if vnorm2 <= f64::MIN_POSITIVE {
            continue;
        }
        let tau = 2.0 / vnorm2;

        // p = tau * A_sub v on the trailing block.
        let mut p = vec![ZERO; mlen];
        for i in 0..mlen {
            let mut acc = ZERO;
            for j in 0..mlen {
                acc += a[(k + 1 + i, k + 1 + j)] * v[j];
            }
            p[i] = acc * tau;
        }
        let vhp: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let kappa = vhp * (tau * 0.5);
        let qv: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - kappa * vi).collect();

        // A_sub <- A_sub - v q† - q v†
        for i in 0..mlen {
            for j in 0..mlen {
                let delta = v[i] * qv[j].conj() + qv[i] * v[j].conj();
                a[(k + 1 + i, k + 1 + j)] -= delta;
            }
        }
        // Zero out the reduced column/row explicitly.
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }

        // Q[:, k+1..] <- Q[:, k+1..] (I - tau v v†)
        for r in 0..n {
            let mut acc = ZERO;
            for j in 0..mlen {
                acc += q[(r, k + 1 + j)] * v[j];
            }
            acc *= tau;
            for j in 0..mlen {
                let upd = acc * v[j].conj();
                q[(r, k + 1 + j)] -= upd;
            }
        }
    }
    if n >= 2 {
        sub[n - 1] = a[(n - 1, n - 2)];
    }

    // Absorb off-diagonal phases: T_real = D† T D with |D_ii| = 1.
    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0f64; n]; // e[i] connects d[i] and d[i+1]
    let mut ph = vec![ONE; n];
    for i in 1..n {
        let s = sub[i];
        let mag = scalar::hypot(s.re, s.im);
        e[i - 1] = mag;
        ph[i] = if mag > 0.0 { ph[i - 1] * (s / mag) } else { ph[i - 1] };
    }
    for c in 0..n {
        if ph[c] != ONE {
            for r in 0..n {
                q[(r, c)] *= ph[c];
            }
        }
    }

    ql_implicit(&mut d, &mut e, &mut q)?;

    // Descending order, stable in the original index for exact ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap().then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vecs = Matrix::zeros(n, n);
    for (new_c, &old_c) in order.iter().enumerate() {
        for r in 0..n {
            vecs[(r, new_c)] = q[(r, old_c)];
        }
    }
    fix_column_phases(&mut vecs);
    Ok((eigenvalues, vecs))
}

/// Implicit-shift QL on a real symmetric tridiagonal, rotations applied to the
/// complex column matrix `z`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut Matrix) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    // Absolute deflation floor: off-diagonals cannot be driven below
    // roundoff relative to the matrix scale, so near-zero diagonal pairs
    // must deflate against it rather than against |d[m]|+|d[m+1]|.
    let anorm = (0..n)
        .map(|i| scalar::abs(d[i]) + if i + 1 < n { scalar::abs(e[i]) } else { 0.0 })
        .fold(0.0f64, f64::max);
    let floor = eps * anorm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = scalar::abs(d[m]) + scalar::abs(d[m + 1]);
                if scalar::abs(e[m]) <= (eps * dd).max(floor) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERS {
                return Err(SeaError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = scalar::hypot(g, 1.0);
            let sign_r = if g >= 0.0 { scalar::abs(r) } else { -scalar::abs(r) };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = scalar::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..z.rows() {
                    let zi1 = z[(k, i + 1)];
                    let zi = z[(k, i)];
                    z[(k, i + 1)] = zi * s + zi1 * c;
                    z[(k, i)] = zi * c - zi1 * s;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Rotate each column so its first component of significant magnitude is real
/// and positive.
fn fix_column_phases(v: &mut Matrix) {
    let n = v.rows();
    for c in 0..n {
        let mut col_max = 0.0f64;
        for r in 0..n {
            col_max = col_max.max(scalar::hypot(v[(r, c)].re, v[(r, c)].im));
        }
        if col_max == 0.0 {
            continue;
        }
        let mut pivot = None;
        for r in 0..n {
            let z = v[(r, c)];
            if scalar::hypot(z.re, z.im) > 1e-8 * col_max {
                pivot = Some(z);
                break;
            }
        }
        if let Some(z) = pivot {
            let mag = scalar::hypot(z.re, z.im);
            let phase = z.conj() / mag;
            if (phase - ONE).norm_sqr() > 0.0 {
                for r in 0..n {
                    v[(r, c)] *= phase;
                }
            }
        }
    }
}
