// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Small-matrix spectral routines.
//!
//! `eigvals4` handles the general (non-Hermitian) 4x4 case through the
//! characteristic polynomial. Hermitian matrices go through cyclic Jacobi
//! rotations, which keep absolute accuracy at the rounding level even for
//! degenerate spectra.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Iteration budget for the simultaneous root iteration.
pub const DK_MAX_ITERATIONS: usize = 256;
/// Convergence threshold on the largest root update (in scaled units).
pub const DK_TOLERANCE: f64 = 1e-13;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Characteristic polynomial coefficients of `m` by Faddeev–LeVerrier.
///
/// Returns `c` with `det(zI - m) = z^n + c[n-1] z^(n-1) + ... + c[0]`.
pub fn characteristic_polynomial(m: &ComplexMatrix) -> Vec<C64> {
    let n = m.dim();
    let mut coeffs = vec![ZERO; n];
    let mut aux = ComplexMatrix::identity(n);
    let mut lead = ONE;
    for k in 1..=n {
        if k > 1 {
            let mut next = m * &aux;
            for i in 0..n {
                next[(i, i)] += lead;
            }
            aux = next;
        }
        let c = -(m * &aux).trace() / k as f64;
        coeffs[n - k] = c;
        lead = c;
    }
    coeffs
}

fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(ONE, |acc, &c| acc * z + c)
}

/// Rounding-level bound on `|p(z)|` for the monic polynomial `coeffs`.
fn horner_noise(coeffs: &[C64], z: C64) -> f64 {
    let r = z.norm();
    let magnitude = coeffs.iter().rev().fold(1.0, |acc, c| acc * r + c.norm());
    64.0 * f64::EPSILON * magnitude
}

/// Roots of a monic polynomial by Durand–Kerner iteration.
pub fn durand_kerner(coeffs: &[C64]) -> Result<Vec<C64>> {
    let n = coeffs.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    // scale so that every root lies within a radius ~1 disc
    let scale = (1..=n)
        .map(|k| coeffs[n - k].norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(vec![ZERO; n]);
    }
    let scaled: Vec<C64> = (0..n)
        .map(|i| coeffs[i] / scale.powi((n - i) as i32))
        .collect();

    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    let mut converged = false;
    for _ in 0..DK_MAX_ITERATIONS {
        let mut largest_step: f64 = 0.0;
        for i in 0..n {
            let zi = roots[i];
            let mut denom = ONE;
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    denom *= if d == ZERO { C64::new(1e-300, 0.0) } else { d };
                }
            }
            let step = horner(&scaled, zi) / denom;
            if step.is_finite() {
                roots[i] = zi - step;
                largest_step = largest_step.max(step.norm());
            }
        }
        if largest_step <= DK_TOLERANCE {
            converged = true;
            break;
        }
    }
    if !converged {
        // clustered roots stall above the threshold; accept them only when
        // the residual is already at the rounding floor
        let at_floor = roots
            .iter()
            .all(|&z| horner(&scaled, z).norm() <= horner_noise(&scaled, z));
        if !at_floor {
            return Err(Error::NoConvergence(DK_MAX_ITERATIONS));
        }
    }
    Ok(roots.into_iter().map(|z| z * scale).collect())
}

fn is_triangular(m: &ComplexMatrix) -> bool {
    let n = m.dim();
    let lower_zero = (0..n).all(|i| (0..i).all(|j| m[(i, j)] == ZERO));
    let upper_zero = (0..n).all(|i| (i + 1..n).all(|j| m[(i, j)] == ZERO));
    lower_zero || upper_zero
}

/// The four eigenvalues of a 4x4 matrix, with multiplicity, in descending
/// order of real part.
pub fn eigvals4(m: &ComplexMatrix) -> Result<[C64; 4]> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: m.dim(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("eigvals4 input"));
    }
    let mut roots: Vec<C64> = if is_triangular(m) {
        (0..4).map(|i| m[(i, i)]).collect()
    } else {
        durand_kerner(&characteristic_polynomial(m))?
    };
    roots.sort_by(|a, b| b.re.total_cmp(&a.re));
    Ok([roots[0], roots[1], roots[2], roots[3]])
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns ascending eigenvalues and the matrix whose columns are the
/// corresponding orthonormal eigenvectors.
pub fn hermitian_eig(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = m.max_abs().max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) on (p, q) followed by a real rotation
                let d = phase.conj();
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(s, 0.0);
                let u_qp = d * -s;
                let u_qq = d * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    (values, vectors)
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigvals(m: &ComplexMatrix) -> Vec<f64> {
    hermitian_eig(m).0
}

/// Singular values (descending) of the matrix with the given columns, by
/// one-sided Jacobi orthogonalisation.
///
/// Absolute accuracy is at the rounding level of the largest singular
/// value, including for singular values near zero.
pub fn singular_values(columns: &[Vec<C64>]) -> Vec<f64> {
    let mut cols: Vec<Vec<C64>> = columns.to_vec();
    let r = cols.len();
    let inner = |a: &[C64], b: &[C64]| -> C64 { a.iter().zip(b).map(|(x, y)| x.conj() * y).sum() };
    let norm2 = |a: &[C64]| -> f64 { a.iter().map(|x| x.norm_sqr()).sum() };

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..r {
            for q in p + 1..r {
                let alpha = norm2(&cols[p]);
                let beta = norm2(&cols[q]);
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let cp = &mut left[p];
                let cq = &mut right[0];
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let yq = *y * phase;
                    let xp = *x;
                    *x = xp * c - yq * s;
                    *y = xp * s + yq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| norm2(c).sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Trace distance `½‖a − b‖₁` between Hermitian matrices.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    0.5 * hermitian_eigvals(&(a - b)).iter().map(|x| x.abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;

    #[test]
    fn diagonal_and_identity_spectra() {
        let d = ComplexMatrix::from_real_diagonal(&[1.0, 3.0, 4.0, 2.0]);
        let ev = eigvals4(&d).unwrap();
        let re: Vec<f64> = ev.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![4.0, 3.0, 2.0, 1.0]);
        let ev = eigvals4(&ComplexMatrix::identity(4)).unwrap();
        assert!(ev.iter().all(|z| *z == ONE));
    }

    #[test]
    fn eigvals4_requires_4x4() {
        assert!(matches!(
            eigvals4(&ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn companion_matrix_roots() {
        // companion matrix of (z-1)(z-2)(z+3)(z-0.5i)
        let roots = [
            C64::new(1.0, 0.0),
            C64::new(2.0, 0.0),
            C64::new(-3.0, 0.0),
            C64::new(0.0, 0.5),
        ];
        let mut poly = vec![ONE];
        for r in roots {
            let mut next = vec![ZERO; poly.len() + 1];
            for (k, &c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            poly = next;
        }
        let comp = ComplexMatrix::from_fn(4, |i, j| {
            if j == 3 {
                -poly[i]
            } else if i == j + 1 {
                ONE
            } else {
                ZERO
            }
        });
        let ev = eigvals4(&comp).unwrap();
        let expected = [roots[1], roots[0], roots[3], roots[2]];
        for (got, want) in ev.iter().zip(expected) {
            assert!((got - want).norm() < 1e-11, "{got} vs {want}");
        }
    }

    #[test]
    fn faddeev_leverrier_on_2x2() {
        let m = ComplexMatrix::from_fn(2, |i, j| C64::new((1 + i * 2 + j) as f64, 0.0));
        // [[1,2],[3,4]]: z^2 - 5z - 2
        let c = characteristic_polynomial(&m);
        assert!((c[1] - C64::new(-5.0, 0.0)).norm() < 1e-14);
        assert!((c[0] - C64::new(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn jacobi_handles_degenerate_hermitian() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [C64::new(s, 0.0), C64::new(0.0, s), ZERO, ZERO];
        let (vals, vecs) = hermitian_eig(&ComplexMatrix::outer(&psi));
        assert!(vals[..3].iter().all(|v| v.abs() < 1e-16));
        assert!((vals[3] - 1.0).abs() < 1e-15);
        let top: Vec<C64> = (0..4).map(|r| vecs[(r, 3)]).collect();
        let overlap: C64 = top.iter().zip(&psi).map(|(a, b)| a.conj() * b).sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_values_of_rank_one_columns() {
        let cols = vec![
            vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)],
            vec![C64::new(2.0, 0.0), C64::new(0.0, 2.0)],
        ];
        let sv = singular_values(&cols);
        assert!((sv[0] - 10f64.sqrt()).abs() < 1e-14);
        assert!(sv[1].abs() < 1e-15);
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let b = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
        assert!((trace_distance(&a, &b) - 1.0).abs() < 1e-15);
        assert_eq!(trace_distance(&a, &a), 0.0);
    }
}
