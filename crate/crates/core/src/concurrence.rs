// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit concurrence.
//!
//! [`wootters`] works for any density matrix. The square roots of the
//! eigenvalues of `R = ρρ̃` are obtained as the singular values of
//! `τ = Vᵀ(σy⊗σy)V`, where `ρ = VV†`, which avoids the ill-conditioned
//! characteristic polynomial of `R` at rank-deficient states.
//! [`r_eigenvalues`] takes the polynomial route and is kept as a
//! cross-check.

use crate::error::{Error, Result};
use crate::full_model::validate_density;
use crate::linalg::{eigvals4, hermitian_eig, kron, pauli_y, singular_values, ComplexMatrix, C64};
use crate::reduced::{OFF_SECTOR, SECTOR_TOL};

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-8;
/// Imaginary parts of `R` eigenvalues accepted by [`r_eigenvalues`].
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-8;

/// Eigenvalues of `ρ` below this are dropped from the square-root factor.
const RANK_CUTOFF: f64 = 1e-14;
/// Results within this distance of 0 or 1 are snapped to the endpoint.
const SNAP: f64 = 1e-13;

/// A validated 4x4 two-qubit density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitDensity(ComplexMatrix);

impl TwoQubitDensity {
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: rho.dim(),
            });
        }
        validate_density(&rho, HERMITICITY_TOL, TRACE_TOL, POSITIVITY_TOL)?;
        Ok(Self(rho))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

fn sigma_yy() -> ComplexMatrix {
    let y = pauli_y();
    kron(&y, &y).expect("2x2 factors")
}

/// `(σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &TwoQubitDensity) -> ComplexMatrix {
    let yy = sigma_yy();
    &(&yy * &rho.0.conj()) * &yy
}

/// Eigenvalues of `ρρ̃`, real parts, sorted descending.
pub fn r_eigenvalues(rho: &TwoQubitDensity) -> Result<[f64; 4]> {
    let r = &rho.0 * &spin_flip(rho);
    let vals = eigvals4(&r)?;
    let scale = vals.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut out = [0.0; 4];
    for (o, z) in out.iter_mut().zip(vals) {
        if z.im.abs() > IMAGINARY_RESIDUE_TOL * scale {
            return Err(Error::Precondition(format!(
                "eigenvalue {z} of R has a non-negligible imaginary part"
            )));
        }
        *o = z.re;
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// `√λ_i` of `R = ρρ̃`, sorted descending.
pub fn spin_flip_singular_values(rho: &TwoQubitDensity) -> Vec<f64> {
    let (vals, vecs) = hermitian_eig(&rho.0);
    let factors: Vec<Vec<C64>> = vals
        .iter()
        .enumerate()
        .filter(|(_, &mu)| mu > RANK_CUTOFF)
        .map(|(k, &mu)| (0..4).map(|i| vecs[(i, k)] * mu.sqrt()).collect())
        .collect();
    if factors.is_empty() {
        return vec![0.0; 4];
    }
    let yy = sigma_yy();
    // τ_jk = v_jᵀ (σy⊗σy) v_k, stored column by column
    let columns: Vec<Vec<C64>> = factors
        .iter()
        .map(|vk| {
            let yv: Vec<C64> = (0..4)
                .map(|i| (0..4).map(|l| yy[(i, l)] * vk[l]).sum())
                .collect();
            factors
                .iter()
                .map(|vj| vj.iter().zip(&yv).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let mut s = singular_values(&columns);
    s.resize(4, 0.0);
    s
}

fn finish(c: f64) -> f64 {
    if c < SNAP {
        0.0
    } else if c > 1.0 - SNAP {
        1.0
    } else {
        c
    }
}

/// `max(0, √λ1 - √λ2 - √λ3 - √λ4)`.
pub fn wootters(rho: &TwoQubitDensity) -> f64 {
    let s = spin_flip_singular_values(rho);
    finish(s[0] - s[1] - s[2] - s[3])
}

/// Wootters concurrence from the eigenvalues of `R` directly.
pub fn wootters_polynomial(rho: &TwoQubitDensity) -> Result<f64> {
    let lam = r_eigenvalues(rho)?;
    let s: Vec<f64> = lam.iter().map(|l| l.max(0.0).sqrt()).collect();
    Ok(finish(s[0] - s[1] - s[2] - s[3]))
}

/// `2 max(0, |ρ23| - √(ρ11 ρ44))` for states without off-sector coherences.
pub fn xstate_concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    let r = &rho.0;
    let magnitude = OFF_SECTOR
        .iter()
        .map(|&(i, j)| r[(i, j)].norm())
        .fold(0.0, f64::max);
    if magnitude > SECTOR_TOL {
        return Err(Error::OutsideSector { magnitude });
    }
    let p = (r[(0, 0)].re * r[(3, 3)].re).max(0.0).sqrt();
    Ok(finish(2.0 * (r[(1, 2)].norm() - p)).max(0.0))
}
