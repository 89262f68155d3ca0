// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Standing-wave Gaussian mode geometry and the cavity-induced effective
//! parameters of the two-atom model.
//!
//! All rates are angular frequencies in a common unit; the examples and the
//! CLI default to `g0 = 1` and `delta = 20 g0`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Detuning-to-coupling ratio below which the dispersive treatment is
/// flagged as unreliable.
pub const DISPERSIVE_RATIO: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeGeometry {
    pub g0: f64,
    pub wavelength: f64,
    pub waist: f64,
}

impl ModeGeometry {
    pub fn new(g0: f64, wavelength: f64, waist: f64) -> Result<Self> {
        if !(g0 > 0.0 && wavelength > 0.0 && waist > 0.0) {
            return Err(Error::Precondition(format!(
                "mode geometry needs g0, wavelength and waist > 0 (got {g0}, {wavelength}, {waist})"
            )));
        }
        Ok(Self {
            g0,
            wavelength,
            waist,
        })
    }

    /// Mode whose waist is far wider than any axial offset considered here.
    pub fn on_axis(g0: f64, wavelength: f64) -> Result<Self> {
        Self::new(g0, wavelength, 1e6 * wavelength)
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// Coupling `g0 exp(-r²/w0²) cos(kz)`; negative values keep their sign.
    pub fn coupling_at(&self, r: f64, z: f64) -> f64 {
        self.g0 * (-(r * r) / (self.waist * self.waist)).exp() * (self.wavenumber() * z).cos()
    }

    /// On-axis couplings with atom 1 at an antinode and atom 2 displaced by
    /// `r12` along the axis.
    pub fn coupling_pair(&self, r12: f64) -> (f64, f64) {
        (self.g0, self.g0 * (self.wavenumber() * r12).cos())
    }

    pub fn couplings(&self, placement: &AtomPlacement) -> (f64, f64) {
        (
            self.coupling_at(placement.r1, placement.z1),
            self.coupling_at(placement.r2, placement.z2),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomPlacement {
    pub z1: f64,
    pub z2: f64,
    pub r1: f64,
    pub r2: f64,
}

impl AtomPlacement {
    /// Both atoms on the axis, atom 1 at the antinode `z = 0`.
    pub fn on_axis(r12: f64) -> Self {
        Self {
            z1: 0.0,
            z2: r12,
            r1: 0.0,
            r2: 0.0,
        }
    }

    pub fn separation(&self) -> f64 {
        self.z2 - self.z1
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    /// Cavity–atom detuning.
    pub delta: f64,
    /// Atomic spontaneous-emission rate.
    pub gamma: f64,
    /// Cavity field decay rate.
    pub kappa: f64,
}

impl SystemParams {
    pub fn new(delta: f64, gamma: f64, kappa: f64) -> Result<Self> {
        if !(gamma >= 0.0 && kappa >= 0.0) || !delta.is_finite() {
            return Err(Error::Precondition(format!(
                "need finite detuning and non-negative rates (delta {delta}, gamma {gamma}, kappa {kappa})"
            )));
        }
        Ok(Self {
            delta,
            gamma,
            kappa,
        })
    }

    /// Whether `|delta| >= 10 g0`.
    pub fn is_dispersive(&self, g0: f64) -> bool {
        self.delta.abs() >= DISPERSIVE_RATIO * g0
    }
}

/// Stark shifts and cavity-mediated exchange coupling of the reduced model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectiveParams {
    pub delta1: f64,
    pub delta2: f64,
    /// Differential shift `delta1 - delta2`.
    pub delta12: f64,
    /// Exchange coupling `g1 g2 / delta`.
    pub omega12: f64,
    /// Detuned Rabi frequency `sqrt(4 omega12² + delta12²)`.
    pub alpha: f64,
    /// Cone angle `atan2(-2 omega12, delta12)`.
    pub theta: f64,
}

impl EffectiveParams {
    /// Builds the bundle directly from `delta12` and `omega12`, which is all
    /// the Bloch dynamics depends on. The single-atom shifts are set so
    /// that `delta2 = 0`.
    pub fn from_bloch(delta12: f64, omega12: f64) -> Self {
        Self::assemble(delta12, 0.0, omega12)
    }

    fn assemble(delta1: f64, delta2: f64, omega12: f64) -> Self {
        let delta12 = delta1 - delta2;
        Self {
            delta1,
            delta2,
            delta12,
            omega12,
            alpha: (4.0 * omega12 * omega12 + delta12 * delta12).sqrt(),
            theta: (-2.0 * omega12).atan2(delta12),
        }
    }

    /// Pseudofield `(-2 omega12, 0, delta12)`.
    pub fn pseudofield(&self) -> [f64; 3] {
        [-2.0 * self.omega12, 0.0, self.delta12]
    }
}

pub fn effective_params(g1: f64, g2: f64, sys: &SystemParams) -> Result<EffectiveParams> {
    if sys.delta == 0.0 {
        return Err(Error::ZeroDetuning);
    }
    let d = sys.delta;
    Ok(EffectiveParams::assemble(g1 * g1 / d, g2 * g2 / d, g1 * g2 / d))
}

/// `(1 + cos² k r12) g0² / delta`, the detuned Rabi frequency for atom 1 at
/// an antinode.
pub fn antinode_alpha(geom: &ModeGeometry, sys: &SystemParams, r12: f64) -> f64 {
    let c = (geom.wavenumber() * r12).cos();
    (1.0 + c * c) * geom.g0 * geom.g0 / sys.delta.abs()
}

/// Separation (in wavelengths, within the first quarter period) at which
/// `delta12 = 2 omega12`, i.e. `cos k r12 = sqrt(2) - 1`.
pub fn equal_detuning_separation() -> f64 {
    (2f64.sqrt() - 1.0).acos() / (2.0 * PI)
}
