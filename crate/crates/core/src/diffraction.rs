// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Concurrence across the standing wave for atom 1 at an antinode and
//! atom 2 at separation `r12`, starting from `|g1e2>`.
//!
//! Positions are in units of the wavelength. With `c = cos k r12` and
//! `d = (1 + c²)τ/2`,
//!
//! ```text
//! C = e^{-Γτ} (4|c|/(1+c²)) |sin(d/2)| √(1 - 4c² sin²(d/2)/(1+c²)²).
//! ```

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::roots::find_roots;

/// Bracketing grid for root searches over a quarter wavelength.
pub const ROOT_SAMPLES: usize = 4000;
/// Bisection tolerance in wavelengths.
pub const ROOT_TOL: f64 = 1e-10;
/// Default number of separations in a scan.
pub const SCAN_POINTS: usize = 500;
/// Largest separation examined by [`optimum_positions`].
const OPEN_QUARTER: f64 = 0.25 - 1e-9;
/// `|p - q|` at `r12 = 0` below which the antinode counts as a solution.
const ENDPOINT_TOL: f64 = 1e-12;

/// Dimensionless time and damping in units of `2 g0² / Δ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledUnits {
    pub tau: f64,
    pub gamma: f64,
}

impl ScaledUnits {
    pub fn new(tau: f64, gamma: f64) -> Result<Self> {
        if !(tau >= 0.0 && gamma >= 0.0) {
            return Err(Error::Precondition(format!(
                "scaled time {tau} and damping {gamma} must be non-negative"
            )));
        }
        Ok(Self { tau, gamma })
    }

    /// Rate `2 g0² / |Δ|` that sets the scale.
    pub fn unit_rate(g0: f64, delta: f64) -> f64 {
        2.0 * g0 * g0 / delta.abs()
    }

    pub fn from_physical(t: f64, gamma: f64, g0: f64, delta: f64) -> Result<Self> {
        let rate = Self::unit_rate(g0, delta);
        Self::new(rate * t, gamma / rate)
    }

    /// Physical time and damping rate.
    pub fn to_physical(&self, g0: f64, delta: f64) -> (f64, f64) {
        let rate = Self::unit_rate(g0, delta);
        (self.tau / rate, self.gamma * rate)
    }
}

pub fn tau_to_time(tau: f64, g0: f64, delta: f64) -> f64 {
    tau / ScaledUnits::unit_rate(g0, delta)
}

pub fn time_to_tau(t: f64, g0: f64, delta: f64) -> f64 {
    t * ScaledUnits::unit_rate(g0, delta)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Variant {
    #[default]
    Canonical,
    /// Form with a sixteen times larger `sin⁴ k r12` term, kept for
    /// comparison only.
    Literal,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Canonical => "canonical",
            Variant::Literal => "literal",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "canonical" => Ok(Variant::Canonical),
            "literal" => Ok(Variant::Literal),
            other => Err(Error::Config(format!("unknown variant '{other}'"))),
        }
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn canonical(r12: f64, tau: f64, gamma: f64) -> f64 {
    let c = (TAU * r12).cos();
    let c2 = c * c;
    let d = 0.5 * (1.0 + c2) * tau;
    let s = (0.5 * d).sin();
    let beta = 4.0 * c2 / ((1.0 + c2) * (1.0 + c2));
    let amp = 4.0 * c.abs() / (1.0 + c2) * s.abs() * (1.0 - beta * s * s).max(0.0).sqrt();
    ((-gamma * tau).exp() * amp).min(1.0)
}

fn literal(r12: f64, tau: f64, gamma: f64) -> f64 {
    let (sk, c) = (TAU * r12).sin_cos();
    let d = 0.5 * (1.0 + c * c) * tau;
    let first = sinc(d) * tau;
    let second = sinc(0.5 * d).powi(2) * tau * tau * sk * sk;
    (-gamma * tau).exp() * (first * first + second * second).sqrt() * c.abs()
}

/// Concurrence at separation `r12` (wavelengths), scaled time `tau` and
/// scaled damping `gamma`.
pub fn concurrence_vs_position(r12: f64, tau: f64, gamma: f64, variant: Variant) -> f64 {
    match variant {
        Variant::Canonical => canonical(r12, tau, gamma),
        Variant::Literal => literal(r12, tau, gamma),
    }
}

/// `p(r12) = cos[(1 + cos² k r12) τ/2]`.
pub fn p_curve(r12: f64, tau: f64) -> f64 {
    let c = (TAU * r12).cos();
    (0.5 * (1.0 + c * c) * tau).cos()
}

/// `q(r12) = -(sin² k r12 / (2 cos k r12))²`, which diverges at the node.
pub fn q_curve(r12: f64) -> f64 {
    let c = (TAU * r12).cos();
    let x = (1.0 - c * c) / (2.0 * c);
    -x * x
}

/// Separations in `[0, 1/4]` where the concurrence vanishes at `tau`,
/// ascending.
pub fn zero_positions(tau: f64) -> Vec<f64> {
    if !(tau > 0.0) {
        return Vec::new();
    }
    let lo = ((tau / (4.0 * PI)).ceil() as i64).max(1);
    let hi = (tau / TAU).floor() as i64;
    let mut out: Vec<f64> = (lo..=hi)
        .map(|n| {
            let cos2 = (4.0 * n as f64 * PI / tau - 1.0).clamp(0.0, 1.0);
            cos2.sqrt().acos() / TAU
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Separations in `[0, 1/4)` where the undamped concurrence reaches 1,
/// i.e. roots of `p - q`, ascending.
pub fn optimum_positions(tau: f64) -> Vec<f64> {
    if !(tau > 0.0) {
        return Vec::new();
    }
    let f = |r: f64| p_curve(r, tau) - q_curve(r);
    let mut roots = find_roots(f, 0.0, OPEN_QUARTER, ROOT_SAMPLES, ROOT_TOL);
    // p - q ≥ 0 near the antinode, so a root there touches without crossing
    if f(0.0).abs() < ENDPOINT_TOL && roots.first().is_none_or(|&r| r > ROOT_TOL) {
        roots.insert(0, 0.0);
    }
    roots
}

/// Uniform grid of `n` separations on `[0, 1/4]`.
pub fn quarter_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|i| 0.25 * i as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffractionScan {
    pub r12: Vec<f64>,
    pub taus: Vec<f64>,
    /// `values[i][j]` is the concurrence at `r12[i]`, `taus[j]`.
    pub values: Vec<Vec<f64>>,
    pub gamma: f64,
    pub variant: Variant,
}

impl DiffractionScan {
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[j]).collect()
    }
}

pub fn scan(taus: &[f64], r12: &[f64], gamma: f64, variant: Variant) -> Result<DiffractionScan> {
    if taus.is_empty() || r12.is_empty() {
        return Err(Error::InvalidGrid("scan grids must be non-empty".into()));
    }
    let values = r12
        .par_iter()
        .map(|&r| {
            taus.iter()
                .map(|&t| concurrence_vs_position(r, t, gamma, variant))
                .collect()
        })
        .collect();
    Ok(DiffractionScan {
        r12: r12.to_vec(),
        taus: taus.to_vec(),
        values,
        gamma,
        variant,
    })
}

/// Largest `|literal - canonical|` over the grid, with its location
/// `(max, r12, tau)`.
pub fn variant_discrepancy(taus: &[f64], r12: &[f64], gamma: f64) -> Result<(f64, f64, f64)> {
    let a = scan(taus, r12, gamma, Variant::Canonical)?;
    let b = scan(taus, r12, gamma, Variant::Literal)?;
    let mut best = (0.0, r12[0], taus[0]);
    for (i, (ra, rb)) in a.values.iter().zip(&b.values).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            let d = (x - y).abs();
            if d > best.0 {
                best = (d, r12[i], taus[j]);
            }
        }
    }
    Ok(best)
}
