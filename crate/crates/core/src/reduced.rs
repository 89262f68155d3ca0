// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-atom master equation with the cavity eliminated.
//!
//! Basis `|1> = |g1g2>`, `|2> = |g1e2>`, `|3> = |e1g2>`, `|4> = |e1e2>`
//! (indices 0..4). The generator is
//!
//! ```text
//! dρ/dt = -i[A, ρ] + γ Σ_j D[S_j⁻]ρ,
//! A = δ1 S1⁺S1⁻ + δ2 S2⁺S2⁻ + Ω12 (S1⁺S2⁻ + S2⁺S1⁻).
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::full_model::validate_density;
use crate::geometry::EffectiveParams;
use crate::lindblad::{Dissipator, SparseOperator};
use crate::linalg::{
    hermitian_eigvals, integrate_with, kron, ComplexMatrix, OdeProblem, C64, ONE, ZERO,
};

pub const STEPS_PER_RABI_PERIOD: f64 = 400.0;
/// Largest off-sector coherence accepted by [`bloch_from_density`].
pub const SECTOR_TOL: f64 = 1e-10;

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-8;

/// Off-sector element positions `(ρ12, ρ13, ρ14, ρ24, ρ34)`.
pub(crate) const OFF_SECTOR: [(usize, usize); 5] = [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)];

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedState {
    pub rho: ComplexMatrix,
}

impl ReducedState {
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: rho.dim(),
            });
        }
        validate_density(&rho, HERMITICITY_TOL, TRACE_TOL, POSITIVITY_TOL)?;
        Ok(Self { rho })
    }

    pub fn from_pure(psi: &[C64; 4]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi))
    }

    /// `|k><k|` for `k` in `1..=4`.
    pub fn basis(k: usize) -> Self {
        assert!((1..=4).contains(&k), "basis index {k} outside 1..=4");
        let mut m = ComplexMatrix::zeros(4);
        m[(k - 1, k - 1)] = ONE;
        Self { rho: m }
    }

    pub fn population(&self, k: usize) -> f64 {
        self.rho[(k - 1, k - 1)].re
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochState {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub rho11: f64,
    /// `ρ22 + ρ33`.
    pub rhopp: f64,
    pub rho44: f64,
}

impl BlochState {
    /// Single-excitation state with the given Bloch vector.
    pub fn single_excitation(u: f64, v: f64, w: f64) -> Self {
        Self {
            u,
            v,
            w,
            rho11: 0.0,
            rhopp: 1.0,
            rho44: 0.0,
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v + self.w * self.w
    }

    fn to_array(self) -> [f64; 6] {
        [self.u, self.v, self.w, self.rho11, self.rhopp, self.rho44]
    }

    fn from_slice(y: &[f64]) -> Self {
        Self {
            u: y[0],
            v: y[1],
            w: y[2],
            rho11: y[3],
            rhopp: y[4],
            rho44: y[5],
        }
    }
}

/// Initial preparations used throughout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preparation {
    /// `|g1e2>`: `w0 = 1`.
    CaseA,
    /// `(|g1e2> + i|e1g2>)/√2`: `v0 = 1`.
    CaseB,
    /// `(|g1e2> + |e1g2>)/√2`: `u0 = 1`.
    CaseC,
    /// Single-excitation state with Bloch vector `(u, v, w)`, `|B| ≤ 1`.
    Custom(f64, f64, f64),
}

impl Preparation {
    pub fn bloch(&self) -> [f64; 3] {
        match *self {
            Preparation::CaseA => [0.0, 0.0, 1.0],
            Preparation::CaseB => [0.0, 1.0, 0.0],
            Preparation::CaseC => [1.0, 0.0, 0.0],
            Preparation::Custom(u, v, w) => [u, v, w],
        }
    }

    pub fn bloch_state(&self) -> BlochState {
        let [u, v, w] = self.bloch();
        BlochState::single_excitation(u, v, w)
    }

    pub fn density(&self) -> Result<ReducedState> {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        match *self {
            Preparation::CaseA => Ok(ReducedState::basis(2)),
            Preparation::CaseB => ReducedState::from_pure(&[ZERO, s, s * C64::i(), ZERO]),
            Preparation::CaseC => ReducedState::from_pure(&[ZERO, s, s, ZERO]),
            Preparation::Custom(u, v, w) => {
                if u * u + v * v + w * w > 1.0 + 1e-12 {
                    return Err(Error::InvalidState(format!(
                        "Bloch vector ({u}, {v}, {w}) is longer than 1"
                    )));
                }
                density_from_bloch(&self.bloch_state())
            }
        }
    }
}

/// `(u, v, w) = (2 Re ρ23, -2 Im ρ23, ρ22 - ρ33)` plus populations.
pub fn bloch_from_density(state: &ReducedState) -> Result<BlochState> {
    let r = &state.rho;
    let magnitude = OFF_SECTOR
        .iter()
        .map(|&(i, j)| r[(i, j)].norm())
        .fold(0.0, f64::max);
    if magnitude > SECTOR_TOL {
        return Err(Error::OutsideSector { magnitude });
    }
    let r23 = r[(1, 2)];
    Ok(BlochState {
        u: 2.0 * r23.re,
        v: -2.0 * r23.im,
        w: r[(1, 1)].re - r[(2, 2)].re,
        rho11: r[(0, 0)].re,
        rhopp: r[(1, 1)].re + r[(2, 2)].re,
        rho44: r[(3, 3)].re,
    })
}

pub fn density_from_bloch(b: &BlochState) -> Result<ReducedState> {
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = C64::new(b.rho11, 0.0);
    m[(1, 1)] = C64::new(0.5 * (b.rhopp + b.w), 0.0);
    m[(2, 2)] = C64::new(0.5 * (b.rhopp - b.w), 0.0);
    m[(3, 3)] = C64::new(b.rho44, 0.0);
    let r23 = C64::new(0.5 * b.u, -0.5 * b.v);
    m[(1, 2)] = r23;
    m[(2, 1)] = r23.conj();
    ReducedState::new(m)
}

/// Single-atom ladder operators embedded in the two-atom space.
pub fn atomic_lowering() -> (ComplexMatrix, ComplexMatrix) {
    let mut sm = ComplexMatrix::zeros(2);
    sm[(0, 1)] = ONE;
    let id = ComplexMatrix::identity(2);
    (
        kron(&sm, &id).expect("2x2 factors"),
        kron(&id, &sm).expect("2x2 factors"),
    )
}

/// Coherent part `A` of the generator.
pub fn exchange_hamiltonian(p: &EffectiveParams) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(4);
    // |2> = |g1e2> carries δ2, |3> = |e1g2> carries δ1, |4> both
    a[(1, 1)] = C64::new(p.delta2, 0.0);
    a[(2, 2)] = C64::new(p.delta1, 0.0);
    a[(3, 3)] = C64::new(p.delta1 + p.delta2, 0.0);
    a[(1, 2)] = C64::new(p.omega12, 0.0);
    a[(2, 1)] = C64::new(p.omega12, 0.0);
    a
}

#[derive(Clone, Debug)]
pub struct ReducedModel {
    params: EffectiveParams,
    gamma: f64,
    coherent: SparseOperator,
    dissipators: [Dissipator; 2],
}

impl ReducedModel {
    pub fn new(params: EffectiveParams, gamma: f64) -> Self {
        let (s1, s2) = atomic_lowering();
        Self {
            coherent: SparseOperator::from_dense(&exchange_hamiltonian(&params)),
            dissipators: [Dissipator::new(gamma, &s1), Dissipator::new(gamma, &s2)],
            params,
            gamma,
        }
    }

    pub fn params(&self) -> &EffectiveParams {
        &self.params
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    fn rhs_into(&self, rho: &[C64], out: &mut [C64]) {
        out.fill(ZERO);
        self.coherent.add_commutator(ONE, rho, out);
        for d in &self.dissipators {
            d.add_to(rho, out);
        }
    }

    pub fn rhs(&self, state: &ReducedState) -> ComplexMatrix {
        let mut out = vec![ZERO; 16];
        self.rhs_into(state.rho.as_slice(), &mut out);
        ComplexMatrix::from_vec(4, out).expect("finite derivative")
    }

    /// Steps for `[0, t_end]` at 400 per Rabi period, at least 10.
    pub fn default_steps(&self, t_end: f64) -> usize {
        default_steps(&self.params, self.gamma, t_end)
    }

    /// Integrates from `t = 0`, keeping every `stride`-th grid point and the
    /// last one.
    pub fn evolve(
        &self,
        rho0: &ReducedState,
        t_end: f64,
        steps: usize,
        stride: usize,
    ) -> Result<Vec<(f64, ReducedState)>> {
        ReducedState::new(rho0.rho.clone())?;
        let problem = OdeProblem::new(
            |_, y, dy| {
                self.rhs_into(bytemuck::cast_slice(y), bytemuck::cast_slice_mut(dy));
            },
            0.0,
            rho0.rho.to_interleaved(),
        );
        let stride = stride.max(1);
        let mut out = Vec::with_capacity(steps / stride + 2);
        integrate_with(&problem, t_end, steps, |i, t, y| {
            if i % stride != 0 && i != steps {
                return Ok(());
            }
            let rho = ComplexMatrix::from_interleaved(4, y)?;
            let min = hermitian_eigvals(&rho)[0];
            if min < -crate::full_model::POSITIVITY_ABORT {
                return Err(Error::Positivity {
                    min_eigenvalue: min,
                    t,
                });
            }
            out.push((t, ReducedState { rho }));
            Ok(())
        })?;
        Ok(out)
    }
}

pub fn default_steps(p: &EffectiveParams, gamma: f64, t_end: f64) -> usize {
    let rate = p.alpha.max(gamma).max(f64::MIN_POSITIVE);
    let steps = (t_end * rate / (2.0 * PI) * STEPS_PER_RABI_PERIOD).ceil();
    if steps.is_finite() {
        (steps as usize).max(10)
    } else {
        10
    }
}

pub fn reduced_rhs(state: &ReducedState, p: &EffectiveParams, gamma: f64) -> ComplexMatrix {
    ReducedModel::new(*p, gamma).rhs(state)
}

pub fn evolve_reduced(
    rho0: &ReducedState,
    p: &EffectiveParams,
    gamma: f64,
    t_end: f64,
    steps: usize,
) -> Result<Vec<(f64, ReducedState)>> {
    ReducedModel::new(*p, gamma).evolve(rho0, t_end, steps, 1)
}

/// Bloch equations plus the population sector:
///
/// ```text
/// u̇ = -γu + δ12 v
/// v̇ = -γv - δ12 u - 2Ω12 w
/// ẇ = -γw + 2Ω12 v
/// ρ̇44 = -2γρ44,  ρ̇++ = -γρ++ + 2γρ44,  ρ̇11 = γρ++
/// ```
pub fn bloch_rhs(b: &BlochState, p: &EffectiveParams, gamma: f64) -> BlochState {
    let (d, o) = (p.delta12, p.omega12);
    BlochState {
        u: -gamma * b.u + d * b.v,
        v: -gamma * b.v + (b.w * (-2.0 * o) - b.u * d),
        w: -gamma * b.w + 2.0 * o * b.v,
        rho11: gamma * b.rhopp,
        rhopp: -gamma * b.rhopp + 2.0 * gamma * b.rho44,
        rho44: -2.0 * gamma * b.rho44,
    }
}

pub fn evolve_bloch(
    b0: &BlochState,
    p: &EffectiveParams,
    gamma: f64,
    t_end: f64,
    steps: usize,
) -> Result<Vec<(f64, BlochState)>> {
    let p = *p;
    let problem = OdeProblem::new(
        move |_, y, dy| {
            let d = bloch_rhs(&BlochState::from_slice(y), &p, gamma).to_array();
            dy.copy_from_slice(&d);
        },
        0.0,
        b0.to_array().to_vec(),
    );
    let mut out = Vec::with_capacity(steps + 1);
    integrate_with(&problem, t_end, steps, |_, t, y| {
        out.push((t, BlochState::from_slice(y)));
        Ok(())
    })?;
    Ok(out)
}
