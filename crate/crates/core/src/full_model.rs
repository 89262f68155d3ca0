// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Two atoms plus a truncated cavity mode, integrated in the interaction
//! picture.
//!
//! The joint basis is `|atom1> ⊗ |atom2> ⊗ |n>` with single-atom ordering
//! `(g, e)`, so the atomic factor follows `|g1g2>, |g1e2>, |e1g2>, |e1e2>`.
//! The coupling is
//!
//! ```text
//! H(t) = Σ_j g_j (a S_j⁺ e^{+iΔt} + a† S_j⁻ e^{-iΔt})
//! ```
//!
//! whose second-order effective Hamiltonian in the cavity vacuum is
//! `+Σ_ij (g_i g_j / Δ) S_i⁺ S_j⁻`, the generator used by
//! [`crate::reduced`].

use std::f64::consts::PI;

use log::warn;

use crate::error::{Error, Result};
use crate::geometry::SystemParams;
use crate::lindblad::{Dissipator, SparseOperator};
use crate::linalg::{
    hermitian_eigvals, integrate_with, kron_all, partial_trace_second, ComplexMatrix, OdeProblem,
    C64, ZERO,
};

/// Integration steps per shortest period `2π/Δ`.
pub const STEPS_PER_DETUNING_PERIOD: f64 = 200.0;
/// Top-rung Fock population above which a truncation warning is raised.
pub const TOP_RUNG_WARNING: f64 = 1e-4;
/// Negative eigenvalue beyond which evolution is aborted.
pub const POSITIVITY_ABORT: f64 = 1e-6;

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FullModelConfig {
    pub g1: f64,
    pub g2: f64,
    pub sys: SystemParams,
    pub n_max: usize,
}

impl FullModelConfig {
    pub fn new(g1: f64, g2: f64, sys: SystemParams, n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Precondition("n_max must be at least 1".into()));
        }
        Ok(Self { g1, g2, sys, n_max })
    }

    pub fn fock_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        4 * self.fock_dim()
    }

    /// Step count for `[0, t_end]` at the default grid density.
    pub fn default_steps(&self, t_end: f64) -> usize {
        let fastest = self
            .sys
            .delta
            .abs()
            .max(self.g1.abs())
            .max(self.g2.abs())
            .max(f64::MIN_POSITIVE);
        ((t_end * fastest / (2.0 * PI)) * STEPS_PER_DETUNING_PERIOD)
            .ceil()
            .max(1.0) as usize
    }
}

/// Joint-space operators.
#[derive(Clone, Debug)]
pub struct FullOperators {
    pub s1_plus: ComplexMatrix,
    pub s1_minus: ComplexMatrix,
    pub s2_plus: ComplexMatrix,
    pub s2_minus: ComplexMatrix,
    pub a: ComplexMatrix,
    pub a_dag: ComplexMatrix,
    /// Photon number `a†a`.
    pub photon_number: ComplexMatrix,
    /// Atomic excitation numbers `S_j⁺S_j⁻`.
    pub atom1_number: ComplexMatrix,
    pub atom2_number: ComplexMatrix,
}

fn raising() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(1, 0)] = C64::new(1.0, 0.0);
    m
}

fn annihilation(fock_dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(fock_dim);
    for n in 1..fock_dim {
        m[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    m
}

pub fn build_operators(cfg: &FullModelConfig) -> FullOperators {
    let i2 = ComplexMatrix::identity(2);
    let i_f = ComplexMatrix::identity(cfg.fock_dim());
    let sp = raising();
    let sm = sp.adjoint();
    let af = annihilation(cfg.fock_dim());
    // tensor dimensions here are tiny; the products cannot overflow
    let embed = |x: &ComplexMatrix, y: &ComplexMatrix, z: &ComplexMatrix| {
        kron_all(&[x, y, z]).expect("small tensor product")
    };
    let s1_plus = embed(&sp, &i2, &i_f);
    let s1_minus = embed(&sm, &i2, &i_f);
    let s2_plus = embed(&i2, &sp, &i_f);
    let s2_minus = embed(&i2, &sm, &i_f);
    let a = embed(&i2, &i2, &af);
    let a_dag = a.adjoint();
    FullOperators {
        photon_number: &a_dag * &a,
        atom1_number: &s1_plus * &s1_minus,
        atom2_number: &s2_plus * &s2_minus,
        s1_plus,
        s1_minus,
        s2_plus,
        s2_minus,
        a,
        a_dag,
    }
}

/// Raising part `X = Σ_j g_j a S_j⁺`, so that `H(t) = e^{iΔt} X + h.c.`
fn raising_coupling(cfg: &FullModelConfig, ops: &FullOperators) -> ComplexMatrix {
    let x1 = (&ops.a * &ops.s1_plus).scale(C64::new(cfg.g1, 0.0));
    let x2 = (&ops.a * &ops.s2_plus).scale(C64::new(cfg.g2, 0.0));
    &x1 + &x2
}

pub fn hamiltonian(cfg: &FullModelConfig, t: f64) -> ComplexMatrix {
    let ops = build_operators(cfg);
    let x = raising_coupling(cfg, &ops);
    let phase = C64::from_polar(1.0, cfg.sys.delta * t);
    &x.scale(phase) + &x.adjoint().scale(phase.conj())
}

#[derive(Clone, Debug)]
pub struct FullState {
    pub rho: ComplexMatrix,
    pub t: f64,
}

impl FullState {
    /// Checks Hermiticity, unit trace and positivity at the default
    /// tolerances.
    pub fn validate(&self) -> Result<()> {
        validate_density(&self.rho, HERMITICITY_TOL, TRACE_TOL, POSITIVITY_TOL)
    }
}

pub(crate) fn validate_density(
    rho: &ComplexMatrix,
    herm_tol: f64,
    trace_tol: f64,
    pos_tol: f64,
) -> Result<()> {
    let defect = rho.hermiticity_defect();
    if defect > herm_tol {
        return Err(Error::InvalidState(format!(
            "not Hermitian (defect {defect:e})"
        )));
    }
    let tr = rho.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > trace_tol {
        return Err(Error::InvalidState(format!("trace {tr} is not 1")));
    }
    let min = hermitian_eigvals(rho)[0];
    if min < -pos_tol {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {min:e}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct FullTrajectory {
    pub samples: Vec<FullState>,
    /// Largest population of the top Fock rung over the sampled states.
    pub max_top_population: f64,
    pub warnings: Vec<String>,
}

/// Precomputed generator of the full master equation.
#[derive(Clone, Debug)]
pub struct FullModel {
    cfg: FullModelConfig,
    ops: FullOperators,
    coupling: SparseOperator,
    coupling_dag: SparseOperator,
    dissipators: Vec<Dissipator>,
}

impl FullModel {
    pub fn new(cfg: FullModelConfig) -> Self {
        let ops = build_operators(&cfg);
        let x = raising_coupling(&cfg, &ops);
        let dissipators = vec![
            Dissipator::new(cfg.sys.gamma, &ops.s1_minus),
            Dissipator::new(cfg.sys.gamma, &ops.s2_minus),
            Dissipator::new(cfg.sys.kappa, &ops.a),
        ];
        Self {
            coupling: SparseOperator::from_dense(&x),
            coupling_dag: SparseOperator::from_dense(&x.adjoint()),
            cfg,
            ops,
            dissipators,
        }
    }

    pub fn config(&self) -> &FullModelConfig {
        &self.cfg
    }

    pub fn operators(&self) -> &FullOperators {
        &self.ops
    }

    fn rhs_into(&self, t: f64, rho: &[C64], out: &mut [C64]) {
        out.fill(ZERO);
        let phase = C64::from_polar(1.0, self.cfg.sys.delta * t);
        self.coupling.add_commutator(phase, rho, out);
        self.coupling_dag.add_commutator(phase.conj(), rho, out);
        for d in &self.dissipators {
            d.add_to(rho, out);
        }
    }

    /// `dρ/dt = -i[H(t), ρ] + γ Σ_j D[S_j⁻]ρ + κ D[a]ρ`.
    pub fn lindblad_rhs(&self, state: &FullState) -> ComplexMatrix {
        let n = self.cfg.dim();
        let mut out = vec![ZERO; n * n];
        self.rhs_into(state.t, state.rho.as_slice(), &mut out);
        ComplexMatrix::from_vec(n, out).expect("finite derivative")
    }

    /// Population of the highest retained Fock state.
    pub fn top_rung_population(&self, rho: &ComplexMatrix) -> f64 {
        let f = self.cfg.fock_dim();
        (0..4)
            .map(|atoms| rho[(atoms * f + self.cfg.n_max, atoms * f + self.cfg.n_max)].re)
            .sum()
    }

    pub fn atomic_state(&self, state: &FullState) -> ComplexMatrix {
        atomic_state(state, self.cfg.fock_dim())
    }

    /// Integrates from `rho0` at `t = 0` and keeps every `stride`-th grid
    /// point (the last one always).
    pub fn evolve(
        &self,
        rho0: &ComplexMatrix,
        t_end: f64,
        steps: usize,
        stride: usize,
    ) -> Result<FullTrajectory> {
        let n = self.cfg.dim();
        if rho0.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rho0.dim(),
            });
        }
        validate_density(rho0, HERMITICITY_TOL, TRACE_TOL, POSITIVITY_TOL)?;

        let problem = OdeProblem::new(
            |t, y, dy| {
                let rho: &[C64] = bytemuck::cast_slice(y);
                let out: &mut [C64] = bytemuck::cast_slice_mut(dy);
                self.rhs_into(t, rho, out);
            },
            0.0,
            rho0.to_interleaved(),
        );
        let stride = stride.max(1);
        let mut samples = Vec::new();
        let mut max_top: f64 = 0.0;
        integrate_with(&problem, t_end, steps, |i, t, y| {
            if i % stride != 0 && i != steps {
                return Ok(());
            }
            let rho = ComplexMatrix::from_interleaved(n, y)?;
            let min = hermitian_eigvals(&rho)[0];
            if min < -POSITIVITY_ABORT {
                return Err(Error::Positivity {
                    min_eigenvalue: min,
                    t,
                });
            }
            max_top = max_top.max(self.top_rung_population(&rho));
            samples.push(FullState { rho, t });
            Ok(())
        })?;

        let mut warnings = Vec::new();
        if max_top > TOP_RUNG_WARNING {
            let msg = format!(
                "top Fock rung n = {} reached population {max_top:e}; raise n_max",
                self.cfg.n_max
            );
            warn!("{msg}");
            warnings.push(msg);
        }
        Ok(FullTrajectory {
            samples,
            max_top_population: max_top,
            warnings,
        })
    }
}

/// Reduced atomic state `Tr_F ρ`.
pub fn atomic_state(state: &FullState, fock_dim: usize) -> ComplexMatrix {
    partial_trace_second(&state.rho, 4, fock_dim).expect("joint dimension is 4 * fock_dim")
}

pub fn evolve_full(
    cfg: &FullModelConfig,
    rho0: &ComplexMatrix,
    t_end: f64,
    steps: usize,
) -> Result<FullTrajectory> {
    FullModel::new(*cfg).evolve(rho0, t_end, steps, 1)
}

/// `ρ_atoms ⊗ |0><0|`.
pub fn with_cavity_vacuum(atoms: &ComplexMatrix, n_max: usize) -> ComplexMatrix {
    let mut vac = ComplexMatrix::zeros(n_max + 1);
    vac[(0, 0)] = C64::new(1.0, 0.0);
    crate::linalg::kron(atoms, &vac).expect("small tensor product")
}
