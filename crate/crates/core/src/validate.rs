// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Self-checks run by `cavent validate`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{bloch_solution, concurrence_case_a, Case, InitialBloch};
use crate::concurrence::{wootters, xstate_concurrence, TwoQubitDensity};
use crate::diffraction::{
    concurrence_vs_position, optimum_positions, tau_to_time, zero_positions, Variant,
};
use crate::full_model::{with_cavity_vacuum, FullModel, FullModelConfig};
use crate::geometry::{effective_params, EffectiveParams, ModeGeometry, SystemParams};
use crate::linalg::{kron, ComplexMatrix, C64};
use crate::reduced::{evolve_bloch, reduced_rhs, BlochState, ReducedState};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&mut ChaCha8Rng) -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_density(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(4, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let m = &g * &g.adjoint();
    let m = m.scale(m.trace().inv());
    (&m + &m.adjoint()).scale(C64::new(0.5, 0.0))
}

fn random_params(rng: &mut ChaCha8Rng) -> EffectiveParams {
    EffectiveParams::from_bloch(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_unit(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let th: f64 = rng.gen_range(0.0..PI);
    let ph: f64 = rng.gen_range(0.0..2.0 * PI);
    [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]
}

fn reduced_generator_trace_free(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let st = ReducedState { rho: random_density(rng) };
        let d = reduced_rhs(&st, &random_params(rng), rng.gen_range(0.0..1.0));
        worst = worst.max(d.trace().norm());
    }
    ensure(worst < 1e-13, || format!("trace of generator {worst:e}"))?;
    Ok(format!("max |tr dρ/dt| = {worst:e}"))
}

fn xstate_matches_wootters(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
        let s: f64 = w.iter().sum();
        let p = w.map(|x| x / s);
        let r = (p[1] * p[2]).sqrt() * rng.gen_range(0.0..1.0);
        let phase = rng.gen_range(0.0..2.0 * PI);
        let mut m = ComplexMatrix::from_real_diagonal(&p);
        m[(1, 2)] = C64::from_polar(r, phase);
        m[(2, 1)] = C64::from_polar(r, -phase);
        let rho = TwoQubitDensity::new(m).map_err(|e| e.to_string())?;
        let x = xstate_concurrence(&rho).map_err(|e| e.to_string())?;
        worst = worst.max((x - wootters(&rho)).abs());
    }
    ensure(worst < 1e-10, || format!("largest disagreement {worst:e}"))?;
    Ok(format!("max difference {worst:e}"))
}

fn wootters_bounds_and_invariance(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let rho = random_density(rng);
        let c = wootters(&TwoQubitDensity::new(rho.clone()).map_err(|e| e.to_string())?);
        ensure((0.0..=1.0).contains(&c), || format!("concurrence {c} out of range"))?;
        let u = local_unitary(rng);
        let rot = &(&u * &rho) * &u.adjoint();
        let rot = (&rot + &rot.adjoint()).scale(C64::new(0.5, 0.0));
        let c2 = wootters(&TwoQubitDensity::new(rot).map_err(|e| e.to_string())?);
        worst = worst.max((c - c2).abs());
    }
    ensure(worst < 1e-9, || format!("local unitary changed concurrence by {worst:e}"))?;
    Ok(format!("max change under local unitaries {worst:e}"))
}

fn local_unitary(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut one = || {
        let (a, b, g, d): (f64, f64, f64, f64) = (
            rng.gen_range(0.0..6.3),
            rng.gen_range(0.0..6.3),
            rng.gen_range(0.0..6.3),
            rng.gen_range(0.0..1.6),
        );
        let mut u = ComplexMatrix::zeros(2);
        u[(0, 0)] = C64::from_polar(d.cos(), a);
        u[(0, 1)] = C64::from_polar(d.sin(), b);
        u[(1, 0)] = -C64::from_polar(d.sin(), g - b);
        u[(1, 1)] = C64::from_polar(d.cos(), g - a);
        u
    };
    let (a, b) = (one(), one());
    kron(&a, &b).expect("2x2 factors")
}

fn analytic_matches_numeric(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let p = random_params(rng);
        let gamma = rng.gen_range(0.0..0.1);
        let [u0, v0, w0] = random_unit(rng);
        let init = InitialBloch::new(u0, v0, w0).map_err(|e| e.to_string())?;
        let traj = evolve_bloch(&BlochState::single_excitation(u0, v0, w0), &p, gamma, 20.0, 8000)
            .map_err(|e| e.to_string())?;
        for (t, b) in &traj {
            let [u, v, w] = bloch_solution(*t, &init, &p, gamma);
            worst = worst.max((u - b.u).abs()).max((v - b.v).abs()).max((w - b.w).abs());
            let norm = b.norm_sq() - (-2.0 * gamma * t).exp();
            ensure(norm.abs() < 1e-8, || format!("Bloch norm off by {norm:e} at t = {t}"))?;
        }
    }
    ensure(worst < 1e-9, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:e}"))
}

fn case_formulas_bounded(rng: &mut ChaCha8Rng) -> Result<String, String> {
    for _ in 0..2000 {
        let p = random_params(rng);
        let t = rng.gen_range(0.0..100.0);
        let g = rng.gen_range(0.0..1.0);
        for case in [Case::A, Case::B, Case::C] {
            let c = case.concurrence(t, &p, g).map_err(|e| e.to_string())?;
            ensure((0.0..=1.0).contains(&c), || format!("{case:?} gave {c}"))?;
        }
    }
    Ok("all values in [0, 1]".into())
}

fn diffraction_structure(_: &mut ChaCha8Rng) -> Result<String, String> {
    let taus = [PI / 2.0, 4.5 * PI, 13.5 * PI];
    let zeros: Vec<usize> = taus.iter().map(|&t| zero_positions(t).len()).collect();
    ensure(zeros == [0, 1, 3], || format!("zero counts {zeros:?}"))?;
    let optima: Vec<usize> = taus[..2].iter().map(|&t| optimum_positions(t).len()).collect();
    ensure(optima == [1, 3], || format!("optimum counts {optima:?}"))?;
    for &tau in &taus {
        for r in zero_positions(tau) {
            let c = concurrence_vs_position(r, tau, 0.0, Variant::Canonical);
            ensure(c <= 1e-10, || format!("C = {c:e} at zero r = {r}"))?;
        }
        for r in optimum_positions(tau) {
            let c = concurrence_vs_position(r, tau, 0.0, Variant::Canonical);
            ensure(c >= 1.0 - 1e-8, || format!("C = {c} at optimum r = {r}"))?;
        }
    }
    Ok(format!("zeros {zeros:?}, optima {optima:?}"))
}

fn diffraction_matches_case_a(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let (g0, delta) = (1.0, 30.0);
    let geom = ModeGeometry::on_axis(g0, 1.0).map_err(|e| e.to_string())?;
    let sys = SystemParams::new(delta, 0.0, 0.0).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let r = rng.gen_range(-1.0..1.0);
        let tau = rng.gen_range(0.0..30.0 * PI);
        let (g1, g2) = geom.coupling_pair(r);
        let p = effective_params(g1, g2, &sys).map_err(|e| e.to_string())?;
        let a = concurrence_case_a(tau_to_time(tau, g0, delta), &p, 0.0).map_err(|e| e.to_string())?;
        let b = concurrence_vs_position(r, tau, 0.0, Variant::Canonical);
        worst = worst.max((a - b).abs());
        let shifted = concurrence_vs_position(r + 0.5, tau, 0.0, Variant::Canonical);
        ensure((shifted - b).abs() < 1e-12, || format!("not half-wavelength periodic at r = {r}"))?;
    }
    ensure(worst < 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:e}"))
}

fn full_model_preserves_density(_: &mut ChaCha8Rng) -> Result<String, String> {
    let sys = SystemParams::new(20.0, 0.01, 0.05).map_err(|e| e.to_string())?;
    let cfg = FullModelConfig::new(1.0, 0.6, sys, 2).map_err(|e| e.to_string())?;
    let model = FullModel::new(cfg);
    let rho0 = with_cavity_vacuum(&ReducedState::basis(2).rho, 2);
    let t_end = 10.0;
    let traj = model
        .evolve(&rho0, t_end, cfg.default_steps(t_end), 50)
        .map_err(|e| e.to_string())?;
    for s in &traj.samples {
        s.validate().map_err(|e| format!("t = {}: {e}", s.t))?;
    }
    Ok(format!("{} states valid", traj.samples.len()))
}

const CHECKS: [(&str, Check); 8] = [
    ("reduced generator is trace-free", reduced_generator_trace_free),
    ("x-state concurrence equals wootters", xstate_matches_wootters),
    ("wootters bounded and locally invariant", wootters_bounds_and_invariance),
    ("closed-form Bloch solution matches rk4", analytic_matches_numeric),
    ("case formulas bounded", case_formulas_bounded),
    ("diffraction zeros and optima", diffraction_structure),
    ("diffraction form equals case A formula", diffraction_matches_case_a),
    ("full model keeps a valid density", full_model_preserves_density),
];

pub fn run_all(seed: u64) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, check)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (passed, detail) = match check(&mut rng) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { name, passed, detail }
        })
        .collect()
}
