// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form Bloch, population and concurrence dynamics.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::EffectiveParams;
use crate::reduced::Preparation;

/// Below this magnitude a negative square-root argument is treated as zero.
pub const RADICAND_SLACK: f64 = 1e-12;
/// Relative tolerance for deciding `|δ12| = 2|Ω12|` or `δ12 = 0`.
pub const CONDITION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialBloch {
    pub u0: f64,
    pub v0: f64,
    pub w0: f64,
}

impl InitialBloch {
    pub fn new(u0: f64, v0: f64, w0: f64) -> Result<Self> {
        if u0 * u0 + v0 * v0 + w0 * w0 > 1.0 + 1e-12 {
            return Err(Error::InvalidState(format!(
                "initial Bloch vector ({u0}, {v0}, {w0}) is longer than 1"
            )));
        }
        Ok(Self { u0, v0, w0 })
    }

    pub fn from_preparation(prep: Preparation) -> Result<Self> {
        let [u, v, w] = prep.bloch();
        Self::new(u, v, w)
    }

    /// `2Ω12 u0 - δ12 w0`.
    pub fn a_coef(&self, p: &EffectiveParams) -> f64 {
        2.0 * p.omega12 * self.u0 - p.delta12 * self.w0
    }

    /// `δ12 u0 + 2Ω12 w0`.
    pub fn b_coef(&self, p: &EffectiveParams) -> f64 {
        p.delta12 * self.u0 + 2.0 * p.omega12 * self.w0
    }
}

/// Undamped Bloch vector `(ū, v̄, w̄)` at time `t`.
pub fn bloch_undamped(t: f64, init: &InitialBloch, p: &EffectiveParams) -> [f64; 3] {
    let alpha = p.alpha;
    if alpha == 0.0 || t == 0.0 {
        return [init.u0, init.v0, init.w0];
    }
    let (a, b) = (init.a_coef(p), init.b_coef(p));
    let (s, c) = (alpha * t).sin_cos();
    let a2 = alpha * alpha;
    let (d, o2) = (p.delta12, 2.0 * p.omega12);
    let u = (o2 * a + d * b * c) / a2 + d * init.v0 * s / alpha;
    let v = init.v0 * c - b * s / alpha;
    let w = (-d * a + o2 * b * c) / a2 + o2 * init.v0 * s / alpha;
    [u, v, w]
}

/// Damped Bloch vector `(u, v, w) = e^{-γt}(ū, v̄, w̄)`.
pub fn bloch_solution(t: f64, init: &InitialBloch, p: &EffectiveParams, gamma: f64) -> [f64; 3] {
    let f = (-gamma * t).exp();
    bloch_undamped(t, init, p).map(|x| f * x)
}

/// `(ρ11, ρ++, ρ44)` at `t`.
pub fn populations_solution(
    t: f64,
    rho11_0: f64,
    rhopp_0: f64,
    rho44_0: f64,
    gamma: f64,
) -> Result<(f64, f64, f64)> {
    let sum = rho11_0 + rhopp_0 + rho44_0;
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!("populations sum to {sum}, not 1")));
    }
    let e1 = (-gamma * t).exp();
    let e2 = (-2.0 * gamma * t).exp();
    let rho44 = rho44_0 * e2;
    let rhopp = (rhopp_0 + 2.0 * rho44_0) * e1 - 2.0 * rho44_0 * e2;
    Ok((1.0 - rhopp - rho44, rhopp, rho44))
}

fn checked_sqrt(x: f64) -> Result<f64> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else if x >= -RADICAND_SLACK {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand(x))
    }
}

/// `e^{-γt} √(1 - w̄(t)²)` for a pure single-excitation preparation.
pub fn concurrence_single_excitation(
    t: f64,
    init: &InitialBloch,
    p: &EffectiveParams,
    gamma: f64,
) -> Result<f64> {
    let n2 = init.u0 * init.u0 + init.v0 * init.v0 + init.w0 * init.w0;
    if (n2 - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition(format!(
            "|B0|² = {n2}: the closed form needs a pure single-excitation state; use wootters"
        )));
    }
    let [_, _, wbar] = bloch_undamped(t, init, p);
    Ok(((-gamma * t).exp() * checked_sqrt(1.0 - wbar * wbar)?).min(1.0))
}

/// Initial state `|g1e2>`:
/// `e^{-γt} √(1 - [1 - (8Ω12²/α²) sin²(αt/2)]²)`.
pub fn concurrence_case_a(t: f64, p: &EffectiveParams, gamma: f64) -> Result<f64> {
    if p.alpha == 0.0 {
        return Ok(0.0);
    }
    let a2 = p.alpha * p.alpha;
    let k = 8.0 * p.omega12 * p.omega12 / a2;
    let (s, c) = (0.5 * p.alpha * t).sin_cos();
    // 1 - (1 - k s²)² = k s² (2c² + 2s² δ12²/α²), free of cancellation
    let rad = k * s * s * 2.0 * (c * c + s * s * p.delta12 * p.delta12 / a2);
    Ok((-gamma * t).exp() * checked_sqrt(rad)?.min(1.0))
}

/// Initial state `(|g1e2> + i|e1g2>)/√2`:
/// `e^{-γt} √(1 - (4Ω12²/α²) sin²αt)`.
pub fn concurrence_case_b(t: f64, p: &EffectiveParams, gamma: f64) -> Result<f64> {
    let decay = (-gamma * t).exp();
    if p.alpha == 0.0 {
        return Ok(decay);
    }
    let (s, c) = (p.alpha * t).sin_cos();
    let q = p.delta12 * p.delta12 / (p.alpha * p.alpha);
    Ok(decay * checked_sqrt(c * c + q * s * s)?.min(1.0))
}

/// Initial state `(|g1e2> + |e1g2>)/√2`:
/// `e^{-γt} √(1 - (16Ω12²δ12²/α⁴) sin⁴(αt/2))`.
pub fn concurrence_case_c(t: f64, p: &EffectiveParams, gamma: f64) -> Result<f64> {
    let decay = (-gamma * t).exp();
    if p.alpha == 0.0 {
        return Ok(decay);
    }
    let (o2, d) = (2.0 * p.omega12.abs(), p.delta12.abs());
    // 1 - 16Ω²δ²/α⁴ = ((4Ω² - δ²)/α²)²
    let m = (o2 - d) * (o2 + d) / (p.alpha * p.alpha);
    let (s, c) = (0.5 * p.alpha * t).sin_cos();
    let s2 = s * s;
    Ok(decay * checked_sqrt(c * c * (1.0 + s2) + s2 * s2 * m * m)?.min(1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    A,
    B,
    C,
}

impl Case {
    pub fn preparation(self) -> Preparation {
        match self {
            Case::A => Preparation::CaseA,
            Case::B => Preparation::CaseB,
            Case::C => Preparation::CaseC,
        }
    }

    pub fn concurrence(self, t: f64, p: &EffectiveParams, gamma: f64) -> Result<f64> {
        match self {
            Case::A => concurrence_case_a(t, p, gamma),
            Case::B => concurrence_case_b(t, p, gamma),
            Case::C => concurrence_case_c(t, p, gamma),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZeroSet {
    /// Concurrence vanishes at these times (ascending, within `[0, t_max]`).
    Times(Vec<f64>),
    /// Concurrence vanishes identically.
    Always,
}

impl ZeroSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, ZeroSet::Times(v) if v.is_empty())
    }
}

fn lattice(first: f64, spacing: f64, t_max: f64) -> Vec<f64> {
    (0..)
        .map(|n| first + n as f64 * spacing)
        .take_while(|&t| t <= t_max)
        .collect()
}

fn near_zero(x: f64, scale: f64) -> bool {
    x.abs() <= CONDITION_TOL * scale
}

/// Times in `[0, t_max]` at which the case formula vanishes.
pub fn zero_times(case: Case, p: &EffectiveParams, t_max: f64) -> ZeroSet {
    let alpha = p.alpha;
    let (d, o) = (p.delta12, p.omega12);
    match case {
        Case::A => {
            if near_zero(o, alpha) {
                return ZeroSet::Always;
            }
            if near_zero(d, alpha) {
                ZeroSet::Times(lattice(0.0, PI / alpha, t_max))
            } else {
                ZeroSet::Times(lattice(0.0, 2.0 * PI / alpha, t_max))
            }
        }
        Case::B => {
            if alpha > 0.0 && near_zero(d, alpha) {
                ZeroSet::Times(lattice(PI / (2.0 * alpha), PI / alpha, t_max))
            } else {
                ZeroSet::Times(Vec::new())
            }
        }
        Case::C => {
            if alpha > 0.0 && !near_zero(o, alpha) && near_zero(d.abs() - 2.0 * o.abs(), alpha) {
                ZeroSet::Times(lattice(PI / alpha, 2.0 * PI / alpha, t_max))
            } else {
                ZeroSet::Times(Vec::new())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::integrate;
    use crate::linalg::OdeProblem;
    use crate::reduced::{bloch_rhs, evolve_bloch, BlochState};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(d: f64, o: f64) -> EffectiveParams {
        EffectiveParams::from_bloch(d, o)
    }

    #[test]
    fn initial_values_are_exact() {
        let init = InitialBloch::new(0.3, -0.2, 0.6).unwrap();
        assert_eq!(bloch_solution(0.0, &init, &params(0.7, 0.4), 0.5), [0.3, -0.2, 0.6]);
        // the general expression also reduces to the initial data
        let p = params(0.7, 0.4);
        let (a, b) = (init.a_coef(&p), init.b_coef(&p));
        assert!((2.0 * p.omega12 * a + p.delta12 * b - p.alpha * p.alpha * init.u0).abs() < 1e-15);
    }

    #[test]
    fn resonant_case_a_rotation() {
        let o = 0.9;
        let init = InitialBloch::new(0.0, 0.0, 1.0).unwrap();
        for &t in &[0.1, 0.7, 2.3, 5.0] {
            let [u, v, w] = bloch_solution(t, &init, &params(0.0, o), 0.0);
            assert!(u.abs() < 1e-15);
            assert!((w - (2.0 * o * t).cos()).abs() < 1e-14);
            assert!((v + (2.0 * o * t).sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn matches_numeric_bloch_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let p = params(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let gamma = rng.gen_range(0.0..0.2);
            let (th, ph): (f64, f64) = (rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI));
            let init = InitialBloch::new(th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()).unwrap();
            let b0 = BlochState::single_excitation(init.u0, init.v0, init.w0);
            let traj = evolve_bloch(&b0, &p, gamma, 20.0, 8000).unwrap();
            for (t, b) in traj.iter().step_by(100) {
                let [u, v, w] = bloch_solution(*t, &init, &p, gamma);
                assert!((u - b.u).abs() < 1e-9 && (v - b.v).abs() < 1e-9 && (w - b.w).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn closed_form_populations_match_rk4() {
        let gamma = 0.35;
        let y0 = vec![0.1, 0.3, 0.6];
        let p = params(0.2, 0.3);
        let traj = integrate(
            &OdeProblem::new(
                move |_, y, dy| {
                    let b = BlochState { u: 0.0, v: 0.0, w: 0.0, rho11: y[0], rhopp: y[1], rho44: y[2] };
                    let d = bloch_rhs(&b, &p, gamma);
                    dy.copy_from_slice(&[d.rho11, d.rhopp, d.rho44]);
                },
                0.0,
                y0,
            ),
            10.0,
            4000,
        )
        .unwrap();
        for (t, y) in &traj {
            let (a, b, c) = populations_solution(*t, 0.1, 0.3, 0.6, gamma).unwrap();
            assert!((a - y[0]).abs() < 1e-12 && (b - y[1]).abs() < 1e-12 && (c - y[2]).abs() < 1e-12);
            assert!((a + b + c - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn populations_without_damping_are_frozen() {
        let (a, b, c) = populations_solution(3.0, 0.2, 0.5, 0.3, 0.0).unwrap();
        assert!((a - 0.2).abs() < 1e-15 && (b - 0.5).abs() < 1e-15 && c == 0.3);
        let (_, _, r44) = populations_solution(2.0, 0.0, 0.0, 1.0, 0.4).unwrap();
        assert!((r44 - (-1.6f64).exp()).abs() < 1e-16);
        assert!(populations_solution(0.0, 0.5, 0.5, 0.5, 0.1).is_err());
    }

    #[test]
    fn single_excitation_concurrence_extremes() {
        let p = params(0.0, 0.0);
        let pole = InitialBloch::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(concurrence_single_excitation(1.0, &pole, &p, 0.1).unwrap(), 0.0);
        let equator = InitialBloch::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(concurrence_single_excitation(2.0, &equator, &p, 0.0).unwrap(), 1.0);
        let mixed = InitialBloch::new(0.5, 0.0, 0.0).unwrap();
        assert!(concurrence_single_excitation(1.0, &mixed, &p, 0.0).is_err());
    }

    #[test]
    fn single_excitation_concurrence_is_twice_the_coherence() {
        let p = params(0.4, 0.7);
        let gamma = 0.1;
        let init = InitialBloch::new(0.6, 0.0, 0.8).unwrap();
        for i in 0..100 {
            let t = i as f64 * 0.13;
            let [u, v, _] = bloch_solution(t, &init, &p, gamma);
            let c = concurrence_single_excitation(t, &init, &p, gamma).unwrap();
            assert!((c - (u * u + v * v).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn case_formulas_match_single_excitation_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let p = params(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let gamma = rng.gen_range(0.0..0.2);
            let t = rng.gen_range(0.0..30.0);
            for case in [Case::A, Case::B, Case::C] {
                let init = InitialBloch::from_preparation(case.preparation()).unwrap();
                let a = case.concurrence(t, &p, gamma).unwrap();
                let b = concurrence_single_excitation(t, &init, &p, gamma).unwrap();
                assert!((a - b).abs() < 1e-10, "{case:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn rearranged_forms_match_direct_expressions() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..2000 {
            let p = params(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let (t, g): (f64, f64) = (rng.gen_range(0.0..50.0), rng.gen_range(0.0..0.2));
            let (a2, e) = (p.alpha * p.alpha, (-g * t).exp());
            let (o, d) = (p.omega12, p.delta12);
            let sh = (0.5 * p.alpha * t).sin();
            let wa = 1.0 - 8.0 * o * o / a2 * sh * sh;
            let direct_a = e * (1.0 - wa * wa).max(0.0).sqrt();
            let direct_b = e * (1.0 - 4.0 * o * o / a2 * (p.alpha * t).sin().powi(2)).max(0.0).sqrt();
            let direct_c = e * (1.0 - 16.0 * o * o * d * d / (a2 * a2) * sh.powi(4)).max(0.0).sqrt();
            assert!((concurrence_case_a(t, &p, g).unwrap() - direct_a).abs() < 1e-7);
            assert!((concurrence_case_b(t, &p, g).unwrap() - direct_b).abs() < 1e-7);
            assert!((concurrence_case_c(t, &p, g).unwrap() - direct_c).abs() < 1e-7);
            // away from the zeros the square root is well conditioned
            if direct_a > 1e-3 {
                assert!((concurrence_case_a(t, &p, g).unwrap() - direct_a).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn case_a_special_values() {
        let o = 0.5;
        let resonant = params(0.0, o);
        assert_eq!(concurrence_case_a(0.0, &resonant, 0.0).unwrap(), 0.0);
        let c = concurrence_case_a(PI / (2.0 * resonant.alpha), &resonant, 0.0).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
        let detuned = params(2.0 * o, o);
        let c = concurrence_case_a(PI / detuned.alpha, &detuned, 0.0).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
    }

    #[test]
    fn case_b_special_values() {
        let p = params(1.0, 0.5);
        assert_eq!(concurrence_case_b(0.0, &p, 0.3).unwrap(), 1.0);
        let floor = (0..10_000)
            .map(|i| concurrence_case_b(i as f64 * PI / p.alpha / 10_000.0, &p, 0.0).unwrap())
            .fold(1.0, f64::min);
        assert!((floor - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
        let resonant = params(0.0, 0.5);
        let c = concurrence_case_b(PI / (2.0 * resonant.alpha), &resonant, 0.0).unwrap();
        assert!(c < 1e-7);
    }

    #[test]
    fn case_c_locking_and_quenching() {
        let locking = params(0.0, 0.7);
        for i in 0..100 {
            let c = concurrence_case_c(i as f64 * 0.1, &locking, 0.0).unwrap();
            assert!((c - 1.0).abs() < 1e-12);
        }
        let q = params(1.4, 0.7);
        assert_eq!(concurrence_case_c(0.0, &q, 0.0).unwrap(), 1.0);
        for n in [1, 3, 5] {
            let c = concurrence_case_c(n as f64 * PI / q.alpha, &q, 0.0).unwrap();
            assert!(c < 1e-8, "n = {n}: {c}");
        }
    }

    #[test]
    fn degenerate_alpha_is_pure_decay() {
        let p = params(0.0, 0.0);
        assert_eq!(concurrence_case_a(1.0, &p, 0.2).unwrap(), 0.0);
        assert_eq!(concurrence_case_b(1.0, &p, 0.2).unwrap(), (-0.2f64).exp());
        assert_eq!(concurrence_case_c(1.0, &p, 0.2).unwrap(), (-0.2f64).exp());
    }

    #[test]
    fn zero_lattices() {
        let resonant = params(0.0, 0.5);
        let ZeroSet::Times(t) = zero_times(Case::A, &resonant, 10.0) else { panic!() };
        assert_eq!(t.len(), 4);
        assert!((t[1] - PI / resonant.alpha).abs() < 1e-15);
        let detuned = params(0.3, 0.5);
        let ZeroSet::Times(t) = zero_times(Case::A, &detuned, 30.0) else { panic!() };
        assert!((t[1] - 2.0 * PI / detuned.alpha).abs() < 1e-14);
        for &z in &t {
            assert!(concurrence_case_a(z, &detuned, 0.0).unwrap() < 1e-7);
            assert!(concurrence_case_a(z + PI / detuned.alpha, &detuned, 0.0).unwrap() > 0.1);
        }
        assert!(zero_times(Case::C, &detuned, 100.0).is_empty());
        assert!(zero_times(Case::B, &detuned, 100.0).is_empty());
        assert!(!zero_times(Case::C, &params(1.0, 0.5), 100.0).is_empty());
        assert_eq!(zero_times(Case::A, &params(0.3, 0.0), 1.0), ZeroSet::Always);
    }

    #[test]
    fn negative_radicand_is_reported() {
        assert!(checked_sqrt(-1e-13).unwrap() == 0.0);
        assert!(matches!(checked_sqrt(-1e-6), Err(Error::NegativeRadicand(_))));
    }

    proptest! {
        #[test]
        fn case_values_are_bounded(d in -2.0f64..2.0, o in -2.0f64..2.0, t in 0.0f64..100.0, g in 0.0f64..1.0) {
            let p = params(d, o);
            for case in [Case::A, Case::B, Case::C] {
                let c = case.concurrence(t, &p, g).unwrap();
                prop_assert!((0.0..=1.0).contains(&c));
            }
        }

        #[test]
        fn norm_decays_exponentially(d in -2.0f64..2.0, o in -2.0f64..2.0, t in 0.0f64..50.0,
                                     g in 0.0f64..0.5, th in 0.0f64..PI, ph in 0.0f64..6.28) {
            let init = InitialBloch::new(th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()).unwrap();
            let [u, v, w] = bloch_solution(t, &init, &params(d, o), g);
            prop_assert!((u * u + v * v + w * w - (-2.0 * g * t).exp()).abs() < 1e-12);
        }
    }
}
