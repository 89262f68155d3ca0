// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cavent::analytic::{
    bloch_solution, concurrence_case_a, concurrence_case_b, concurrence_case_c, zero_times, Case,
    InitialBloch, ZeroSet,
};
use cavent::commands::cmd_compare;
use cavent::concurrence::{wootters, xstate_concurrence, TwoQubitDensity};
use cavent::config::RunConfig;
use cavent::diffraction::{
    concurrence_vs_position, optimum_positions, quarter_grid, scan, tau_to_time,
    variant_discrepancy, zero_positions, Variant, SCAN_POINTS,
};
use cavent::geometry::{
    effective_params, equal_detuning_separation, EffectiveParams, ModeGeometry, SystemParams,
};
use cavent::linalg::{ComplexMatrix, C64, ONE, ZERO};
use cavent::reduced::{bloch_from_density, default_steps, evolve_bloch, Preparation, ReducedModel};
use cavent::roots::golden_minimize;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

const G0: f64 = 1.0;
const DELTA: f64 = 20.0;

fn system(gamma: f64) -> SystemParams {
    SystemParams::new(DELTA, gamma, 0.0).unwrap()
}

fn params_at(r12: f64) -> EffectiveParams {
    let geom = ModeGeometry::on_axis(G0, 1.0).unwrap();
    let (g1, g2) = geom.coupling_pair(r12);
    effective_params(g1, g2, &system(0.0)).unwrap()
}

fn scaled_gamma(gamma_scaled: f64) -> f64 {
    gamma_scaled * 2.0 * G0 * G0 / DELTA
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t_end = tau_to_time(30.0 * PI, G0, DELTA);
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for prep in [Preparation::CaseA, Preparation::CaseB, Preparation::CaseC] {
        let init = InitialBloch::from_preparation(prep).unwrap();
        for i in 0..8 {
            let r12 = 0.25 * i as f64 / 7.0;
            let p = params_at(r12);
            for gs in [0.0, 0.05] {
                let gamma = scaled_gamma(gs);
                let steps = (default_steps(&p, gamma, t_end) * 5 / 2).max(2000);
                let traj = evolve_bloch(&prep.bloch_state(), &p, gamma, t_end, steps)
                    .map_err(|e| e.to_string())?;
                for (t, b) in &traj {
                    let [u, v, w] = bloch_solution(*t, &init, &p, gamma);
                    worst = worst.max((u - b.u).abs()).max((v - b.v).abs()).max((w - b.w).abs());
                }
                runs += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(worst <= 1e-8, || format!("max deviation {worst:e}"))?;
    ensure(secs < 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{runs} runs, max deviation {worst:.2e}, {secs:.2} s"))
}

fn density(m: ComplexMatrix) -> TwoQubitDensity {
    TwoQubitDensity::new(m).unwrap()
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
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
        let rho = density(m);
        let x = xstate_concurrence(&rho).map_err(|e| e.to_string())?;
        worst = worst.max((x - wootters(&rho)).abs());
    }
    ensure(worst <= 1e-10, || format!("max disagreement {worst:e}"))?;
    let s = C64::new(FRAC_1_SQRT_2, 0.0);
    let bell = wootters(&density(ComplexMatrix::outer(&[s, ZERO, ZERO, s])));
    let product = wootters(&density(ComplexMatrix::outer(&[ZERO, ONE, ZERO, ZERO])));
    ensure(bell == 1.0, || format!("Bell state gives {bell}"))?;
    ensure(product == 0.0, || format!("product state gives {product}"))?;
    Ok(format!("max |xstate - wootters| = {worst:.2e}, Bell = 1, product = 0"))
}

/// Zeros of the case-A concurrence on `[0, t_max]`, located by refining
/// the local minima of a dense sample.
fn located_zeros(p: &EffectiveParams, t_max: f64) -> Vec<f64> {
    let c = |t: f64| concurrence_case_a(t, p, 0.0).unwrap();
    let n = 40_000;
    let h = t_max / n as f64;
    let vals: Vec<f64> = (0..=n).map(|i| c(i as f64 * h)).collect();
    let mut zeros = Vec::new();
    if vals[0] == 0.0 {
        zeros.push(0.0);
    }
    for i in 1..n {
        if vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1] && vals[i] < 0.05 {
            let t = golden_minimize(c, (i - 1) as f64 * h, (i + 1) as f64 * h, 1e-12);
            if c(t) < 1e-6 {
                zeros.push(t);
            }
        }
    }
    zeros
}

fn check_lattice(found: &[f64], lattice: &[f64]) -> Result<f64, String> {
    ensure(found.len() == lattice.len(), || {
        format!("found {} zeros, expected {}", found.len(), lattice.len())
    })?;
    let mut worst: f64 = 0.0;
    for (a, b) in found.iter().zip(lattice) {
        worst = worst.max((a - b).abs());
    }
    ensure(worst <= 1e-6, || format!("zero off lattice by {worst:e}"))?;
    Ok(worst)
}

fn criterion_3() -> Outcome {
    let equal = params_at(0.0);
    let t_max = 6.0 * PI / equal.alpha + 0.5 / equal.alpha;
    let ZeroSet::Times(lat) = zero_times(Case::A, &equal, t_max) else {
        return Err("unexpected identically-zero case".into());
    };
    let e1 = check_lattice(&located_zeros(&equal, t_max), &lat)?;
    let spacing = lat[1] - lat[0];
    ensure((spacing - PI / equal.alpha).abs() < 1e-12, || "equal-coupling spacing is not π/α".into())?;

    let detuned = params_at(0.18);
    let peak = concurrence_case_a(PI / detuned.alpha, &detuned, 0.0).map_err(|e| e.to_string())?;
    ensure(peak > 0.9, || format!("C(π/α) = {peak}"))?;
    let t_max = 6.0 * PI / detuned.alpha + 0.5 / detuned.alpha;
    let ZeroSet::Times(lat) = zero_times(Case::A, &detuned, t_max) else {
        return Err("unexpected identically-zero case".into());
    };
    let e2 = check_lattice(&located_zeros(&detuned, t_max), &lat)?;
    ensure(((lat[1] - lat[0]) - 2.0 * PI / detuned.alpha).abs() < 1e-12, || {
        "displaced spacing is not 2π/α".into()
    })?;
    Ok(format!(
        "zeros on nπ/α (err {e1:.1e}) and on 2nπ/α (err {e2:.1e}), C(π/α) = {peak:.5}"
    ))
}

fn criterion_4() -> Outcome {
    let p = params_at(equal_detuning_separation());
    ensure((p.delta12 - 2.0 * p.omega12).abs() < 1e-14, || {
        format!("δ12 = {}, 2Ω12 = {}", p.delta12, 2.0 * p.omega12)
    })?;
    let period = PI / p.alpha;
    let c = |t: f64| concurrence_case_b(t, &p, 0.0).unwrap();
    let n = 10_000;
    let (imin, _) = (0..=n)
        .map(|i| c(period * i as f64 / n as f64))
        .enumerate()
        .fold((0, f64::INFINITY), |b, (i, v)| if v < b.1 { (i, v) } else { b });
    let lo = period * (imin.max(1) - 1) as f64 / n as f64;
    let hi = period * (imin + 1).min(n) as f64 / n as f64;
    let floor = c(golden_minimize(c, lo, hi, 1e-13));
    let err = (floor - FRAC_1_SQRT_2).abs();
    ensure(err <= 1e-9, || format!("floor {floor}, off by {err:e}"))?;
    Ok(format!("min C = {floor:.12} (1/√2 within {err:.1e})"))
}

fn criterion_5() -> Outcome {
    let locked = params_at(0.0);
    let mut worst: f64 = 0.0;
    for i in 0..=10_000 {
        let t = 20.0 * PI / locked.alpha * i as f64 / 10_000.0;
        worst = worst.max((concurrence_case_c(t, &locked, 0.0).unwrap() - 1.0).abs());
    }
    ensure(worst <= 1e-12, || format!("locking broken by {worst:e}"))?;

    let q = params_at(equal_detuning_separation());
    let ZeroSet::Times(lat) = zero_times(Case::C, &q, 20.0 * PI / q.alpha) else {
        return Err("unexpected identically-zero case".into());
    };
    ensure(lat.len() == 10, || format!("{} quenching times", lat.len()))?;
    let mut deepest: f64 = 0.0;
    for (k, &t) in lat.iter().enumerate() {
        let n = (t * q.alpha / PI).round() as i64;
        ensure(n == 2 * k as i64 + 1, || format!("quenching time {t} is not an odd multiple"))?;
        deepest = deepest.max(concurrence_case_c(t, &q, 0.0).unwrap());
    }
    ensure(deepest <= 1e-8, || format!("C at quenching time {deepest:e}"))?;
    let revival = concurrence_case_c(2.0 * PI / q.alpha, &q, 0.0).unwrap();
    Ok(format!(
        "locking deviation {worst:.1e}; C(nπ/α) ≤ {deepest:.1e} for odd n ≤ 19 (C(2π/α) = {revival:.3})"
    ))
}

fn compare(ratio: f64) -> Result<(f64, f64), String> {
    let mut cfg = RunConfig::default();
    for (k, v) in [
        ("g0", "1".to_string()),
        ("delta", ratio.to_string()),
        ("dr_a", "0".into()),
        ("init", "caseA".into()),
        ("nmax", "2".into()),
        ("tau_max", "4pi".into()),
        ("samples", "801".into()),
    ] {
        cfg.set(k, &v).map_err(|e| e.to_string())?;
    }
    let r = cmd_compare(&cfg).map_err(|e| e.to_string())?;
    Ok((r.max_trace_distance, r.max_top_population))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut dists = Vec::new();
    for ratio in [10.0, 20.0, 50.0] {
        dists.push(compare(ratio)?);
    }
    let secs = start.elapsed().as_secs_f64();
    let d50 = dists[2].0;
    ensure(d50 <= 0.06, || format!("trace distance {d50} at Δ/g0 = 50"))?;
    ensure(dists[0].0 > dists[1].0 && dists[1].0 > dists[2].0, || {
        format!("not monotone: {dists:?}")
    })?;
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "max trace distance {:.2e} / {:.2e} / {:.2e} at Δ/g0 = 10 / 20 / 50, top Fock population {:.1e}, {secs:.1} s",
        dists[0].0, dists[1].0, dists[2].0, dists[2].1
    ))
}

fn criterion_7() -> Outcome {
    let taus = [PI / 2.0, 4.5 * PI, 13.5 * PI];
    let zeros: Vec<usize> = taus.iter().map(|&t| zero_positions(t).len()).collect();
    ensure(zeros == [0, 1, 3], || format!("zero counts {zeros:?}"))?;
    let optima: Vec<Vec<f64>> = taus[..2].iter().map(|&t| optimum_positions(t)).collect();
    let counts: Vec<usize> = optima.iter().map(Vec::len).collect();
    ensure(counts == [1, 3], || format!("optimum counts {counts:?}"))?;
    let mut lowest: f64 = 1.0;
    for (tau, roots) in taus.iter().zip(&optima) {
        for &r in roots {
            lowest = lowest.min(concurrence_vs_position(r, *tau, 0.0, Variant::Canonical));
        }
    }
    ensure(lowest >= 1.0 - 1e-8, || format!("optimum evaluates to {lowest}"))?;
    Ok(format!("zeros {zeros:?}, optima {counts:?}, min C at optima {lowest:.12}"))
}

fn criterion_8() -> Outcome {
    let grid = quarter_grid(SCAN_POINTS);
    let s = scan(&[PI, 10.0 * PI, 28.0 * PI], &grid, 0.0, Variant::Canonical).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for j in 1..3 {
        let col = s.column(j);
        ensure(col[0] <= 1e-10, || format!("C(0) = {:e} at τ = {}", col[0], s.taus[j]))?;
        let (imax, max) = col
            .iter()
            .enumerate()
            .fold((0, 0.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
        ensure(max > 0.0 && imax > 0 && imax + 1 < col.len(), || {
            format!("no interior maximum at τ = {}", s.taus[j])
        })?;
        notes.push(format!("τ = {:.0}π: C(0) = {:.1e}, max {:.3} at r = {:.4}λ", s.taus[j] / PI, col[0], max, grid[imax]));
    }
    Ok(notes.join("; "))
}

fn criterion_9() -> Outcome {
    let t_end = tau_to_time(12.0 * PI, G0, DELTA);
    let mut worst: f64 = 0.0;
    for prep in [Preparation::CaseA, Preparation::CaseB, Preparation::CaseC] {
        for &r12 in &[0.0, 0.07, 0.18, 0.23] {
            for gs in [0.0, 0.05, 0.2] {
                let gamma = scaled_gamma(gs);
                let model = ReducedModel::new(params_at(r12), gamma);
                let steps = model.default_steps(t_end) * 2;
                let traj = model
                    .evolve(&prep.density().unwrap(), t_end, steps, 10)
                    .map_err(|e| e.to_string())?;
                for (t, s) in &traj {
                    let b = bloch_from_density(s).map_err(|e| e.to_string())?;
                    worst = worst.max((b.norm_sq() - (-2.0 * gamma * t).exp()).abs());
                }
            }
        }
    }
    ensure(worst <= 1e-8, || format!("norm deviation {worst:e}"))?;
    Ok(format!("max |u²+v²+w² - e^(-2γt)| = {worst:.2e}"))
}

fn criterion_10() -> Outcome {
    let taus = [PI / 2.0, 4.5 * PI, 13.5 * PI];
    let grid = quarter_grid(SCAN_POINTS);
    let (max, r, tau) = variant_discrepancy(&taus, &grid, 0.0).map_err(|e| e.to_string())?;
    ensure(max.is_finite(), || "non-finite discrepancy".into())?;
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("diffraction_discrepancy.txt");
    let body = format!(
        "grid_r_points={}\ngrid_taus={}\nmax_abs_difference={max:.11e}\nat_r12_over_lambda={r:.11e}\nat_tau={tau:.11e}\n",
        grid.len(),
        taus.iter().map(|t| format!("{t:.11e}")).collect::<Vec<_>>().join(","),
    );
    std::fs::write(&path, body).map_err(|e| e.to_string())?;
    criterion_7()?;
    criterion_8()?;
    Ok(format!(
        "max |literal - canonical| = {max:.4} at r = {r:.4}λ, τ = {:.1}π; written to {}",
        tau / PI,
        path.display()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("analytic Bloch solution matches RK4", criterion_1),
        ("x-state and Wootters concurrence agree", criterion_2),
        ("case A zero lattice", criterion_3),
        ("case B entanglement floor", criterion_4),
        ("case C locking and quenching", criterion_5),
        ("full model reduces to the effective model", criterion_6),
        ("diffraction zero and optimum counts", criterion_7),
        ("inverse diffraction pattern", criterion_8),
        ("Bloch norm decay", criterion_9),
        ("diffraction variant discrepancy report", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} criteria, {} failed", criteria.len(), failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
