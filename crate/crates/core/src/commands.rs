// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Subcommand implementations behind the `cavent` binary.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::info;

use crate::analytic::{bloch_solution, populations_solution, Case, InitialBloch};
use crate::concurrence::{wootters, xstate_concurrence, TwoQubitDensity};
use crate::config::RunConfig;
use crate::diffraction::{
    concurrence_vs_position, optimum_positions, p_curve, q_curve, quarter_grid, scan,
    time_to_tau, DiffractionScan, ScaledUnits, Variant,
};
use crate::error::{Error, Result};
use crate::full_model::{with_cavity_vacuum, FullModel, FullModelConfig};
use crate::linalg::{trace_distance, ComplexMatrix, C64};
use crate::reduced::{density_from_bloch, BlochState, Preparation, ReducedModel};
use crate::trajectory::{format_value, Sample, Tier, Trajectory};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_)
        | Error::InvalidGrid(_)
        | Error::Precondition(_)
        | Error::ZeroDetuning
        | Error::InvalidState(_)
        | Error::OutsideSector { .. }
        | Error::DimensionMismatch { .. }
        | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_NUMERIC,
    }
}

fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + &m.adjoint()).scale(C64::new(0.5, 0.0))
}

fn density_concurrence(rho: &ComplexMatrix) -> Result<f64> {
    Ok(wootters(&TwoQubitDensity::new(hermitian_part(rho))?))
}

/// Integration steps adjusted to a multiple of `samples - 1`, and the
/// matching output stride.
fn grid(cfg: &RunConfig, default_steps: usize) -> (usize, usize) {
    let rows = cfg.samples.max(2) - 1;
    let steps = cfg.steps.unwrap_or(default_steps).max(rows);
    let stride = steps.div_ceil(rows);
    (stride * rows, stride)
}

fn analytic_trajectory(cfg: &RunConfig) -> Result<Vec<Sample>> {
    let p = cfg.effective()?;
    let init = InitialBloch::from_preparation(cfg.init)?;
    let case = match cfg.init {
        Preparation::CaseA => Some(Case::A),
        Preparation::CaseB => Some(Case::B),
        Preparation::CaseC => Some(Case::C),
        Preparation::Custom(..) => None,
    };
    let t_end = cfg.t_end();
    let rows = cfg.samples - 1;
    (0..=rows)
        .map(|i| {
            let t = t_end * i as f64 / rows as f64;
            let [u, v, w] = bloch_solution(t, &init, &p, cfg.gamma);
            let (rho11, rhopp, rho44) = populations_solution(t, 0.0, 1.0, 0.0, cfg.gamma)?;
            let b = BlochState { u, v, w, rho11, rhopp, rho44 };
            let c = match case {
                Some(case) => case.concurrence(t, &p, cfg.gamma)?,
                None => xstate_concurrence(&TwoQubitDensity::new(density_from_bloch(&b)?.rho)?)?,
            };
            Ok(Sample {
                tau: time_to_tau(t, cfg.g0, cfg.delta),
                t,
                u,
                v,
                w,
                rho11,
                rho22: 0.5 * (rhopp + w),
                rho33: 0.5 * (rhopp - w),
                rho44,
                concurrence: c,
            })
        })
        .collect()
}

/// Reduced-model states on the output grid.
pub fn reduced_states(cfg: &RunConfig) -> Result<Vec<(f64, ComplexMatrix)>> {
    let model = ReducedModel::new(cfg.effective()?, cfg.gamma);
    let t_end = cfg.t_end();
    let (steps, stride) = grid(cfg, model.default_steps(t_end));
    reduced_states_on(&model, cfg, steps, stride)
}

fn reduced_states_on(
    model: &ReducedModel,
    cfg: &RunConfig,
    steps: usize,
    stride: usize,
) -> Result<Vec<(f64, ComplexMatrix)>> {
    let rho0 = cfg.init.density()?;
    Ok(model
        .evolve(&rho0, cfg.t_end(), steps, stride)?
        .into_iter()
        .map(|(t, s)| (t, s.rho))
        .collect())
}

fn full_model(cfg: &RunConfig) -> Result<FullModel> {
    let (g1, g2) = cfg.couplings()?;
    Ok(FullModel::new(FullModelConfig::new(g1, g2, cfg.system()?, cfg.nmax)?))
}

pub struct FullRun {
    pub atomic: Vec<(f64, ComplexMatrix)>,
    pub max_top_population: f64,
    pub warnings: Vec<String>,
}

fn full_run(cfg: &RunConfig, model: &FullModel, steps: usize, stride: usize) -> Result<FullRun> {
    let rho0 = with_cavity_vacuum(&cfg.init.density()?.rho, cfg.nmax);
    let traj = model.evolve(&rho0, cfg.t_end(), steps, stride)?;
    Ok(FullRun {
        atomic: traj
            .samples
            .iter()
            .map(|s| (s.t, model.atomic_state(s)))
            .collect(),
        max_top_population: traj.max_top_population,
        warnings: traj.warnings,
    })
}

fn samples_from_states(cfg: &RunConfig, states: &[(f64, ComplexMatrix)]) -> Result<Vec<Sample>> {
    states
        .iter()
        .map(|(t, rho)| {
            Ok(Sample::from_density(
                time_to_tau(*t, cfg.g0, cfg.delta),
                *t,
                rho,
                density_concurrence(rho)?,
            ))
        })
        .collect()
}

/// Runs the configured tier and writes the CSV when `out` is set.
pub fn cmd_evolve(cfg: &RunConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let samples = match cfg.tier {
        Tier::Analytic => analytic_trajectory(cfg)?,
        Tier::Reduced => samples_from_states(cfg, &reduced_states(cfg)?)?,
        Tier::Full => {
            let model = full_model(cfg)?;
            let (steps, stride) = grid(cfg, model.config().default_steps(cfg.t_end()));
            let run = full_run(cfg, &model, steps, stride)?;
            samples_from_states(cfg, &run.atomic)?
        }
    };
    let traj = Trajectory {
        samples,
        tier: cfg.tier,
        metadata: cfg.describe(),
    };
    traj.check()?;
    if let Some(path) = &cfg.out {
        traj.save(path)?;
        info!("wrote {} samples to {}", traj.samples.len(), path.display());
    }
    Ok(traj)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareReport {
    pub max_trace_distance: f64,
    pub max_top_population: f64,
    /// `3 g0 / |Δ|`.
    pub tolerance: f64,
    pub passed: bool,
    pub samples: usize,
    pub warnings: Vec<String>,
}

impl CompareReport {
    pub fn render(&self) -> String {
        let mut s = format!(
            "max_trace_distance={}\nmax_top_fock_population={}\ntolerance={}\nsamples={}\nresult={}\n",
            format_value(self.max_trace_distance),
            format_value(self.max_top_population),
            format_value(self.tolerance),
            self.samples,
            if self.passed { "pass" } else { "fail" },
        );
        for w in &self.warnings {
            s.push_str(&format!("warning={w}\n"));
        }
        s
    }
}

/// Full model against the reduced model on a shared time grid.
pub fn cmd_compare(cfg: &RunConfig) -> Result<CompareReport> {
    cfg.validate()?;
    let full = full_model(cfg)?;
    let reduced = ReducedModel::new(cfg.effective()?, cfg.gamma);
    let (steps, stride) = grid(cfg, full.config().default_steps(cfg.t_end()));
    let run = full_run(cfg, &full, steps, stride)?;
    let red = reduced_states_on(&reduced, cfg, steps, stride)?;
    let max_trace_distance = run
        .atomic
        .iter()
        .zip(&red)
        .map(|((_, a), (_, b))| trace_distance(a, b))
        .fold(0.0, f64::max);
    let tolerance = 3.0 * cfg.g0.abs() / cfg.delta.abs();
    let report = CompareReport {
        max_trace_distance,
        max_top_population: run.max_top_population,
        tolerance,
        passed: max_trace_distance <= tolerance,
        samples: red.len(),
        warnings: run.warnings,
    };
    if let Some(path) = &cfg.out {
        std::fs::write(path, report.render())?;
    }
    Ok(report)
}

fn tau_column(tau: f64) -> String {
    format!("tau={}", format_value(tau))
}

pub fn write_scan<W: Write>(s: &DiffractionScan, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header = vec!["r12_over_lambda".to_string()];
    header.extend(s.taus.iter().map(|&t| tau_column(t)));
    w.write_record(&header)?;
    for (r, row) in s.r12.iter().zip(&s.values) {
        let mut rec = vec![format_value(*r)];
        rec.extend(row.iter().map(|x| format_value(*x)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Concurrence against separation for each requested scaled time.
pub fn cmd_scan(cfg: &RunConfig) -> Result<DiffractionScan> {
    cfg.validate()?;
    let gamma = ScaledUnits::from_physical(0.0, cfg.gamma, cfg.g0, cfg.delta)?.gamma;
    let s = scan(&cfg.taus, &quarter_grid(cfg.r_points), gamma, cfg.variant)?;
    if let Some(path) = &cfg.out {
        write_scan(&s, File::create(path)?)?;
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimaRow {
    pub tau: f64,
    pub r12: f64,
    pub concurrence: f64,
}

fn pq_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}_pq.csv"))
}

/// Roots of `p = q` for each scaled time. With `out` set, writes the root
/// table to `out` and the `p`, `q` curves to `<stem>_pq.csv`.
pub fn cmd_optima(cfg: &RunConfig) -> Result<Vec<OptimaRow>> {
    cfg.validate()?;
    if cfg.taus.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::Config("scaled times must be positive".into()));
    }
    let rows: Vec<OptimaRow> = cfg
        .taus
        .iter()
        .flat_map(|&tau| {
            optimum_positions(tau).into_iter().map(move |r| OptimaRow {
                tau,
                r12: r,
                concurrence: concurrence_vs_position(r, tau, 0.0, Variant::Canonical),
            })
        })
        .collect();
    if let Some(path) = &cfg.out {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(File::create(path)?);
        w.write_record(["tau", "r12_over_lambda", "concurrence"])?;
        for row in &rows {
            w.write_record([format_value(row.tau), format_value(row.r12), format_value(row.concurrence)])?;
        }
        w.flush()?;

        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(File::create(pq_path(path))?);
        let mut header = vec!["r12_over_lambda".to_string(), "q".to_string()];
        header.extend(cfg.taus.iter().map(|&t| format!("p_{}", tau_column(t))));
        w.write_record(&header)?;
        let n = cfg.r_points.max(2);
        for i in 0..n {
            // the node itself is excluded, q diverges there
            let r = 0.25 * i as f64 / n as f64;
            let mut rec = vec![format_value(r), format_value(q_curve(r))];
            rec.extend(cfg.taus.iter().map(|&t| format_value(p_curve(r, t))));
            w.write_record(&rec)?;
        }
        w.flush()?;
    }
    Ok(rows)
}
