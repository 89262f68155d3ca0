// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Python bindings for `cavent`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cavent::analytic::Case;
use cavent::commands::{cmd_compare, cmd_evolve, exit_code, EXIT_USAGE};
use cavent::concurrence::TwoQubitDensity;
use cavent::config::RunConfig;
use cavent::diffraction::Variant;
use cavent::geometry::{self, SystemParams};
use cavent::linalg::ComplexMatrix;

fn py_err(e: cavent::Error) -> PyErr {
    if exit_code(&e) == EXIT_USAGE {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn parse<T: std::str::FromStr<Err = cavent::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(py_err)
}

/// Couplings reduced to the two-level pseudospin parameters.
#[pyclass(frozen, get_all, from_py_object, module = "cavent_py")]
#[derive(Clone, Copy)]
struct EffectiveParams {
    delta1: f64,
    delta2: f64,
    delta12: f64,
    omega12: f64,
    alpha: f64,
    theta: f64,
}

#[pymethods]
impl EffectiveParams {
    #[new]
    #[pyo3(signature = (g1, g2, delta, gamma = 0.0, kappa = 0.0))]
    fn new(g1: f64, g2: f64, delta: f64, gamma: f64, kappa: f64) -> PyResult<Self> {
        let sys = SystemParams::new(delta, gamma, kappa).map_err(py_err)?;
        Ok(geometry::effective_params(g1, g2, &sys).map_err(py_err)?.into())
    }

    fn __repr__(&self) -> String {
        format!(
            "EffectiveParams(delta12={}, omega12={}, alpha={})",
            self.delta12, self.omega12, self.alpha
        )
    }
}

impl From<geometry::EffectiveParams> for EffectiveParams {
    fn from(p: geometry::EffectiveParams) -> Self {
        let geometry::EffectiveParams { delta1, delta2, delta12, omega12, alpha, theta } = p;
        Self { delta1, delta2, delta12, omega12, alpha, theta }
    }
}

impl From<EffectiveParams> for geometry::EffectiveParams {
    fn from(p: EffectiveParams) -> Self {
        let EffectiveParams { delta1, delta2, delta12, omega12, alpha, theta } = p;
        Self { delta1, delta2, delta12, omega12, alpha, theta }
    }
}

/// Closed-form concurrence of preparation `case` ("A", "B" or "C") at time `t`.
#[pyfunction]
#[pyo3(signature = (case, t, params, gamma = 0.0))]
fn case_concurrence(case: &str, t: f64, params: EffectiveParams, gamma: f64) -> PyResult<f64> {
    let case = match case.trim_start_matches("case").to_ascii_uppercase().as_str() {
        "A" => Case::A,
        "B" => Case::B,
        "C" => Case::C,
        other => return Err(PyValueError::new_err(format!("unknown case {other:?}"))),
    };
    case.concurrence(t, &params.into(), gamma).map_err(py_err)
}

/// Wootters concurrence of a 4x4 density matrix given as nested lists.
#[pyfunction]
fn wootters(rho: Vec<Vec<Complex64>>) -> PyResult<f64> {
    if rho.len() != 4 || rho.iter().any(|row| row.len() != 4) {
        return Err(PyValueError::new_err("density matrix must be 4x4"));
    }
    let m = ComplexMatrix::from_fn(4, |i, j| rho[i][j]);
    Ok(cavent::concurrence::wootters(&TwoQubitDensity::new(m).map_err(py_err)?))
}

#[pyfunction]
#[pyo3(signature = (r12, tau, gamma = 0.0, variant = "canonical"))]
fn concurrence_vs_position(r12: f64, tau: f64, gamma: f64, variant: &str) -> PyResult<f64> {
    let v: Variant = parse(variant)?;
    Ok(cavent::diffraction::concurrence_vs_position(r12, tau, gamma, v))
}

/// Separations in [0, λ/4) where the lossless concurrence vanishes.
#[pyfunction]
fn zero_positions(tau: f64) -> Vec<f64> {
    cavent::diffraction::zero_positions(tau)
}

/// Separations in [0, λ/4) where the lossless concurrence reaches one.
#[pyfunction]
fn optimum_positions(tau: f64) -> Vec<f64> {
    cavent::diffraction::optimum_positions(tau)
}

#[pyfunction]
fn equal_detuning_separation() -> f64 {
    geometry::equal_detuning_separation()
}

fn config_from(kwargs: Option<&Bound<'_, PyDict>>) -> PyResult<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(kw) = kwargs {
        for (k, v) in kw.iter() {
            let key: String = k.extract()?;
            let value = v.str()?.to_string();
            cfg.set(&key, &value).map_err(py_err)?;
        }
    }
    Ok(cfg)
}

/// Run one trajectory. Keyword arguments use the CLI option names
/// (`r12=0.1, init="caseB", tier="analytic"`). Returns a dict of columns.
#[pyfunction]
#[pyo3(signature = (**kwargs))]
fn evolve(kwargs: Option<&Bound<'_, PyDict>>) -> PyResult<BTreeMap<&'static str, Vec<f64>>> {
    let cfg = config_from(kwargs)?;
    let traj = cmd_evolve(&cfg).map_err(py_err)?;
    let mut cols: BTreeMap<&'static str, Vec<f64>> = BTreeMap::new();
    for s in &traj.samples {
        for (name, x) in [
            ("tau", s.tau),
            ("t", s.t),
            ("u", s.u),
            ("v", s.v),
            ("w", s.w),
            ("rho11", s.rho11),
            ("rho22", s.rho22),
            ("rho33", s.rho33),
            ("rho44", s.rho44),
            ("concurrence", s.concurrence),
        ] {
            cols.entry(name).or_default().push(x);
        }
    }
    Ok(cols)
}

/// Full cavity model against the reduced model.
#[pyfunction]
#[pyo3(signature = (**kwargs))]
fn compare<'py>(py: Python<'py>, kwargs: Option<&Bound<'py, PyDict>>) -> PyResult<Bound<'py, PyDict>> {
    let report = cmd_compare(&config_from(kwargs)?).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("max_trace_distance", report.max_trace_distance)?;
    d.set_item("max_top_fock_population", report.max_top_population)?;
    d.set_item("tolerance", report.tolerance)?;
    d.set_item("passed", report.passed)?;
    d.set_item("samples", report.samples)?;
    d.set_item("warnings", report.warnings)?;
    Ok(d)
}

/// Built-in invariant checks as `(name, passed, detail)` tuples.
#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn validate(seed: u64) -> Vec<(&'static str, bool, String)> {
    cavent::validate::run_all(seed)
        .into_iter()
        .map(|r| (r.name, r.passed, r.detail))
        .collect()
}

#[pymodule]
fn cavent_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EffectiveParams>()?;
    m.add_function(wrap_pyfunction!(case_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(wootters, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence_vs_position, m)?)?;
    m.add_function(wrap_pyfunction!(zero_positions, m)?)?;
    m.add_function(wrap_pyfunction!(optimum_positions, m)?)?;
    m.add_function(wrap_pyfunction!(equal_detuning_separation, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    Ok(())
}
