// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-step classical Runge–Kutta integration of real vector systems.
//!
//! Complex matrices are integrated through their interleaved `[re, im]`
//! representation.

use crate::error::{Error, Result};

type Rhs<'a> = dyn Fn(f64, &[f64], &mut [f64]) + Sync + 'a;

/// An initial-value problem `y' = f(t, y)`, `y(t0) = y0`.
pub struct OdeProblem<'a> {
    rhs: Box<Rhs<'a>>,
    pub t0: f64,
    pub y0: Vec<f64>,
}

impl<'a> OdeProblem<'a> {
    /// `rhs(t, y, dy)` must write the derivative into `dy` and must not
    /// depend on anything but its arguments.
    pub fn new(
        rhs: impl Fn(f64, &[f64], &mut [f64]) + Sync + 'a,
        t0: f64,
        y0: Vec<f64>,
    ) -> Self {
        Self {
            rhs: Box::new(rhs),
            t0,
            y0,
        }
    }

    pub fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) {
        (self.rhs)(t, y, dy)
    }
}

struct Rk4Workspace {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4Workspace {
    fn new(n: usize) -> Self {
        Self {
            k1: vec![0.0; n],
            k2: vec![0.0; n],
            k3: vec![0.0; n],
            k4: vec![0.0; n],
            tmp: vec![0.0; n],
        }
    }

    fn step(&mut self, problem: &OdeProblem<'_>, t: f64, h: f64, y: &mut [f64]) {
        let half = 0.5 * h;
        problem.eval(t, y, &mut self.k1);
        for ((x, &y0), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k1) {
            *x = y0 + half * k;
        }
        problem.eval(t + half, &self.tmp, &mut self.k2);
        for ((x, &y0), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k2) {
            *x = y0 + half * k;
        }
        problem.eval(t + half, &self.tmp, &mut self.k3);
        for ((x, &y0), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k3) {
            *x = y0 + h * k;
        }
        problem.eval(t + h, &self.tmp, &mut self.k4);
        let sixth = h / 6.0;
        for i in 0..y.len() {
            y[i] += sixth * (self.k1[i] + 2.0 * (self.k2[i] + self.k3[i]) + self.k4[i]);
        }
    }
}

fn check_grid(problem: &OdeProblem<'_>, t_end: f64, steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidGrid("steps must be at least 1".into()));
    }
    if !(t_end > problem.t0) {
        return Err(Error::InvalidGrid(format!(
            "t_end = {t_end} must exceed t0 = {}",
            problem.t0
        )));
    }
    Ok(())
}

/// Integrates on the uniform grid of `steps` intervals, calling
/// `observe(step_index, t, y)` at every grid point including both endpoints.
/// Returns the final state.
pub fn integrate_with(
    problem: &OdeProblem<'_>,
    t_end: f64,
    steps: usize,
    mut observe: impl FnMut(usize, f64, &[f64]) -> Result<()>,
) -> Result<Vec<f64>> {
    check_grid(problem, t_end, steps)?;
    let span = t_end - problem.t0;
    let h = span / steps as f64;
    let mut y = problem.y0.clone();
    let mut work = Rk4Workspace::new(y.len());
    observe(0, problem.t0, &y)?;
    for i in 0..steps {
        let t = problem.t0 + span * (i as f64 / steps as f64);
        work.step(problem, t, h, &mut y);
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState { step: i + 1, t: t + h });
        }
        let t_next = if i + 1 == steps {
            t_end
        } else {
            problem.t0 + span * ((i + 1) as f64 / steps as f64)
        };
        observe(i + 1, t_next, &y)?;
    }
    Ok(y)
}

/// All `(t, y)` samples on the uniform grid, endpoints included.
pub fn integrate(
    problem: &OdeProblem<'_>,
    t_end: f64,
    steps: usize,
) -> Result<Vec<(f64, Vec<f64>)>> {
    let mut out = Vec::with_capacity(steps + 1);
    integrate_with(problem, t_end, steps, |_, t, y| {
        out.push((t, y.to_vec()));
        Ok(())
    })?;
    Ok(out)
}

/// Samples every `stride`-th grid point (plus the final one).
pub fn integrate_sampled(
    problem: &OdeProblem<'_>,
    t_end: f64,
    steps: usize,
    stride: usize,
) -> Result<Vec<(f64, Vec<f64>)>> {
    let stride = stride.max(1);
    let mut out = Vec::with_capacity(steps / stride + 2);
    integrate_with(problem, t_end, steps, |i, t, y| {
        if i % stride == 0 || i == steps {
            out.push((t, y.to_vec()));
        }
        Ok(())
    })?;
    Ok(out)
}

/// Largest endpoint discrepancy between runs with `steps` and `2 * steps`.
///
/// For a fourth-order method this overestimates the error of the finer run
/// by about a factor of fifteen.
pub fn step_halving_discrepancy(
    problem: &OdeProblem<'_>,
    t_end: f64,
    steps: usize,
) -> Result<f64> {
    let coarse = integrate_with(problem, t_end, steps, |_, _, _| Ok(()))?;
    let fine = integrate_with(problem, t_end, 2 * steps, |_, _, _| Ok(()))?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}
