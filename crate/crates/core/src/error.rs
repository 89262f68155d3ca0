// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension overflow: {0} x {1}")]
    DimensionOverflow(usize, usize),

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("root iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("non-finite state at integration step {step} (t = {t})")]
    NonFiniteState { step: usize, t: f64 },

    #[error("invalid integration request: {0}")]
    InvalidGrid(String),

    #[error("dispersive model invalid: detuning must be non-zero")]
    ZeroDetuning,

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("truncation or step failure: minimum eigenvalue {min_eigenvalue:e} at t = {t}")]
    Positivity { min_eigenvalue: f64, t: f64 },

    #[error("state is outside the single-excitation sector (coherence {magnitude:e}); use wootters")]
    OutsideSector { magnitude: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("square-root argument {0:e} is negative beyond rounding")]
    NegativeRadicand(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
