// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Numerical substrate: dense complex matrices, tensor products, small
//! spectral solvers and the fixed-step integrator.

mod eigen;
mod matrix;
mod ode;

pub use eigen::{
    characteristic_polynomial, durand_kerner, eigvals4, hermitian_eig, hermitian_eigvals,
    singular_values, trace_distance, DK_MAX_ITERATIONS, DK_TOLERANCE,
};
pub use matrix::{kron, kron_all, partial_trace_second, pauli_y, ComplexMatrix, C64, I, ONE, ZERO};
pub use ode::{integrate, integrate_sampled, integrate_with, step_halving_discrepancy, OdeProblem};
