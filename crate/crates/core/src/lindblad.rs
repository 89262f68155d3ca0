// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad generator evaluation on row-major density-matrix slices.
//!
//! Operators are stored as their non-zero entries; the ladder and spin
//! operators of the models here have at most a few dozen of them.

use crate::linalg::{ComplexMatrix, C64, I};

#[derive(Clone, Debug)]
pub struct SparseOperator {
    dim: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl SparseOperator {
    pub fn from_dense(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = m[(i, j)];
                if v.norm_sqr() > 0.0 {
                    entries.push((i, j, v));
                }
            }
        }
        Self { dim: n, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `out += -i * factor * [self, rho]`.
    pub fn add_commutator(&self, factor: C64, rho: &[C64], out: &mut [C64]) {
        let n = self.dim;
        let f = -I * factor;
        for &(r, c, v) in &self.entries {
            let fv = f * v;
            for j in 0..n {
                out[r * n + j] += fv * rho[c * n + j];
            }
            for i in 0..n {
                out[i * n + c] -= fv * rho[i * n + r];
            }
        }
    }

    /// `out += factor * {self, rho}`.
    fn add_anticommutator(&self, factor: f64, rho: &[C64], out: &mut [C64]) {
        let n = self.dim;
        for &(r, c, v) in &self.entries {
            let fv = v * factor;
            for j in 0..n {
                out[r * n + j] += fv * rho[c * n + j];
            }
            for i in 0..n {
                out[i * n + c] += fv * rho[i * n + r];
            }
        }
    }

    /// `out += self * rho * self^dagger`.
    fn add_sandwich(&self, rho: &[C64], out: &mut [C64]) {
        let n = self.dim;
        for &(a, b, v) in &self.entries {
            for &(c, d, w) in &self.entries {
                out[a * n + c] += v * rho[b * n + d] * w.conj();
            }
        }
    }
}

/// Collapse channel `rate * D[op]`, with
/// `D[L]rho = L rho L^dagger - ½{L^dagger L, rho}`.
#[derive(Clone, Debug)]
pub struct Dissipator {
    rate: f64,
    op: SparseOperator,
    number: SparseOperator,
}

impl Dissipator {
    pub fn new(rate: f64, op: &ComplexMatrix) -> Self {
        let scaled = op.scale(C64::new(rate.sqrt(), 0.0));
        let number = &op.adjoint() * op;
        Self {
            rate,
            op: SparseOperator::from_dense(&scaled),
            number: SparseOperator::from_dense(&number),
        }
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn add_to(&self, rho: &[C64], out: &mut [C64]) {
        if self.rate == 0.0 {
            return;
        }
        self.op.add_sandwich(rho, out);
        self.number.add_anticommutator(-0.5 * self.rate, rho, out);
    }
}
