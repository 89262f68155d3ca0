// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Entanglement dynamics of two atoms coupled through a detuned cavity mode.

pub mod analytic;
pub mod commands;
pub mod concurrence;
pub mod config;
pub mod diffraction;
pub mod error;
pub mod full_model;
pub mod geometry;
pub mod lindblad;
pub mod linalg;
pub mod reduced;
pub mod roots;
pub mod trajectory;
pub mod validate;

pub use error::{Error, Result};
