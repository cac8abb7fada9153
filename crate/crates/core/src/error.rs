// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Error type shared by all simulator modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violated its domain invariant.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: String, message: String },

    /// m = 0 requested from the oscillator branch.
    #[error("zero-mode index is handled by zero_mode_energy, not the oscillator branch")]
    ZeroModeIndex,

    /// γ = 0 (or κ_tot = 0): the cooperativity diverges.
    #[error("infinite cooperativity: {0}")]
    InfiniteCooperativity(String),

    /// The adaptive integrator could not proceed.
    #[error("integration failed at t = {time:.6e} s: {message}")]
    IntegrationFailure { time: f64, message: String },

    /// A completed run violated a density-matrix integrity bound.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// A trace was compared against rates it was not produced with.
    #[error("rate set mismatch: {0}")]
    RateMismatch(String),
}

impl Error {
    pub fn invalid(name: &str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.to_string(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Finite and strictly positive (NaN and ±inf fail).
pub(crate) fn is_positive(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

/// Finite and non-negative (NaN and ±inf fail).
pub(crate) fn is_non_negative(v: f64) -> bool {
    v.is_finite() && v >= 0.0
}
