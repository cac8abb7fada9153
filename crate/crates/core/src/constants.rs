// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Physical constants (CODATA 2018 / SI 2019 exact values).
//!
//! Everything downstream is derived from these; no other module hard-codes
//! a physical constant. Tests that compare against quoted literature values
//! use relative tolerances of 1e-4 or looser, so a future constants revision
//! cannot break them.

use std::f64::consts::PI;

/// Planck constant (J·s), exact by SI definition.
pub const PLANCK: f64 = 6.62607015e-34;

/// Reduced Planck constant ħ = h/2π (J·s).
pub const HBAR: f64 = PLANCK / (2.0 * PI);

/// Elementary charge (C), exact by SI definition.
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;

/// Speed of light in vacuum (m/s), exact by SI definition.
pub const SPEED_OF_LIGHT: f64 = 299792458.0;

/// Vacuum permittivity ε₀ (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.8541878128e-12;

/// Magnetic flux quantum Φ₀ = h/e (Wb). Single-charge convention, ≈ 4.1357e-15 Wb.
pub const FLUX_QUANTUM: f64 = PLANCK / ELEMENTARY_CHARGE;

/// One Debye in C·m (1 D = 10⁻²¹/c C·m ≈ 3.33564e-30 C·m).
pub const DEBYE: f64 = 1e-21 / SPEED_OF_LIGHT;
