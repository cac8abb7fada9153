// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Unit conventions and conversions.
//!
//! Internally every frequency and rate is an *angular* frequency in rad/s.
//! User-facing "GHz" values are ordinary frequencies ν = ω/2π; the
//! conversion happens exactly once at an interface boundary through the
//! helpers below.

use std::f64::consts::TAU;

use crate::constants::DEBYE;

/// Ordinary frequency in GHz → angular frequency in rad/s.
pub fn ghz_to_rad_s(ghz: f64) -> f64 {
    ghz * 1e9 * TAU
}

/// Angular frequency in rad/s → ordinary frequency in GHz.
pub fn rad_s_to_ghz(omega: f64) -> f64 {
    omega / (1e9 * TAU)
}

/// Ordinary frequency in Hz → angular frequency in rad/s.
pub fn hz_to_rad_s(hz: f64) -> f64 {
    hz * TAU
}

/// Angular frequency in rad/s → ordinary frequency in Hz.
pub fn rad_s_to_hz(omega: f64) -> f64 {
    omega / TAU
}

/// Dipole moment in Debye → C·m.
pub fn debye_to_coulomb_meter(d: f64) -> f64 {
    d * DEBYE
}

pub fn nm_to_m(nm: f64) -> f64 {
    nm * 1e-9
}

pub fn um_to_m(um: f64) -> f64 {
    um * 1e-6
}

pub fn ns_to_s(ns: f64) -> f64 {
    ns * 1e-9
}

pub fn s_to_ns(s: f64) -> f64 {
    s * 1e9
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_round_trip() {
        let omega = ghz_to_rad_s(20.0);
        assert!((omega - 1.2566370614359172e11).abs() / omega < 1e-12);
        assert!((rad_s_to_ghz(omega) - 20.0).abs() < 1e-12);
    }

    #[test]
    fn debye_conversion() {
        assert!((debye_to_coulomb_meter(10.0) - 3.33564095e-29).abs() / 3.33564095e-29 < 1e-6);
    }
}
