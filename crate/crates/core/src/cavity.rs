// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Luttinger-liquid ring cavity spectrum.
//!
//! A metallic nanotube bent into a closed ring of circumference L = 2πR
//! hosts collective charge-density waves. Periodic boundary conditions
//! quantize them into whispering-gallery-like modes ω_m = (v_c/R)|m|,
//! and the ring topology adds a zero-mode sector labelled by the excess
//! charge N_c and winding number J_c. A magnetic flux Φ through the ring
//! enters the spectrum as J_c → J_c + 4Φ/Φ₀ (fourfold spin-valley
//! degeneracy), which makes the resonance magnetically tunable.
//!
//! Ref: Giamarchi, "Quantum Physics in One Dimension" (2003), Ch. 2-3.
//!
//! All angular frequencies are rad/s; energies are joules.

use std::f64::consts::PI;

use crate::constants::{FLUX_QUANTUM, HBAR, SPEED_OF_LIGHT};
use crate::error::{is_positive, Error, Result};

/// Geometry and interaction parameters of the ring cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingParameters {
    /// Ring radius R (m).
    radius: f64,
    /// Charge-sector Luttinger parameter K_c, 0 < K_c ≤ 1.
    luttinger_k: f64,
    /// Fermi velocity v_F (m/s).
    fermi_velocity: f64,
}

impl RingParameters {
    pub fn new(radius: f64, luttinger_k: f64, fermi_velocity: f64) -> Result<Self> {
        if !is_positive(radius) {
            return Err(Error::invalid("R", format!("must be > 0, got {radius}")));
        }
        if !(luttinger_k > 0.0 && luttinger_k <= 1.0) {
            return Err(Error::invalid(
                "K_c",
                format!("must satisfy 0 < K_c <= 1, got {luttinger_k}"),
            ));
        }
        if !is_positive(fermi_velocity) {
            return Err(Error::invalid(
                "v_F",
                format!("must be > 0, got {fermi_velocity}"),
            ));
        }
        Ok(Self {
            radius,
            luttinger_k,
            fermi_velocity,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn luttinger_k(&self) -> f64 {
        self.luttinger_k
    }

    pub fn fermi_velocity(&self) -> f64 {
        self.fermi_velocity
    }

    /// Circumference L = 2πR (m).
    pub fn circumference(&self) -> f64 {
        2.0 * PI * self.radius
    }

    /// Renormalized charge-mode velocity v_c = v_F / K_c (m/s).
    pub fn charge_velocity(&self) -> f64 {
        self.fermi_velocity / self.luttinger_k
    }
}

/// Zero-mode quantum numbers: excess charge N_c and topological current J_c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ChargeState {
    pub n_c: i32,
    pub j_c: i32,
}

impl ChargeState {
    pub fn new(n_c: i32, j_c: i32) -> Self {
        Self { n_c, j_c }
    }
}

/// Magnetic flux through the ring, specified either directly in webers or
/// as a perpendicular field in tesla (Φ = πR²B). Exactly one representation
/// is the source of truth per instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FluxConfig {
    Flux { weber: f64 },
    Field { tesla: f64 },
}

impl FluxConfig {
    pub fn zero() -> Self {
        FluxConfig::Flux { weber: 0.0 }
    }

    /// Enclosed flux Φ in webers. Not wrapped modulo Φ₀: the zero-mode
    /// energy is a quadratic form in J_c + 4Φ/Φ₀, not a periodic function
    /// of Φ alone.
    pub fn flux(&self, ring: &RingParameters) -> f64 {
        match *self {
            FluxConfig::Flux { weber } => weber,
            FluxConfig::Field { tesla } => PI * ring.radius * ring.radius * tesla,
        }
    }

    /// Φ/Φ₀ with Φ₀ = h/e.
    pub fn flux_over_quantum(&self, ring: &RingParameters) -> f64 {
        self.flux(ring) / FLUX_QUANTUM
    }
}

/// Sign of the winding-number change ΔJ_c = ±1 accompanying a cavity
/// excitation. Which branch the emission selects is left to the caller;
/// both are exposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(&self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// One flux-resolved cavity resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    /// Azimuthal mode index, m ≠ 0.
    pub m: i32,
    pub branch: Branch,
    /// Resonance angular frequency ω_c(Φ) (rad/s).
    pub omega_c: f64,
    /// Zero-mode energy of the underlying charge state (J).
    pub zero_mode_energy: f64,
}

/// Zero-mode energy
/// E = (πħ v_c / 2L) [N_c²/K_c + K_c (J_c + 4Φ/Φ₀)²]  (joules).
///
/// Non-negative for all inputs; the oscillator zero-point sum is dropped
/// (only energy differences enter the resonance).
pub fn zero_mode_energy(ring: &RingParameters, charge: &ChargeState, flux: &FluxConfig) -> f64 {
    let v_c = ring.charge_velocity();
    let l = ring.circumference();
    let k = ring.luttinger_k();
    let n = f64::from(charge.n_c);
    let j_shifted = f64::from(charge.j_c) + 4.0 * flux.flux_over_quantum(ring);
    (PI * HBAR * v_c / (2.0 * l)) * (n * n / k + k * j_shifted * j_shifted)
}

/// Oscillator-branch dispersion ω_m = (v_c/R)|m| (rad/s), m ≠ 0.
pub fn mode_frequency(ring: &RingParameters, m: i32) -> Result<f64> {
    if m == 0 {
        return Err(Error::ZeroModeIndex);
    }
    Ok(ring.charge_velocity() / ring.radius() * f64::from(m.unsigned_abs()))
}

/// Fundamental mode spacing ω_{m=1}/2π = v_c/L in ordinary Hz.
pub fn mode_spacing(ring: &RingParameters) -> f64 {
    ring.charge_velocity() / ring.circumference()
}

/// Effective plasmonic wavelength λ_eff = v_c/ν (m) for an ordinary
/// frequency ν in Hz.
pub fn effective_wavelength(ring: &RingParameters, frequency_hz: f64) -> Result<f64> {
    if !is_positive(frequency_hz) {
        return Err(Error::invalid(
            "frequency",
            format!("must be > 0 Hz, got {frequency_hz}"),
        ));
    }
    Ok(ring.charge_velocity() / frequency_hz)
}

/// Free-space-to-plasmon compression ratio λ₀/λ_eff = c/v_c.
pub fn compression_ratio(ring: &RingParameters) -> f64 {
    SPEED_OF_LIGHT / ring.charge_velocity()
}

/// Flux-tunable cavity resonance for a ΔJ_c = ±1 excitation:
///
/// ω_c(Φ) = (π v_c K_c / 2L) [±2(J_c + 4Φ/Φ₀) + 1] + ω_m.
///
/// Affine in Φ at fixed (J_c, m, branch).
pub fn cavity_resonance(
    ring: &RingParameters,
    charge: &ChargeState,
    flux: &FluxConfig,
    m: i32,
    branch: Branch,
) -> Result<SpectrumPoint> {
    let omega_m = mode_frequency(ring, m)?;
    let v_c = ring.charge_velocity();
    let l = ring.circumference();
    let k = ring.luttinger_k();
    let j_shifted = f64::from(charge.j_c) + 4.0 * flux.flux_over_quantum(ring);
    let bracket = branch.sign() * 2.0 * j_shifted + 1.0;
    let omega_c = (PI * v_c * k / (2.0 * l)) * bracket + omega_m;
    Ok(SpectrumPoint {
        m,
        branch,
        omega_c,
        zero_mode_energy: zero_mode_energy(ring, charge, flux),
    })
}
