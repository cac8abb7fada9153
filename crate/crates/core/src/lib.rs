// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Simulator for a flux-tunable nanotube ring cavity coupled to a single
//! chiral quantum emitter.
//!
//! The crate has four layers, mirroring the physics:
//!
//! - [`cavity`]: Luttinger-liquid ring spectrum: whispering-gallery-like
//!   mode dispersion, the topological zero-mode sector, and the
//!   Aharonov-Bohm flux tuning of the resonance.
//! - [`chiral`]: evanescent spin-momentum locking: direction-dependent
//!   mode polarization, σ± selection-rule overlaps, the vacuum Rabi
//!   coupling estimate, and the fiber outcoupling bound.
//! - [`tripod`] / [`evolve`]: tripod dark-state transfer: the
//!   single-excitation Hamiltonian, the six-channel Lindblad master
//!   equation, and an adaptive integrator with fiber/intrinsic emission
//!   bookkeeping.
//! - [`fidelity`]: extraction/cooperativity/fidelity formulas and the
//!   analytic-versus-numeric cross check.
//!
//! Conventions: angular frequencies in rad/s everywhere ([`units`] holds
//! the GHz boundary conversions), SI lengths and energies, CODATA-2018
//! constants in [`constants`].

pub mod cavity;
pub mod chiral;
pub mod constants;
pub mod error;
pub mod evolve;
pub mod fidelity;
pub mod tripod;
pub mod units;

pub use error::{Error, Result};
