// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Analytic efficiency and fidelity estimates, cross-validated against
//! integrated dynamics.
//!
//! The success probability factorizes as F = η_ext · η_int with
//! η_ext = κ_ex/(κ_ex + κ_0) and η_int = C/(C+1), where
//! C = 2g²/(κ_tot γ) is the tripod cooperativity. In the overcoupled
//! limit the first-order expansion reads
//! (1 − κ_0/κ_ex)(1 − κ_tot γ/2g²) up to a pure-dephasing correction that
//! is only known as an order-of-magnitude bound and is therefore reported
//! symbolically, never subtracted.

use crate::error::{is_non_negative, is_positive, Error, Result};
use crate::evolve::SimulationTrace;
use crate::tripod::RateSet;

/// Symbolic form of the pure-dephasing correction in the expanded
/// fidelity. No coefficient is available, so it is carried as a bound.
pub const DEPHASING_CORRECTION_BOUND: &str = "O(gamma_phi * Omega_eff^2 / Delta^2)";

/// Analytic (and optionally numerical) fidelity breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport {
    /// η_ext = κ_ex/κ_tot.
    pub eta_ext: f64,
    /// C = 2g²/(κ_tot γ).
    pub cooperativity: f64,
    /// η_int = C/(C+1).
    pub eta_int: f64,
    /// F = η_ext · η_int.
    pub f_total_analytic: f64,
    /// First-order overcoupled expansion (1 − κ_0/κ_ex)(1 − κ_tot γ/2g²).
    pub f_total_expansion: f64,
    /// Symbolic bound on the neglected dephasing correction.
    pub dephasing_correction: &'static str,
    /// Total fiber-channel emission probability from a completed run.
    pub f_numeric: Option<f64>,
    /// |f_numeric − f_total_analytic|.
    pub abs_gap: Option<f64>,
    /// Set when the gap exceeds 0.02.
    pub gap_flagged: bool,
}

/// Gap above which the analytic/numeric comparison is flagged. Sized by
/// the mismatch between the large-detuning elimination behind η_int and
/// the Δ = 0 operating point of the reference run.
pub const GAP_FLAG_THRESHOLD: f64 = 0.02;

/// η_ext = κ_ex / (κ_ex + κ_0).
pub fn extraction_efficiency(kappa_ex: f64, kappa_0: f64) -> Result<f64> {
    if !is_non_negative(kappa_ex) || !is_non_negative(kappa_0) {
        return err_nonneg();
    }
    let total = kappa_ex + kappa_0;
    if total == 0.0 {
        return Err(Error::invalid(
            "kappa",
            "kappa_ex + kappa_0 must be > 0 for an extraction efficiency",
        ));
    }
    Ok(kappa_ex / total)
}

fn err_nonneg<T>() -> Result<T> {
    Err(Error::invalid("kappa", "rates must be >= 0"))
}

/// Tripod cooperativity C = 2g² / (κ_tot γ).
pub fn cooperativity(g: f64, kappa_tot: f64, gamma: f64) -> Result<f64> {
    if !is_non_negative(g) || !is_non_negative(kappa_tot) || !is_non_negative(gamma) {
        return Err(Error::invalid("rates", "must be >= 0"));
    }
    if kappa_tot == 0.0 || gamma == 0.0 {
        return Err(Error::InfiniteCooperativity(format!(
            "kappa_tot = {kappa_tot:e}, gamma = {gamma:e}"
        )));
    }
    Ok(2.0 * g * g / (kappa_tot * gamma))
}

/// η_int = C / (C + 1).
pub fn internal_efficiency(cooperativity: f64) -> Result<f64> {
    if cooperativity.is_nan() || cooperativity < 0.0 {
        return Err(Error::invalid("cooperativity", "must be >= 0"));
    }
    if cooperativity.is_infinite() {
        return Ok(1.0);
    }
    Ok(cooperativity / (cooperativity + 1.0))
}

fn require_detuned(delta: f64) -> Result<()> {
    if delta == 0.0 {
        return Err(Error::invalid(
            "Delta",
            "large-detuning rate formulas are undefined at Delta = 0; \
             the master equation remains the authority there",
        ));
    }
    Ok(())
}

/// Effective Raman coupling Ω_eff = Ω_p g / 2Δ.
pub fn effective_raman(omega_p: f64, g: f64, delta: f64) -> Result<f64> {
    require_detuned(delta)?;
    Ok(omega_p * g / (2.0 * delta))
}

/// Γ_transfer = 2 (Ω_p g / 2Δ)² / κ_tot.
pub fn transfer_rate(omega_p: f64, g: f64, delta: f64, kappa_tot: f64) -> Result<f64> {
    require_detuned(delta)?;
    if !is_positive(kappa_tot) {
        return Err(Error::invalid("kappa_tot", "must be > 0"));
    }
    let raman = omega_p * g / (2.0 * delta);
    Ok(2.0 * raman * raman / kappa_tot)
}

/// Γ_loss = (Ω_p / 2Δ)² γ.
pub fn loss_rate(omega_p: f64, delta: f64, gamma: f64) -> Result<f64> {
    require_detuned(delta)?;
    if !is_non_negative(gamma) {
        return Err(Error::invalid("gamma", "must be >= 0"));
    }
    let r = omega_p / (2.0 * delta);
    Ok(r * r * gamma)
}

/// Analytic fidelity breakdown for a rate set.
pub fn total_fidelity(rates: &RateSet) -> Result<FidelityReport> {
    rates.validate()?;
    let eta_ext = extraction_efficiency(rates.kappa_ex, rates.kappa_0)?;
    let (coop, eta_int) = if rates.gamma == 0.0 {
        // lossless emitter: the cooperativity diverges and η_int = 1
        (f64::INFINITY, 1.0)
    } else {
        let c = cooperativity(rates.g, rates.kappa_tot(), rates.gamma)?;
        (c, internal_efficiency(c)?)
    };
    let expansion = if rates.kappa_ex > 0.0 && rates.g > 0.0 {
        (1.0 - rates.kappa_0 / rates.kappa_ex)
            * (1.0 - rates.kappa_tot() * rates.gamma / (2.0 * rates.g * rates.g))
    } else {
        0.0
    };
    Ok(FidelityReport {
        eta_ext,
        cooperativity: coop,
        eta_int,
        f_total_analytic: eta_ext * eta_int,
        f_total_expansion: expansion,
        dephasing_correction: DEPHASING_CORRECTION_BOUND,
        f_numeric: None,
        abs_gap: None,
        gap_flagged: false,
    })
}

/// Complete a [`FidelityReport`] with the numerical counterpart from an
/// integrated run: F_numeric is the total fiber-channel emission
/// probability. Errors if the trace was produced with different rates.
pub fn compare_analytic_numeric(trace: &SimulationTrace, rates: &RateSet) -> Result<FidelityReport> {
    let run = trace.rates();
    if run != rates {
        return Err(Error::RateMismatch(format!(
            "trace was integrated with g={:e}, kappa_ex={:e}, kappa_0={:e}, gamma={:e}, \
             gamma_phi={:e}; comparison requested for g={:e}, kappa_ex={:e}, kappa_0={:e}, \
             gamma={:e}, gamma_phi={:e}",
            run.g,
            run.kappa_ex,
            run.kappa_0,
            run.gamma,
            run.gamma_phi,
            rates.g,
            rates.kappa_ex,
            rates.kappa_0,
            rates.gamma,
            rates.gamma_phi,
        )));
    }
    let mut report = total_fidelity(rates)?;
    let f_numeric = trace.fiber_emission_total();
    let gap = (f_numeric - report.f_total_analytic).abs();
    report.f_numeric = Some(f_numeric);
    report.abs_gap = Some(gap);
    report.gap_flagged = gap > GAP_FLAG_THRESHOLD;
    Ok(report)
}
