// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Single-point commands and the row builders shared with the scan engine.

use cntring::cavity::cavity_resonance;
use cntring::chiral::{max_outcoupling, vacuum_coupling, Outcoupling};
use cntring::evolve::{integrate, DensityState, SimulationTrace, Tolerances};
use cntring::fidelity::compare_analytic_numeric;
use cntring::tripod::basis;
use cntring::units::{rad_s_to_ghz, s_to_ns};

use crate::config::{time_grid, Config};
use crate::csvfmt::{fmt_float, fmt_int};
use crate::error::Result;
use crate::manifest::IntegrationChecks;

/// One command's CSV payload plus the integrity diagnostics of any
/// integrations it ran.
pub struct CommandOutput {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub checks: Option<IntegrationChecks>,
}

pub const SPECTRUM_HEADER: [&str; 7] = [
    "m",
    "branch",
    "flux_wb",
    "flux_over_phi0",
    "omega_c_rad_s",
    "f_c_ghz",
    "e_zero_joule",
];

pub fn spectrum_row(config: &Config) -> Result<Vec<String>> {
    let point = cavity_resonance(
        &config.ring,
        &config.charge,
        &config.flux,
        config.mode_index,
        config.branch,
    )?;
    Ok(vec![
        fmt_int(i64::from(point.m)),
        fmt_int(point.branch.sign() as i64),
        fmt_float(config.flux.flux(&config.ring)),
        fmt_float(config.flux.flux_over_quantum(&config.ring)),
        fmt_float(point.omega_c),
        fmt_float(rad_s_to_ghz(point.omega_c)),
        fmt_float(point.zero_mode_energy),
    ])
}

pub fn spectrum_command(config: &Config) -> Result<CommandOutput> {
    Ok(CommandOutput {
        name: "spectrum".into(),
        header: SPECTRUM_HEADER.iter().map(|s| s.to_string()).collect(),
        rows: vec![spectrum_row(config)?],
        checks: None,
    })
}

pub const COUPLING_HEADER: [&str; 5] = [
    "g_rad_s",
    "g_ghz",
    "kappa_r_rad_s",
    "kappa_r_ghz",
    "bound_exceeded",
];

pub fn coupling_values(config: &Config) -> Result<(f64, Outcoupling)> {
    let g = vacuum_coupling(&config.coupling)?;
    let out = max_outcoupling(&config.fiber)?;
    Ok((g, out))
}

pub fn coupling_command(config: &Config) -> Result<CommandOutput> {
    let (g, out) = coupling_values(config)?;
    Ok(CommandOutput {
        name: "coupling".into(),
        header: COUPLING_HEADER.iter().map(|s| s.to_string()).collect(),
        rows: vec![vec![
            fmt_float(g),
            fmt_float(rad_s_to_ghz(g)),
            fmt_float(out.kappa_r),
            fmt_float(rad_s_to_ghz(out.kappa_r)),
            fmt_int(i64::from(out.bound_exceeded)),
        ]],
        checks: None,
    })
}

pub const TRACE_HEADER: [&str; 16] = [
    "t_ns",
    "pop_0vac",
    "pop_A2vac",
    "pop_m1_ph",
    "pop_p1_ph",
    "pop_m1_vac",
    "pop_p1_vac",
    "pop_sink",
    "n_plus",
    "n_minus",
    "p_fiber_plus",
    "p_fiber_minus",
    "p_int_plus",
    "p_int_minus",
    "trace_err",
    "adiabaticity",
];

pub fn run_integration(config: &Config, tol: Tolerances) -> Result<SimulationTrace> {
    let grid = time_grid(config);
    Ok(integrate(
        &DensityState::ground(),
        &config.pulse,
        &config.rates,
        &grid,
        tol,
    )?)
}

pub fn trace_rows(trace: &SimulationTrace) -> Vec<Vec<String>> {
    (0..trace.len())
        .map(|i| {
            let pops = &trace.populations[i];
            vec![
                fmt_float(s_to_ns(trace.times[i])),
                fmt_float(pops[basis::GROUND]),
                fmt_float(pops[basis::EXCITED]),
                fmt_float(pops[basis::PHOTON_PLUS]),
                fmt_float(pops[basis::PHOTON_MINUS]),
                fmt_float(pops[basis::SPIN_MINUS]),
                fmt_float(pops[basis::SPIN_PLUS]),
                fmt_float(pops[basis::SINK]),
                fmt_float(trace.n_plus[i]),
                fmt_float(trace.n_minus[i]),
                fmt_float(trace.p_fiber_plus[i]),
                fmt_float(trace.p_fiber_minus[i]),
                fmt_float(trace.p_intrinsic_plus[i]),
                fmt_float(trace.p_intrinsic_minus[i]),
                fmt_float(trace.trace_error[i]),
                fmt_float(trace.adiabaticity[i]),
            ]
        })
        .collect()
}

pub fn dynamics_command(config: &Config, tol: Tolerances) -> Result<CommandOutput> {
    let trace = run_integration(config, tol)?;
    Ok(CommandOutput {
        name: "dynamics".into(),
        header: TRACE_HEADER.iter().map(|s| s.to_string()).collect(),
        rows: trace_rows(&trace),
        checks: Some(IntegrationChecks::from_trace(&trace)),
    })
}

pub const FIDELITY_HEADER: [&str; 7] = [
    "kappa_0_ghz",
    "gamma_ghz",
    "eta_ext",
    "eta_int",
    "f_analytic",
    "f_numeric",
    "abs_gap",
];

pub fn fidelity_row(config: &Config, tol: Tolerances) -> Result<(Vec<String>, IntegrationChecks)> {
    let trace = run_integration(config, tol)?;
    let report = compare_analytic_numeric(&trace, &config.rates)?;
    let row = vec![
        fmt_float(rad_s_to_ghz(config.rates.kappa_0)),
        fmt_float(rad_s_to_ghz(config.rates.gamma)),
        fmt_float(report.eta_ext),
        fmt_float(report.eta_int),
        fmt_float(report.f_total_analytic),
        fmt_float(report.f_numeric.expect("numeric part present")),
        fmt_float(report.abs_gap.expect("numeric part present")),
    ];
    Ok((row, IntegrationChecks::from_trace(&trace)))
}

pub fn fidelity_command(config: &Config, tol: Tolerances) -> Result<CommandOutput> {
    let (row, checks) = fidelity_row(config, tol)?;
    Ok(CommandOutput {
        name: "fidelity".into(),
        header: FIDELITY_HEADER.iter().map(|s| s.to_string()).collect(),
        rows: vec![row],
        checks: Some(checks),
    })
}
