// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Canned figure scans. Each figure pins the caption's parameter set as
//! fixed overrides on top of the active configuration, so the shipped
//! defaults reproduce the published panels regardless of local edits.

use cntring::constants::FLUX_QUANTUM;
use cntring::evolve::Tolerances;

use crate::config::{Config, GridKind, ScanSpec, ScanTarget};
use crate::error::{CliError, Result};
use crate::manifest::IntegrationChecks;
use crate::run::{dynamics_command, CommandOutput, FIDELITY_HEADER};
use crate::scan::{header_for, run_scan_spec};

pub const FIGURE_IDS: [&str; 7] = [
    "fig3-a",
    "fig3-b",
    "fig-couple-a",
    "fig-couple-b",
    "fig-couple-c",
    "fig-couple-d",
    "spectrum-flux",
];

fn float(v: f64) -> toml::Value {
    toml::Value::Float(v)
}

/// Caption parameters for the coupling panels: ω_c/2π = 193 THz,
/// |d| = 10 Debye, ε_r = 1, L_d = 5 nm, V_mode = 1.5e-22 m³; fiber side
/// λ_c = 1550 nm, ξ = 0.2, A_cnt = 1e-17 m², A_fiber = 1e-14 m²,
/// L_int = 0.2 μm, R = 2 μm.
fn coupling_fixed() -> Vec<(String, toml::Value)> {
    vec![
        ("coupling.omega_c_ghz".into(), float(193000.0)),
        ("coupling.dipole_debye".into(), float(10.0)),
        ("coupling.eps_r".into(), float(1.0)),
        ("coupling.l_d_nm".into(), float(5.0)),
        ("coupling.v_mode_m3".into(), float(1.5e-22)),
        ("coupling.x_nm".into(), float(10.0)),
    ]
}

fn fiber_fixed() -> Vec<(String, toml::Value)> {
    vec![
        ("fiber.lambda_c_nm".into(), float(1550.0)),
        ("fiber.xi".into(), float(0.2)),
        ("fiber.a_cnt_m2".into(), float(1e-17)),
        ("fiber.a_fiber_m2".into(), float(1e-14)),
        ("fiber.l_int_um".into(), float(0.2)),
        ("fiber.radius_um".into(), float(2.0)),
    ]
}

/// Reference tripod rates: g = 20, κ_ex = 30, κ_0 = 0.1, γ = 0.05,
/// γ_φ = 10 GHz at Δ = δ = 0, with the adiabatic sin² default pulse.
fn rates_fixed() -> Vec<(String, toml::Value)> {
    vec![
        ("rates.g_ghz".into(), float(20.0)),
        ("rates.pump_detuning_ghz".into(), float(0.0)),
        ("rates.cavity_detuning_ghz".into(), float(0.0)),
        ("rates.kappa_ex_ghz".into(), float(30.0)),
        ("rates.kappa_0_ghz".into(), float(0.1)),
        ("rates.gamma_ghz".into(), float(0.05)),
        ("rates.gamma_phi_ghz".into(), float(10.0)),
        ("rates.recycle_to_ground".into(), float(0.0)),
        ("pulse.kind".into(), toml::Value::String("sin2".into())),
        ("pulse.omega_max_ghz".into(), float(160.0)),
        ("pulse.t_on_ns".into(), float(0.0)),
        ("pulse.t_rise_ns".into(), float(0.5)),
        ("pulse.t_total_ns".into(), float(1.0)),
    ]
}

fn scan_output(
    name: &str,
    spec: &ScanSpec,
    config: &Config,
    tol: Tolerances,
) -> Result<CommandOutput> {
    let (rows, checks) = run_scan_spec(spec, &config.table, tol)?;
    Ok(CommandOutput {
        name: name.into(),
        header: header_for(spec),
        rows,
        checks,
    })
}

pub fn reproduce(figure: &str, config: &Config, tol: Tolerances) -> Result<CommandOutput> {
    match figure {
        // near-field decay of the vacuum coupling, x from 0 to 30 nm
        "fig-couple-a" => scan_output(
            figure,
            &ScanSpec {
                target: ScanTarget::CouplingG,
                parameter: "coupling.x_nm".into(),
                grid: GridKind::Linear,
                min: 0.0,
                max: 30.0,
                count: 61,
                fixed: coupling_fixed(),
            },
            config,
            tol,
        ),
        // mode-volume dependence g ∝ V^−1/2 at x = 10 nm
        "fig-couple-b" => scan_output(
            figure,
            &ScanSpec {
                target: ScanTarget::CouplingG,
                parameter: "coupling.v_mode_m3".into(),
                grid: GridKind::Logarithmic,
                min: 1e-24,
                max: 1e-20,
                count: 41,
                fixed: coupling_fixed(),
            },
            config,
            tol,
        ),
        // κ_R ∝ R at fixed fiber parameters (step 0.1 μm, R = 2 μm on-grid)
        "fig-couple-c" => {
            let mut out = scan_output(
                figure,
                &ScanSpec {
                    target: ScanTarget::CouplingKappa,
                    parameter: "fiber.radius_um".into(),
                    grid: GridKind::Linear,
                    min: 0.5,
                    max: 5.0,
                    count: 46,
                    fixed: fiber_fixed(),
                },
                config,
                tol,
            )?;
            out.header[0] = "r_um".into();
            Ok(out)
        }
        // mismatch-limited κ_R ∝ 1/A_fiber at R = 2 μm
        "fig-couple-d" => scan_output(
            figure,
            &ScanSpec {
                target: ScanTarget::CouplingKappa,
                parameter: "fiber.a_fiber_m2".into(),
                grid: GridKind::Logarithmic,
                min: 1e-15,
                max: 1e-12,
                count: 31,
                fixed: fiber_fixed(),
            },
            config,
            tol,
        ),
        // population dynamics of the reference transfer
        "fig3-a" => {
            let mut table = config.table.clone();
            for (path, value) in rates_fixed() {
                crate::config::apply_override(&mut table, &path, value)?;
            }
            let cfg = crate::config::config_from_table(table)?;
            let mut out = dynamics_command(&cfg, tol)?;
            out.name = figure.into();
            Ok(out)
        }
        // fidelity vs κ_0 under the extraction envelope, three γ curves
        "fig3-b" => {
            let mut rows = Vec::new();
            let mut checks: Option<IntegrationChecks> = None;
            for gamma_ghz in [0.01, 0.05, 0.5] {
                let mut fixed = rates_fixed();
                fixed.push(("rates.gamma_ghz".into(), float(gamma_ghz)));
                let spec = ScanSpec {
                    target: ScanTarget::Fidelity,
                    parameter: "rates.kappa_0_ghz".into(),
                    grid: GridKind::Logarithmic,
                    min: 0.01,
                    max: 3.0,
                    count: 20,
                    fixed,
                };
                let (mut curve, curve_checks) = run_scan_spec(&spec, &config.table, tol)?;
                rows.append(&mut curve);
                match (&mut checks, curve_checks) {
                    (Some(acc), Some(c)) => acc.merge(&c),
                    (acc @ None, Some(c)) => *acc = Some(c),
                    _ => {}
                }
            }
            Ok(CommandOutput {
                name: figure.into(),
                header: FIDELITY_HEADER.iter().map(|s| s.to_string()).collect(),
                rows,
                checks,
            })
        }
        // flux-tuned resonance over one flux quantum
        "spectrum-flux" => scan_output(
            figure,
            &ScanSpec {
                target: ScanTarget::Spectrum,
                parameter: "flux.flux_wb".into(),
                grid: GridKind::Linear,
                min: 0.0,
                max: FLUX_QUANTUM,
                count: 21,
                fixed: vec![
                    ("ring.radius_um".into(), float(2.0)),
                    ("ring.k_c".into(), float(0.2)),
                    ("ring.v_f_m_s".into(), float(8.0e5)),
                    ("charge.n_c".into(), toml::Value::Integer(0)),
                    ("charge.j_c".into(), toml::Value::Integer(0)),
                    ("charge.mode_index".into(), toml::Value::Integer(1)),
                    ("charge.branch".into(), toml::Value::Integer(1)),
                ],
            },
            config,
            tol,
        ),
        other => Err(CliError::Validation(format!(
            "unknown figure id `{other}`; available: {}",
            FIGURE_IDS.join(", ")
        ))),
    }
}
