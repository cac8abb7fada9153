// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Multi-point scans: one CSV row per grid value, points computed in
//! parallel, output written in grid order. A point that fails its module
//! contract aborts the whole scan and names the offending parameters.

use rayon::prelude::*;

use cntring::evolve::Tolerances;
use cntring::tripod::basis;
use cntring::units::rad_s_to_ghz;

use crate::config::{config_from_table, Config, ScanSpec, ScanTarget};
use crate::csvfmt::fmt_float;
use crate::error::{CliError, Result};
use crate::manifest::IntegrationChecks;
use crate::run::{
    coupling_values, fidelity_row, run_integration, spectrum_row, CommandOutput, FIDELITY_HEADER,
    SPECTRUM_HEADER,
};

fn leaf_name(parameter: &str) -> &str {
    parameter.rsplit('.').next().unwrap_or(parameter)
}

pub fn header_for(spec: &ScanSpec) -> Vec<String> {
    let leaf = leaf_name(&spec.parameter).to_string();
    match spec.target {
        ScanTarget::Spectrum => SPECTRUM_HEADER.iter().map(|s| s.to_string()).collect(),
        ScanTarget::CouplingG => vec![leaf, "g_ghz".into()],
        ScanTarget::CouplingKappa => vec![leaf, "kappa_r_ghz".into()],
        ScanTarget::Dynamics => vec![
            leaf,
            "p_fiber_plus".into(),
            "p_fiber_minus".into(),
            "p_int_plus".into(),
            "p_int_minus".into(),
            "p_sink".into(),
            "max_pop_a2".into(),
            "adiabaticity_max".into(),
            "trace_drift".into(),
            "min_eigenvalue".into(),
        ],
        ScanTarget::Fidelity => FIDELITY_HEADER.iter().map(|s| s.to_string()).collect(),
    }
}

type PointResult = (Vec<String>, Option<IntegrationChecks>);

fn scan_point(
    spec: &ScanSpec,
    base: &toml::Table,
    value: f64,
    tol: Tolerances,
) -> Result<PointResult> {
    let mut table = base.clone();
    crate::config::apply_override(&mut table, &spec.parameter, toml::Value::Float(value))?;
    let config = config_from_table(table)?;
    point_row(spec.target, value, &config, tol)
}

fn point_row(
    target: ScanTarget,
    value: f64,
    config: &Config,
    tol: Tolerances,
) -> Result<PointResult> {
    match target {
        ScanTarget::Spectrum => Ok((spectrum_row(config)?, None)),
        ScanTarget::CouplingG => {
            let (g, _) = coupling_values(config)?;
            Ok((vec![fmt_float(value), fmt_float(rad_s_to_ghz(g))], None))
        }
        ScanTarget::CouplingKappa => {
            let (_, out) = coupling_values(config)?;
            Ok((
                vec![fmt_float(value), fmt_float(rad_s_to_ghz(out.kappa_r))],
                None,
            ))
        }
        ScanTarget::Dynamics => {
            let trace = run_integration(config, tol)?;
            let pops = trace.final_populations();
            let row = vec![
                fmt_float(value),
                fmt_float(*trace.p_fiber_plus.last().unwrap()),
                fmt_float(*trace.p_fiber_minus.last().unwrap()),
                fmt_float(*trace.p_intrinsic_plus.last().unwrap()),
                fmt_float(*trace.p_intrinsic_minus.last().unwrap()),
                fmt_float(pops[basis::SINK]),
                fmt_float(trace.max_excited_population),
                fmt_float(trace.max_adiabaticity),
                fmt_float(trace.max_trace_drift),
                fmt_float(trace.min_eigenvalue),
            ];
            Ok((row, Some(IntegrationChecks::from_trace(&trace))))
        }
        ScanTarget::Fidelity => {
            let (row, checks) = fidelity_row(config, tol)?;
            Ok((row, Some(checks)))
        }
    }
}

/// Run the scan described by `spec` against the resolved base table.
/// Points run in parallel; rows come back in grid order.
pub fn run_scan_spec(
    spec: &ScanSpec,
    base_table: &toml::Table,
    tol: Tolerances,
) -> Result<(Vec<Vec<String>>, Option<IntegrationChecks>)> {
    let mut base = base_table.clone();
    for (path, value) in &spec.fixed {
        crate::config::apply_override(&mut base, path, value.clone())?;
    }
    let values = spec.grid_values();
    let results: Vec<Result<PointResult>> = values
        .par_iter()
        .map(|&v| scan_point(spec, &base, v, tol))
        .collect();

    let mut rows = Vec::with_capacity(results.len());
    let mut checks: Option<IntegrationChecks> = None;
    for (value, result) in values.iter().zip(results) {
        match result {
            Ok((row, point_checks)) => {
                rows.push(row);
                match (&mut checks, point_checks) {
                    (Some(acc), Some(p)) => acc.merge(&p),
                    (acc @ None, Some(p)) => *acc = Some(p),
                    _ => {}
                }
            }
            Err(err) => {
                return Err(CliError::Validation(format!(
                    "scan aborted at {} = {value}: {err}",
                    spec.parameter
                )));
            }
        }
    }
    Ok((rows, checks))
}

pub fn scan_command(config: &Config, tol: Tolerances) -> Result<CommandOutput> {
    let spec = config.scan.as_ref().ok_or_else(|| {
        CliError::Validation("scan: config has no [scan] section".to_string())
    })?;
    let (rows, checks) = run_scan_spec(spec, &config.table, tol)?;
    Ok(CommandOutput {
        name: "scan".into(),
        header: header_for(spec),
        rows,
        checks,
    })
}
