// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Run manifests: every CSV is accompanied by exactly one manifest that
//! records the resolved configuration, software version, tolerances, and
//! the per-run integrity check results. Apart from the timestamp line the
//! manifest is deterministic.

use serde::Serialize;
use std::path::Path;

use cntring::evolve::{SimulationTrace, Tolerances, EIGENVALUE_FLOOR, TRACE_DRIFT_BOUND};

use crate::error::Result;

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceBlock {
    pub abs: f64,
    pub rel: f64,
}

/// Worst-case integrator diagnostics over every integration in a run.
#[derive(Debug, Clone, Serialize)]
pub struct IntegrationChecks {
    pub trace_drift_max: f64,
    pub min_eigenvalue: f64,
    pub adiabaticity_max: f64,
    pub max_excited_population: f64,
    pub within_bounds: bool,
}

impl IntegrationChecks {
    pub fn from_trace(trace: &SimulationTrace) -> Self {
        Self {
            trace_drift_max: trace.max_trace_drift,
            min_eigenvalue: trace.min_eigenvalue,
            adiabaticity_max: trace.max_adiabaticity,
            max_excited_population: trace.max_excited_population,
            within_bounds: trace.check_default_invariants().is_ok(),
        }
    }

    /// Fold in another integration's diagnostics (for multi-point scans).
    pub fn merge(&mut self, other: &IntegrationChecks) {
        self.trace_drift_max = self.trace_drift_max.max(other.trace_drift_max);
        self.min_eigenvalue = self.min_eigenvalue.min(other.min_eigenvalue);
        self.adiabaticity_max = self.adiabaticity_max.max(other.adiabaticity_max);
        self.max_excited_population = self
            .max_excited_population
            .max(other.max_excited_population);
        self.within_bounds = self.within_bounds && other.within_bounds;
    }

    pub fn bounds_violation(&self) -> Option<String> {
        if self.trace_drift_max > TRACE_DRIFT_BOUND {
            return Some(format!(
                "trace drift {:e} exceeds {TRACE_DRIFT_BOUND:e}",
                self.trace_drift_max
            ));
        }
        if self.min_eigenvalue < EIGENVALUE_FLOOR {
            return Some(format!(
                "minimum eigenvalue {:e} below {EIGENVALUE_FLOOR:e}",
                self.min_eigenvalue
            ));
        }
        None
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub version: &'static str,
    pub generated_at: String,
    pub command: String,
    pub tolerances: ToleranceBlock,
    /// Output file names, relative to the manifest's own directory.
    pub outputs: Vec<String>,
    /// Present when the run integrated the master equation.
    pub checks: Option<IntegrationChecks>,
    /// Resolved configuration snapshot (after `--set` overrides).
    pub config: serde_json::Value,
}

impl RunManifest {
    pub fn new(
        command: String,
        tolerances: Tolerances,
        outputs: Vec<String>,
        checks: Option<IntegrationChecks>,
        config_table: &toml::Table,
    ) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION"),
            generated_at: chrono::Utc::now().to_rfc3339(),
            command,
            tolerances: ToleranceBlock {
                abs: tolerances.abs,
                rel: tolerances.rel,
            },
            outputs,
            checks,
            config: serde_json::to_value(config_table)
                .expect("TOML table serializes to JSON"),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}
