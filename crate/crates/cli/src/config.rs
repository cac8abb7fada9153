// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Structured configuration: TOML sections ring / charge / flux / coupling /
//! fiber / rates / pulse / scan, validated into core types.
//!
//! Rates and frequencies are ordinary frequencies in GHz (ν = ω/2π);
//! lengths carry their unit in the key suffix (`_nm`, `_um`, `_m`). All
//! conversion to internal units (rad/s, metres, seconds) happens here,
//! exactly once. Unknown keys are rejected with their full path.

use cntring::cavity::{Branch, ChargeState, FluxConfig, RingParameters};
use cntring::chiral::{CouplingGeometry, FiberCoupler};
use cntring::constants::SPEED_OF_LIGHT;
use cntring::tripod::{PulseKind, PulseShape, RateSet};
use cntring::units::{ghz_to_rad_s, nm_to_m, ns_to_s, um_to_m};
use serde::Deserialize;
use std::f64::consts::TAU;
use std::path::Path;

use crate::error::{CliError, Result};

/// The parameter set shipped with the binary (used when `--config` is not
/// given).
pub const DEFAULT_CONFIG: &str = include_str!("../assets/default.toml");

const SECTIONS: [&str; 7] = [
    "ring", "charge", "flux", "coupling", "fiber", "rates", "pulse",
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    radius_um: f64,
    k_c: f64,
    v_f_m_s: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCharge {
    n_c: i32,
    j_c: i32,
    mode_index: i32,
    branch: i8,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFlux {
    flux_wb: Option<f64>,
    field_t: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoupling {
    dipole_debye: f64,
    omega_c_ghz: f64,
    eps_r: f64,
    v_mode_m3: f64,
    x_nm: f64,
    l_d_nm: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiber {
    xi: f64,
    a_cnt_m2: f64,
    a_fiber_m2: f64,
    l_int_um: f64,
    radius_um: f64,
    lambda_c_nm: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRates {
    g_ghz: f64,
    pump_detuning_ghz: f64,
    cavity_detuning_ghz: f64,
    kappa_ex_ghz: f64,
    kappa_0_ghz: f64,
    gamma_ghz: f64,
    gamma_phi_ghz: f64,
    omega_laser_ghz: f64,
    omega_zfs_ghz: f64,
    #[serde(default)]
    recycle_to_ground: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPulse {
    kind: String,
    omega_max_ghz: f64,
    t_on_ns: f64,
    t_rise_ns: f64,
    t_total_ns: f64,
    #[serde(default = "default_output_points")]
    output_points: usize,
}

fn default_output_points() -> usize {
    201
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScan {
    target: String,
    parameter: String,
    grid: String,
    min: f64,
    max: f64,
    count: usize,
    #[serde(default)]
    fixed: toml::Table,
}

/// Quantity computed per scan point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanTarget {
    Spectrum,
    CouplingG,
    CouplingKappa,
    Dynamics,
    Fidelity,
}

impl ScanTarget {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "spectrum" => Ok(Self::Spectrum),
            "coupling-g" => Ok(Self::CouplingG),
            "coupling-kappa" => Ok(Self::CouplingKappa),
            "dynamics" => Ok(Self::Dynamics),
            "fidelity" => Ok(Self::Fidelity),
            other => Err(CliError::Validation(format!(
                "scan.target: unknown target `{other}` (expected spectrum, coupling-g, \
                 coupling-kappa, dynamics, or fidelity)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Linear,
    Logarithmic,
}

/// Validated multi-point scan request.
#[derive(Debug, Clone)]
pub struct ScanSpec {
    pub target: ScanTarget,
    /// Dotted path of the swept key, e.g. `rates.kappa_0_ghz`.
    pub parameter: String,
    pub grid: GridKind,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    /// Overrides applied before sweeping.
    pub fixed: Vec<(String, toml::Value)>,
}

impl ScanSpec {
    /// Grid values in sweep order.
    pub fn grid_values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                match self.grid {
                    GridKind::Linear => self.min + (self.max - self.min) * f,
                    GridKind::Logarithmic => self.min * (self.max / self.min).powf(f),
                }
            })
            .collect()
    }
}

/// Fully validated configuration, in internal units.
#[derive(Debug, Clone)]
pub struct Config {
    pub ring: RingParameters,
    pub charge: ChargeState,
    pub mode_index: i32,
    pub branch: Branch,
    pub flux: FluxConfig,
    pub coupling: CouplingGeometry,
    pub fiber: FiberCoupler,
    pub rates: RateSet,
    pub pulse: PulseShape,
    pub output_points: usize,
    pub scan: Option<ScanSpec>,
    /// Resolved key-value snapshot (after overrides), for manifests and
    /// for re-deserialization at scan points.
    pub table: toml::Table,
}

fn invalid(path: &str, message: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{path}: {message}"))
}

fn section<'a>(table: &'a toml::Table, name: &str) -> Result<&'a toml::Value> {
    table
        .get(name)
        .ok_or_else(|| CliError::Validation(format!("missing section: {name}")))
}

fn deserialize_section<T: serde::de::DeserializeOwned>(
    table: &toml::Table,
    name: &str,
) -> Result<T> {
    let value = section(table, name)?.clone();
    value
        .try_into()
        .map_err(|e: toml::de::Error| CliError::Validation(format!("{name}: {}", e.message())))
}

/// Parse a `key.path=value` override (the `--set` flag). The value is
/// interpreted as a TOML literal: integer, float, boolean, or string.
pub fn parse_set_flag(arg: &str) -> Result<(String, toml::Value)> {
    let (path, raw) = arg
        .split_once('=')
        .ok_or_else(|| CliError::Validation(format!("--set expects key=value, got `{arg}`")))?;
    let value = if let Ok(i) = raw.parse::<i64>() {
        toml::Value::Integer(i)
    } else if let Ok(f) = raw.parse::<f64>() {
        toml::Value::Float(f)
    } else if let Ok(b) = raw.parse::<bool>() {
        toml::Value::Boolean(b)
    } else {
        toml::Value::String(raw.to_string())
    };
    Ok((path.trim().to_string(), value))
}

/// Set `table[a][b]... = value` for a dotted path `a.b...`.
pub fn apply_override(table: &mut toml::Table, path: &str, value: toml::Value) -> Result<()> {
    let mut parts = path.split('.').collect::<Vec<_>>();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Validation(format!("malformed key path `{path}`")));
    }
    let leaf = parts.pop().expect("non-empty path");
    let mut current = table;
    for part in parts {
        let entry = current
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        current = entry.as_table_mut().ok_or_else(|| {
            CliError::Validation(format!("{path}: `{part}` is not a section"))
        })?;
    }
    // Coerce integer literals into existing float slots so `--set x=2`
    // works on float keys.
    let coerced = match (&value, current.get(leaf)) {
        (toml::Value::Integer(i), Some(toml::Value::Float(_))) => toml::Value::Float(*i as f64),
        _ => value,
    };
    current.insert(leaf.to_string(), coerced);
    Ok(())
}

/// Parse and validate a configuration from TOML text, applying `overrides`
/// (dotted paths) before validation.
pub fn parse_config(text: &str, overrides: &[(String, toml::Value)]) -> Result<Config> {
    let mut table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Validation(format!("config parse error: {e}")))?;
    for (path, value) in overrides {
        apply_override(&mut table, path, value.clone())?;
    }
    config_from_table(table)
}

/// Load a configuration file from disk.
pub fn load_config(path: &Path, overrides: &[(String, toml::Value)]) -> Result<Config> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Validation(format!("cannot read config {}: {e}", path.display()))
    })?;
    parse_config(&text, overrides)
}

/// Validate a resolved key-value table into a [`Config`].
pub fn config_from_table(table: toml::Table) -> Result<Config> {
    for name in SECTIONS {
        section(&table, name)?;
    }
    for key in table.keys() {
        if !SECTIONS.contains(&key.as_str()) && key != "scan" {
            return Err(CliError::Validation(format!("unknown section: {key}")));
        }
    }

    let raw_ring: RawRing = deserialize_section(&table, "ring")?;
    let raw_charge: RawCharge = deserialize_section(&table, "charge")?;
    let raw_flux: RawFlux = deserialize_section(&table, "flux")?;
    let raw_coupling: RawCoupling = deserialize_section(&table, "coupling")?;
    let raw_fiber: RawFiber = deserialize_section(&table, "fiber")?;
    let raw_rates: RawRates = deserialize_section(&table, "rates")?;
    let raw_pulse: RawPulse = deserialize_section(&table, "pulse")?;

    let ring = RingParameters::new(
        um_to_m(raw_ring.radius_um),
        raw_ring.k_c,
        raw_ring.v_f_m_s,
    )
    .map_err(|e| remap(e, &[("R", "ring.radius_um"), ("K_c", "ring.k_c"), ("v_F", "ring.v_f_m_s")]))?;

    let charge = ChargeState::new(raw_charge.n_c, raw_charge.j_c);
    if raw_charge.mode_index == 0 {
        return Err(invalid(
            "charge.mode_index",
            "must be a nonzero integer (the zero mode is not an oscillator branch)",
        ));
    }
    let branch = match raw_charge.branch {
        1 => Branch::Plus,
        -1 => Branch::Minus,
        other => return Err(invalid("charge.branch", format!("must be +1 or -1, got {other}"))),
    };

    let flux = match (raw_flux.flux_wb, raw_flux.field_t) {
        (Some(weber), None) => FluxConfig::Flux { weber },
        (None, Some(tesla)) => FluxConfig::Field { tesla },
        (Some(_), Some(_)) => {
            return Err(invalid(
                "flux",
                "flux_wb and field_t are mutually exclusive; give exactly one",
            ))
        }
        (None, None) => {
            return Err(invalid("flux", "give one of flux_wb or field_t"));
        }
    };

    let coupling = CouplingGeometry {
        dipole_debye: raw_coupling.dipole_debye,
        omega_c: ghz_to_rad_s(raw_coupling.omega_c_ghz),
        eps_r: raw_coupling.eps_r,
        v_mode: raw_coupling.v_mode_m3,
        x: nm_to_m(raw_coupling.x_nm),
        l_d: nm_to_m(raw_coupling.l_d_nm),
    };
    coupling.validate().map_err(|e| {
        remap(
            e,
            &[
                ("dipole_debye", "coupling.dipole_debye"),
                ("omega_c", "coupling.omega_c_ghz"),
                ("eps_r", "coupling.eps_r"),
                ("v_mode", "coupling.v_mode_m3"),
                ("x", "coupling.x_nm"),
                ("l_d", "coupling.l_d_nm"),
            ],
        )
    })?;

    if !raw_fiber.lambda_c_nm.is_finite() || raw_fiber.lambda_c_nm <= 0.0 {
        return Err(invalid("fiber.lambda_c_nm", "must be > 0"));
    }
    let fiber = FiberCoupler {
        xi: raw_fiber.xi,
        a_cnt: raw_fiber.a_cnt_m2,
        a_fiber: raw_fiber.a_fiber_m2,
        l_int: um_to_m(raw_fiber.l_int_um),
        radius: um_to_m(raw_fiber.radius_um),
        omega_c: TAU * SPEED_OF_LIGHT / nm_to_m(raw_fiber.lambda_c_nm),
    };
    fiber.validate().map_err(|e| {
        remap(
            e,
            &[
                ("xi", "fiber.xi"),
                ("a_cnt", "fiber.a_cnt_m2"),
                ("a_fiber", "fiber.a_fiber_m2"),
                ("l_int", "fiber.l_int_um"),
                ("radius", "fiber.radius_um"),
                ("omega_c", "fiber.lambda_c_nm"),
            ],
        )
    })?;

    let rates = RateSet {
        g: ghz_to_rad_s(raw_rates.g_ghz),
        pump_detuning: ghz_to_rad_s(raw_rates.pump_detuning_ghz),
        cavity_detuning: ghz_to_rad_s(raw_rates.cavity_detuning_ghz),
        kappa_ex: ghz_to_rad_s(raw_rates.kappa_ex_ghz),
        kappa_0: ghz_to_rad_s(raw_rates.kappa_0_ghz),
        gamma: ghz_to_rad_s(raw_rates.gamma_ghz),
        gamma_phi: ghz_to_rad_s(raw_rates.gamma_phi_ghz),
        omega_laser: ghz_to_rad_s(raw_rates.omega_laser_ghz),
        omega_zfs: ghz_to_rad_s(raw_rates.omega_zfs_ghz),
        recycle_to_ground: raw_rates.recycle_to_ground,
    };
    rates.validate().map_err(|e| {
        remap(
            e,
            &[
                ("g", "rates.g_ghz"),
                ("kappa_ex", "rates.kappa_ex_ghz"),
                ("kappa_0", "rates.kappa_0_ghz"),
                ("gamma", "rates.gamma_ghz"),
                ("gamma_phi", "rates.gamma_phi_ghz"),
                ("omega_laser", "rates.omega_laser_ghz"),
                ("omega_zfs", "rates.omega_zfs_ghz"),
                ("recycle_to_ground", "rates.recycle_to_ground"),
                ("detuning", "rates.pump_detuning_ghz"),
            ],
        )
    })?;

    let kind = match raw_pulse.kind.as_str() {
        "sin2" => PulseKind::SinSquared,
        "tanh" => PulseKind::TanhRamp,
        "constant" => PulseKind::Constant,
        other => {
            return Err(invalid(
                "pulse.kind",
                format!("unknown kind `{other}` (expected sin2, tanh, or constant)"),
            ))
        }
    };
    let pulse = PulseShape {
        kind,
        omega_max: ghz_to_rad_s(raw_pulse.omega_max_ghz),
        t_on: ns_to_s(raw_pulse.t_on_ns),
        t_rise: ns_to_s(raw_pulse.t_rise_ns),
        t_total: ns_to_s(raw_pulse.t_total_ns),
    };
    pulse.validate().map_err(|e| {
        remap(
            e,
            &[
                ("omega_max", "pulse.omega_max_ghz"),
                ("t_on", "pulse.t_on_ns"),
                ("t_rise", "pulse.t_rise_ns"),
                ("t_total", "pulse.t_total_ns"),
            ],
        )
    })?;
    if raw_pulse.output_points < 2 {
        return Err(invalid("pulse.output_points", "needs at least 2 points"));
    }

    let scan = match table.get("scan") {
        None => None,
        Some(_) => {
            let raw: RawScan = deserialize_section(&table, "scan")?;
            Some(validate_scan(raw)?)
        }
    };

    Ok(Config {
        ring,
        charge,
        mode_index: raw_charge.mode_index,
        branch,
        flux,
        coupling,
        fiber,
        rates,
        pulse,
        output_points: raw_pulse.output_points,
        scan,
        table,
    })
}

fn validate_scan(raw: RawScan) -> Result<ScanSpec> {
    let target = ScanTarget::parse(&raw.target)?;
    let grid = match raw.grid.as_str() {
        "linear" => GridKind::Linear,
        "log" => GridKind::Logarithmic,
        other => {
            return Err(invalid(
                "scan.grid",
                format!("unknown grid `{other}` (expected linear or log)"),
            ))
        }
    };
    if raw.count < 2 {
        return Err(invalid("scan.count", "needs at least 2 grid points"));
    }
    if !raw.min.is_finite() || !raw.max.is_finite() || raw.min >= raw.max {
        return Err(invalid("scan", "min must be < max (both finite)"));
    }
    if grid == GridKind::Logarithmic && raw.min <= 0.0 {
        return Err(invalid("scan.min", "logarithmic grids require min > 0"));
    }
    if raw.parameter.is_empty() {
        return Err(invalid("scan.parameter", "must name a config key path"));
    }
    Ok(ScanSpec {
        target,
        parameter: raw.parameter,
        grid,
        min: raw.min,
        max: raw.max,
        count: raw.count,
        fixed: raw.fixed.into_iter().collect(),
    })
}

/// Rewrite a core validation error so it names the config key path.
fn remap(err: cntring::Error, names: &[(&str, &str)]) -> CliError {
    if let cntring::Error::InvalidParameter { name, message } = &err {
        if let Some((_, path)) = names.iter().find(|(n, _)| n == name) {
            return CliError::Validation(format!("{path}: {message}"));
        }
    }
    CliError::Validation(err.to_string())
}

/// Time grid for a dynamics run: `output_points` uniform samples over the
/// pulse schedule.
pub fn time_grid(config: &Config) -> Vec<f64> {
    let n = config.output_points;
    (0..n)
        .map(|i| config.pulse.t_total * i as f64 / (n - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_loads() {
        let config = parse_config(DEFAULT_CONFIG, &[]).unwrap();
        assert_eq!(config.mode_index, 1);
        assert!((config.ring.charge_velocity() - 4e6).abs() < 1.0);
        assert!(config.scan.is_some());
    }

    #[test]
    fn empty_file_reports_missing_ring() {
        let err = parse_config("", &[]).unwrap_err();
        assert_eq!(err.to_string(), "missing section: ring");
    }

    #[test]
    fn out_of_range_k_c_names_key_path() {
        let err = parse_config(
            DEFAULT_CONFIG,
            &[("ring.k_c".to_string(), toml::Value::Float(1.5))],
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("ring.k_c"), "message was: {msg}");
    }

    #[test]
    fn unknown_key_rejected_with_path() {
        let err = parse_config(
            DEFAULT_CONFIG,
            &[("rates.bogus_ghz".to_string(), toml::Value::Float(1.0))],
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("rates") && msg.contains("bogus_ghz"), "message was: {msg}");
    }

    #[test]
    fn missing_key_names_field() {
        let gutted = DEFAULT_CONFIG.replace("k_c = 0.2", "");
        let err = parse_config(&gutted, &[]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("ring") && msg.contains("k_c"), "message was: {msg}");
    }

    #[test]
    fn flux_exclusivity() {
        let err = parse_config(
            DEFAULT_CONFIG,
            &[("flux.field_t".to_string(), toml::Value::Float(1e-3))],
        )
        .unwrap_err();
        assert!(err.to_string().contains("mutually exclusive"));
    }

    #[test]
    fn set_flag_parsing() {
        let (k, v) = parse_set_flag("rates.kappa_0_ghz=0.5").unwrap();
        assert_eq!(k, "rates.kappa_0_ghz");
        assert_eq!(v, toml::Value::Float(0.5));
        let (_, v) = parse_set_flag("pulse.kind=tanh").unwrap();
        assert_eq!(v, toml::Value::String("tanh".into()));
        assert!(parse_set_flag("no-equals").is_err());
    }

    #[test]
    fn integer_override_coerces_to_float_slot() {
        let config = parse_config(
            DEFAULT_CONFIG,
            &[("rates.kappa_0_ghz".to_string(), toml::Value::Integer(2))],
        )
        .unwrap();
        assert!((config.rates.kappa_0 - ghz_to_rad_s(2.0)).abs() < 1.0);
    }

    #[test]
    fn scan_count_validated() {
        let err = parse_config(
            DEFAULT_CONFIG,
            &[("scan.count".to_string(), toml::Value::Integer(1))],
        )
        .unwrap_err();
        assert!(err.to_string().contains("scan.count"));
    }

    #[test]
    fn grid_values_linear_and_log() {
        let spec = ScanSpec {
            target: ScanTarget::CouplingG,
            parameter: "coupling.x_nm".into(),
            grid: GridKind::Linear,
            min: 0.0,
            max: 30.0,
            count: 4,
            fixed: vec![],
        };
        assert_eq!(spec.grid_values(), vec![0.0, 10.0, 20.0, 30.0]);
        let log = ScanSpec {
            grid: GridKind::Logarithmic,
            min: 0.01,
            max: 100.0,
            count: 5,
            ..spec
        };
        let vals = log.grid_values();
        assert!((vals[0] - 0.01).abs() < 1e-12);
        assert!((vals[2] - 1.0).abs() < 1e-12);
        assert!((vals[4] - 100.0).abs() < 1e-9);
    }
}
