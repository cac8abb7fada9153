// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Tripod-STIRAP system on the truncated single-excitation Hilbert space.
//!
//! The protocol drives |0⟩ ↔ |A₂⟩ with a classical pump Ω_p(t) while the
//! two circularly polarized transitions |A₂⟩ ↔ |∓1⟩ couple to the CW/CCW
//! cavity modes with equal strength g. One pump photon creates at most one
//! cavity excitation before an irreversible jump, so a 7-state basis closes
//! under the Hamiltonian and all collapse channels:
//!
//! | index | state            | role                                  |
//! |-------|------------------|---------------------------------------|
//! | 0     | |0, vac⟩         | initial spin, two-mode cavity vacuum   |
//! | 1     | |A₂, vac⟩        | optically excited state                |
//! | 2     | |−1, 1₊, 0₋⟩     | spin −1 with one CW photon             |
//! | 3     | |+1, 0₊, 1₋⟩     | spin +1 with one CCW photon            |
//! | 4     | |−1, vac⟩        | CW photon emitted                      |
//! | 5     | |+1, vac⟩        | CCW photon emitted                     |
//! | 6     | |sink, vac⟩      | non-interacting leakage destinations   |
//!
//! At two-photon resonance (Δ = δ) the Hamiltonian has a dark state
//! |D(θ)⟩ = cos θ |0,vac⟩ − sin θ |Ψ⟩ with tan θ = Ω_p/(2√2 g), where
//! |Ψ⟩ = (|−1,1₊,0₋⟩ + |+1,0₊,1₋⟩)/√2 is the entangled target.
//!
//! Ref: Bergmann, Theuer & Shore, Rev. Mod. Phys. 70, 1003 (1998).
//!
//! ħ = 1 internally: the Hamiltonian is stored in rad/s.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use crate::error::{is_non_negative, is_positive, Error, Result};

pub const DIM: usize = 7;

pub type Matrix7 = SMatrix<Complex64, 7, 7>;
pub type Vector7 = SVector<Complex64, 7>;

/// Basis indices, in the fixed order documented above.
pub mod basis {
    /// |0, vac⟩
    pub const GROUND: usize = 0;
    /// |A₂, vac⟩
    pub const EXCITED: usize = 1;
    /// |−1, 1₊, 0₋⟩
    pub const PHOTON_PLUS: usize = 2;
    /// |+1, 0₊, 1₋⟩
    pub const PHOTON_MINUS: usize = 3;
    /// |−1, vac⟩
    pub const SPIN_MINUS: usize = 4;
    /// |+1, vac⟩
    pub const SPIN_PLUS: usize = 5;
    /// |sink, vac⟩
    pub const SINK: usize = 6;

    pub const LABELS: [&str; 7] = [
        "0vac", "A2vac", "m1_ph", "p1_ph", "m1_vac", "p1_vac", "sink",
    ];
}

/// Coherent and dissipative rates of the tripod system, all in rad/s.
///
/// κ_ex and κ_0 drive identical photon-annihilation jumps; only their sum
/// enters the master equation. The split is used afterwards to attribute
/// emitted population to the fiber versus intrinsic loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSet {
    /// Emitter-cavity coupling g.
    pub g: f64,
    /// Pump detuning Δ.
    pub pump_detuning: f64,
    /// Cavity detuning δ.
    pub cavity_detuning: f64,
    /// Cavity-fiber outcoupling rate κ_ex.
    pub kappa_ex: f64,
    /// Intrinsic cavity loss rate κ_0.
    pub kappa_0: f64,
    /// Spontaneous leakage rate γ out of |A₂⟩.
    pub gamma: f64,
    /// Pure dephasing rate γ_φ of |A₂⟩.
    pub gamma_phi: f64,
    /// Pump laser angular frequency ω_L.
    pub omega_laser: f64,
    /// Ground-state zero-field splitting ω_ZFS.
    pub omega_zfs: f64,
    /// Fraction of the γ channel redirected back to |0,vac⟩ instead of the
    /// sink (0 = fully conservative, no repumping).
    pub recycle_to_ground: f64,
}

impl RateSet {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("g", self.g),
            ("kappa_ex", self.kappa_ex),
            ("kappa_0", self.kappa_0),
            ("gamma", self.gamma),
            ("gamma_phi", self.gamma_phi),
            ("omega_laser", self.omega_laser),
            ("omega_zfs", self.omega_zfs),
        ] {
            if !is_non_negative(v) {
                return Err(Error::invalid(name, format!("must be >= 0, got {v}")));
            }
        }
        if !self.pump_detuning.is_finite() || !self.cavity_detuning.is_finite() {
            return Err(Error::invalid("detuning", "must be finite"));
        }
        if !(0.0..=1.0).contains(&self.recycle_to_ground) {
            return Err(Error::invalid(
                "recycle_to_ground",
                format!("must lie in [0, 1], got {}", self.recycle_to_ground),
            ));
        }
        Ok(())
    }

    /// Total cavity linewidth κ_tot = κ_ex + κ_0.
    pub fn kappa_tot(&self) -> f64 {
        self.kappa_ex + self.kappa_0
    }
}

/// Interaction Hamiltonian on the 7-state basis at pump amplitude Ω_p
/// (rad/s, ħ = 1). The top-left 4×4 block is
///
/// ```text
///      ( 0      Ω_p/2   0      0    )
/// H =  ( Ω_p/2  Δ       g      g    )
///      ( 0      g       Δ−δ    0    )
///      ( 0      g       0      Δ−δ  )
/// ```
///
/// and the three decay destinations are Hamiltonian-decoupled.
pub fn build_hamiltonian(rates: &RateSet, omega_p: f64) -> Matrix7 {
    let mut h = Matrix7::zeros();
    let re = |x: f64| Complex64::new(x, 0.0);
    let delta = rates.pump_detuning;
    let two_photon = rates.pump_detuning - rates.cavity_detuning;

    h[(basis::GROUND, basis::EXCITED)] = re(omega_p / 2.0);
    h[(basis::EXCITED, basis::GROUND)] = re(omega_p / 2.0);
    h[(basis::EXCITED, basis::EXCITED)] = re(delta);
    h[(basis::EXCITED, basis::PHOTON_PLUS)] = re(rates.g);
    h[(basis::PHOTON_PLUS, basis::EXCITED)] = re(rates.g);
    h[(basis::EXCITED, basis::PHOTON_MINUS)] = re(rates.g);
    h[(basis::PHOTON_MINUS, basis::EXCITED)] = re(rates.g);
    h[(basis::PHOTON_PLUS, basis::PHOTON_PLUS)] = re(two_photon);
    h[(basis::PHOTON_MINUS, basis::PHOTON_MINUS)] = re(two_photon);
    h
}

/// Pump-coupling part of the Hamiltonian, so that
/// H(t) = build_hamiltonian(rates, 0) + Ω_p(t) · pump_operator().
pub(crate) fn pump_operator() -> Matrix7 {
    let mut v = Matrix7::zeros();
    v[(basis::GROUND, basis::EXCITED)] = Complex64::new(0.5, 0.0);
    v[(basis::EXCITED, basis::GROUND)] = Complex64::new(0.5, 0.0);
    v
}

/// Mixing angle θ = atan(Ω_p / 2√2 g) of the instantaneous dark state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAngle {
    /// θ ∈ [0, π/2].
    pub theta: f64,
    /// Set when g = 0 with Ω_p > 0: θ pinned at the π/2 limit.
    pub saturated: bool,
}

pub fn mixing_angle(omega_p: f64, g: f64) -> Result<MixingAngle> {
    if !is_non_negative(omega_p) {
        return Err(Error::invalid("omega_p", "must be >= 0"));
    }
    if !is_non_negative(g) {
        return Err(Error::invalid("g", "must be >= 0"));
    }
    if g == 0.0 {
        return Ok(MixingAngle {
            theta: if omega_p > 0.0 {
                std::f64::consts::FRAC_PI_2
            } else {
                0.0
            },
            saturated: omega_p > 0.0,
        });
    }
    Ok(MixingAngle {
        theta: (omega_p / (2.0 * std::f64::consts::SQRT_2 * g)).atan(),
        saturated: false,
    })
}

/// Instantaneous dark state
/// |D(θ)⟩ = cos θ |0,vac⟩ − sin θ (|−1,1₊,0₋⟩ + |+1,0₊,1₋⟩)/√2.
///
/// Its |A₂,vac⟩ component is identically zero.
pub fn dark_state(theta: f64) -> Vector7 {
    let mut v = Vector7::zeros();
    let s = theta.sin() * std::f64::consts::FRAC_1_SQRT_2;
    v[basis::GROUND] = Complex64::new(theta.cos(), 0.0);
    v[basis::PHOTON_PLUS] = Complex64::new(-s, 0.0);
    v[basis::PHOTON_MINUS] = Complex64::new(-s, 0.0);
    v
}

/// The six collapse operators, with the rate square roots folded in:
///
/// L₁ = √κ_ex â₊, L₂ = √κ_ex â₋, L₃ = √κ_0 â₊, L₄ = √κ_0 â₋,
/// L₅ = √γ |sink⟩⟨A₂|, L₆ = √γ_φ |A₂⟩⟨A₂|,
///
/// where the photon annihilations act as |−1,1₊,0₋⟩ → |−1,vac⟩ and
/// |+1,0₊,1₋⟩ → |+1,vac⟩ in the truncated basis. With a nonzero recycle
/// fraction p the γ channel splits into √(γ(1−p))|sink⟩⟨A₂| and
/// √(γp)|0⟩⟨A₂|.
pub fn collapse_operators(rates: &RateSet) -> Vec<Matrix7> {
    let mut ops = Vec::with_capacity(7);
    let mut jump = |rate: f64, to: usize, from: usize| {
        if rate > 0.0 {
            let mut l = Matrix7::zeros();
            l[(to, from)] = Complex64::new(rate.sqrt(), 0.0);
            ops.push(l);
        }
    };
    jump(rates.kappa_ex, basis::SPIN_MINUS, basis::PHOTON_PLUS);
    jump(rates.kappa_ex, basis::SPIN_PLUS, basis::PHOTON_MINUS);
    jump(rates.kappa_0, basis::SPIN_MINUS, basis::PHOTON_PLUS);
    jump(rates.kappa_0, basis::SPIN_PLUS, basis::PHOTON_MINUS);
    let p = rates.recycle_to_ground;
    jump(rates.gamma * (1.0 - p), basis::SINK, basis::EXCITED);
    jump(rates.gamma * p, basis::GROUND, basis::EXCITED);
    jump(rates.gamma_phi, basis::EXCITED, basis::EXCITED);
    ops
}

/// Lindblad right-hand side
/// dρ/dt = −i[H, ρ] + Σ_m (L_m ρ L_m† − ½{L_m†L_m, ρ}).
///
/// Operator form, written straight from the master equation; the adaptive
/// integrator uses an algebraically identical structured fast path that is
/// cross-checked against this one in the tests.
pub fn lindblad_rhs(rho: &Matrix7, hamiltonian: &Matrix7, rates: &RateSet) -> Matrix7 {
    let i = Complex64::new(0.0, 1.0);
    let mut drho = (hamiltonian * rho - rho * hamiltonian) * (-i);
    for l in collapse_operators(rates) {
        let l_dag = l.adjoint();
        let ldl = l_dag * l;
        drho += l * rho * l_dag - (ldl * rho + rho * ldl) * Complex64::new(0.5, 0.0);
    }
    drho
}

/// Emitted-photon angular frequency ω_out = ω_L − ω_ZFS from global
/// energy conservation in the Raman process.
pub fn emitted_frequency(rates: &RateSet) -> f64 {
    rates.omega_laser - rates.omega_zfs
}

/// True iff the drive sits at two-photon resonance (Δ = δ) *and* the
/// emitted frequency coincides with the supplied cavity resonance to a
/// relative 1e-12 — the regime where ω_out ≡ ω_c(Φ) and the photon
/// frequency inherits the flux tunability.
pub fn is_two_photon_resonant(rates: &RateSet, omega_c: f64) -> bool {
    let scale = rates
        .pump_detuning
        .abs()
        .max(rates.cavity_detuning.abs())
        .max(1.0);
    if (rates.pump_detuning - rates.cavity_detuning).abs() > 1e-12 * scale {
        return false;
    }
    let out = emitted_frequency(rates);
    (out - omega_c).abs() <= 1e-12 * omega_c.abs().max(out.abs())
}

/// Drive envelope Ω_p(t) ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseKind {
    /// Ω_max sin²(π(t−t_on)/2t_rise) during the ramp, then held at Ω_max.
    SinSquared,
    /// Ω_max tanh((t−t_on)/t_rise), zero before t_on.
    TanhRamp,
    /// Ω_max for all t.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseShape {
    pub kind: PulseKind,
    /// Peak Rabi amplitude Ω_max (rad/s).
    pub omega_max: f64,
    /// Ramp start (s). Ignored by `Constant`.
    pub t_on: f64,
    /// Ramp time constant (s).
    pub t_rise: f64,
    /// Total schedule length (s).
    pub t_total: f64,
}

impl PulseShape {
    pub fn validate(&self) -> Result<()> {
        if !is_non_negative(self.omega_max) {
            return Err(Error::invalid("omega_max", "must be >= 0"));
        }
        if !is_positive(self.t_total) {
            return Err(Error::invalid("t_total", "must be > 0"));
        }
        if self.kind != PulseKind::Constant {
            if !is_positive(self.t_rise) {
                return Err(Error::invalid("t_rise", "must be > 0 for ramp pulses"));
            }
            if !is_non_negative(self.t_on) {
                return Err(Error::invalid("t_on", "must be >= 0"));
            }
        }
        Ok(())
    }

    /// Ω_p(t) in rad/s.
    pub fn value(&self, t: f64) -> f64 {
        match self.kind {
            PulseKind::Constant => self.omega_max,
            PulseKind::SinSquared => {
                if t <= self.t_on {
                    0.0
                } else if t >= self.t_on + self.t_rise {
                    self.omega_max
                } else {
                    let s = (std::f64::consts::FRAC_PI_2 * (t - self.t_on) / self.t_rise).sin();
                    self.omega_max * s * s
                }
            }
            PulseKind::TanhRamp => {
                if t <= self.t_on {
                    0.0
                } else {
                    self.omega_max * ((t - self.t_on) / self.t_rise).tanh()
                }
            }
        }
    }

    /// dΩ_p/dt in rad/s², analytic.
    pub fn derivative(&self, t: f64) -> f64 {
        match self.kind {
            PulseKind::Constant => 0.0,
            PulseKind::SinSquared => {
                if t <= self.t_on || t >= self.t_on + self.t_rise {
                    0.0
                } else {
                    let arg = std::f64::consts::PI * (t - self.t_on) / self.t_rise;
                    self.omega_max * std::f64::consts::FRAC_PI_2 / self.t_rise * arg.sin()
                }
            }
            PulseKind::TanhRamp => {
                if t <= self.t_on {
                    0.0
                } else {
                    let c = ((t - self.t_on) / self.t_rise).cosh();
                    self.omega_max / (self.t_rise * c * c)
                }
            }
        }
    }
}

/// Adiabaticity diagnostic A(t) = |dθ/dt| / Ω_gap(t), with Ω_gap =
/// √(Ω_p² + 8g²)/2 the dark-bright splitting at two-photon resonance and
/// dθ/dt evaluated analytically from the pulse. A ≪ 1 signals that the
/// state tracks the instantaneous dark state.
pub fn adiabaticity_monitor(pulse: &PulseShape, rates: &RateSet, t: f64) -> Result<f64> {
    if !is_positive(rates.g) {
        return Err(Error::invalid("g", "adiabaticity monitor requires g > 0"));
    }
    let c = 2.0 * std::f64::consts::SQRT_2 * rates.g;
    let omega = pulse.value(t);
    let dtheta_dt = pulse.derivative(t) * c / (c * c + omega * omega);
    let gap = (omega * omega + 8.0 * rates.g * rates.g).sqrt() / 2.0;
    Ok(dtheta_dt.abs() / gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::ghz_to_rad_s;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    pub(crate) fn section_v_rates() -> RateSet {
        RateSet {
            g: ghz_to_rad_s(20.0),
            pump_detuning: 0.0,
            cavity_detuning: 0.0,
            kappa_ex: ghz_to_rad_s(30.0),
            kappa_0: ghz_to_rad_s(0.1),
            gamma: ghz_to_rad_s(0.05),
            gamma_phi: ghz_to_rad_s(10.0),
            omega_laser: ghz_to_rad_s(193002.87),
            omega_zfs: ghz_to_rad_s(2.87),
            recycle_to_ground: 0.0,
        }
    }

    fn random_density(rng: &mut StdRng) -> Matrix7 {
        // ρ = A A† / tr(A A†) is Hermitian, positive, unit trace.
        let mut a = Matrix7::zeros();
        for i in 0..DIM {
            for j in 0..DIM {
                a[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let m = a * a.adjoint();
        let tr: Complex64 = m.trace();
        m / tr
    }

    #[test]
    fn hamiltonian_diagonal_when_uncoupled() {
        let mut rates = section_v_rates();
        rates.g = 0.0;
        rates.pump_detuning = 3.0;
        rates.cavity_detuning = 1.0;
        let h = build_hamiltonian(&rates, 0.0);
        let expected = [0.0, 3.0, 2.0, 2.0, 0.0, 0.0, 0.0];
        for i in 0..DIM {
            for j in 0..DIM {
                let want = if i == j { expected[i] } else { 0.0 };
                assert_eq!(h[(i, j)], Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn hamiltonian_coupling_pattern() {
        let rates = section_v_rates();
        let omega_p = ghz_to_rad_s(7.0);
        let h = build_hamiltonian(&rates, omega_p);
        assert_relative_eq!(
            h[(basis::GROUND, basis::EXCITED)].re,
            omega_p / 2.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(h[(basis::EXCITED, basis::PHOTON_PLUS)].re, rates.g, max_relative = 1e-15);
        assert_relative_eq!(h[(basis::EXCITED, basis::PHOTON_MINUS)].re, rates.g, max_relative = 1e-15);
        // decay destinations stay decoupled
        for j in [basis::SPIN_MINUS, basis::SPIN_PLUS, basis::SINK] {
            for i in 0..DIM {
                assert_eq!(h[(i, j)], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn hamiltonian_hermitian() {
        let mut rates = section_v_rates();
        rates.pump_detuning = ghz_to_rad_s(1.3);
        rates.cavity_detuning = ghz_to_rad_s(-0.4);
        let h = build_hamiltonian(&rates, ghz_to_rad_s(11.0));
        assert_eq!(h, h.adjoint());
    }

    #[test]
    fn hamiltonian_decomposes_into_static_plus_pump() {
        let rates = section_v_rates();
        let omega_p = ghz_to_rad_s(42.0);
        let direct = build_hamiltonian(&rates, omega_p);
        let composed = build_hamiltonian(&rates, 0.0)
            + pump_operator() * Complex64::new(omega_p, 0.0);
        assert!((direct - composed).norm() < 1e-6);
    }

    #[test]
    fn mixing_angle_limits() {
        let g = ghz_to_rad_s(20.0);
        assert_eq!(mixing_angle(0.0, g).unwrap().theta, 0.0);
        let m = mixing_angle(2.0 * std::f64::consts::SQRT_2 * g, g).unwrap();
        assert_relative_eq!(m.theta, FRAC_PI_4, max_relative = 1e-12);
        assert!(!m.saturated);
        // Ω_p ≫ g pushes θ toward π/2
        let wide = mixing_angle(1e4 * g, g).unwrap();
        assert!(wide.theta > 0.999 * FRAC_PI_2);
        // g = 0 saturates
        let sat = mixing_angle(1.0, 0.0).unwrap();
        assert_eq!(sat.theta, FRAC_PI_2);
        assert!(sat.saturated);
    }

    #[test]
    fn dark_state_endpoints() {
        let d0 = dark_state(0.0);
        assert_eq!(d0[basis::GROUND], Complex64::new(1.0, 0.0));
        let d1 = dark_state(FRAC_PI_2);
        assert!(d1[basis::GROUND].norm() < 1e-16);
        assert_relative_eq!(d1[basis::PHOTON_PLUS].re, -std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-12);
        assert_relative_eq!(d1[basis::PHOTON_MINUS].re, -std::f64::consts::FRAC_1_SQRT_2, max_relative = 1e-12);
    }

    #[test]
    fn dark_state_annihilated_by_hamiltonian() {
        // At Δ = δ, pick Ω_p = 2√2 g tan θ: the |A₂⟩ row of H|D⟩ vanishes.
        let mut rates = section_v_rates();
        rates.pump_detuning = ghz_to_rad_s(2.0);
        rates.cavity_detuning = ghz_to_rad_s(2.0);
        for k in 0..8 {
            let theta = FRAC_PI_2 * f64::from(k) / 8.0;
            let omega_p = 2.0 * std::f64::consts::SQRT_2 * rates.g * theta.tan();
            let h = build_hamiltonian(&rates, omega_p);
            let excited_amp = (h * dark_state(theta))[basis::EXCITED].norm();
            // normalize against the energy scale in the matrix
            assert!(
                excited_amp <= 1e-12 * rates.g,
                "dark state not annihilated at theta={theta}: {excited_amp:e}"
            );
        }
    }

    #[test]
    fn sink_is_stationary() {
        let rates = section_v_rates();
        let h = build_hamiltonian(&rates, ghz_to_rad_s(160.0));
        let mut rho = Matrix7::zeros();
        rho[(basis::SINK, basis::SINK)] = Complex64::new(1.0, 0.0);
        let drho = lindblad_rhs(&rho, &h, &rates);
        assert!(drho.norm() < 1e-12 * rates.kappa_tot());
    }

    #[test]
    fn excited_state_decays_to_sink_at_gamma() {
        let mut rates = section_v_rates();
        rates.kappa_ex = 0.0;
        rates.kappa_0 = 0.0;
        rates.gamma_phi = 0.0;
        let h = Matrix7::zeros();
        let mut rho = Matrix7::zeros();
        rho[(basis::EXCITED, basis::EXCITED)] = Complex64::new(1.0, 0.0);
        let drho = lindblad_rhs(&rho, &h, &rates);
        assert_relative_eq!(drho[(basis::EXCITED, basis::EXCITED)].re, -rates.gamma, max_relative = 1e-12);
        assert_relative_eq!(drho[(basis::SINK, basis::SINK)].re, rates.gamma, max_relative = 1e-12);
    }

    #[test]
    fn recycle_fraction_redirects_decay() {
        let mut rates = section_v_rates();
        rates.recycle_to_ground = 0.25;
        let h = Matrix7::zeros();
        let mut rho = Matrix7::zeros();
        rho[(basis::EXCITED, basis::EXCITED)] = Complex64::new(1.0, 0.0);
        let drho = lindblad_rhs(&rho, &h, &rates);
        assert_relative_eq!(drho[(basis::SINK, basis::SINK)].re, 0.75 * rates.gamma, max_relative = 1e-12);
        assert_relative_eq!(drho[(basis::GROUND, basis::GROUND)].re, 0.25 * rates.gamma, max_relative = 1e-12);
    }

    #[test]
    fn rhs_traceless_on_random_states() {
        // Trace identity of the Lindblad form, checked on 100 random
        // density matrices.
        let rates = section_v_rates();
        let h = build_hamiltonian(&rates, ghz_to_rad_s(37.0));
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let scale = rates.kappa_tot();
        for _ in 0..100 {
            let rho = random_density(&mut rng);
            let tr = lindblad_rhs(&rho, &h, &rates).trace();
            assert!(
                tr.norm() < 1e-12 * scale,
                "rhs trace {tr} not ~0"
            );
        }
    }

    #[test]
    fn rhs_preserves_hermiticity() {
        let rates = section_v_rates();
        let h = build_hamiltonian(&rates, ghz_to_rad_s(80.0));
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let rho = random_density(&mut rng);
            let d = lindblad_rhs(&rho, &h, &rates);
            assert!((d - d.adjoint()).norm() < 1e-10 * rates.kappa_tot());
        }
    }

    #[test]
    fn emitted_frequency_is_raman_difference() {
        let mut rates = section_v_rates();
        rates.omega_laser = ghz_to_rad_s(100.0);
        rates.omega_zfs = ghz_to_rad_s(1.0);
        assert_relative_eq!(emitted_frequency(&rates), ghz_to_rad_s(99.0), max_relative = 1e-12);
        rates.omega_zfs = 0.0;
        assert_eq!(emitted_frequency(&rates), rates.omega_laser);
    }

    #[test]
    fn two_photon_resonance_predicate() {
        let rates = section_v_rates();
        let omega_c = emitted_frequency(&rates);
        assert!(is_two_photon_resonant(&rates, omega_c));
        assert!(!is_two_photon_resonant(&rates, omega_c * (1.0 + 1e-6)));
        let mut detuned = rates;
        detuned.pump_detuning = ghz_to_rad_s(1.0);
        assert!(!is_two_photon_resonant(&detuned, omega_c));
    }

    #[test]
    fn pulse_shapes_behave() {
        let p = PulseShape {
            kind: PulseKind::SinSquared,
            omega_max: 1.0,
            t_on: 1.0,
            t_rise: 2.0,
            t_total: 5.0,
        };
        assert_eq!(p.value(0.5), 0.0);
        assert_eq!(p.value(1.0), 0.0);
        assert_relative_eq!(p.value(2.0), 0.5, max_relative = 1e-12);
        assert_relative_eq!(p.value(3.0), 1.0, max_relative = 1e-12);
        assert_eq!(p.value(4.7), 1.0);

        let t = PulseShape {
            kind: PulseKind::TanhRamp,
            omega_max: 2.0,
            t_on: 0.0,
            t_rise: 1.0,
            t_total: 10.0,
        };
        assert_eq!(t.value(0.0), 0.0);
        assert_relative_eq!(t.value(1.0), 2.0 * 1.0f64.tanh(), max_relative = 1e-12);

        let c = PulseShape {
            kind: PulseKind::Constant,
            omega_max: 3.0,
            t_on: 0.0,
            t_rise: 0.0,
            t_total: 1.0,
        };
        assert_eq!(c.value(0.123), 3.0);
        assert_eq!(c.derivative(0.123), 0.0);
    }

    #[test]
    fn pulse_derivative_matches_finite_difference() {
        let shapes = [
            PulseShape {
                kind: PulseKind::SinSquared,
                omega_max: 5.0,
                t_on: 0.2,
                t_rise: 1.7,
                t_total: 4.0,
            },
            PulseShape {
                kind: PulseKind::TanhRamp,
                omega_max: 5.0,
                t_on: 0.2,
                t_rise: 1.7,
                t_total: 4.0,
            },
        ];
        for p in shapes {
            for i in 1..40 {
                let t = 0.25 + 0.09 * f64::from(i);
                let h = 1e-6;
                let fd = (p.value(t + h) - p.value(t - h)) / (2.0 * h);
                assert_relative_eq!(p.derivative(t), fd, max_relative = 1e-6, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn adiabaticity_vanishes_for_constant_pulse() {
        let rates = section_v_rates();
        let p = PulseShape {
            kind: PulseKind::Constant,
            omega_max: ghz_to_rad_s(160.0),
            t_on: 0.0,
            t_rise: 0.0,
            t_total: 1e-9,
        };
        assert_eq!(adiabaticity_monitor(&p, &rates, 0.5e-9).unwrap(), 0.0);
    }

    #[test]
    fn adiabaticity_shrinks_with_slower_ramps() {
        let rates = section_v_rates();
        let max_a = |t_rise: f64| {
            let p = PulseShape {
                kind: PulseKind::SinSquared,
                omega_max: 8.0 * rates.g,
                t_on: 0.0,
                t_rise,
                t_total: 2.0 * t_rise,
            };
            (0..=400)
                .map(|i| {
                    let t = 2.0 * t_rise * f64::from(i) / 400.0;
                    adiabaticity_monitor(&p, &rates, t).unwrap()
                })
                .fold(0.0, f64::max)
        };
        let (a1, a2, a3) = (max_a(0.25e-9), max_a(0.5e-9), max_a(1.0e-9));
        assert!(a1 > a2 && a2 > a3, "A_max not decreasing: {a1} {a2} {a3}");
        assert_relative_eq!(a2 / a3, 2.0, max_relative = 0.05);
    }

    #[test]
    fn rate_validation() {
        let mut r = section_v_rates();
        r.gamma = -1.0;
        assert!(r.validate().is_err());
        let mut r = section_v_rates();
        r.recycle_to_ground = 1.5;
        assert!(r.validate().is_err());
        assert!(section_v_rates().validate().is_ok());
    }
}
