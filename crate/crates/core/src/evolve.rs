// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive master-equation integration and emission bookkeeping.
//!
//! The density matrix is propagated with an embedded Dormand-Prince 5(4)
//! pair and per-step Hermitian symmetrization. Four cumulative emission
//! integrals ride along as extra state components,
//!
//!   P_fiber,± = κ_ex ∫⟨n_±⟩ dt,   P_intrinsic,± = κ_0 ∫⟨n_±⟩ dt,
//!
//! so the fiber/intrinsic attribution is integrated to the same accuracy
//! as the state itself. Their sums reproduce the populations accumulated
//! in |−1,vac⟩ and |+1,vac⟩ split κ_ex : κ_0.
//!
//! The stepper evaluates a structured right-hand side that exploits the
//! elementary-jump form of the collapse set; it is verified against the
//! operator-form `lindblad_rhs` in the tests.
//!
//! Ref: Dormand & Prince, J. Comput. Appl. Math. 6, 19 (1980).

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::error::{is_positive, Error, Result};
use crate::tripod::{basis, build_hamiltonian, pump_operator, Matrix7, PulseShape, RateSet, DIM};

/// Absolute/relative error control for the adaptive stepper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            abs: 1e-10,
            rel: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if !is_positive(self.abs) || !is_positive(self.rel) {
            return Err(Error::invalid("tolerances", "abs and rel must be > 0"));
        }
        Ok(())
    }
}

/// Integrity bounds an accepted run must satisfy.
pub const TRACE_DRIFT_BOUND: f64 = 1e-8;
pub const EIGENVALUE_FLOOR: f64 = -1e-8;
const HERMITICITY_BOUND: f64 = 1e-10;

/// Validated 7×7 density matrix: Hermitian, unit trace, positive within
/// the floors above.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    matrix: Matrix7,
}

impl DensityState {
    pub fn new(matrix: Matrix7) -> Result<Self> {
        let herm = (matrix - matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > HERMITICITY_BOUND {
            return Err(Error::InvariantViolation(format!(
                "density matrix not Hermitian: max |rho - rho^dag| = {herm:e}"
            )));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > 1e-8 || trace.im.abs() > 1e-8 {
            return Err(Error::InvariantViolation(format!(
                "density matrix trace {trace} differs from 1"
            )));
        }
        let min_eig = min_hermitian_eigenvalue(&matrix);
        if min_eig < EIGENVALUE_FLOOR {
            return Err(Error::InvariantViolation(format!(
                "density matrix has negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// Pure state |i⟩⟨i|.
    pub fn pure(index: usize) -> Self {
        let mut m = Matrix7::zeros();
        m[(index, index)] = Complex64::new(1.0, 0.0);
        Self { matrix: m }
    }

    /// The default initial state |0,vac⟩⟨0,vac|.
    pub fn ground() -> Self {
        Self::pure(basis::GROUND)
    }

    pub fn matrix(&self) -> &Matrix7 {
        &self.matrix
    }

    pub fn population(&self, index: usize) -> f64 {
        self.matrix[(index, index)].re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_hermitian_eigenvalue(&self.matrix)
    }
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_hermitian_eigenvalue(m: &Matrix7) -> f64 {
    SymmetricEigen::new(*m)
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b))
}

/// Time series produced by [`integrate`].
///
/// At every stored time the five live populations (ground, excited, the
/// two photon states, sink) plus all four emission integrals sum to one
/// within the integrator tolerance, because the emission integrals equal
/// the populations accumulated in |∓1,vac⟩.
#[derive(Debug, Clone)]
pub struct SimulationTrace {
    rates: RateSet,
    pulse: PulseShape,
    pub times: Vec<f64>,
    /// Populations of all 7 basis states in basis order.
    pub populations: Vec<[f64; DIM]>,
    /// Density matrices at the stored times.
    pub states: Vec<Matrix7>,
    /// Mode occupation ⟨n₊⟩ (equals the |−1,1₊,0₋⟩ population in the
    /// single-excitation truncation).
    pub n_plus: Vec<f64>,
    /// Mode occupation ⟨n₋⟩.
    pub n_minus: Vec<f64>,
    pub p_fiber_plus: Vec<f64>,
    pub p_fiber_minus: Vec<f64>,
    pub p_intrinsic_plus: Vec<f64>,
    pub p_intrinsic_minus: Vec<f64>,
    /// |tr ρ − 1| at each stored time.
    pub trace_error: Vec<f64>,
    /// Adiabaticity diagnostic A(t) at each stored time (0 when g = 0).
    pub adiabaticity: Vec<f64>,
    /// Largest |tr ρ − 1| seen at any accepted step.
    pub max_trace_drift: f64,
    /// Smallest density-matrix eigenvalue seen at any stored time.
    pub min_eigenvalue: f64,
    /// Largest transient |A₂,vac⟩ population over all accepted steps.
    pub max_excited_population: f64,
    /// Largest A(t) over all accepted steps.
    pub max_adiabaticity: f64,
    /// Number of accepted integrator steps.
    pub steps: usize,
}

impl SimulationTrace {
    pub fn rates(&self) -> &RateSet {
        &self.rates
    }

    pub fn pulse(&self) -> &PulseShape {
        &self.pulse
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_populations(&self) -> &[f64; DIM] {
        self.populations.last().expect("trace is never empty")
    }

    /// Final P_fiber,+ + P_fiber,−.
    pub fn fiber_emission_total(&self) -> f64 {
        self.p_fiber_plus.last().unwrap() + self.p_fiber_minus.last().unwrap()
    }

    /// Final P_intrinsic,+ + P_intrinsic,−.
    pub fn intrinsic_emission_total(&self) -> f64 {
        self.p_intrinsic_plus.last().unwrap() + self.p_intrinsic_minus.last().unwrap()
    }

    pub fn sink_population(&self) -> f64 {
        self.final_populations()[basis::SINK]
    }

    /// Enforce the open-system integrity bounds on a completed run.
    pub fn check_invariants(&self, trace_bound: f64, eigenvalue_floor: f64) -> Result<()> {
        if self.max_trace_drift > trace_bound {
            return Err(Error::InvariantViolation(format!(
                "trace drift {:e} exceeds {trace_bound:e}",
                self.max_trace_drift
            )));
        }
        if self.min_eigenvalue < eigenvalue_floor {
            return Err(Error::InvariantViolation(format!(
                "minimum eigenvalue {:e} below {eigenvalue_floor:e}",
                self.min_eigenvalue
            )));
        }
        Ok(())
    }

    pub fn check_default_invariants(&self) -> Result<()> {
        self.check_invariants(TRACE_DRIFT_BOUND, EIGENVALUE_FLOOR)
    }
}

// --- Dormand-Prince 5(4) tableau ---

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// 5th-order weights (identical to the last A row; the pair is FSAL).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

/// B5 − B4: weights of the embedded error estimate.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Density matrix plus the four cumulative emission integrals
/// (P_fiber,+, P_fiber,−, P_int,+, P_int,−).
#[derive(Clone, Copy)]
struct Augmented {
    rho: Matrix7,
    emission: [f64; 4],
}

impl Augmented {
    fn zeros() -> Self {
        Self {
            rho: Matrix7::zeros(),
            emission: [0.0; 4],
        }
    }

    fn add_scaled(&mut self, c: f64, other: &Augmented) {
        self.rho += other.rho * Complex64::new(c, 0.0);
        for k in 0..4 {
            self.emission[k] += c * other.emission[k];
        }
    }
}

/// Structured Lindblad right-hand side. The collapse set consists of
/// elementary jumps, so Σ L†L is diagonal and the gain terms touch five
/// matrix elements; only the commutator needs full matrix products.
struct FastRhs {
    h_static: Matrix7,
    pump: Matrix7,
    /// Diagonal of Σ L†L: (0, γ+γ_φ, κ_tot, κ_tot, 0, 0, 0).
    damping: [f64; DIM],
    kappa_tot: f64,
    kappa_ex: f64,
    kappa_0: f64,
    gamma_sink: f64,
    gamma_recycle: f64,
    gamma_phi: f64,
}

impl FastRhs {
    fn new(rates: &RateSet) -> Self {
        let mut damping = [0.0; DIM];
        damping[basis::EXCITED] = rates.gamma + rates.gamma_phi;
        damping[basis::PHOTON_PLUS] = rates.kappa_tot();
        damping[basis::PHOTON_MINUS] = rates.kappa_tot();
        Self {
            h_static: build_hamiltonian(rates, 0.0),
            pump: pump_operator(),
            damping,
            kappa_tot: rates.kappa_tot(),
            kappa_ex: rates.kappa_ex,
            kappa_0: rates.kappa_0,
            gamma_sink: rates.gamma * (1.0 - rates.recycle_to_ground),
            gamma_recycle: rates.gamma * rates.recycle_to_ground,
            gamma_phi: rates.gamma_phi,
        }
    }

    fn eval(&self, omega_p: f64, y: &Augmented) -> Augmented {
        let rho = &y.rho;
        let h = self.h_static + self.pump * Complex64::new(omega_p, 0.0);
        let mut drho = (h * rho - rho * h) * Complex64::new(0.0, -1.0);
        for i in 0..DIM {
            for j in 0..DIM {
                let damp = 0.5 * (self.damping[i] + self.damping[j]);
                if damp != 0.0 {
                    drho[(i, j)] -= rho[(i, j)] * damp;
                }
            }
        }
        let n_plus = rho[(basis::PHOTON_PLUS, basis::PHOTON_PLUS)];
        let n_minus = rho[(basis::PHOTON_MINUS, basis::PHOTON_MINUS)];
        let excited = rho[(basis::EXCITED, basis::EXCITED)];
        drho[(basis::SPIN_MINUS, basis::SPIN_MINUS)] += n_plus * self.kappa_tot;
        drho[(basis::SPIN_PLUS, basis::SPIN_PLUS)] += n_minus * self.kappa_tot;
        drho[(basis::SINK, basis::SINK)] += excited * self.gamma_sink;
        drho[(basis::GROUND, basis::GROUND)] += excited * self.gamma_recycle;
        drho[(basis::EXCITED, basis::EXCITED)] += excited * self.gamma_phi;
        Augmented {
            rho: drho,
            emission: [
                self.kappa_ex * n_plus.re,
                self.kappa_ex * n_minus.re,
                self.kappa_0 * n_plus.re,
                self.kappa_0 * n_minus.re,
            ],
        }
    }
}

/// Scaled RMS error norm over all real state components.
fn error_norm(err: &Augmented, y: &Augmented, y_new: &Augmented, tol: &Tolerances) -> f64 {
    let mut sum = 0.0;
    let mut n = 0usize;
    let mut push = |e: f64, a: f64, b: f64| {
        let scale = tol.abs + tol.rel * a.abs().max(b.abs());
        sum += (e / scale) * (e / scale);
        n += 1;
    };
    for i in 0..DIM {
        for j in 0..DIM {
            let (e, a, b) = (err.rho[(i, j)], y.rho[(i, j)], y_new.rho[(i, j)]);
            push(e.re, a.re, b.re);
            push(e.im, a.im, b.im);
        }
    }
    for k in 0..4 {
        push(err.emission[k], y.emission[k], y_new.emission[k]);
    }
    (sum / n as f64).sqrt()
}

fn symmetrize(rho: &mut Matrix7) {
    let adj = rho.adjoint();
    *rho = (*rho + adj) * Complex64::new(0.5, 0.0);
}

/// Integrate the master equation from `initial` over `t_grid`, storing the
/// state at every grid time. The grid must be strictly increasing; the
/// default initial state is [`DensityState::ground`].
pub fn integrate(
    initial: &DensityState,
    pulse: &PulseShape,
    rates: &RateSet,
    t_grid: &[f64],
    tol: Tolerances,
) -> Result<SimulationTrace> {
    rates.validate()?;
    pulse.validate()?;
    tol.validate()?;
    if t_grid.len() < 2 {
        return Err(Error::invalid("t_grid", "needs at least two times"));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("t_grid", "must be strictly increasing"));
    }

    let rhs = FastRhs::new(rates);
    let span = t_grid[t_grid.len() - 1] - t_grid[0];
    let h_min = span * 1e-14;
    let n_points = t_grid.len();

    let mut trace = SimulationTrace {
        rates: *rates,
        pulse: *pulse,
        times: Vec::with_capacity(n_points),
        populations: Vec::with_capacity(n_points),
        states: Vec::with_capacity(n_points),
        n_plus: Vec::with_capacity(n_points),
        n_minus: Vec::with_capacity(n_points),
        p_fiber_plus: Vec::with_capacity(n_points),
        p_fiber_minus: Vec::with_capacity(n_points),
        p_intrinsic_plus: Vec::with_capacity(n_points),
        p_intrinsic_minus: Vec::with_capacity(n_points),
        trace_error: Vec::with_capacity(n_points),
        adiabaticity: Vec::with_capacity(n_points),
        max_trace_drift: 0.0,
        min_eigenvalue: f64::INFINITY,
        max_excited_population: 0.0,
        max_adiabaticity: 0.0,
        steps: 0,
    };

    let mut y = Augmented {
        rho: *initial.matrix(),
        emission: [0.0; 4],
    };
    let mut t = t_grid[0];
    let mut h = (t_grid[1] - t_grid[0]) / 100.0;
    let mut k: [Augmented; 7] = [Augmented::zeros(); 7];
    let mut k1_fresh = false;

    let record = |trace: &mut SimulationTrace, t: f64, y: &Augmented| {
        let mut pops = [0.0; DIM];
        for (i, p) in pops.iter_mut().enumerate() {
            *p = y.rho[(i, i)].re;
        }
        let tr_err = (y.rho.trace().re - 1.0).abs();
        let adiab = if rates.g > 0.0 {
            crate::tripod::adiabaticity_monitor(pulse, rates, t).expect("g > 0 checked")
        } else {
            0.0
        };
        trace.times.push(t);
        trace.populations.push(pops);
        trace.states.push(y.rho);
        trace.n_plus.push(pops[basis::PHOTON_PLUS]);
        trace.n_minus.push(pops[basis::PHOTON_MINUS]);
        trace.p_fiber_plus.push(y.emission[0]);
        trace.p_fiber_minus.push(y.emission[1]);
        trace.p_intrinsic_plus.push(y.emission[2]);
        trace.p_intrinsic_minus.push(y.emission[3]);
        trace.trace_error.push(tr_err);
        trace.adiabaticity.push(adiab);
        trace.max_trace_drift = trace.max_trace_drift.max(tr_err);
        trace.min_eigenvalue = trace
            .min_eigenvalue
            .min(min_hermitian_eigenvalue(&y.rho));
        trace.max_adiabaticity = trace.max_adiabaticity.max(adiab);
        trace.max_excited_population = trace
            .max_excited_population
            .max(pops[basis::EXCITED]);
    };

    record(&mut trace, t, &y);

    for target in &t_grid[1..] {
        while t < *target {
            // snap when the remaining gap is round-off from segment-end
            // clipping, so it cannot masquerade as step underflow (the
            // time is pinned to the grid value after the loop)
            if *target - t < h_min {
                k1_fresh = false;
                break;
            }
            let mut clipped = h >= *target - t;
            let mut h_step = h.min(*target - t);
            loop {
                if h_step < h_min {
                    return Err(Error::IntegrationFailure {
                        time: t,
                        message: format!(
                            "step size underflow ({h_step:e} s) under tolerances abs={:e} rel={:e}",
                            tol.abs, tol.rel
                        ),
                    });
                }
                // FSAL: reuse last stage of the previous accepted step.
                if !k1_fresh {
                    k[0] = rhs.eval(pulse.value(t), &y);
                }
                for s in 1..7 {
                    let mut ys = y;
                    for (j, kj) in k.iter().enumerate().take(s) {
                        let a = A[s - 1][j];
                        if a != 0.0 {
                            ys.add_scaled(h_step * a, kj);
                        }
                    }
                    k[s] = rhs.eval(pulse.value(t + C[s] * h_step), &ys);
                }
                let mut y_new = y;
                let mut err = Augmented::zeros();
                for s in 0..7 {
                    if B5[s] != 0.0 {
                        y_new.add_scaled(h_step * B5[s], &k[s]);
                    }
                    if E[s] != 0.0 {
                        err.add_scaled(h_step * E[s], &k[s]);
                    }
                }
                let err_norm = error_norm(&err, &y, &y_new, &tol);
                if err_norm <= 1.0 {
                    t += h_step;
                    y = y_new;
                    symmetrize(&mut y.rho);
                    k[0] = k[6]; // FSAL (symmetrization perturbs it below tolerance)
                    k1_fresh = true;
                    trace.steps += 1;
                    let tr_err = (y.rho.trace().re - 1.0).abs();
                    trace.max_trace_drift = trace.max_trace_drift.max(tr_err);
                    trace.max_excited_population = trace
                        .max_excited_population
                        .max(y.rho[(basis::EXCITED, basis::EXCITED)].re);
                    if rates.g > 0.0 {
                        let a = crate::tripod::adiabaticity_monitor(pulse, rates, t)
                            .expect("g > 0 checked");
                        trace.max_adiabaticity = trace.max_adiabaticity.max(a);
                    }
                    let grow = 0.9 * err_norm.max(1e-12).powf(-0.2);
                    let proposed = h_step * grow.clamp(0.2, 5.0);
                    // a step clipped to the segment end must not shrink the
                    // working step size
                    h = if clipped { h.max(proposed) } else { proposed };
                    break;
                }
                // stage 1 depends only on (t, y), so it survives rejection;
                // an error-limited retry is no longer segment-clipped
                clipped = false;
                let shrink = 0.9 * err_norm.powf(-0.2);
                h_step *= shrink.clamp(0.1, 0.9);
            }
        }
        // pin the stored time to the requested grid value (t can sit one
        // ulp past it after the final clipped step)
        t = *target;
        record(&mut trace, t, &y);
    }

    Ok(trace)
}
