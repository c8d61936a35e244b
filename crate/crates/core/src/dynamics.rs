//! Coherent propagation under `H(t) = H_D + γ(t) H_C`.
//!
//! The horizon `[0, T]` is split into `max(1, n_s) · segments_per_sample`
//! equal steps, where `n_s` is the field's sample count. Each step applies
//! the exact exponential of the Hamiltonian frozen at the step's left point
//! or midpoint, so every propagator is unitary to round-off.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{expm_hermitian_scaled, ComplexMatrix, DensityMatrix, HamiltonianPair, PureState};

/// Upper bound on `segments_per_sample`.
pub const MAX_SEGMENTS_PER_SAMPLE: usize = 1_000_000;

/// Default refinement of each pulse sample.
pub const DEFAULT_SEGMENTS_PER_SAMPLE: usize = 20;

/// Where the field is sampled inside each propagation step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingRule {
    LeftPoint,
    #[default]
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationConfig {
    pub total_time: f64,
    pub segments_per_sample: usize,
    pub rule: SamplingRule,
}

impl PropagationConfig {
    pub fn new(total_time: f64, segments_per_sample: usize, rule: SamplingRule) -> Result<Self> {
        let cfg = Self {
            total_time,
            segments_per_sample,
            rule,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Midpoint rule with the default refinement.
    pub fn with_time(total_time: f64) -> Result<Self> {
        Self::new(total_time, DEFAULT_SEGMENTS_PER_SAMPLE, SamplingRule::Midpoint)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.total_time.is_finite() && self.total_time > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "total time must be finite and positive, got {}",
                self.total_time
            )));
        }
        if self.segments_per_sample == 0 || self.segments_per_sample > MAX_SEGMENTS_PER_SAMPLE {
            return Err(Error::InvalidArgument(format!(
                "segments_per_sample must lie in 1..={MAX_SEGMENTS_PER_SAMPLE}, got {}",
                self.segments_per_sample
            )));
        }
        Ok(())
    }
}

/// A real control field on `[0, horizon]`.
pub trait ControlField: Sync {
    fn horizon(&self) -> f64;

    /// Number of independent samples the field carries; sets the grid resolution.
    fn sample_count(&self) -> usize;

    fn value(&self, t: f64) -> Result<f64>;
}

/// Piecewise-constant field with `values.len()` equal-width pieces.
#[derive(Debug, Clone)]
pub struct SampledPulse {
    horizon: f64,
    values: Vec<f64>,
}

impl SampledPulse {
    pub fn new(horizon: f64, values: Vec<f64>) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidArgument(format!("horizon must be positive, got {horizon}")));
        }
        if values.is_empty() {
            return Err(Error::InvalidArgument("sampled pulse needs at least one value".into()));
        }
        Ok(Self { horizon, values })
    }

    /// Constant field `γ(t) = value`.
    pub fn constant(horizon: f64, value: f64) -> Result<Self> {
        Self::new(horizon, vec![value])
    }

    /// Samples `field` at the propagation grid points of `cfg`, one piece per step.
    pub fn from_field(field: &dyn ControlField, cfg: &PropagationConfig) -> Result<Self> {
        Self::new(field.horizon(), step_values(field, cfg)?)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl ControlField for SampledPulse {
    fn horizon(&self) -> f64 {
        self.horizon
    }

    fn sample_count(&self) -> usize {
        self.values.len()
    }

    fn value(&self, t: f64) -> Result<f64> {
        check_time(t, self.horizon)?;
        let n = self.values.len();
        let k = ((t / self.horizon) * n as f64).floor() as usize;
        Ok(self.values[k.min(n - 1)])
    }
}

/// `γ(T − t)`.
pub struct Reversed<'a>(pub &'a dyn ControlField);

impl ControlField for Reversed<'_> {
    fn horizon(&self) -> f64 {
        self.0.horizon()
    }

    fn sample_count(&self) -> usize {
        self.0.sample_count()
    }

    fn value(&self, t: f64) -> Result<f64> {
        let horizon = self.0.horizon();
        check_time(t, horizon)?;
        self.0.value((horizon - t).clamp(0.0, horizon))
    }
}

/// Sum of a base field and a piecewise-constant offset aligned to its samples.
pub struct Perturbed<'a> {
    pub base: &'a dyn ControlField,
    pub offset: &'a SampledPulse,
}

impl ControlField for Perturbed<'_> {
    fn horizon(&self) -> f64 {
        self.base.horizon()
    }

    fn sample_count(&self) -> usize {
        self.base.sample_count().max(self.offset.sample_count())
    }

    fn value(&self, t: f64) -> Result<f64> {
        Ok(self.base.value(t)? + self.offset.value(t)?)
    }
}

pub(crate) fn check_time(t: f64, horizon: f64) -> Result<()> {
    let slack = 1e-12 * horizon.max(1.0);
    if !(t >= -slack && t <= horizon + slack) {
        return Err(Error::TimeOutOfRange { t, horizon });
    }
    Ok(())
}

/// Number of propagation steps and their width.
pub fn grid(field: &dyn ControlField, cfg: &PropagationConfig) -> Result<(usize, f64)> {
    cfg.validate()?;
    let horizon = field.horizon();
    if (horizon - cfg.total_time).abs() > 1e-12 * cfg.total_time.max(1.0) {
        return Err(Error::DimensionMismatch(format!(
            "pulse horizon {horizon} differs from propagation time {}",
            cfg.total_time
        )));
    }
    let steps = field
        .sample_count()
        .max(1)
        .checked_mul(cfg.segments_per_sample)
        .ok_or_else(|| Error::InvalidArgument("propagation grid overflows".into()))?;
    Ok((steps, cfg.total_time / steps as f64))
}

/// Time at which the field is read for step `k`.
fn step_time(k: usize, dt: f64, rule: SamplingRule) -> f64 {
    match rule {
        SamplingRule::LeftPoint => k as f64 * dt,
        SamplingRule::Midpoint => (k as f64 + 0.5) * dt,
    }
}

/// Field values `γ_k` used on each propagation step.
pub fn step_values(field: &dyn ControlField, cfg: &PropagationConfig) -> Result<Vec<f64>> {
    let (steps, dt) = grid(field, cfg)?;
    (0..steps).map(|k| field.value(step_time(k, dt, cfg.rule))).collect()
}

fn check_pair_dim(h: &HamiltonianPair, n: usize) -> Result<()> {
    if h.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "Hamiltonian dimension {} vs object dimension {n}",
            h.dim()
        )));
    }
    Ok(())
}

/// Step propagators `exp(−i δt (H_D + γ_k H_C))` in time order.
fn step_propagators<'a>(
    h: &'a HamiltonianPair,
    gammas: &'a [f64],
    dt: f64,
) -> impl Iterator<Item = Result<ComplexMatrix>> + 'a {
    gammas.iter().map(move |&g| expm_hermitian_scaled(&h.at(g), dt))
}

/// `U(T) = ∏_k exp(−i δt H_k)`, later steps multiplied on the left.
pub fn propagate_unitary(
    h: &HamiltonianPair,
    field: &dyn ControlField,
    cfg: &PropagationConfig,
) -> Result<ComplexMatrix> {
    let (_, dt) = grid(field, cfg)?;
    let gammas = step_values(field, cfg)?;
    let mut u = ComplexMatrix::identity(h.dim());
    for step in step_propagators(h, &gammas, dt) {
        u = step?.matmul(&u);
    }
    Ok(u)
}

pub fn propagate_pure(
    h: &HamiltonianPair,
    psi0: &PureState,
    field: &dyn ControlField,
    cfg: &PropagationConfig,
) -> Result<PureState> {
    check_pair_dim(h, psi0.dim())?;
    let (_, dt) = grid(field, cfg)?;
    let gammas = step_values(field, cfg)?;
    let mut psi = psi0.amplitudes().to_vec();
    for step in step_propagators(h, &gammas, dt) {
        psi = step?.mul_vec(&psi);
    }
    Ok(PureState::from_unchecked(psi))
}

/// `U ρ0 U†`.
pub fn propagate_density(
    h: &HamiltonianPair,
    rho0: &DensityMatrix,
    field: &dyn ControlField,
    cfg: &PropagationConfig,
) -> Result<DensityMatrix> {
    check_pair_dim(h, rho0.dim())?;
    let u = propagate_unitary(h, field, cfg)?;
    let rho = u.matmul(rho0.matrix()).matmul(&u.adjoint());
    Ok(DensityMatrix::from_unchecked(rho))
}

/// Time average of `‖H_D + γ(t) H_C‖` (operator norm) over the propagation grid.
pub fn mean_operator_norm(
    h: &HamiltonianPair,
    field: &dyn ControlField,
    cfg: &PropagationConfig,
) -> Result<f64> {
    let gammas = step_values(field, cfg)?;
    let mut total = 0.0;
    for &g in &gammas {
        let eig = h.at(g).eigvalsh()?;
        let lo = eig.first().copied().unwrap_or(0.0).abs();
        let hi = eig.last().copied().unwrap_or(0.0).abs();
        total += lo.max(hi);
    }
    Ok(total / gammas.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::random::{haar_state, random_hermitian, rng};
    use crate::qcore::{fidelity_pure, gate_infidelity, pauli, Complex64, DensityMatrix};
    use rand::Rng;
    use std::f64::consts::PI;

    fn qubit(drift: ComplexMatrix, control: ComplexMatrix) -> HamiltonianPair {
        HamiltonianPair::new(drift, control).unwrap()
    }

    /// Smooth analytic test field.
    struct Smooth {
        horizon: f64,
    }

    impl ControlField for Smooth {
        fn horizon(&self) -> f64 {
            self.horizon
        }
        fn sample_count(&self) -> usize {
            4
        }
        fn value(&self, t: f64) -> Result<f64> {
            check_time(t, self.horizon)?;
            Ok(0.8 * (1.3 * t).sin() + 0.3 * (2.1 * t + 0.4).cos())
        }
    }

    #[test]
    fn free_precession_for_two_pi_is_identity_up_to_phase() {
        let h = qubit(pauli::z(), pauli::x());
        let field = SampledPulse::constant(2.0 * PI, 0.0).unwrap();
        let cfg = PropagationConfig::with_time(2.0 * PI).unwrap();
        let u = propagate_unitary(&h, &field, &cfg).unwrap();
        assert!(gate_infidelity(&u, &ComplexMatrix::identity(2)).unwrap() < 1e-9);
    }

    #[test]
    fn rabi_pi_pulse_flips_the_qubit() {
        let h = qubit(ComplexMatrix::zeros(2, 2), pauli::x());
        let field = SampledPulse::constant(PI / 2.0, 1.0).unwrap();
        let cfg = PropagationConfig::with_time(PI / 2.0).unwrap();
        let zero = PureState::basis(2, 0).unwrap();
        let one = PureState::basis(2, 1).unwrap();
        let u = propagate_unitary(&h, &field, &cfg).unwrap();
        let out = PureState::new(u.mul_vec(zero.amplitudes())).unwrap();
        assert!((fidelity_pure(&out, &one).unwrap() - 1.0).abs() < 1e-9);
        let psi = propagate_pure(&h, &zero, &field, &cfg).unwrap();
        assert!((fidelity_pure(&psi, &one).unwrap() - 1.0).abs() < 1e-9);
        let rho = propagate_density(&h, &zero.to_density(), &field, &cfg).unwrap();
        assert!(rho.matrix().approx_eq(one.to_density().matrix(), 1e-9));
    }

    #[test]
    fn eigenstate_only_picks_up_a_phase() {
        let h = qubit(pauli::z(), pauli::x());
        let field = SampledPulse::constant(1.7, 0.0).unwrap();
        let cfg = PropagationConfig::with_time(1.7).unwrap();
        let zero = PureState::basis(2, 0).unwrap();
        let psi = propagate_pure(&h, &zero, &field, &cfg).unwrap();
        assert!((fidelity_pure(&psi, &zero).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn piecewise_constant_matches_ten_times_finer_grid() {
        let mut r = rng(21);
        let h = HamiltonianPair::new(random_hermitian(4, &mut r), random_hermitian(4, &mut r)).unwrap();
        let values: Vec<f64> = (0..16).map(|_| r.random_range(-1.0..1.0)).collect();
        let field = SampledPulse::new(3.0, values).unwrap();
        let coarse = PropagationConfig::new(3.0, 1, SamplingRule::Midpoint).unwrap();
        let fine = PropagationConfig::new(3.0, 10, SamplingRule::Midpoint).unwrap();
        let a = propagate_unitary(&h, &field, &coarse).unwrap();
        let b = propagate_unitary(&h, &field, &fine).unwrap();
        assert!(a.approx_eq(&b, 1e-6));
    }

    #[test]
    fn pure_and_unitary_paths_agree() {
        let mut r = rng(22);
        for _ in 0..10 {
            let h = HamiltonianPair::new(random_hermitian(3, &mut r), random_hermitian(3, &mut r)).unwrap();
            let values: Vec<f64> = (0..5).map(|_| r.random_range(-1.0..1.0)).collect();
            let field = SampledPulse::new(1.5, values).unwrap();
            let cfg = PropagationConfig::with_time(1.5).unwrap();
            let psi0 = haar_state(3, &mut r);
            let u = propagate_unitary(&h, &field, &cfg).unwrap();
            let direct = propagate_pure(&h, &psi0, &field, &cfg).unwrap();
            let via_u = u.mul_vec(psi0.amplitudes());
            for (a, b) in direct.amplitudes().iter().zip(&via_u) {
                assert!((a - b).norm() < 1e-10);
            }
            assert!((direct.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn density_propagation_preserves_structure() {
        let mut r = rng(23);
        let h = HamiltonianPair::new(random_hermitian(3, &mut r), random_hermitian(3, &mut r)).unwrap();
        let field = Smooth { horizon: 2.0 };
        let cfg = PropagationConfig::with_time(2.0).unwrap();
        let mixed = DensityMatrix::maximally_mixed(3).unwrap();
        let out = propagate_density(&h, &mixed, &field, &cfg).unwrap();
        assert!(out.matrix().approx_eq(mixed.matrix(), 1e-12));

        let a = haar_state(3, &mut r).to_density();
        let b = haar_state(3, &mut r).to_density();
        let rho0 = DensityMatrix::new((a.matrix() + b.matrix()).scale_real(0.5)).unwrap();
        let out = propagate_density(&h, &rho0, &field, &cfg).unwrap();
        assert!((out.purity() - rho0.purity()).abs() < 1e-9);
        assert!((out.matrix().trace() - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert!(out.matrix().hermiticity_defect() < 1e-9);
        assert!(out.matrix().eigvalsh().unwrap()[0] > -1e-9);
    }

    fn halving_ratio(rule: SamplingRule) -> f64 {
        let mut r = rng(24);
        let h = HamiltonianPair::new(random_hermitian(3, &mut r), random_hermitian(3, &mut r))
            .unwrap()
            .normalized()
            .unwrap();
        let field = Smooth { horizon: 3.0 };
        let reference = propagate_unitary(&h, &field, &PropagationConfig::new(3.0, 4096, rule).unwrap()).unwrap();
        let err = |spp| {
            let u = propagate_unitary(&h, &field, &PropagationConfig::new(3.0, spp, rule).unwrap()).unwrap();
            (&u - &reference).frobenius_norm()
        };
        err(16) / err(32)
    }

    #[test]
    fn step_halving_convergence_orders() {
        let left = halving_ratio(SamplingRule::LeftPoint);
        let mid = halving_ratio(SamplingRule::Midpoint);
        assert!(left >= 1.9, "left-point ratio {left}");
        assert!(mid >= 3.8, "midpoint ratio {mid}");
    }

    #[test]
    fn time_reversal_inverts_the_propagator() {
        let mut r = rng(25);
        let h = HamiltonianPair::new(random_hermitian(4, &mut r), random_hermitian(4, &mut r)).unwrap();
        let field = Smooth { horizon: 2.5 };
        let cfg = PropagationConfig::with_time(2.5).unwrap();
        let u = propagate_unitary(&h, &field, &cfg).unwrap();
        let back = propagate_unitary(&h.negated(), &Reversed(&field), &cfg).unwrap();
        assert!(back.matmul(&u).approx_eq(&ComplexMatrix::identity(4), 1e-8));
    }

    #[test]
    fn mismatches_are_rejected() {
        let h = qubit(pauli::z(), pauli::x());
        let field = SampledPulse::constant(1.0, 0.0).unwrap();
        let cfg = PropagationConfig::with_time(2.0).unwrap();
        assert!(matches!(propagate_unitary(&h, &field, &cfg), Err(Error::DimensionMismatch(_))));
        let cfg = PropagationConfig::with_time(1.0).unwrap();
        let psi3 = PureState::basis(3, 0).unwrap();
        assert!(propagate_pure(&h, &psi3, &field, &cfg).is_err());
        assert!(PropagationConfig::new(0.0, 1, SamplingRule::Midpoint).is_err());
        assert!(PropagationConfig::new(1.0, 0, SamplingRule::Midpoint).is_err());
        assert!(PropagationConfig::new(1.0, MAX_SEGMENTS_PER_SAMPLE + 1, SamplingRule::Midpoint).is_err());
        assert!(matches!(field.value(1.5), Err(Error::TimeOutOfRange { .. })));
    }

    #[test]
    fn mean_operator_norm_of_constant_field() {
        let h = qubit(pauli::z(), pauli::x());
        let field = SampledPulse::constant(1.0, 1.0).unwrap();
        let cfg = PropagationConfig::with_time(1.0).unwrap();
        let lambda = mean_operator_norm(&h, &field, &cfg).unwrap();
        assert!((lambda - 2f64.sqrt()).abs() < 1e-12);
    }
}
