//! Closed-form precision, sample-count, time and noise bounds, and the audit
//! that confronts empirical runs with them. All logarithms are base 2.

use serde::Serialize;

use crate::controllability::{ObjectKind, ReachableDim};
use crate::dynamics::{mean_operator_norm, ControlField, PropagationConfig};
use crate::error::{Error, Result};
use crate::optimizer::ControlProblem;
use crate::optimizer::Endpoints;
use crate::pulse::{AmplitudeWindow, PulseInfoReport};
use crate::qcore::HamiltonianPair;

/// Slack allowed below the precision bound before a run counts as a violation.
pub const VIOLATION_FLOOR: f64 = 1e-12;

/// Goals closer than this to the initial object count as already reached.
pub const TRIVIAL_DISTANCE: f64 = 1e-7;

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {v}")))
    }
}

fn dimension(d_w: usize) -> Result<f64> {
    if d_w == 0 {
        return Err(Error::InvalidArgument("reachable dimension must be at least 1".into()));
    }
    Ok(d_w as f64)
}

fn precision(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1], got {eps}")))
    }
}

/// `2^(−T·ΔΩ·κ_s / D_W)`. A zero bit depth carries no information and gives 1.
pub fn epsilon_info_bound(horizon: f64, bandwidth: f64, bit_depth: f64, d_w: usize) -> Result<f64> {
    positive("horizon", horizon)?;
    positive("bandwidth", bandwidth)?;
    if !(bit_depth.is_finite() && bit_depth >= 0.0) {
        return Err(Error::InvalidArgument(format!("bit depth must be non-negative, got {bit_depth}")));
    }
    Ok((-horizon * bandwidth * bit_depth / dimension(d_w)?).exp2())
}

/// `2^(−n_s·κ_s / D_W)` with an integer sample count.
pub fn epsilon_info_from_samples(sample_count: usize, bit_depth: f64, d_w: usize) -> Result<f64> {
    if !(bit_depth.is_finite() && bit_depth >= 0.0) {
        return Err(Error::InvalidArgument(format!("bit depth must be non-negative, got {bit_depth}")));
    }
    Ok((-(sample_count as f64) * bit_depth / dimension(d_w)?).exp2())
}

/// Minimal number of samples, `n_s ≥ D_W`.
pub fn ns_lower_bound(d_w: usize) -> usize {
    d_w
}

/// `T ≥ D_W / ΔΩ`.
pub fn time_lower_bound(d_w: usize, bandwidth: f64) -> Result<f64> {
    positive("bandwidth", bandwidth)?;
    Ok(dimension(d_w)? / bandwidth)
}

/// `T ≥ D_W / (ΔΩ·κ_s) · log2(1/ε)`.
pub fn time_lower_bound_with_precision(d_w: usize, bandwidth: f64, bit_depth: f64, epsilon: f64) -> Result<f64> {
    positive("bandwidth", bandwidth)?;
    positive("bit depth", bit_depth)?;
    precision(epsilon)?;
    Ok(dimension(d_w)? / (bandwidth * bit_depth) * (1.0 / epsilon).log2())
}

/// Speed-limit time `d(initial, goal) / Λ̄`.
pub fn qsl_time(endpoints: &Endpoints, lambda_bar: f64) -> Result<f64> {
    positive("mean generator norm", lambda_bar)?;
    Ok(endpoints.distance()? / lambda_bar)
}

/// Speed-limit time with `Λ̄` measured along `field` on the propagation grid.
pub fn qsl_time_along(problem: &ControlProblem, field: &dyn ControlField, cfg: &PropagationConfig) -> Result<f64> {
    qsl_time(&problem.endpoints, mean_operator_norm(&problem.h, field, cfg)?)
}

/// `(1 + S/N)^(−n_s / D_W)`.
pub fn epsilon_noise_bound(sample_count: usize, d_w: usize, snr_power: f64) -> Result<f64> {
    positive("signal-to-noise ratio", snr_power)?;
    Ok((-(sample_count as f64) / dimension(d_w)? * snr_power.ln_1p()).exp())
}

/// `T ≥ D_W/ΔΩ · log2(1/ε) / log2(1 + S/N)`.
pub fn time_noise_bound(d_w: usize, bandwidth: f64, epsilon: f64, snr_power: f64) -> Result<f64> {
    positive("bandwidth", bandwidth)?;
    positive("signal-to-noise ratio", snr_power)?;
    precision(epsilon)?;
    Ok(dimension(d_w)? / bandwidth * (1.0 / epsilon).log2() / (1.0 + snr_power).log2())
}

/// Information needed to cover a polynomial-length path with ε-balls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoUpperBound {
    /// `(D^k·v_max/ε)·D·log2(1/ε)`, with `Poly(D) = D^k`.
    pub bits: f64,
    /// Ball count along a path of length `T·v_max`.
    pub ball_count: f64,
    pub poly_degree: u32,
}

pub fn upper_bound_info(d_w: usize, epsilon: f64, v_max: f64, poly_degree: u32, horizon: f64) -> Result<InfoUpperBound> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    positive("v_max", v_max)?;
    positive("horizon", horizon)?;
    let d = dimension(d_w)?;
    let poly = d.powi(poly_degree as i32);
    Ok(InfoUpperBound {
        bits: poly * v_max / epsilon * d * (1.0 / epsilon).log2(),
        ball_count: horizon * v_max / epsilon,
        poly_degree,
    })
}

/// `‖H_D‖ + max|γ|·‖H_C‖`, the largest generator norm the window allows.
pub fn default_v_max(h: &HamiltonianPair, window: &AmplitudeWindow) -> f64 {
    let g = window.gamma_min.abs().max(window.gamma_max.abs());
    h.drift().spectral_norm() + g * h.control().spectral_norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsInputs {
    pub reachable: ReachableDim,
    /// Which convention `reachable.d_w` follows.
    pub object_kind: ObjectKind,
    pub info: PulseInfoReport,
    pub epsilon: f64,
    /// `d(initial, goal)`.
    pub distance: f64,
    /// Time-averaged generator norm `Λ̄`.
    pub lambda_bar: f64,
    pub snr: Option<f64>,
    pub v_max: Option<f64>,
    pub poly_degree: u32,
}

/// Every bound for one configuration. Bounds that are undefined for the
/// inputs (zero bandwidth, no noise model) are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub d_w: usize,
    pub d_w_kind: ObjectKind,
    pub closure_dim: usize,
    pub controllable: bool,
    pub n_s: usize,
    pub kappa_s: f64,
    pub bandwidth: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub information_bits: f64,
    pub epsilon: f64,
    /// `d(initial, goal)`.
    pub distance: f64,
    /// Precision bound from the integer sample count.
    pub eps_info: f64,
    /// Precision bound from `T·ΔΩ` directly.
    pub eps_info_continuous: Option<f64>,
    pub n_s_min: usize,
    pub t_min: Option<f64>,
    pub t_min_at_precision: Option<f64>,
    pub t_qsl: Option<f64>,
    pub eps_noise: Option<f64>,
    pub t_min_noise: Option<f64>,
    /// Illustrative only; never enforced.
    pub info_upper_bound: Option<InfoUpperBound>,
}

impl BoundsReport {
    pub fn evaluate(inp: &BoundsInputs) -> Result<Self> {
        let d_w = inp.reachable.d_w;
        let info = &inp.info;
        precision(inp.epsilon)?;
        let has_band = info.bandwidth > 0.0;
        let eps_info = epsilon_info_from_samples(info.sample_count, info.bit_depth, d_w)?;
        let eps_info_continuous = if has_band {
            Some(epsilon_info_bound(info.duration, info.bandwidth, info.bit_depth, d_w)?)
        } else {
            None
        };
        let t_min = has_band.then(|| time_lower_bound(d_w, info.bandwidth)).transpose()?;
        let t_min_at_precision = (has_band && info.bit_depth > 0.0)
            .then(|| time_lower_bound_with_precision(d_w, info.bandwidth, info.bit_depth, inp.epsilon))
            .transpose()?;
        let t_qsl = (inp.lambda_bar > 0.0).then(|| inp.distance / inp.lambda_bar);
        let eps_noise = inp
            .snr
            .map(|s| epsilon_noise_bound(info.sample_count, d_w, s))
            .transpose()?;
        let t_min_noise = match inp.snr {
            Some(s) if has_band => Some(time_noise_bound(d_w, info.bandwidth, inp.epsilon, s)?),
            _ => None,
        };
        let info_upper_bound = match inp.v_max {
            Some(v) if inp.epsilon < 1.0 => Some(upper_bound_info(d_w, inp.epsilon, v, inp.poly_degree, info.duration)?),
            _ => None,
        };
        Ok(Self {
            d_w,
            d_w_kind: inp.object_kind,
            closure_dim: inp.reachable.closure_dim,
            controllable: inp.reachable.controllable,
            n_s: info.sample_count,
            kappa_s: info.bit_depth,
            bandwidth: info.bandwidth,
            horizon: info.duration,
            information_bits: info.information_bits,
            epsilon: inp.epsilon,
            distance: inp.distance,
            eps_info,
            eps_info_continuous,
            n_s_min: ns_lower_bound(d_w),
            t_min,
            t_min_at_precision,
            t_qsl,
            eps_noise,
            t_min_noise,
            info_upper_bound,
        })
    }

    /// Bounds an empirical run with final `objective` breaks. A goal that
    /// coincides with the initial object needs no control information, so the
    /// precision bound is not applied to it.
    pub fn audit(&self, objective: f64) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.distance > TRIVIAL_DISTANCE && objective < self.eps_info - VIOLATION_FLOOR {
            out.push(Violation::Precision {
                objective,
                bound: self.eps_info,
            });
        }
        if objective <= self.epsilon {
            if let Some(b) = self.t_qsl {
                if self.horizon < b {
                    out.push(Violation::Time {
                        kind: TimeBound::SpeedLimit,
                        horizon: self.horizon,
                        bound: b,
                    });
                }
            }
        }
        out
    }

    /// Sample-count and bandwidth-time shortfalls of a run that reached ε.
    /// These are reported rather than enforced.
    pub fn advisories(&self, objective: f64) -> Vec<Violation> {
        let mut out = Vec::new();
        if objective > self.epsilon || self.distance <= TRIVIAL_DISTANCE {
            return out;
        }
        if self.n_s < self.n_s_min {
            out.push(Violation::Samples {
                n_s: self.n_s,
                bound: self.n_s_min,
            });
        }
        if let Some(b) = self.t_min {
            if self.horizon < b {
                out.push(Violation::Time {
                    kind: TimeBound::Bandwidth,
                    horizon: self.horizon,
                    bound: b,
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeBound {
    SpeedLimit,
    Bandwidth,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "violation")]
pub enum Violation {
    Precision { objective: f64, bound: f64 },
    Time { kind: TimeBound, horizon: f64, bound: f64 },
    Samples { n_s: usize, bound: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{pauli, Complex64, PureState};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn rel(a: f64, b: f64) -> f64 {
        if b == 0.0 {
            a.abs()
        } else {
            ((a - b) / b).abs()
        }
    }

    #[test]
    fn info_bound_examples() {
        assert!(rel(epsilon_info_bound(4.0, 2.0, 8.0, 16).unwrap(), 0.0625) <= 1e-12);
        assert!(rel(epsilon_info_bound(2.0, 3.0, 4.0, 24).unwrap(), 0.5) <= 1e-12);
        assert_eq!(epsilon_info_bound(2.0, 3.0, 0.0, 24).unwrap(), 1.0);
        assert!(epsilon_info_bound(0.0, 1.0, 1.0, 1).is_err());
        assert!(epsilon_info_bound(1.0, -1.0, 1.0, 1).is_err());
        assert!(epsilon_info_bound(1.0, 1.0, 1.0, 0).is_err());
    }

    #[test]
    fn sample_and_time_examples() {
        assert_eq!(ns_lower_bound(4), 4);
        assert_eq!(ns_lower_bound(2), 2);
        assert_eq!(ns_lower_bound(1), 1);
        assert!(rel(time_lower_bound(4, 2.0).unwrap(), 2.0) <= 1e-12);
        assert!(rel(time_lower_bound(256, 16.0).unwrap(), 16.0) <= 1e-12);
        assert!(time_lower_bound(4, 0.0).is_err());
        let t = time_lower_bound_with_precision(4, 2.0, 8.0, 2f64.powi(-8)).unwrap();
        assert!(rel(t, 2.0) <= 1e-12);
    }

    #[test]
    fn speed_limit_examples() {
        let zero = PureState::basis(2, 0).unwrap();
        let one = PureState::basis(2, 1).unwrap();
        let plus = PureState::new(vec![Complex64::new(FRAC_1_SQRT_2, 0.0); 2]).unwrap();
        let e = |g: &PureState| Endpoints::Pure { initial: zero.clone(), goal: g.clone() };
        assert!(rel(qsl_time(&e(&one), 1.0).unwrap(), PI / 2.0) <= 1e-12);
        assert!(qsl_time(&e(&zero), 1.0).unwrap().abs() < 1e-7);
        assert!(rel(qsl_time(&e(&plus), 1.0).unwrap(), PI / 4.0) <= 1e-12);
        assert!(qsl_time(&e(&one), 0.0).is_err());
    }

    #[test]
    fn noise_examples() {
        assert!(rel(epsilon_noise_bound(4, 4, 255.0).unwrap(), 1.0 / 256.0) <= 1e-12);
        assert!(rel(epsilon_noise_bound(16, 4, 255.0).unwrap(), 2f64.powi(-32)) <= 1e-12);
        assert!((epsilon_noise_bound(4, 4, 1e-15).unwrap() - 1.0).abs() < 1e-14);
        assert!(epsilon_noise_bound(4, 4, 0.0).is_err());

        assert!(rel(time_noise_bound(4, 2.0, 2f64.powi(-8), 255.0).unwrap(), 2.0) <= 1e-12);
        assert_eq!(time_noise_bound(4, 2.0, 1.0, 255.0).unwrap(), 0.0);
        assert!(time_noise_bound(4, 2.0, 0.0, 255.0).is_err());
        assert!(time_noise_bound(4, 2.0, 1.5, 255.0).is_err());
    }

    #[test]
    fn noise_and_quantization_agree_at_matching_capacity() {
        for &(t, bw, k, d) in &[(4.0, 2.0, 8.0, 16usize), (3.0, 1.0, 5.0, 4), (10.0, 0.5, 3.0, 2)] {
            let ns = (t * bw) as usize;
            let a = epsilon_noise_bound(ns, d, 2f64.powf(k) - 1.0).unwrap();
            let b = epsilon_info_bound(t, bw, k, d).unwrap();
            assert!(rel(a, b) <= 1e-12);
        }
        let k = 8.0;
        let eps = 2f64.powi(-8);
        let a = time_noise_bound(4, 2.0, eps, 2f64.powf(k) - 1.0).unwrap();
        let b = time_lower_bound_with_precision(4, 2.0, k, eps).unwrap();
        assert!(rel(a, b) <= 1e-12);
    }

    #[test]
    fn upper_bound_examples() {
        let u = upper_bound_info(2, 0.5, 1.0, 1, 1.0).unwrap();
        assert!(rel(u.bits, 8.0) <= 1e-12);
        let u = upper_bound_info(1, 0.25, 3.0, 0, 1.0).unwrap();
        assert!(rel(u.bits, 3.0 * 2.0 / 0.25) <= 1e-12);
        let small = upper_bound_info(2, 1e-12, 1.0, 1, 1.0).unwrap().bits;
        assert!(small > 1e13);
        assert!(upper_bound_info(2, 1.0, 1.0, 1, 1.0).is_err());
    }

    #[test]
    fn monotonicity() {
        let base = epsilon_info_bound(2.0, 1.5, 3.0, 4).unwrap();
        assert!(epsilon_info_bound(2.5, 1.5, 3.0, 4).unwrap() < base);
        assert!(epsilon_info_bound(2.0, 2.0, 3.0, 4).unwrap() < base);
        assert!(epsilon_info_bound(2.0, 1.5, 3.5, 4).unwrap() < base);
        assert!(epsilon_info_bound(2.0, 1.5, 3.0, 5).unwrap() > base);
        let n = epsilon_noise_bound(3, 4, 10.0).unwrap();
        assert!(epsilon_noise_bound(4, 4, 10.0).unwrap() < n);
        assert!(epsilon_noise_bound(3, 4, 11.0).unwrap() < n);
    }

    #[test]
    fn v_max_uses_the_window_extreme() {
        let h = HamiltonianPair::new(pauli::z(), pauli::x().scale_real(2.0)).unwrap();
        let w = AmplitudeWindow::with_bit_depth(0.0, -3.0, 1.0, 8.0).unwrap();
        assert!((default_v_max(&h, &w) - 7.0).abs() < 1e-12);
    }

    fn report(info: PulseInfoReport, eps: f64) -> BoundsReport {
        let reach = ReachableDim {
            d_w: 2,
            closure_dim: 3,
            su_dim: 3,
            manifold_dim: 2,
            controllable: true,
        };
        BoundsReport::evaluate(&BoundsInputs {
            reachable: reach,
            object_kind: ObjectKind::Pure,
            info,
            epsilon: eps,
            distance: PI / 2.0,
            lambda_bar: 2.0,
            snr: Some(255.0),
            v_max: Some(2.0),
            poly_degree: 1,
        })
        .unwrap()
    }

    #[test]
    fn report_entries() {
        let r = report(PulseInfoReport::from_parts(4.0, 1.0, 8.0, None), 0.01);
        assert_eq!(r.n_s, 4);
        assert!(rel(r.eps_info, 2f64.powi(-16)) <= 1e-12);
        assert!(rel(r.eps_info_continuous.unwrap(), 2f64.powi(-16)) <= 1e-12);
        assert_eq!(r.n_s_min, 2);
        assert!(rel(r.t_min.unwrap(), 2.0) <= 1e-12);
        assert!(rel(r.t_qsl.unwrap(), PI / 4.0) <= 1e-12);
        assert!(rel(r.eps_noise.unwrap(), 2f64.powi(-16)) <= 1e-12);
        assert!(r.t_min_noise.unwrap() > 0.0);
        assert!(r.info_upper_bound.is_some());
        let flat = report(PulseInfoReport::from_parts(4.0, 0.0, 8.0, None), 0.01);
        assert_eq!(flat.n_s, 1);
        assert_eq!(flat.t_min, None);
        assert!(rel(flat.eps_info, 2f64.powi(-4)) <= 1e-12);
    }

    #[test]
    fn audit_flags_each_bound() {
        let r = report(PulseInfoReport::from_parts(0.5, 2.0, 2.0, None), 0.01);
        assert!(rel(r.eps_info, 0.5) <= 1e-12);
        let v = r.audit(0.1);
        assert!(matches!(v[..], [Violation::Precision { .. }]));
        let v = r.audit(0.005);
        assert!(v.iter().any(|x| matches!(x, Violation::Time { kind: TimeBound::SpeedLimit, .. })));
        assert!(r.audit(0.6).is_empty());
        let adv = r.advisories(0.005);
        assert!(adv.iter().any(|x| matches!(x, Violation::Samples { n_s: 1, bound: 2 })));
        assert!(adv.iter().any(|x| matches!(x, Violation::Time { kind: TimeBound::Bandwidth, .. })));
        assert!(r.advisories(0.5).is_empty());

        let ok = report(PulseInfoReport::from_parts(4.0, 1.0, 52.0, None), 0.01);
        assert!(ok.audit(1e-6).is_empty());

        let mut same = report(PulseInfoReport::from_parts(4.0, 1.0, 2.0, None), 0.01);
        same.distance = 0.0;
        same.t_qsl = Some(0.0);
        assert!(same.audit(0.0).is_empty());
    }
}
