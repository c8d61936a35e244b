//! Chopped randomized trigonometric control pulses.
//!
//! A pulse is `γ(t) = clamp(γ0 + e(t) Σ_k [a_k sin(ω_k t) + b_k cos(ω_k t)], γ_min, γ_max)`
//! with `ω_k = 2πk(1 + r_k)/T` and `r_k` uniform in `[−½, ½]` drawn from the
//! basis seed. The optional envelope `e(t) = sin(πt/T)` pins both ends to `γ0`.

use std::f64::consts::PI;
use std::io::Write;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dynamics::{check_time, ControlField};
use crate::error::{Error, Result};
use crate::qcore::random::rng;

/// Bit depth assumed when no quantization step is configured: the mantissa
/// width of an `f64`, i.e. the resolution the unquantized pulse actually has.
pub const DEFAULT_BIT_DEPTH: f64 = 52.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Envelope {
    #[default]
    None,
    SineRamp,
}

#[derive(Debug, Clone)]
pub struct CrabBasis {
    n_modes: usize,
    horizon: f64,
    frequencies: Vec<f64>,
    seed: u64,
    envelope: Envelope,
}

impl CrabBasis {
    pub fn new(n_modes: usize, horizon: f64, seed: u64, envelope: Envelope) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidArgument(format!("horizon must be positive, got {horizon}")));
        }
        let mut r = rng(seed);
        let frequencies = (1..=n_modes)
            .map(|k| {
                let jitter: f64 = r.random_range(-0.5..=0.5);
                2.0 * PI * k as f64 * (1.0 + jitter) / horizon
            })
            .collect();
        Ok(Self {
            n_modes,
            horizon,
            frequencies,
            seed,
            envelope,
        })
    }

    /// Same mode count, horizon and envelope with a fresh frequency draw.
    pub fn reseeded(&self, seed: u64) -> Self {
        Self::new(self.n_modes, self.horizon, seed, self.envelope).expect("validated horizon")
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn envelope(&self) -> Envelope {
        self.envelope
    }

    /// Highest basis frequency in cycles per unit time (0 without modes).
    pub fn bandwidth(&self) -> f64 {
        self.frequencies.iter().copied().fold(0.0, f64::max) / (2.0 * PI)
    }

    /// `n_s = ⌈T·ΔΩ⌉`, at least 1 (a constant pulse is one sample).
    pub fn sample_count(&self) -> usize {
        sample_count(self.horizon, self.bandwidth())
    }

    fn envelope_at(&self, t: f64) -> f64 {
        match self.envelope {
            Envelope::None => 1.0,
            Envelope::SineRamp => (PI * t / self.horizon).sin(),
        }
    }
}

pub(crate) fn sample_count(horizon: f64, bandwidth: f64) -> usize {
    let x = horizon * bandwidth;
    // absorb round-off such as 4.000000000000001
    let n = (x - 1e-9 * x.max(1.0)).ceil();
    (n.max(1.0)) as usize
}

/// Amplitude constraints and quantization step of a pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeWindow {
    pub gamma0: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub delta_gamma: f64,
}

impl AmplitudeWindow {
    pub fn new(gamma0: f64, gamma_min: f64, gamma_max: f64, delta_gamma: f64) -> Result<Self> {
        let w = Self {
            gamma0,
            gamma_min,
            gamma_max,
            delta_gamma,
        };
        w.validate()?;
        Ok(w)
    }

    /// Window whose step gives `κ_s = bits`, i.e. `δγ = Δγ / (2^bits − 1)`.
    pub fn with_bit_depth(gamma0: f64, gamma_min: f64, gamma_max: f64, bits: f64) -> Result<Self> {
        if !(bits > 0.0 && bits.is_finite()) {
            return Err(Error::InvalidArgument(format!("bit depth must be positive, got {bits}")));
        }
        Self::new(gamma0, gamma_min, gamma_max, (gamma_max - gamma_min) / (bits.exp2() - 1.0))
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.gamma0, self.gamma_min, self.gamma_max, self.delta_gamma]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.gamma_min >= self.gamma_max {
            return Err(Error::InvalidArgument(format!(
                "amplitude window [{}, {}] is empty or non-finite",
                self.gamma_min, self.gamma_max
            )));
        }
        if self.delta_gamma <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "quantization step must be positive, got {}",
                self.delta_gamma
            )));
        }
        if self.delta_gamma > self.range() * (1.0 + 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "quantization step {} exceeds the window width {}",
                self.delta_gamma,
                self.range()
            )));
        }
        Ok(())
    }

    /// `Δγ = γ_max − γ_min`.
    pub fn range(&self) -> f64 {
        self.gamma_max - self.gamma_min
    }

    /// `κ_s = log2(1 + Δγ/δγ)`.
    pub fn bit_depth(&self) -> f64 {
        (1.0 + self.range() / self.delta_gamma).log2()
    }

    pub fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.gamma_min, self.gamma_max)
    }
}

#[derive(Debug, Clone)]
pub struct ControlPulse {
    basis: CrabBasis,
    coefficients: Vec<f64>,
    window: AmplitudeWindow,
}

impl ControlPulse {
    /// `coefficients` holds `2·n_modes` values ordered `a_1, b_1, a_2, b_2, …`.
    pub fn new(basis: CrabBasis, coefficients: Vec<f64>, window: AmplitudeWindow) -> Result<Self> {
        window.validate()?;
        if coefficients.len() != 2 * basis.n_modes() {
            return Err(Error::DimensionMismatch(format!(
                "{} modes need {} coefficients, got {}",
                basis.n_modes(),
                2 * basis.n_modes(),
                coefficients.len()
            )));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("pulse coefficients must be finite".into()));
        }
        Ok(Self {
            basis,
            coefficients,
            window,
        })
    }

    pub fn zero(basis: CrabBasis, window: AmplitudeWindow) -> Result<Self> {
        let n = 2 * basis.n_modes();
        Self::new(basis, vec![0.0; n], window)
    }

    pub fn basis(&self) -> &CrabBasis {
        &self.basis
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn window(&self) -> &AmplitudeWindow {
        &self.window
    }

    pub fn with_gamma0(mut self, gamma0: f64) -> Self {
        self.window.gamma0 = gamma0;
        self
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        check_time(t, self.basis.horizon)?;
        let correction: f64 = self
            .basis
            .frequencies
            .iter()
            .zip(self.coefficients.chunks_exact(2))
            .map(|(&w, ab)| ab[0] * (w * t).sin() + ab[1] * (w * t).cos())
            .sum();
        Ok(self
            .window
            .clamp(self.window.gamma0 + self.basis.envelope_at(t) * correction))
    }

    pub fn info_content(&self) -> PulseInfoReport {
        PulseInfoReport::from_parts(
            self.basis.horizon,
            self.basis.bandwidth(),
            self.window.bit_depth(),
            None,
        )
    }

    pub fn to_document(&self) -> PulseDocument {
        PulseDocument {
            seed: self.basis.seed,
            n_modes: self.basis.n_modes,
            horizon: self.basis.horizon,
            gamma0: self.window.gamma0,
            gamma_min: self.window.gamma_min,
            gamma_max: self.window.gamma_max,
            delta_gamma: self.window.delta_gamma,
            envelope: self.basis.envelope,
            coefficients: self.coefficients.clone(),
        }
    }

    pub fn from_document(doc: &PulseDocument) -> Result<Self> {
        let basis = CrabBasis::new(doc.n_modes, doc.horizon, doc.seed, doc.envelope)?;
        let window = AmplitudeWindow::new(doc.gamma0, doc.gamma_min, doc.gamma_max, doc.delta_gamma)?;
        Self::new(basis, doc.coefficients.clone(), window)
    }

    /// Writes `t,gamma` rows for the given sample times.
    pub fn write_samples_csv<W: Write>(&self, writer: W, times: &[f64]) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["t", "gamma"])?;
        for &t in times {
            w.write_record([t.to_string(), self.evaluate(t)?.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl ControlField for ControlPulse {
    fn horizon(&self) -> f64 {
        self.basis.horizon
    }

    fn sample_count(&self) -> usize {
        self.basis.sample_count()
    }

    fn value(&self, t: f64) -> Result<f64> {
        self.evaluate(t)
    }
}

/// JSON form of a pulse; frequencies are regenerated from `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseDocument {
    pub seed: u64,
    pub n_modes: usize,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub gamma0: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub delta_gamma: f64,
    pub envelope: Envelope,
    pub coefficients: Vec<f64>,
}

/// Classical information carried by a pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseInfoReport {
    /// `ΔΩ`, cycles per unit time.
    pub bandwidth: f64,
    /// `κ_s`, bits per sample.
    pub bit_depth: f64,
    pub duration: f64,
    /// `n_s = ⌈T·ΔΩ⌉`, at least 1.
    pub sample_count: usize,
    /// `b_γ = T·ΔΩ·κ_s`, or `T·ΔΩ·log2(1 + S/N)` when a signal-to-noise ratio is given.
    pub information_bits: f64,
    pub snr: Option<f64>,
}

impl PulseInfoReport {
    pub fn from_parts(duration: f64, bandwidth: f64, bit_depth: f64, snr: Option<f64>) -> Self {
        let per_sample = snr.map_or(bit_depth, |s| (1.0 + s).log2());
        Self {
            bandwidth,
            bit_depth,
            duration,
            sample_count: sample_count(duration, bandwidth),
            information_bits: duration * bandwidth * per_sample,
            snr,
        }
    }
}

/// Snaps samples to the levels `γ_min + m·δγ` of the window (plus `γ_max`
/// when the window is not a whole number of steps). Out-of-window samples
/// are clamped first.
pub fn quantize(samples: &[f64], delta_gamma: f64, window: (f64, f64)) -> Result<Vec<f64>> {
    let (lo, hi) = window;
    if samples.is_empty() {
        return Err(Error::InvalidArgument("nothing to quantize".into()));
    }
    if !(delta_gamma > 0.0 && delta_gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "quantization step must be positive, got {delta_gamma}"
        )));
    }
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!("invalid window [{lo}, {hi}]")));
    }
    let top = ((hi - lo) / delta_gamma + 1e-9).floor();
    let last = lo + top * delta_gamma;
    Ok(samples
        .iter()
        .map(|&s| {
            let s = s.clamp(lo, hi);
            let m = ((s - lo) / delta_gamma).round().min(top);
            let level = lo + m * delta_gamma;
            if last < hi && (hi - s) < (s - level).abs() {
                hi
            } else {
                level
            }
        })
        .collect())
}

/// Adds white Gaussian noise of variance `mean(s²)/snr_power`. An infinite
/// ratio returns the samples unchanged.
pub fn add_gaussian_noise(samples: &[f64], snr_power: f64, seed: u64) -> Result<Vec<f64>> {
    if snr_power.is_nan() || snr_power <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "signal-to-noise ratio must be positive, got {snr_power}"
        )));
    }
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no samples to perturb".into()));
    }
    if snr_power.is_infinite() {
        return Ok(samples.to_vec());
    }
    let power = samples.iter().map(|s| s * s).sum::<f64>() / samples.len() as f64;
    let sigma = (power / snr_power).sqrt();
    let mut r = rng(seed);
    Ok(samples
        .iter()
        .map(|&s| {
            let n: f64 = r.sample(StandardNormal);
            s + sigma * n
        })
        .collect())
}
