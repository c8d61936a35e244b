use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::controllability::ObjectKind;
use crate::dynamics::{SamplingRule, DEFAULT_SEGMENTS_PER_SAMPLE};
use crate::error::{Error, Result};
use crate::pulse::{AmplitudeWindow, Envelope, DEFAULT_BIT_DEPTH};

/// Largest chain accepted by the Ising preset.
pub const MAX_CHAIN: usize = 10;

/// Keys that would imply open-system dynamics, which are not simulated.
const OPEN_SYSTEM_KEYS: [&str; 4] = ["lindblad", "collapse", "dissipat", "decay_rate"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemPreset {
    /// `H_D = σ_z`, `H_C = σ_x`.
    SingleQubit,
    /// Open chain `J Σ Z_i Z_{i+1} + h Σ X_i + g Σ Z_i`, controlled by `X` on
    /// the first site, both normalized to unit operator norm.
    IsingChain {
        n: usize,
        #[serde(default = "one", rename = "J")]
        j: f64,
        #[serde(default = "one")]
        h: f64,
        #[serde(default = "half")]
        g: f64,
    },
    /// Random Hermitian drift and control of dimension `n`, normalized.
    RandomPair { n: usize, seed: u64 },
}

fn one() -> f64 {
    1.0
}

fn half() -> f64 {
    0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    NModes,
    #[serde(rename = "T")]
    Time,
    /// Values are noise-to-signal power ratios `N/S`; zero is the noiseless baseline.
    Snr,
    NQubits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GoalKind {
    /// `|0⟩ → |N−1⟩`; for gates the basis-reversing permutation.
    #[default]
    Flip,
    /// Goal equals the initial object.
    Same,
    /// Haar-random goal drawn per seed.
    Haar,
}

/// Parameters held fixed across a sweep. Missing entries take the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FixedParams {
    #[serde(rename = "T")]
    pub horizon: f64,
    pub n_modes: usize,
    pub gamma0: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
    /// Quantization step; when absent it follows from `bit_depth`.
    pub delta_gamma: Option<f64>,
    pub bit_depth: f64,
    pub epsilon: f64,
    pub restarts: usize,
    pub segments_per_sample: usize,
    pub rule: SamplingRule,
    pub envelope: Envelope,
    pub power_penalty: f64,
    pub poly_degree: u32,
    /// Noise realizations per noise level.
    pub noise_seeds: usize,
    /// Slope-fit window for the noise sweep; defaults to one decade above the
    /// smallest positive noise level.
    pub fit_min: Option<f64>,
    pub fit_max: Option<f64>,
    /// Optimization target for the noise baseline.
    pub baseline_epsilon: f64,
    /// Pre-optimized pulse document for the noise sweep.
    pub baseline_pulse: Option<PathBuf>,
    /// Pick a basis whose sample count equals `D_W` for the noise baseline.
    pub match_samples: bool,
    /// Upper end of the mode bisection in the system-size sweep.
    pub max_modes: usize,
    /// Largest Hilbert dimension for which the Lie closure is computed; above
    /// it the system is assumed controllable.
    pub max_closure_dim: usize,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            horizon: 4.0,
            n_modes: 4,
            gamma0: 0.0,
            gamma_min: -1.0,
            gamma_max: 1.0,
            delta_gamma: None,
            bit_depth: DEFAULT_BIT_DEPTH,
            epsilon: 0.01,
            restarts: 3,
            segments_per_sample: DEFAULT_SEGMENTS_PER_SAMPLE,
            rule: SamplingRule::Midpoint,
            envelope: Envelope::None,
            power_penalty: 0.0,
            poly_degree: 1,
            noise_seeds: 20,
            fit_min: None,
            fit_max: None,
            baseline_epsilon: 1e-10,
            baseline_pulse: None,
            match_samples: true,
            max_modes: 16,
            max_closure_dim: 32,
        }
    }
}

impl FixedParams {
    pub fn window(&self) -> Result<AmplitudeWindow> {
        match self.delta_gamma {
            Some(d) => AmplitudeWindow::new(self.gamma0, self.gamma_min, self.gamma_max, d),
            None => AmplitudeWindow::with_bit_depth(self.gamma0, self.gamma_min, self.gamma_max, self.bit_depth),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub system: SystemPreset,
    pub object_kind: ObjectKind,
    pub sweep_variable: SweepVariable,
    pub sweep_values: Vec<f64>,
    #[serde(default)]
    pub fixed: FixedParams,
    pub seeds: Vec<u64>,
    /// Evaluation budget per optimizer restart.
    pub budget: usize,
    pub output_path: PathBuf,
    #[serde(default)]
    pub goal: GoalKind,
}

fn find_open_system_key(v: &serde_json::Value) -> Option<String> {
    match v {
        serde_json::Value::Object(map) => map.iter().find_map(|(k, v)| {
            let lower = k.to_lowercase();
            if OPEN_SYSTEM_KEYS.iter().any(|p| lower.contains(p)) {
                Some(k.clone())
            } else {
                find_open_system_key(v)
            }
        }),
        serde_json::Value::Array(items) => items.iter().find_map(find_open_system_key),
        _ => None,
    }
}

/// Parses `text`, rejecting any key that asks for open-system dynamics.
pub(super) fn parse_closed<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let raw: serde_json::Value = serde_json::from_str(text)?;
    if let Some(k) = find_open_system_key(&raw) {
        return Err(Error::Config(format!(
            "field `{k}` requests open-system dynamics, which are not supported"
        )));
    }
    serde_json::from_value(raw).map_err(|e| Error::Config(e.to_string()))
}

fn is_integer(v: f64) -> bool {
    v.is_finite() && v.fract() == 0.0 && v >= 0.0
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = parse_closed(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.sweep_values.is_empty() {
            return bad("sweep_values must not be empty".into());
        }
        if self.sweep_values.windows(2).any(|w| !(w[0] < w[1])) {
            return bad("sweep_values must be strictly increasing".into());
        }
        if self.sweep_values.iter().any(|v| !v.is_finite()) {
            return bad("sweep_values must be finite".into());
        }
        if self.seeds.is_empty() {
            return bad("at least one seed is required".into());
        }
        if self.seeds.iter().collect::<BTreeSet<_>>().len() != self.seeds.len() {
            return bad("seeds must be distinct".into());
        }
        if self.budget == 0 {
            return bad("budget must be positive".into());
        }
        let f = &self.fixed;
        f.window()?;
        if !(f.horizon.is_finite() && f.horizon > 0.0) {
            return bad(format!("T must be positive, got {}", f.horizon));
        }
        if !(f.epsilon > 0.0 && f.epsilon < 1.0) || !(f.baseline_epsilon > 0.0 && f.baseline_epsilon < 1.0) {
            return bad("epsilon values must lie in (0, 1)".into());
        }
        if f.restarts == 0 || f.noise_seeds == 0 || f.max_modes == 0 {
            return bad("restarts, noise_seeds and max_modes must be positive".into());
        }
        match &self.system {
            SystemPreset::IsingChain { n, .. } if self.sweep_variable != SweepVariable::NQubits => {
                check_chain(*n)?
            }
            SystemPreset::RandomPair { n, .. } if *n < 2 => return bad("random pair needs dimension ≥ 2".into()),
            _ => {}
        }
        match self.sweep_variable {
            SweepVariable::NModes => {
                if !self.sweep_values.iter().all(|&v| is_integer(v)) {
                    return bad("n_modes sweep values must be non-negative integers".into());
                }
            }
            SweepVariable::Time => {
                if self.sweep_values.iter().any(|&v| v <= 0.0) {
                    return bad("T sweep values must be positive".into());
                }
            }
            SweepVariable::Snr => {
                if self.sweep_values.iter().any(|&v| v < 0.0) {
                    return bad("noise-to-signal ratios must be non-negative".into());
                }
            }
            SweepVariable::NQubits => {
                if !matches!(self.system, SystemPreset::IsingChain { .. }) {
                    return bad("n_qubits sweeps require the ising_chain preset".into());
                }
                for &v in &self.sweep_values {
                    if !is_integer(v) {
                        return bad("n_qubits sweep values must be integers".into());
                    }
                    check_chain(v as usize)?;
                }
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, independent of input formatting.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&canonical))
    }
}

pub(crate) fn check_chain(n: usize) -> Result<()> {
    if !(2..=MAX_CHAIN).contains(&n) {
        return Err(Error::Config(format!("ising chain needs 2 ≤ n ≤ {MAX_CHAIN} sites, got {n}")));
    }
    Ok(())
}
