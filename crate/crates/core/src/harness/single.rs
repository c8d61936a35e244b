//! Single-problem entry points: optimize one goal, or propagate and audit a
//! given pulse, with the same seed streams as the sweeps.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{parse_closed, ExperimentConfig, FixedParams, GoalKind, SweepVariable, SystemPreset};
use super::sweeps::{RunRecord, Settings};
use super::system::{DimensionSource, System};
use crate::bounds::BoundsReport;
use crate::controllability::{ObjectKind, ReachableDim};
use crate::dynamics::{grid, mean_operator_norm, propagate_density, propagate_pure, propagate_unitary};
use crate::error::{Error, Result};
use crate::optimizer::{objective, ControlProblem, Endpoints, OptimizationResult};
use crate::pulse::{ControlPulse, PulseDocument, PulseInfoReport};
use crate::qcore::{Complex64, ComplexMatrix};

fn default_budget() -> usize {
    1000
}

/// One control problem: a system, a goal and the pulse settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub system: SystemPreset,
    pub object_kind: ObjectKind,
    #[serde(default)]
    pub goal: GoalKind,
    #[serde(default)]
    pub fixed: FixedParams,
    /// Evaluation budget per optimizer restart.
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Pulse document to evaluate, relative to the config file.
    #[serde(default)]
    pub pulse: Option<PathBuf>,
    /// Signal-to-noise power ratio used for the noise bounds.
    #[serde(default)]
    pub snr: Option<f64>,
}

impl ProblemConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = parse_closed(text)?;
        cfg.as_experiment(0).validate()?;
        if cfg.snr.is_some_and(|s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::Config("snr must be positive and finite".into()));
        }
        Ok(cfg)
    }

    /// Loads the config and resolves `pulse` against the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Self::from_json(&std::fs::read_to_string(path)?)?;
        if let (Some(p), Some(dir)) = (&cfg.pulse, path.parent()) {
            cfg.pulse = Some(dir.join(p));
        }
        Ok(cfg)
    }

    /// The equivalent one-point `n_modes` sweep over `seed`.
    pub fn as_experiment(&self, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            system: self.system.clone(),
            object_kind: self.object_kind,
            sweep_variable: SweepVariable::NModes,
            sweep_values: vec![self.fixed.n_modes as f64],
            fixed: self.fixed.clone(),
            seeds: vec![seed],
            budget: self.budget,
            output_path: PathBuf::new(),
            goal: self.goal,
        }
    }
}

/// Final object after propagation, as `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FinalObject {
    Pure { amplitudes: Vec<[f64; 2]> },
    Density { matrix: Vec<Vec<[f64; 2]>> },
    Unitary { matrix: Vec<Vec<[f64; 2]>> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Propagation {
    /// Goal distance without the power penalty.
    pub objective: f64,
    /// Distance between the initial object and the goal.
    pub distance: f64,
    pub steps: usize,
    pub lambda_bar: f64,
    pub unitarity_defect: f64,
    #[serde(rename = "final")]
    pub final_object: FinalObject,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LieRank {
    #[serde(rename = "N")]
    pub n: usize,
    pub system: String,
    pub closure_dim: usize,
    pub controllable: bool,
    pub d_w: usize,
    pub su_dim: usize,
    pub manifold_dim: usize,
    pub source: DimensionSource,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingleRun {
    pub result: OptimizationResult,
    pub pulse: PulseDocument,
    pub best_restart: usize,
    pub restart_objectives: Vec<f64>,
    pub record: RunRecord,
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn rows(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    m.as_slice().chunks(m.cols()).map(pairs).collect()
}

/// A [`ProblemConfig`] instantiated for one seed.
pub struct Problem {
    experiment: ExperimentConfig,
    system: System,
    problem: ControlProblem,
    seed: u64,
}

impl Problem {
    pub fn new(cfg: &ProblemConfig, seed: u64) -> Result<Self> {
        let experiment = cfg.as_experiment(seed);
        let system = System::build(&cfg.system, cfg.object_kind, cfg.fixed.max_closure_dim)?;
        let settings = Settings::new(&experiment)?;
        let problem = settings.problem(&system, cfg.fixed.horizon, seed, cfg.fixed.epsilon)?;
        Ok(Self {
            experiment,
            system,
            problem,
            seed,
        })
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    pub fn control_problem(&self) -> &ControlProblem {
        &self.problem
    }

    pub fn lie_rank(&self) -> LieRank {
        let r: ReachableDim = self.system.reachable;
        LieRank {
            n: self.system.h.dim(),
            system: self.system.label.clone(),
            closure_dim: r.closure_dim,
            controllable: r.controllable,
            d_w: r.d_w,
            su_dim: r.su_dim,
            manifold_dim: r.manifold_dim,
            source: self.system.source,
        }
    }

    /// Optimizes from the seeded basis; identical to the matching sweep run.
    pub fn optimize(&self) -> Result<SingleRun> {
        let settings = Settings::new(&self.experiment)?;
        let f = &self.experiment.fixed;
        let (record, outcome) =
            settings.optimize_and_record(&self.system, f.horizon, f.n_modes, self.seed, f.n_modes as f64)?;
        Ok(SingleRun {
            result: outcome.result,
            pulse: outcome.pulse.to_document(),
            best_restart: outcome.best_restart,
            restart_objectives: outcome.restart_objectives,
            record,
        })
    }

    /// Pulse from the config window with zero coefficients on the seeded basis.
    pub fn zero_pulse(&self) -> Result<ControlPulse> {
        let settings = Settings::new(&self.experiment)?;
        let f = &self.experiment.fixed;
        ControlPulse::zero(settings.basis(f.n_modes, f.horizon, self.seed)?, settings.window)
    }

    fn check_horizon(&self, pulse: &ControlPulse) -> Result<()> {
        if pulse.basis().horizon() != self.problem.horizon {
            return Err(Error::Config(format!(
                "pulse duration {} does not match T = {}",
                pulse.basis().horizon(),
                self.problem.horizon
            )));
        }
        Ok(())
    }

    pub fn propagate(&self, pulse: &ControlPulse) -> Result<Propagation> {
        self.check_horizon(pulse)?;
        let settings = Settings::new(&self.experiment)?;
        let cfg = settings.propagation(self.problem.horizon)?;
        let h = &self.problem.h;
        let u = propagate_unitary(h, pulse, &cfg)?;
        let final_object = match &self.problem.endpoints {
            Endpoints::Pure { initial, .. } => FinalObject::Pure {
                amplitudes: pairs(propagate_pure(h, initial, pulse, &cfg)?.amplitudes()),
            },
            Endpoints::Density { initial, .. } => FinalObject::Density {
                matrix: rows(propagate_density(h, initial, pulse, &cfg)?.matrix()),
            },
            Endpoints::Unitary { .. } => FinalObject::Unitary { matrix: rows(&u) },
        };
        Ok(Propagation {
            objective: settings.cost(&self.problem, pulse)?,
            distance: self.problem.endpoints.distance()?,
            steps: grid(pulse, &cfg)?.0,
            lambda_bar: mean_operator_norm(h, pulse, &cfg)?,
            unitarity_defect: u.unitarity_defect(),
            final_object,
        })
    }

    /// Bound report for `pulse`, with `snr` feeding the noise bounds.
    pub fn bounds(&self, pulse: &ControlPulse, snr: Option<f64>) -> Result<BoundsReport> {
        self.check_horizon(pulse)?;
        let settings = Settings::new(&self.experiment)?;
        let info = pulse.info_content();
        let info = PulseInfoReport::from_parts(info.duration, info.bandwidth, info.bit_depth, snr);
        settings.report(&self.system, &self.problem, pulse, info)
    }

    /// Objective including the power penalty.
    pub fn objective(&self, pulse: &ControlPulse) -> Result<f64> {
        let settings = Settings::new(&self.experiment)?;
        objective(&self.problem, pulse, &settings.propagation(self.problem.horizon)?)
    }
}

/// Reads a pulse document from `path`.
pub fn load_pulse(path: &Path) -> Result<ControlPulse> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read pulse {}: {e}", path.display())))?;
    let doc: PulseDocument = serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
    ControlPulse::from_document(&doc)
}
