use rand::Rng;
use rayon::prelude::*;

use super::nelder_mead::{nelder_mead, NelderMeadOptions, OptimizationResult};
use super::problem::{objective, ControlProblem};
use crate::dynamics::{PropagationConfig, SamplingRule, DEFAULT_SEGMENTS_PER_SAMPLE};
use crate::error::{Error, Result};
use crate::pulse::{AmplitudeWindow, ControlPulse, CrabBasis};
use crate::qcore::random::{derive_seed, rng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeOptions {
    pub restarts: usize,
    /// Evaluation budget per restart.
    pub budget: usize,
    pub seed: u64,
    pub segments_per_sample: usize,
    pub rule: SamplingRule,
    pub ftol: f64,
    /// Initial simplex edge; defaults to a tenth of the amplitude range.
    pub scale: Option<f64>,
    /// Redraw the basis frequencies on restarts after the first.
    pub reseed_restarts: bool,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            restarts: 1,
            budget: 1000,
            seed: 0,
            segments_per_sample: DEFAULT_SEGMENTS_PER_SAMPLE,
            rule: SamplingRule::Midpoint,
            ftol: 1e-12,
            scale: None,
            reseed_restarts: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ControlOutcome {
    /// Best restart; `evaluations` is summed over all restarts.
    pub result: OptimizationResult,
    pub pulse: ControlPulse,
    pub best_restart: usize,
    pub restart_objectives: Vec<f64>,
}

/// Parameter vector to pulse. With no modes the search runs over `γ0` alone.
fn build(basis: &CrabBasis, window: &AmplitudeWindow, x: &[f64]) -> Result<ControlPulse> {
    if basis.n_modes() == 0 {
        Ok(ControlPulse::zero(basis.clone(), *window)?.with_gamma0(x[0]))
    } else {
        ControlPulse::new(basis.clone(), x.to_vec(), *window)
    }
}

fn run_restart(
    problem: &ControlProblem,
    basis: &CrabBasis,
    window: &AmplitudeWindow,
    opts: &OptimizeOptions,
    index: usize,
) -> Result<(OptimizationResult, ControlPulse)> {
    let basis = if index == 0 || !opts.reseed_restarts {
        basis.clone()
    } else {
        basis.reseeded(derive_seed(basis.seed(), index as u64))
    };
    let nm_seed = derive_seed(opts.seed, index as u64);
    let dim = (2 * basis.n_modes()).max(1);
    let x0: Vec<f64> = if index == 0 {
        if basis.n_modes() == 0 {
            vec![window.gamma0]
        } else {
            vec![0.0; dim]
        }
    } else {
        let mut r = rng(derive_seed(nm_seed, u64::MAX));
        let half = window.range() / 4.0;
        if basis.n_modes() == 0 {
            vec![r.random_range(window.gamma_min..=window.gamma_max)]
        } else {
            (0..dim).map(|_| r.random_range(-half..=half)).collect()
        }
    };
    let cfg = PropagationConfig::new(problem.horizon, opts.segments_per_sample, opts.rule)?;
    let nm_opts = NelderMeadOptions {
        scale: opts.scale.unwrap_or(0.1 * window.range()),
        budget: opts.budget,
        ftol: opts.ftol,
        seed: nm_seed,
        target: Some(problem.epsilon),
    };
    let result = nelder_mead(
        |x| {
            let pulse = build(&basis, window, x)?;
            objective(problem, &pulse, &cfg).map_err(|e| Error::Propagation {
                coefficients: x.to_vec(),
                source: Box::new(e),
            })
        },
        &x0,
        nm_opts,
    )?;
    let pulse = build(&basis, window, &result.best_coefficients)?;
    Ok((result, pulse))
}

/// Multi-restart CRAB search. Restart 0 uses `basis` from zero coefficients;
/// later restarts start from random coefficients and, unless disabled, redraw
/// the frequencies.
/// Restarts run in parallel and merge by lowest objective, then lowest index.
pub fn optimize(
    problem: &ControlProblem,
    basis: &CrabBasis,
    window: &AmplitudeWindow,
    opts: &OptimizeOptions,
) -> Result<ControlOutcome> {
    window.validate()?;
    if opts.restarts == 0 {
        return Err(Error::InvalidArgument("at least one restart is required".into()));
    }
    if (basis.horizon() - problem.horizon).abs() > 1e-12 * problem.horizon.max(1.0) {
        return Err(Error::DimensionMismatch(format!(
            "basis horizon {} differs from problem horizon {}",
            basis.horizon(),
            problem.horizon
        )));
    }
    let runs: Vec<(OptimizationResult, ControlPulse)> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| run_restart(problem, basis, window, opts, i))
        .collect::<Result<_>>()?;

    let restart_objectives: Vec<f64> = runs.iter().map(|(r, _)| r.best_objective).collect();
    let total: usize = runs.iter().map(|(r, _)| r.evaluations).sum();
    let best_restart = restart_objectives
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .expect("at least one restart");
    let (mut result, pulse) = runs.into_iter().nth(best_restart).expect("index in range");
    result.evaluations = total;
    result.converged = result.best_objective <= problem.epsilon;
    Ok(ControlOutcome {
        result,
        pulse,
        best_restart,
        restart_objectives,
    })
}
