use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, SweepVariable, SystemPreset};
use super::system::{endpoints, DimensionSource, System};
use super::{BASIS_STREAM, NOISE_STREAM, OPTIMIZER_STREAM};
use crate::bounds::{default_v_max, BoundsInputs, BoundsReport, Violation};
use crate::dynamics::{mean_operator_norm, ControlField, Perturbed, PropagationConfig, SampledPulse};
use crate::error::{Error, Result};
use crate::optimizer::{objective, optimize, ControlOutcome, ControlProblem, OptimizeOptions};
use crate::pulse::{add_gaussian_noise, AmplitudeWindow, ControlPulse, CrabBasis, PulseDocument, PulseInfoReport};
use crate::qcore::random::derive_seed;

/// Basis redraws tried when a specific sample count is required.
const BASIS_SEARCH: u64 = 256;

/// Matching bases tried in turn until the noise baseline reaches its target.
const BASELINE_ATTEMPTS: usize = 8;

/// One optimizer run (or one noise level for one seed) with its bound columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub sweep_value: f64,
    pub seed: u64,
    pub best_objective: f64,
    pub n_s: usize,
    pub kappa_s: f64,
    pub d_w: usize,
    pub eps_info: f64,
    pub t_min: Option<f64>,
    pub t_qsl: Option<f64>,
    pub evaluations: usize,
    pub converged: bool,
    /// Noise-limited precision bound, for noisy runs.
    pub eps_noise: Option<f64>,
    pub violations: Vec<Violation>,
    /// Bandwidth and sample-count shortfalls, reported but not enforced.
    pub advisories: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub sweep_value: f64,
    pub median_objective: f64,
    pub runs: Vec<RunRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KneeSummary {
    pub d_w: usize,
    /// Largest median among sweep points with `2·n_modes ≥ D_W`.
    pub above_median: Option<f64>,
    /// Smallest median among sweep points with `2·n_modes ≤ D_W/2`.
    pub below_median: Option<f64>,
    pub ratio: Option<f64>,
    /// Medians non-increasing in the mode count, with values below ε treated as ε.
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSummary {
    /// Shortest horizon at which any seed reached ε.
    pub shortest_success: Option<f64>,
    /// Longest speed-limit time seen across runs.
    pub max_t_qsl: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseSummary {
    pub fit_window: [f64; 2],
    pub floors: Vec<f64>,
    pub baseline_n_s: Vec<usize>,
    /// Log-log slope of excess infidelity against `N/S`, per seed.
    pub slopes: Vec<Option<f64>>,
    pub median_slope: Option<f64>,
    /// Runs whose mean infidelity lies below the noise-limited precision bound.
    pub below_noise_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizePoint {
    pub n_qubits: usize,
    pub d_w: usize,
    /// Smallest mode count reaching ε per seed; `None` when the bisection
    /// range never succeeded.
    pub minimal_n_modes: Vec<Option<usize>>,
    pub median_minimal: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeSummary {
    pub points: Vec<SizePoint>,
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "sweep")]
pub enum SweepSummary {
    ParameterCount(KneeSummary),
    Time(TimeSummary),
    Noise(NoiseSummary),
    SystemSize(SizeSummary),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationRecord {
    pub sweep_value: f64,
    pub seed: u64,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutput {
    pub variable: SweepVariable,
    pub system: String,
    pub d_w_source: DimensionSource,
    pub records: Vec<SweepRecord>,
    pub summary: SweepSummary,
    pub violations: Vec<ViolationRecord>,
    pub advisories: Vec<ViolationRecord>,
}

impl SweepOutput {
    pub fn runs(&self) -> impl Iterator<Item = &RunRecord> {
        self.records.iter().flat_map(|r| r.runs.iter())
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub(super) struct Settings<'a> {
    cfg: &'a ExperimentConfig,
    pub(super) window: AmplitudeWindow,
}

impl<'a> Settings<'a> {
    pub(super) fn new(cfg: &'a ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            cfg,
            window: cfg.fixed.window()?,
        })
    }

    pub(super) fn propagation(&self, horizon: f64) -> Result<PropagationConfig> {
        PropagationConfig::new(horizon, self.cfg.fixed.segments_per_sample, self.cfg.fixed.rule)
    }

    pub(super) fn options(&self, seed: u64) -> OptimizeOptions {
        let f = &self.cfg.fixed;
        OptimizeOptions {
            restarts: f.restarts,
            budget: self.cfg.budget,
            seed: derive_seed(seed, OPTIMIZER_STREAM),
            segments_per_sample: f.segments_per_sample,
            rule: f.rule,
            ..Default::default()
        }
    }

    pub(super) fn problem(&self, system: &System, horizon: f64, seed: u64, epsilon: f64) -> Result<ControlProblem> {
        let e = endpoints(system.h.dim(), self.cfg.object_kind, self.cfg.goal, seed)?;
        ControlProblem::new(system.h.clone(), e, horizon, epsilon)?.with_power_penalty(self.cfg.fixed.power_penalty)
    }

    pub(super) fn basis(&self, n_modes: usize, horizon: f64, seed: u64) -> Result<CrabBasis> {
        CrabBasis::new(n_modes, horizon, derive_seed(seed, BASIS_STREAM), self.cfg.fixed.envelope)
    }

    /// Bare goal distance after evolving under `field`, without the power penalty.
    pub(super) fn cost(&self, problem: &ControlProblem, field: &dyn ControlField) -> Result<f64> {
        let bare = ControlProblem {
            power_penalty: 0.0,
            ..problem.clone()
        };
        objective(&bare, field, &self.propagation(problem.horizon)?)
    }

    pub(super) fn report(
        &self,
        system: &System,
        problem: &ControlProblem,
        field: &dyn ControlField,
        info: PulseInfoReport,
    ) -> Result<BoundsReport> {
        let lambda_bar = mean_operator_norm(&system.h, field, &self.propagation(problem.horizon)?)?;
        BoundsReport::evaluate(&BoundsInputs {
            reachable: system.reachable,
            object_kind: self.cfg.object_kind,
            info,
            epsilon: problem.epsilon,
            distance: problem.endpoints.distance()?,
            lambda_bar,
            snr: info.snr,
            v_max: Some(default_v_max(&system.h, &self.window)),
            poly_degree: self.cfg.fixed.poly_degree,
        })
    }

    #[allow(clippy::too_many_arguments)]
    pub(super) fn record(
        &self,
        system: &System,
        problem: &ControlProblem,
        field: &dyn ControlField,
        info: PulseInfoReport,
        cost: f64,
        evaluations: usize,
        sweep_value: f64,
        seed: u64,
    ) -> Result<RunRecord> {
        let report = self.report(system, problem, field, info)?;
        Ok(RunRecord {
            sweep_value,
            seed,
            best_objective: cost,
            n_s: report.n_s,
            kappa_s: report.kappa_s,
            d_w: report.d_w,
            eps_info: report.eps_info,
            t_min: report.t_min,
            t_qsl: report.t_qsl,
            evaluations,
            converged: cost <= problem.epsilon,
            eps_noise: report.eps_noise,
            violations: report.audit(cost),
            advisories: report.advisories(cost),
        })
    }

    pub(super) fn optimize_and_record(
        &self,
        system: &System,
        horizon: f64,
        n_modes: usize,
        seed: u64,
        sweep_value: f64,
    ) -> Result<(RunRecord, ControlOutcome)> {
        let problem = self.problem(system, horizon, seed, self.cfg.fixed.epsilon)?;
        let basis = self.basis(n_modes, horizon, seed)?;
        let outcome = optimize(&problem, &basis, &self.window, &self.options(seed))?;
        let cost = if problem.power_penalty > 0.0 {
            self.cost(&problem, &outcome.pulse)?
        } else {
            outcome.result.best_objective
        };
        let rec = self.record(
            system,
            &problem,
            &outcome.pulse,
            outcome.pulse.info_content(),
            cost,
            outcome.result.evaluations,
            sweep_value,
            seed,
        )?;
        Ok((rec, outcome))
    }
}

fn require(cfg: &ExperimentConfig, v: SweepVariable) -> Result<()> {
    if cfg.sweep_variable != v {
        return Err(Error::Config(format!(
            "expected sweep variable {v:?}, config has {:?}",
            cfg.sweep_variable
        )));
    }
    Ok(())
}

/// Evaluates `run` on every `(sweep value, seed)` pair in parallel, returning
/// records in sweep-value then seed order.
fn fan_out<F>(cfg: &ExperimentConfig, run: F) -> Result<Vec<SweepRecord>>
where
    F: Fn(f64, u64) -> Result<RunRecord> + Sync,
{
    let pairs: Vec<(f64, u64)> = cfg
        .sweep_values
        .iter()
        .flat_map(|&v| cfg.seeds.iter().map(move |&s| (v, s)))
        .collect();
    let runs: Vec<RunRecord> = pairs.par_iter().map(|&(v, s)| run(v, s)).collect::<Result<_>>()?;
    Ok(group(cfg, runs))
}

fn group(cfg: &ExperimentConfig, runs: Vec<RunRecord>) -> Vec<SweepRecord> {
    let per = cfg.seeds.len();
    let mut it = runs.into_iter();
    cfg.sweep_values
        .iter()
        .map(|&v| {
            let runs: Vec<RunRecord> = it.by_ref().take(per).collect();
            let objs: Vec<f64> = runs.iter().map(|r| r.best_objective).collect();
            SweepRecord {
                sweep_value: v,
                median_objective: median(&objs),
                runs,
            }
        })
        .collect()
}

fn collect_flags(records: &[SweepRecord], pick: fn(&RunRecord) -> &[Violation]) -> Vec<ViolationRecord> {
    records
        .iter()
        .flat_map(|r| r.runs.iter())
        .flat_map(|run| {
            pick(run).iter().map(move |&violation| ViolationRecord {
                sweep_value: run.sweep_value,
                seed: run.seed,
                violation,
            })
        })
        .collect()
}

fn output(cfg: &ExperimentConfig, system: &System, records: Vec<SweepRecord>, summary: SweepSummary) -> SweepOutput {
    SweepOutput {
        variable: cfg.sweep_variable,
        system: system.label.clone(),
        d_w_source: system.source,
        violations: collect_flags(&records, |r| &r.violations),
        advisories: collect_flags(&records, |r| &r.advisories),
        records,
        summary,
    }
}

/// Achieved precision against the number of pulse parameters at fixed `T`.
/// With zero modes only the constant offset `γ0` is optimized.
pub fn sweep_parameter_count(cfg: &ExperimentConfig) -> Result<SweepOutput> {
    require(cfg, SweepVariable::NModes)?;
    let s = Settings::new(cfg)?;
    let system = System::build(&cfg.system, cfg.object_kind, cfg.fixed.max_closure_dim)?;
    let records = fan_out(cfg, |v, seed| {
        Ok(s.optimize_and_record(&system, cfg.fixed.horizon, v as usize, seed, v)?.0)
    })?;

    let d_w = system.reachable.d_w;
    let pick = |keep: &dyn Fn(usize) -> bool| -> Vec<f64> {
        records
            .iter()
            .filter(|r| keep(2 * r.sweep_value as usize))
            .map(|r| r.median_objective)
            .collect()
    };
    let above = pick(&|p| p >= d_w);
    let below = pick(&|p| 2 * p <= d_w);
    let above_median = above.iter().copied().reduce(f64::max);
    let below_median = below.iter().copied().reduce(f64::min);
    let ratio = match (above_median, below_median) {
        (Some(a), Some(b)) => Some(b / a),
        _ => None,
    };
    // Medians below the target are where the search stopped, not a ranking.
    let eps = cfg.fixed.epsilon;
    let monotone = records
        .windows(2)
        .all(|w| w[1].median_objective.max(eps) <= w[0].median_objective.max(eps));
    let summary = SweepSummary::ParameterCount(KneeSummary {
        d_w,
        above_median,
        below_median,
        ratio,
        monotone,
    });
    Ok(output(cfg, &system, records, summary))
}

/// Achieved precision against the horizon at a fixed mode count.
pub fn sweep_time(cfg: &ExperimentConfig) -> Result<SweepOutput> {
    require(cfg, SweepVariable::Time)?;
    let s = Settings::new(cfg)?;
    let system = System::build(&cfg.system, cfg.object_kind, cfg.fixed.max_closure_dim)?;
    let records = fan_out(cfg, |t, seed| {
        Ok(s.optimize_and_record(&system, t, cfg.fixed.n_modes, seed, t)?.0)
    })?;
    let runs = records.iter().flat_map(|r| r.runs.iter());
    let shortest_success = runs
        .clone()
        .filter(|r| r.converged)
        .map(|r| r.sweep_value)
        .reduce(f64::min);
    let max_t_qsl = runs.filter_map(|r| r.t_qsl).reduce(f64::max);
    let summary = SweepSummary::Time(TimeSummary {
        shortest_success,
        max_t_qsl,
    });
    Ok(output(cfg, &system, records, summary))
}

struct Baseline {
    problem: ControlProblem,
    pulse: ControlPulse,
    cost: f64,
    evaluations: usize,
    samples: Vec<f64>,
}

fn baseline(s: &Settings, system: &System, seed: u64) -> Result<Baseline> {
    let f = &s.cfg.fixed;
    let problem = s.problem(system, f.horizon, seed, f.baseline_epsilon)?;
    let (pulse, evaluations) = match &f.baseline_pulse {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("missing baseline pulse {}: {e}", path.display())))?;
            let doc: PulseDocument = serde_json::from_str(&text)?;
            let pulse = ControlPulse::from_document(&doc)?;
            if (pulse.basis().horizon() - f.horizon).abs() > 1e-12 * f.horizon.max(1.0) {
                return Err(Error::Config("baseline pulse horizon differs from T".into()));
            }
            (pulse, 0)
        }
        None => {
            let d_w = system.reachable.d_w;
            let base_seed = derive_seed(seed, BASIS_STREAM);
            let candidates: Vec<CrabBasis> = if f.match_samples {
                let mut found = Vec::new();
                for k in 0..BASIS_SEARCH {
                    let b = CrabBasis::new(f.n_modes, f.horizon, derive_seed(base_seed, k), f.envelope)?;
                    if b.sample_count() == d_w {
                        found.push(b);
                        if found.len() == BASELINE_ATTEMPTS {
                            break;
                        }
                    }
                }
                if found.is_empty() {
                    return Err(Error::Config(format!(
                        "no basis with {} modes has n_s = D_W = {d_w}",
                        f.n_modes
                    )));
                }
                found
            } else {
                vec![s.basis(f.n_modes, f.horizon, seed)?]
            };
            let opts = OptimizeOptions {
                reseed_restarts: false,
                ..s.options(seed)
            };
            let mut best: Option<ControlOutcome> = None;
            let mut evaluations = 0;
            for basis in &candidates {
                let out = optimize(&problem, basis, &s.window, &opts)?;
                evaluations += out.result.evaluations;
                let better = best
                    .as_ref()
                    .is_none_or(|b| out.result.best_objective < b.result.best_objective);
                let done = out.result.converged;
                if better {
                    best = Some(out);
                }
                if done {
                    break;
                }
            }
            (best.expect("at least one candidate").pulse, evaluations)
        }
    };
    let cost = s.cost(&problem, &pulse)?;
    let n = pulse.sample_count();
    let samples = (0..n)
        .map(|i| pulse.evaluate((i as f64 + 0.5) * f.horizon / n as f64))
        .collect::<Result<_>>()?;
    Ok(Baseline {
        problem,
        pulse,
        cost,
        evaluations,
        samples,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Mean infidelity of an optimized pulse under band-limited Gaussian noise,
/// one record per noise-to-signal ratio and seed. Noise draws are shared
/// across ratios so the curve for each seed is smooth in `N/S`.
pub fn sweep_noise(cfg: &ExperimentConfig) -> Result<SweepOutput> {
    require(cfg, SweepVariable::Snr)?;
    let s = Settings::new(cfg)?;
    let f = &cfg.fixed;
    let system = System::build(&cfg.system, cfg.object_kind, f.max_closure_dim)?;
    let baselines: Vec<Baseline> = cfg
        .seeds
        .par_iter()
        .map(|&seed| baseline(&s, &system, seed))
        .collect::<Result<_>>()?;

    let records = fan_out(cfg, |ns, seed| {
        let idx = cfg.seeds.iter().position(|&x| x == seed).expect("seed from config");
        let b = &baselines[idx];
        let base_info = b.pulse.info_content();
        if ns == 0.0 {
            return s.record(&system, &b.problem, &b.pulse, base_info, b.cost, b.evaluations, ns, seed);
        }
        let snr = 1.0 / ns;
        let noise_base = derive_seed(seed, NOISE_STREAM);
        let mut total = 0.0;
        for j in 0..f.noise_seeds {
            let noisy = add_gaussian_noise(&b.samples, snr, derive_seed(noise_base, j as u64))?;
            let offsets: Vec<f64> = noisy.iter().zip(&b.samples).map(|(n, s)| n - s).collect();
            let offset = SampledPulse::new(f.horizon, offsets)?;
            let field = Perturbed {
                base: &b.pulse,
                offset: &offset,
            };
            total += s.cost(&b.problem, &field)?;
        }
        let mean = total / f.noise_seeds as f64;
        let info = PulseInfoReport::from_parts(f.horizon, base_info.bandwidth, base_info.bit_depth, Some(snr));
        s.record(&system, &b.problem, &b.pulse, info, mean, f.noise_seeds, ns, seed)
    })?;

    let smallest = cfg.sweep_values.iter().copied().find(|&v| v > 0.0);
    let lo = f.fit_min.or(smallest).unwrap_or(0.0);
    let hi = f.fit_max.unwrap_or(10.0 * lo);
    let slack = 1e-9;
    let floors: Vec<f64> = baselines.iter().map(|b| b.cost).collect();
    let slopes: Vec<Option<f64>> = (0..cfg.seeds.len())
        .map(|i| {
            let pts: Vec<(f64, f64)> = records
                .iter()
                .filter(|r| r.sweep_value > 0.0 && r.sweep_value >= lo * (1.0 - slack) && r.sweep_value <= hi * (1.0 + slack))
                .map(|r| (r.sweep_value, r.runs[i].best_objective))
                .filter(|&(_, m)| m > 2.0 * floors[i])
                .map(|(x, m)| (x, m - floors[i]))
                .collect();
            loglog_slope(&pts)
        })
        .collect();
    let found: Vec<f64> = slopes.iter().flatten().copied().collect();
    let below_noise_bound = records
        .iter()
        .flat_map(|r| r.runs.iter())
        .filter(|r| r.eps_noise.is_some_and(|b| r.best_objective < b))
        .count();
    let summary = SweepSummary::Noise(NoiseSummary {
        fit_window: [lo, hi],
        baseline_n_s: baselines.iter().map(|b| b.pulse.sample_count()).collect(),
        floors,
        median_slope: (!found.is_empty()).then(|| median(&found)),
        slopes,
        below_noise_bound,
    });
    Ok(output(cfg, &system, records, summary))
}

/// Smallest mode count reaching ε, by bisection over `[1, max_modes]`.
fn bisect_modes(
    s: &Settings,
    system: &System,
    seed: u64,
    sweep_value: f64,
) -> Result<(RunRecord, Option<usize>)> {
    let horizon = s.cfg.fixed.horizon;
    let mut evaluations = 0;
    let mut run = |m: usize| -> Result<RunRecord> {
        let (rec, _) = s.optimize_and_record(system, horizon, m, seed, sweep_value)?;
        evaluations += rec.evaluations;
        Ok(rec)
    };
    let (mut lo, mut hi) = (1, s.cfg.fixed.max_modes);
    let mut best = run(hi)?;
    if !best.converged {
        best.evaluations = evaluations;
        return Ok((best, None));
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        let rec = run(mid)?;
        if rec.converged {
            hi = mid;
            best = rec;
        } else {
            lo = mid + 1;
        }
    }
    best.evaluations = evaluations;
    Ok((best, Some(hi)))
}

/// Minimal mode count for a fixed precision across Ising chain lengths.
pub fn sweep_system_size(cfg: &ExperimentConfig) -> Result<SweepOutput> {
    require(cfg, SweepVariable::NQubits)?;
    let s = Settings::new(cfg)?;
    let SystemPreset::IsingChain { j, h, g, .. } = cfg.system else {
        return Err(Error::Config("n_qubits sweeps require the ising_chain preset".into()));
    };
    let systems: Vec<System> = cfg
        .sweep_values
        .iter()
        .map(|&v| {
            let preset = SystemPreset::IsingChain { n: v as usize, j, h, g };
            System::build(&preset, cfg.object_kind, cfg.fixed.max_closure_dim)
        })
        .collect::<Result<_>>()?;
    let index = |v: f64| cfg.sweep_values.iter().position(|&x| x == v).expect("value from config");

    let pairs: Vec<(f64, u64)> = cfg
        .sweep_values
        .iter()
        .flat_map(|&v| cfg.seeds.iter().map(move |&s| (v, s)))
        .collect();
    let results: Vec<(RunRecord, Option<usize>)> = pairs
        .par_iter()
        .map(|&(v, seed)| bisect_modes(&s, &systems[index(v)], seed, v))
        .collect::<Result<_>>()?;

    let per = cfg.seeds.len();
    let points: Vec<SizePoint> = results
        .chunks(per)
        .zip(&cfg.sweep_values)
        .zip(&systems)
        .map(|((chunk, &v), sys)| {
            let minimal: Vec<Option<usize>> = chunk.iter().map(|(_, m)| *m).collect();
            let found: Vec<f64> = minimal.iter().flatten().map(|&m| m as f64).collect();
            SizePoint {
                n_qubits: v as usize,
                d_w: sys.reachable.d_w,
                median_minimal: (found.len() == minimal.len()).then(|| median(&found)),
                minimal_n_modes: minimal,
            }
        })
        .collect();
    let monotone = points
        .windows(2)
        .all(|w| match (w[0].median_minimal, w[1].median_minimal) {
            (Some(a), Some(b)) => b >= a,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => true,
        });
    let records = group(cfg, results.into_iter().map(|(r, _)| r).collect());
    let largest = systems.last().expect("non-empty sweep");
    let summary = SweepSummary::SystemSize(SizeSummary { points, monotone });
    Ok(output(cfg, largest, records, summary))
}

/// Runs the sweep named by the config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<SweepOutput> {
    match cfg.sweep_variable {
        SweepVariable::NModes => sweep_parameter_count(cfg),
        SweepVariable::Time => sweep_time(cfg),
        SweepVariable::Snr => sweep_noise(cfg),
        SweepVariable::NQubits => sweep_system_size(cfg),
    }
}
