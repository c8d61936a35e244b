use std::cmp::Ordering;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::random::rng;

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
const SIMPLEX_JITTER: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Edge length of the initial simplex along each axis, before jitter.
    pub scale: f64,
    /// Hard cap on objective evaluations.
    pub budget: usize,
    /// Stop once the simplex spread in objective value falls below this.
    pub ftol: f64,
    /// Seed for the initial-simplex jitter.
    pub seed: u64,
    /// Stop as soon as an evaluation reaches this value.
    pub target: Option<f64>,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            scale: 0.1,
            budget: 1000,
            ftol: 1e-12,
            seed: 0,
            target: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Target,
    Spread,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub best_coefficients: Vec<f64>,
    pub best_objective: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub stop_reason: StopReason,
    /// `(evaluation index, best objective so far)` at every improvement.
    pub history: Vec<(usize, f64)>,
    pub seed: u64,
}

#[derive(Clone)]
struct Vertex {
    x: Vec<f64>,
    f: f64,
    id: usize,
}

fn order(a: &Vertex, b: &Vertex) -> Ordering {
    a.f.total_cmp(&b.f).then(a.id.cmp(&b.id))
}

struct Evaluator<F> {
    f: F,
    opts: NelderMeadOptions,
    evaluations: usize,
    best: Option<(Vec<f64>, f64)>,
    history: Vec<(usize, f64)>,
    stop: Option<StopReason>,
}

impl<F: FnMut(&[f64]) -> Result<f64>> Evaluator<F> {
    /// Returns `None` once the search must stop.
    fn eval(&mut self, x: Vec<f64>) -> Result<Option<Vertex>> {
        if self.stop.is_some() {
            return Ok(None);
        }
        if self.evaluations >= self.opts.budget {
            self.stop = Some(StopReason::Budget);
            return Ok(None);
        }
        let value = (self.f)(&x)?;
        if !value.is_finite() {
            return Err(Error::NonFiniteObjective { value, point: x });
        }
        self.evaluations += 1;
        let id = self.evaluations;
        if self.best.as_ref().is_none_or(|(_, b)| value < *b) {
            self.best = Some((x.clone(), value));
            self.history.push((id, value));
        }
        if self.opts.target.is_some_and(|t| value <= t) {
            self.stop = Some(StopReason::Target);
        }
        Ok(Some(Vertex { x, f: value, id }))
    }
}

fn affine(c: &[f64], p: &[f64], coef: f64) -> Vec<f64> {
    c.iter().zip(p).map(|(ci, pi)| ci + coef * (pi - ci)).collect()
}

/// Minimizes `f` from `x0` with the standard reflection, expansion,
/// contraction and shrink moves. Ties in objective value are broken by
/// insertion order so runs are reproducible.
pub fn nelder_mead<F>(f: F, x0: &[f64], opts: NelderMeadOptions) -> Result<OptimizationResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    let d = x0.len();
    if d == 0 {
        return Err(Error::InvalidArgument("cannot optimize over zero parameters".into()));
    }
    if opts.budget < d + 1 {
        return Err(Error::InvalidArgument(format!(
            "budget {} is smaller than the simplex size {}",
            opts.budget,
            d + 1
        )));
    }
    if !(opts.scale.is_finite() && opts.scale > 0.0) || !(opts.ftol >= 0.0) {
        return Err(Error::InvalidArgument("simplex scale must be positive and ftol non-negative".into()));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("starting point must be finite".into()));
    }

    let mut ev = Evaluator {
        f,
        opts,
        evaluations: 0,
        best: None,
        history: Vec::new(),
        stop: None,
    };
    let mut r = rng(opts.seed);
    let mut simplex = Vec::with_capacity(d + 1);
    if let Some(v) = ev.eval(x0.to_vec())? {
        simplex.push(v);
    }
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += opts.scale * (1.0 + r.random_range(-SIMPLEX_JITTER..=SIMPLEX_JITTER));
        match ev.eval(x)? {
            Some(v) => simplex.push(v),
            None => break,
        }
    }

    if ev.stop.is_none() {
        loop {
            simplex.sort_by(order);
            if simplex[d].f - simplex[0].f <= opts.ftol {
                ev.stop = Some(StopReason::Spread);
                break;
            }
            let mut centroid = vec![0.0; d];
            for v in &simplex[..d] {
                for (c, xi) in centroid.iter_mut().zip(&v.x) {
                    *c += xi / d as f64;
                }
            }
            let Some(refl) = ev.eval(affine(&centroid, &simplex[d].x, -REFLECT))? else { break };
            if refl.f < simplex[0].f {
                let Some(exp) = ev.eval(affine(&centroid, &refl.x, EXPAND))? else {
                    simplex[d] = refl;
                    break;
                };
                simplex[d] = if exp.f < refl.f { exp } else { refl };
                continue;
            }
            if refl.f < simplex[d - 1].f {
                simplex[d] = refl;
                continue;
            }
            let outside = refl.f < simplex[d].f;
            let toward = if outside { &refl.x } else { &simplex[d].x };
            let Some(con) = ev.eval(affine(&centroid, toward, CONTRACT))? else {
                if outside {
                    simplex[d] = refl;
                }
                break;
            };
            let accept = if outside { con.f <= refl.f } else { con.f < simplex[d].f };
            if accept {
                simplex[d] = con;
                continue;
            }
            let best = simplex[0].x.clone();
            let mut done = false;
            for vertex in simplex.iter_mut().skip(1) {
                match ev.eval(affine(&best, &vertex.x, SHRINK))? {
                    Some(v) => *vertex = v,
                    None => {
                        done = true;
                        break;
                    }
                }
            }
            if done {
                break;
            }
        }
    }

    let stop_reason = ev.stop.unwrap_or(StopReason::Budget);
    let (best_coefficients, best_objective) = ev.best.expect("at least one evaluation ran");
    Ok(OptimizationResult {
        best_coefficients,
        best_objective,
        evaluations: ev.evaluations,
        converged: stop_reason != StopReason::Budget,
        stop_reason,
        history: ev.history,
        seed: opts.seed,
    })
}
