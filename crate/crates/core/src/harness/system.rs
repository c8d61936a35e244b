use serde::Serialize;

use super::config::{check_chain, GoalKind, SystemPreset};
use crate::controllability::{lie_closure, reachable_dim, ObjectKind, ReachableDim, DEFAULT_MAX_DEPTH, DEFAULT_TOL};
use crate::error::Result;
use crate::optimizer::Endpoints;
use crate::qcore::pauli::{embed, x, z};
use crate::qcore::random::{derive_seed, haar_state, haar_unitary, random_hermitian, rng};
use crate::qcore::{ComplexMatrix, HamiltonianPair, PureState};

/// How `D_W` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionSource {
    LieClosure,
    AssumedControllable,
}

#[derive(Debug, Clone)]
pub struct System {
    pub label: String,
    pub h: HamiltonianPair,
    pub reachable: ReachableDim,
    pub source: DimensionSource,
}

/// Ising chain Hamiltonian pair on `n` sites, normalized.
pub fn ising_chain(n: usize, j: f64, h: f64, g: f64) -> Result<HamiltonianPair> {
    check_chain(n)?;
    let dim = 1usize << n;
    let mut drift = ComplexMatrix::zeros(dim, dim);
    for i in 0..n - 1 {
        drift = drift.add_scaled(&embed(n, &[(i, z()), (i + 1, z())]), j);
    }
    for i in 0..n {
        drift = drift.add_scaled(&embed(n, &[(i, x())]), h);
        drift = drift.add_scaled(&embed(n, &[(i, z())]), g);
    }
    HamiltonianPair::new(drift, embed(n, &[(0, x())]))?.normalized()
}

pub fn hamiltonians(preset: &SystemPreset) -> Result<HamiltonianPair> {
    match *preset {
        SystemPreset::SingleQubit => HamiltonianPair::new(z(), x()),
        SystemPreset::IsingChain { n, j, h, g } => ising_chain(n, j, h, g),
        SystemPreset::RandomPair { n, seed } => {
            let mut r = rng(seed);
            let d = random_hermitian(n, &mut r);
            let c = random_hermitian(n, &mut r);
            HamiltonianPair::new(d, c)?.normalized()
        }
    }
}

pub fn label(preset: &SystemPreset) -> String {
    match *preset {
        SystemPreset::SingleQubit => "single_qubit".into(),
        SystemPreset::IsingChain { n, j, h, g } => format!("ising_chain(n={n}, J={j}, h={h}, g={g})"),
        SystemPreset::RandomPair { n, seed } => format!("random_pair(N={n}, seed={seed})"),
    }
}

impl System {
    pub fn build(preset: &SystemPreset, kind: ObjectKind, max_closure_dim: usize) -> Result<Self> {
        let h = hamiltonians(preset)?;
        let n = h.dim();
        let (reachable, source) = if n <= max_closure_dim {
            let closure = lie_closure(&h, DEFAULT_TOL, DEFAULT_MAX_DEPTH)?;
            (reachable_dim(&closure, kind)?, DimensionSource::LieClosure)
        } else {
            let (d_w, manifold_dim) = match kind {
                ObjectKind::Pure => (n, 2 * n - 2),
                _ => (n * n, n * n - 1),
            };
            let r = ReachableDim {
                d_w,
                closure_dim: n * n - 1,
                su_dim: n * n - 1,
                manifold_dim,
                controllable: true,
            };
            (r, DimensionSource::AssumedControllable)
        };
        Ok(Self {
            label: label(preset),
            h,
            reachable,
            source,
        })
    }
}

/// Permutation `|k⟩ ↦ |N−1−k⟩`.
fn reversal(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| if i + j == n - 1 { 1.0.into() } else { 0.0.into() })
}

/// Initial object `|0⟩` (or the identity) and the goal for `seed`.
pub fn endpoints(dim: usize, kind: ObjectKind, goal: GoalKind, seed: u64) -> Result<Endpoints> {
    let mut r = rng(derive_seed(seed, super::GOAL_STREAM));
    let initial = PureState::basis(dim, 0)?;
    let target = match goal {
        GoalKind::Flip => PureState::basis(dim, dim - 1)?,
        GoalKind::Same => initial.clone(),
        GoalKind::Haar => haar_state(dim, &mut r),
    };
    Ok(match kind {
        ObjectKind::Pure => Endpoints::Pure { initial, goal: target },
        ObjectKind::Density => Endpoints::Density {
            initial: initial.to_density(),
            goal: target.to_density(),
        },
        ObjectKind::Unitary => Endpoints::Unitary {
            goal: match goal {
                GoalKind::Flip => reversal(dim),
                GoalKind::Same => ComplexMatrix::identity(dim),
                GoalKind::Haar => haar_unitary(dim, &mut r),
            },
        },
    })
}
