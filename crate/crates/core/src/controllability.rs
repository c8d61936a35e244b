//! Dynamical Lie algebra of a drift/control pair and the reachable-set
//! dimension it implies.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{Complex64, ComplexMatrix, HamiltonianPair};

/// Default rank tolerance for the Gram–Schmidt residual test.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default number of commutator levels.
pub const DEFAULT_MAX_DEPTH: usize = 64;

/// Orthonormal (Hilbert–Schmidt) skew-Hermitian basis of the generated algebra.
#[derive(Debug, Clone)]
pub struct LieClosure {
    pub dim: usize,
    pub basis: Vec<ComplexMatrix>,
    pub converged: bool,
    pub depth_reached: usize,
}

impl LieClosure {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `dimension ≥ N² − 1`, i.e. the algebra contains su(N).
    pub fn is_controllable(&self) -> bool {
        self.dimension() + 1 >= self.dim * self.dim
    }
}

/// Which object the control acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    Pure,
    Density,
    Unitary,
}

/// Reachable-set dimension under both counting conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReachableDim {
    /// `D_W` as used in the bound formulas: `N²` (density/unitary) or `N` (pure)
    /// when controllable, otherwise the closure dimension.
    pub d_w: usize,
    /// Dimension of the generated algebra.
    pub closure_dim: usize,
    /// `N² − 1`.
    pub su_dim: usize,
    /// Real dimension of the reachable manifold: `2N − 2` for pure states,
    /// `N² − 1` otherwise (closure dimension when sub-controllable).
    pub manifold_dim: usize,
    pub controllable: bool,
}

struct Orthonormalizer {
    basis: Vec<ComplexMatrix>,
    tol: f64,
}

impl Orthonormalizer {
    // Skew-Hermitian matrices have a real Hilbert–Schmidt inner product, so the
    // projections below keep every basis element skew-Hermitian.
    fn project_out(&self, m: &mut ComplexMatrix) {
        for b in &self.basis {
            let c = b.hs_inner(m).re;
            *m = m.add_scaled(b, -c);
        }
    }

    /// Adds the orthogonal remainder of `m` if its norm exceeds `tol`.
    fn try_add(&mut self, m: &ComplexMatrix) -> bool {
        let mut r = m.clone();
        let scale = m.frobenius_norm();
        if scale <= self.tol {
            return false;
        }
        r = r.scale_real(1.0 / scale);
        // classical GS twice is as stable as modified GS for this use
        self.project_out(&mut r);
        self.project_out(&mut r);
        let norm = r.frobenius_norm();
        if norm <= self.tol {
            return false;
        }
        self.basis.push(r.scale_real(1.0 / norm));
        true
    }
}

/// Closes `{iH_D, iH_C}` under commutators.
///
/// Each level commutes every element added at the previous level with every
/// basis element, so `max_depth = d` covers all brackets of nesting depth `d`.
pub fn lie_closure(h: &HamiltonianPair, tol: f64, max_depth: usize) -> Result<LieClosure> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::InvalidArgument(format!("tolerance must lie in (0, 1e-6], got {tol}")));
    }
    if max_depth == 0 {
        return Err(Error::InvalidArgument("max_depth must be at least 1".into()));
    }
    let n = h.dim();
    let full = n * n;
    let i = Complex64::new(0.0, 1.0);
    let mut span = Orthonormalizer { basis: Vec::new(), tol };
    for g in [h.drift(), h.control()] {
        span.try_add(&g.scale(i));
    }

    let mut frontier = 0..span.basis.len();
    let mut depth = 0;
    while !frontier.is_empty() && depth < max_depth && span.basis.len() < full {
        depth += 1;
        let start = span.basis.len();
        for a in frontier.clone() {
            // only pairs not already visited at an earlier level
            for b in 0..start {
                if frontier.contains(&b) && b <= a {
                    continue;
                }
                let c = span.basis[a].commutator(&span.basis[b]);
                span.try_add(&c);
                if span.basis.len() == full {
                    break;
                }
            }
            if span.basis.len() == full {
                break;
            }
        }
        frontier = start..span.basis.len();
    }
    let converged = frontier.is_empty() || span.basis.len() == full;
    Ok(LieClosure {
        dim: n,
        basis: span.basis,
        converged,
        depth_reached: depth,
    })
}

pub fn reachable_dim(closure: &LieClosure, kind: ObjectKind) -> Result<ReachableDim> {
    if !closure.converged {
        return Err(Error::Unconverged(closure.depth_reached));
    }
    let n = closure.dim;
    let closure_dim = closure.dimension();
    let controllable = closure.is_controllable();
    let (d_w, manifold_dim) = match (controllable, kind) {
        (true, ObjectKind::Pure) => (n, 2 * n - 2),
        (true, _) => (n * n, n * n - 1),
        (false, _) => (closure_dim, closure_dim),
    };
    Ok(ReachableDim {
        d_w,
        closure_dim,
        su_dim: n * n - 1,
        manifold_dim,
        controllable,
    })
}
