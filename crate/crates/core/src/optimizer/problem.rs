use crate::controllability::ObjectKind;
use crate::dynamics::{
    propagate_density, propagate_pure, propagate_unitary, step_values, ControlField, PropagationConfig,
};
use crate::error::{Error, Result};
use crate::qcore::{
    bures_angle_pure, fidelity_pure, gate_infidelity_unchecked, trace_distance, ComplexMatrix, DensityMatrix, HamiltonianPair,
    PureState, UNITARITY_TOL,
};

/// Initial object and goal; the variant fixes both kinds at once.
#[derive(Debug, Clone)]
pub enum Endpoints {
    Pure { initial: PureState, goal: PureState },
    Density { initial: DensityMatrix, goal: DensityMatrix },
    /// Starts from the identity.
    Unitary { goal: ComplexMatrix },
}

impl Endpoints {
    pub fn kind(&self) -> ObjectKind {
        match self {
            Self::Pure { .. } => ObjectKind::Pure,
            Self::Density { .. } => ObjectKind::Density,
            Self::Unitary { .. } => ObjectKind::Unitary,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Pure { initial, .. } => initial.dim(),
            Self::Density { initial, .. } => initial.dim(),
            Self::Unitary { goal } => goal.rows(),
        }
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = match self {
            Self::Pure { initial, goal } => (initial.dim(), goal.dim()),
            Self::Density { initial, goal } => (initial.dim(), goal.dim()),
            Self::Unitary { goal } => {
                let d = goal.unitarity_defect();
                if d > UNITARITY_TOL {
                    return Err(Error::NotUnitary(d));
                }
                (goal.rows(), goal.cols())
            }
        };
        if a != b {
            return Err(Error::DimensionMismatch(format!("initial dimension {a} vs goal dimension {b}")));
        }
        Ok(())
    }

    /// Distance used by the speed limit: Bures angle for pure states, trace
    /// distance for mixed states, and `arccos(|Tr G| / N)` for gates.
    pub fn distance(&self) -> Result<f64> {
        match self {
            Self::Pure { initial, goal } => bures_angle_pure(initial, goal),
            Self::Density { initial, goal } => trace_distance(initial, goal),
            Self::Unitary { goal } => {
                let n = goal.rows() as f64;
                Ok((goal.trace().norm() / n).min(1.0).acos())
            }
        }
    }
}

/// A single-channel control problem on a fixed horizon.
#[derive(Debug, Clone)]
pub struct ControlProblem {
    pub h: HamiltonianPair,
    pub endpoints: Endpoints,
    pub horizon: f64,
    /// Target precision ε in `(0, 1)`.
    pub epsilon: f64,
    /// Weight of the pulse-power penalty `λ₁·mean(γ²)`.
    pub power_penalty: f64,
}

impl ControlProblem {
    pub fn new(h: HamiltonianPair, endpoints: Endpoints, horizon: f64, epsilon: f64) -> Result<Self> {
        endpoints.validate()?;
        if h.dim() != endpoints.dim() {
            return Err(Error::DimensionMismatch(format!(
                "Hamiltonian dimension {} vs object dimension {}",
                h.dim(),
                endpoints.dim()
            )));
        }
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidArgument(format!("horizon must be positive, got {horizon}")));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        Ok(Self {
            h,
            endpoints,
            horizon,
            epsilon,
            power_penalty: 0.0,
        })
    }

    pub fn with_power_penalty(mut self, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("penalty weight must be non-negative, got {lambda}")));
        }
        self.power_penalty = lambda;
        Ok(self)
    }
}

/// Goal infidelity (pure, gate) or trace distance (density) after evolving
/// under `field`, plus the optional power penalty.
pub fn objective(problem: &ControlProblem, field: &dyn ControlField, cfg: &PropagationConfig) -> Result<f64> {
    if (cfg.total_time - problem.horizon).abs() > 1e-12 * problem.horizon.max(1.0) {
        return Err(Error::DimensionMismatch(format!(
            "propagation time {} differs from problem horizon {}",
            cfg.total_time, problem.horizon
        )));
    }
    let h = &problem.h;
    let cost = match &problem.endpoints {
        Endpoints::Pure { initial, goal } => {
            let out = propagate_pure(h, initial, field, cfg)?;
            1.0 - fidelity_pure(&out, goal)?
        }
        Endpoints::Density { initial, goal } => {
            let out = propagate_density(h, initial, field, cfg)?;
            trace_distance(&out, goal)?
        }
        Endpoints::Unitary { goal } => {
            let u = propagate_unitary(h, field, cfg)?;
            gate_infidelity_unchecked(&u, goal)
        }
    };
    let penalty = if problem.power_penalty > 0.0 {
        let g = step_values(field, cfg)?;
        problem.power_penalty * g.iter().map(|v| v * v).sum::<f64>() / g.len() as f64
    } else {
        0.0
    };
    Ok(cost.max(0.0) + penalty)
}
