//! Control objectives and the derivative-free search over pulse coefficients.

mod crab;
mod nelder_mead;
mod problem;

pub use crab::{optimize, ControlOutcome, OptimizeOptions};
pub use nelder_mead::{nelder_mead, NelderMeadOptions, OptimizationResult, StopReason};
pub use problem::{objective, ControlProblem, Endpoints};
