//! Bandwidth-limited optimal control of finite-dimensional quantum systems,
//! together with calculators for the information-theoretic limits on what
//! such control can achieve.
//!
//! The crate is organised bottom-up:
//!
//! - [`qcore`]: dense complex matrices, states, distances, entropies.
//! - [`dynamics`]: piecewise-constant propagation under `H_D + γ(t) H_C`.
//! - [`pulse`]: chopped randomized trigonometric pulses, quantization, noise.
//! - [`controllability`]: dynamical Lie algebra closure and reachable-set dimension.
//! - [`optimizer`]: control objectives and seeded Nelder–Mead search.
//! - [`bounds`]: precision, sample-count, time and noise bounds.
//! - [`harness`]: reproducible sweeps writing CSV and JSON artifacts.

pub mod bounds;
pub mod controllability;
pub mod dynamics;
mod error;
pub mod harness;
pub mod optimizer;
pub mod pulse;
pub mod qcore;

pub use error::{Error, Result};
