//! Reproducible sweeps that confront optimization results with the bounds,
//! and their CSV/JSON artifacts.
//!
//! Every run derives its basis, optimizer, goal and noise randomness from the
//! config seed through independent streams, so results do not depend on
//! scheduling or worker count.

mod config;
mod output;
mod single;
mod sweeps;
mod system;

pub use config::{ExperimentConfig, FixedParams, GoalKind, SweepVariable, SystemPreset, MAX_CHAIN};
pub use output::{manifest, write_csv, write_outputs, Artifacts, Manifest, CSV_HEADER};
pub use sweeps::{
    median, run_experiment, sweep_noise, sweep_parameter_count, sweep_system_size, sweep_time, KneeSummary,
    NoiseSummary, RunRecord, SizePoint, SizeSummary, SweepOutput, SweepRecord, SweepSummary, TimeSummary,
    ViolationRecord,
};
pub use single::{load_pulse, FinalObject, LieRank, Problem, ProblemConfig, Propagation, SingleRun};
pub use system::{endpoints, hamiltonians, ising_chain, DimensionSource, System};

pub(crate) const BASIS_STREAM: u64 = 1;
pub(crate) const OPTIMIZER_STREAM: u64 = 2;
pub(crate) const GOAL_STREAM: u64 = 3;
pub(crate) const NOISE_STREAM: u64 = 4;
