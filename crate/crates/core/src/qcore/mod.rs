//! Dense complex linear algebra, state types, distance measures and the
//! entanglement-entropy diagnostic that every other module builds on.

mod matrix;
mod metrics;
pub mod pauli;
pub mod random;
mod states;

pub use matrix::{expm_hermitian_scaled, ComplexMatrix, Eigh};
pub use metrics::{
    bipartite_entropy, bures_angle_pure, fidelity_pure, gate_infidelity, max_bipartite_entropy,
    partial_trace, trace_distance, von_neumann_entropy,
};
pub(crate) use metrics::gate_infidelity_unchecked;
pub use states::{DensityMatrix, HamiltonianPair, PureState};

pub use num_complex::Complex64;

/// Tolerance for Hermiticity, normalization and trace checks.
pub const STRUCTURAL_TOL: f64 = 1e-10;

/// Tolerance for accepting a matrix as unitary.
pub const UNITARITY_TOL: f64 = 1e-8;

/// Hard cap on the Hilbert-space dimension of dense objects.
pub const MAX_DIM: usize = 1024;
