//! Pauli matrices and multi-site embeddings.

use num_complex::Complex64;

use super::ComplexMatrix;

fn m(entries: [[(f64, f64); 2]; 2]) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| Complex64::new(entries[i][j].0, entries[i][j].1))
}

pub fn identity() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn x() -> ComplexMatrix {
    m([[(0.0, 0.0), (1.0, 0.0)], [(1.0, 0.0), (0.0, 0.0)]])
}

pub fn y() -> ComplexMatrix {
    m([[(0.0, 0.0), (0.0, -1.0)], [(0.0, 1.0), (0.0, 0.0)]])
}

pub fn z() -> ComplexMatrix {
    m([[(1.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (-1.0, 0.0)]])
}

/// Places single-site operators on an `n`-site qubit register; unspecified
/// sites carry the identity. Site 0 is the most significant tensor factor.
pub fn embed(n: usize, ops: &[(usize, ComplexMatrix)]) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for site in 0..n {
        let factor = ops
            .iter()
            .find(|(s, _)| *s == site)
            .map_or_else(identity, |(_, op)| op.clone());
        out = out.kron(&factor);
    }
    out
}
