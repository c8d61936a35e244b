use num_complex::Complex64;

use super::{ComplexMatrix, MAX_DIM, STRUCTURAL_TOL};
use crate::error::{Error, Result};

/// Normalized state vector.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Accepts amplitudes whose norm is already 1 within the structural tolerance.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm = vector_norm(&amplitudes);
        if (norm - 1.0).abs() > STRUCTURAL_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm = vector_norm(&amplitudes);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        check_dim(dim)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub(crate) fn from_unchecked(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "states of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim() * other.dim())?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        Ok(Self { amplitudes })
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: ComplexMatrix::outer(&self.amplitudes),
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        check_dim(matrix.rows())?;
        matrix
            .ensure_hermitian()
            .map_err(|e| Error::InvalidDensity(e.to_string()))?;
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STRUCTURAL_TOL || tr.im.abs() > STRUCTURAL_TOL {
            return Err(Error::InvalidDensity(format!("trace is {tr}")));
        }
        let min = matrix.eigvalsh()?.first().copied().unwrap_or(0.0);
        if min < -STRUCTURAL_TOL {
            return Err(Error::InvalidDensity(format!("minimum eigenvalue {min:.3e}")));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    /// `I/N`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix.hs_inner(&self.matrix).re
    }
}

/// Drift and control Hamiltonians of `H(t) = H_D + γ(t) H_C`.
#[derive(Debug, Clone)]
pub struct HamiltonianPair {
    drift: ComplexMatrix,
    control: ComplexMatrix,
}

impl HamiltonianPair {
    pub fn new(drift: ComplexMatrix, control: ComplexMatrix) -> Result<Self> {
        drift.ensure_hermitian()?;
        control.ensure_hermitian()?;
        if drift.rows() != control.rows() {
            return Err(Error::DimensionMismatch(format!(
                "drift is {}x{}, control is {}x{}",
                drift.rows(),
                drift.cols(),
                control.rows(),
                control.cols()
            )));
        }
        check_dim(drift.rows())?;
        Ok(Self { drift, control })
    }

    /// Rescales both operators to unit operator norm.
    pub fn normalized(&self) -> Result<Self> {
        let scale = |m: &ComplexMatrix, what: &str| {
            let n = m.spectral_norm();
            if n <= STRUCTURAL_TOL {
                return Err(Error::InvalidArgument(format!("{what} Hamiltonian is zero")));
            }
            Ok(m.scale_real(1.0 / n))
        };
        Ok(Self {
            drift: scale(&self.drift, "drift")?,
            control: scale(&self.control, "control")?,
        })
    }

    /// `(−H_D, −H_C)`, used for time-reversal checks.
    pub fn negated(&self) -> Self {
        Self {
            drift: self.drift.scale_real(-1.0),
            control: self.control.scale_real(-1.0),
        }
    }

    /// Conjugates both generators, `U H U†`.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<Self> {
        let ud = u.adjoint();
        Self::new(
            u.matmul(&self.drift).matmul(&ud),
            u.matmul(&self.control).matmul(&ud),
        )
    }

    pub fn swapped(&self) -> Self {
        Self {
            drift: self.control.clone(),
            control: self.drift.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.drift.rows()
    }

    pub fn drift(&self) -> &ComplexMatrix {
        &self.drift
    }

    pub fn control(&self) -> &ComplexMatrix {
        &self.control
    }

    /// `H_D + γ H_C`.
    pub fn at(&self, gamma: f64) -> ComplexMatrix {
        self.drift.add_scaled(&self.control, gamma)
    }
}

fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    Ok(())
}
