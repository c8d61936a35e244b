use num_complex::Complex64;

use super::{ComplexMatrix, DensityMatrix, PureState, UNITARITY_TOL};
use crate::error::{Error, Result};

/// `|⟨a|b⟩|²`, clamped to `[0, 1]`.
pub fn fidelity_pure(a: &PureState, b: &PureState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}

/// Bures angle `arccos √F` between pure states.
pub fn bures_angle_pure(a: &PureState, b: &PureState) -> Result<f64> {
    Ok(fidelity_pure(a, b)?.sqrt().min(1.0).acos())
}

/// `½ Σ |λ_i(a − b)|`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "density matrices of dimension {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let diff = a.matrix() - b.matrix();
    let eig = diff.eigvalsh()?;
    Ok((0.5 * eig.iter().map(|l| l.abs()).sum::<f64>()).clamp(0.0, 1.0))
}

/// `1 − |Tr(U†V)|² / N²`; both arguments must be unitary.
pub fn gate_infidelity(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    if !u.is_square() || u.rows() != v.rows() || u.cols() != v.cols() {
        return Err(Error::DimensionMismatch(format!(
            "gates of shape {}x{} and {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    for m in [u, v] {
        let d = m.unitarity_defect();
        if d > UNITARITY_TOL {
            return Err(Error::NotUnitary(d));
        }
    }
    Ok(gate_infidelity_unchecked(u, v))
}

pub(crate) fn gate_infidelity_unchecked(u: &ComplexMatrix, v: &ComplexMatrix) -> f64 {
    let n = u.rows() as f64;
    (1.0 - u.hs_inner(v).norm_sqr() / (n * n)).clamp(0.0, 1.0)
}

/// Reduced state of subsystem `keep` for a register with local dimensions `dims`
/// (subsystem 0 is the most significant tensor factor).
pub fn partial_trace(rho: &DensityMatrix, dims: &[usize], keep: usize) -> Result<DensityMatrix> {
    let n: usize = dims.iter().product();
    if dims.is_empty() || n != rho.dim() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dims {dims:?} do not multiply to {}",
            rho.dim()
        )));
    }
    if keep >= dims.len() {
        return Err(Error::InvalidArgument(format!(
            "subsystem {keep} out of range for {} subsystems",
            dims.len()
        )));
    }
    let dk = dims[keep];
    let inner: usize = dims[keep + 1..].iter().product();
    let split = |i: usize| {
        let local = (i / inner) % dk;
        let rest = (i / (inner * dk)) * inner + i % inner;
        (local, rest)
    };
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for i in 0..n {
        let (a, ri) = split(i);
        for j in 0..n {
            let (b, rj) = split(j);
            if ri == rj {
                out[(a, b)] += m[(i, j)];
            }
        }
    }
    Ok(DensityMatrix::from_unchecked(out))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = rho.matrix().eigvalsh()?;
    Ok(eig
        .iter()
        .filter(|&&l| l > 1e-300)
        .map(|&l| -l * l.log2())
        .sum::<f64>()
        .max(0.0))
}

/// Entropy (bits) of the block `dims[..cut]` of a pure state.
pub fn bipartite_entropy(psi: &PureState, dims: &[usize], cut: usize) -> Result<f64> {
    let n: usize = dims.iter().product();
    if n != psi.dim() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dims {dims:?} do not multiply to {}",
            psi.dim()
        )));
    }
    if cut == 0 || cut >= dims.len() {
        return Err(Error::InvalidArgument(format!(
            "cut {cut} must split {} subsystems into two non-empty blocks",
            dims.len()
        )));
    }
    let da: usize = dims[..cut].iter().product();
    let db = n / da;
    let amps = psi.amplitudes();
    // ρ_A = M M† with M the da×db reshaping of ψ; use the smaller side.
    let reduced = if da <= db {
        ComplexMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|k| amps[i * db + k] * amps[j * db + k].conj()).sum()
        })
    } else {
        ComplexMatrix::from_fn(db, db, |i, j| {
            (0..da).map(|k| amps[k * db + i] * amps[k * db + j].conj()).sum::<Complex64>()
        })
    };
    von_neumann_entropy(&DensityMatrix::from_unchecked(reduced))
}

/// Largest entropy over all contiguous cuts of the register.
pub fn max_bipartite_entropy(psi: &PureState, dims: &[usize]) -> Result<f64> {
    (1..dims.len()).try_fold(0.0f64, |acc, cut| Ok(acc.max(bipartite_entropy(psi, dims, cut)?)))
}
