use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{MAX_DIM, STRUCTURAL_TOL};

/// Dense complex matrix stored row-major.
///
/// There is deliberately no `PartialEq`: comparisons go through
/// [`ComplexMatrix::approx_eq`] with an explicit tolerance.
#[derive(Clone)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigendecomposition of a Hermitian matrix: `H = V diag(values) V†`.
#[derive(Debug, Clone)]
pub struct Eigh {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, ordered like `values`.
    pub vectors: ComplexMatrix,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::DimensionTooLarge(rows.max(cols)));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from nested rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Builds a matrix from separate real and imaginary row blocks.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        if re.len() != im.len() || re.iter().zip(im).any(|(a, b)| a.len() != b.len()) {
            return Err(Error::DimensionMismatch(
                "real and imaginary parts have different shapes".into(),
            ));
        }
        let rows: Vec<Vec<Complex64>> = re
            .iter()
            .zip(im)
            .map(|(r, i)| r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Returns `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// `self + c·other`, the workhorse for building `H_D + γ H_C`.
    pub fn add_scaled(&self, other: &Self, c: f64) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b * c)
                .collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); n * m];
        for i in 0..n {
            let row = &mut out[i * m..(i + 1) * m];
            for p in 0..k {
                let a = self.data[i * k + p];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[p * m..(p + 1) * m];
                for (o, &b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self {
            rows: n,
            cols: m,
            data: out,
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Hilbert–Schmidt inner product `Tr(A†B)`.
    pub fn hs_inner(&self, other: &Self) -> Complex64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a.conj() * b)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖A − A†‖_F`; zero for Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `‖U†U − I‖_F`; zero for unitary matrices.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint().matmul(self) - &Self::identity(self.rows)).frobenius_norm()
    }

    /// Checks Hermiticity at the structural tolerance, scaled by the matrix size.
    pub fn ensure_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let defect = self.hermiticity_defect();
        if defect > STRUCTURAL_TOL * self.frobenius_norm().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        Ok(())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)])
    }

    /// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
    pub fn eigh(&self) -> Result<Eigh> {
        self.ensure_hermitian()?;
        let n = self.rows;
        // Symmetrize so round-off in the input cannot leak into the solver.
        let sym = DMatrix::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5);
        let eig = sym.symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = Self::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        Ok(Eigh { values, vectors })
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn eigvalsh(&self) -> Result<Vec<f64>> {
        self.ensure_hermitian()?;
        let mut v: Vec<f64> = self
            .to_nalgebra()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        v.sort_by(f64::total_cmp);
        Ok(v)
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        let gram = self.adjoint().matmul(self);
        gram.eigvalsh()
            .map(|v| v.last().copied().unwrap_or(0.0).max(0.0).sqrt())
            .unwrap_or(f64::NAN)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.add_scaled(rhs, 1.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.add_scaled(rhs, -1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// `exp(−i t H)` for Hermitian `H`, computed from the eigendecomposition.
pub fn expm_hermitian_scaled(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time step must be finite, got {t}")));
    }
    h.ensure_hermitian()?;
    if h.rows() == 2 {
        return Ok(expm_qubit(h, t));
    }
    let Eigh { values, vectors } = h.eigh()?;
    let n = h.rows();
    let phases: Vec<Complex64> = values
        .iter()
        .map(|&l| Complex64::from_polar(1.0, -l * t))
        .collect();
    // V · diag(phases) · V†
    let mut scaled = vectors.clone();
    for i in 0..n {
        for j in 0..n {
            scaled[(i, j)] *= phases[j];
        }
    }
    Ok(scaled.matmul(&vectors.adjoint()))
}

/// Closed form for 2x2: `H = a0·I + n·σ`, `exp(−itH) = e^{−i t a0}(cos(t|n|) I − i sin(t|n|) n̂·σ)`.
fn expm_qubit(h: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = (h[(0, 1)] + h[(1, 0)].conj()) * 0.5;
    let a0 = 0.5 * (a + d);
    let z = 0.5 * (a - d);
    let r = (z * z + b.norm_sqr()).sqrt();
    let global = Complex64::from_polar(1.0, -a0 * t);
    let c = (r * t).cos();
    // sin(rt)/r, with the r → 0 limit t
    let s = if r * t.abs() < 1e-8 { t } else { (r * t).sin() / r };
    let mi = Complex64::new(0.0, -1.0);
    let m00 = Complex64::new(c, 0.0) + mi * s * z;
    let m11 = Complex64::new(c, 0.0) - mi * s * z;
    let m01 = mi * s * b;
    let m10 = mi * s * b.conj();
    ComplexMatrix {
        rows: 2,
        cols: 2,
        data: vec![global * m00, global * m01, global * m10, global * m11],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::pauli;
    use crate::qcore::random::{random_hermitian, rng};
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn new_rejects_bad_lengths_and_oversize() {
        assert!(ComplexMatrix::new(2, 2, vec![c(1.0); 3]).is_err());
        assert!(matches!(
            ComplexMatrix::new(MAX_DIM + 1, 1, vec![c(0.0); MAX_DIM + 1]),
            Err(Error::DimensionTooLarge(_))
        ));
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let u = expm_hermitian_scaled(&ComplexMatrix::zeros(2, 2), 1.0).unwrap();
        assert!(u.approx_eq(&ComplexMatrix::identity(2), 1e-15));
        let u = expm_hermitian_scaled(&ComplexMatrix::zeros(3, 3), 1.0).unwrap();
        assert!(u.approx_eq(&ComplexMatrix::identity(3), 1e-15));
    }

    #[test]
    fn expm_sigma_x_at_pi_is_minus_identity() {
        let u = expm_hermitian_scaled(&pauli::x(), PI).unwrap();
        assert!(u.approx_eq(&ComplexMatrix::identity(2).scale_real(-1.0), 1e-12));
    }

    #[test]
    fn expm_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(0.0), c(0.0)]]).unwrap();
        match expm_hermitian_scaled(&m, 1.0) {
            Err(Error::NotHermitian(d)) => assert!((d - 2f64.sqrt()).abs() < 1e-12),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn qubit_closed_form_matches_eigen_path() {
        let mut r = rng(11);
        for _ in 0..20 {
            let h = random_hermitian(2, &mut r);
            let fast = expm_hermitian_scaled(&h, 0.37).unwrap();
            // embed in 3x3 block to force the general path
            let big = ComplexMatrix::from_fn(3, 3, |i, j| if i < 2 && j < 2 { h[(i, j)] } else { c(0.0) });
            let slow = expm_hermitian_scaled(&big, 0.37).unwrap();
            let block = ComplexMatrix::from_fn(2, 2, |i, j| slow[(i, j)]);
            assert!(fast.approx_eq(&block, 1e-12));
        }
    }

    #[test]
    fn eigh_reconstructs_and_sorts() {
        let mut r = rng(3);
        let h = random_hermitian(6, &mut r);
        let e = h.eigh().unwrap();
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let d = ComplexMatrix::diagonal(&e.values.iter().map(|&v| c(v)).collect::<Vec<_>>());
        let back = e.vectors.matmul(&d).matmul(&e.vectors.adjoint());
        assert!(back.approx_eq(&h, 1e-12));
        assert!(e.vectors.unitarity_defect() < 1e-12);
    }

    #[test]
    fn spectral_norm_of_paulis() {
        assert!((pauli::x().spectral_norm() - 1.0).abs() < 1e-12);
        let m = &pauli::z() + &pauli::x();
        assert!((m.spectral_norm() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kron_and_commutator() {
        let zz = pauli::z().kron(&pauli::z());
        assert!((zz[(0, 0)] - c(1.0)).norm() < 1e-15);
        assert!((zz[(1, 1)] - c(-1.0)).norm() < 1e-15);
        // [σ_z, σ_x] = 2iσ_y
        let comm = pauli::z().commutator(&pauli::x());
        assert!(comm.approx_eq(&pauli::y().scale(Complex64::new(0.0, 2.0)), 1e-15));
    }
}
