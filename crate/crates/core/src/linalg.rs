//! Dense complex matrices and row state vectors.
//!
//! Generator state spaces are tiny (dimension 3 for the built-in spin
//! models), so everything is plain row-major `Vec<Complex64>` storage with
//! textbook O(n³) products. No external linear-algebra backend.

use num_complex::Complex;

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Default tolerance for approximate matrix equality.
pub const DEFAULT_MATRIX_TOL: f64 = 1e-12;

/// Square matrix of complex scalars, row-major.
#[derive(Debug, Clone)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Diagonal matrix with real entries.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { dim, entries })
    }

    /// Real-valued constructor; each inner slice is one row.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(())
    }

    /// Standard matrix product `self · other`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `√Σ|a_ij − b_ij|²`; zero iff the matrices are equal.
    pub fn frobenius_distance(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        let sum: f64 = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok(sum.sqrt())
    }

    /// Tolerance-based equality; matrices are never compared bitwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match self.frobenius_distance(other) {
            Ok(d) => d <= tol,
            Err(_) => false,
        }
    }

    /// `T† · self · T`, the conjugation used by the one-step ensemble map.
    pub fn conjugate_with(&self, t: &Self) -> Result<Self> {
        t.adjoint().mat_mul(self)?.mat_mul(t)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries
            .iter()
            .map(|a| a.norm())
            .fold(0.0, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

/// Row-convention quantum state `⟨ψ|`; updated on the right by matrices.
#[derive(Debug, Clone)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        assert!(!amplitudes.is_empty(), "state vector must be nonempty");
        Self { amplitudes }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// Basis row vector `⟨e_index|`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut v = Self::zeros(dim);
        v.amplitudes[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Row vector times matrix: `⟨ψ|·A`.
    pub fn apply(&self, matrix: &ComplexMatrix) -> Result<StateVector> {
        let n = self.dim();
        if matrix.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: matrix.dim(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += a * matrix.get(i, j);
            }
        }
        Ok(StateVector::new(out))
    }

    /// `⟨self|other⟩`, conjugating the first argument.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.amplitudes.iter().map(|a| a * factor).collect())
    }

    /// Unit-norm copy; errors on a (near-)zero vector.
    pub fn normalized(&self) -> Result<StateVector> {
        let n = self.norm();
        if n < 1e-12 {
            return Err(Error::ZeroStateVector);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt()
                <= tol
    }

    pub fn all_finite(&self) -> bool {
        self.amplitudes
            .iter()
            .all(|a| a.re.is_finite() && a.im.is_finite())
    }
}
