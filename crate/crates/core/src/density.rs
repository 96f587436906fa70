use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, partial_trace_operator, qubits_for_dim, ComplexMatrix, C64,
    HERMITIAN_TOL, MAX_EIGEN_DIM,
};
use crate::qcore::PureState;

/// Trace and positivity tolerance for density-matrix validation.
pub const DENSITY_TOL: f64 = 1e-10;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero before logarithms.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// A validated density matrix over `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity (1e-10), unit trace (1e-10) and positivity (min eigenvalue ≥ −1e-10),
    /// then stores the Hermitian part.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let n_qubits = qubits_for_dim(matrix.rows()).ok_or(Error::DimensionMismatch {
            expected: matrix.rows().next_power_of_two(),
            found: matrix.rows(),
        })?;
        if matrix.rows() > MAX_EIGEN_DIM {
            return Err(Error::DimensionTooLarge(matrix.rows()));
        }
        let dev = matrix.hermiticity_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotDensityMatrix(format!(
                "not Hermitian (deviation {dev:e})"
            )));
        }
        let matrix = matrix.hermitian_part();
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > DENSITY_TOL {
            return Err(Error::NotDensityMatrix(format!(
                "trace {tr} differs from 1"
            )));
        }
        let min_eig = hermitian_eigenvalues(&matrix)?[0];
        if min_eig < -DENSITY_TOL {
            return Err(Error::NotDensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(DensityMatrix { n_qubits, matrix })
    }

    pub fn from_pure(state: &PureState) -> Result<Self> {
        Self::new(ComplexMatrix::outer(state.amplitudes()))
    }

    /// Reduced state of a pure register on `keep`.
    pub fn reduced(state: &PureState, keep: &[usize]) -> Result<Self> {
        Self::new(state.reduced(keep)?)
    }

    /// `(1/2^n) 1`
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        let d = 1usize << n_qubits;
        Self::new(ComplexMatrix::identity(d).scale(C64::new(1.0 / d as f64, 0.0)))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        Self::new(partial_trace_operator(&self.matrix, keep)?)
    }

    /// `⟨k|ρ|k⟩` for every computational basis state.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// `Tr ρ²`, computed entrywise.
    pub fn purity(&self) -> f64 {
        self.matrix.entries().iter().map(|x| x.norm_sqr()).sum()
    }

    /// Spectrum projected onto the probability simplex: tiny negative eigenvalues are clamped to
    /// zero and the rest renormalized to sum to one.
    pub fn spectrum(&self) -> Vec<f64> {
        let eig = hermitian_eigenvalues(&self.matrix).expect("validated at construction");
        let clamped: Vec<f64> = eig.into_iter().map(|x| x.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        clamped.into_iter().map(|x| x / total).collect()
    }

    /// `Tr(ρ O)` as a complex number.
    pub fn expectation(&self, observable: &ComplexMatrix) -> Result<C64> {
        if observable.rows() != self.dim() || observable.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: observable.rows(),
            });
        }
        Ok(self.matrix.matmul(observable).trace())
    }
}
