//! Dense complex linear algebra for registers of at most [`MAX_QUBITS`] qubits.
//!
//! Qubit 0 is the most significant bit of an amplitude index (big-endian kets).

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest register handled anywhere in the crate.
pub const MAX_QUBITS: usize = 8;

/// Largest matrix accepted by the Hermitian eigensolver.
pub const MAX_EIGEN_DIM: usize = 16;

/// Hermiticity tolerance for inputs to the eigensolver and density-matrix checks.
pub const HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_OFF_DIAG_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self::from_vec(n_rows, n_cols, data)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols, "ragged rows");
            data.extend(r.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::from_vec(n_rows, n_cols, data)
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diagonal(&d)
    }

    /// `|v⟩⟨v|`
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
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

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M[i][j] - conj(M[j][i])|`; infinite for non-square matrices.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M†) / 2`
    pub fn hermitian_part(&self) -> Self {
        self.add(&self.adjoint()).scale(C64::new(0.5, 0.0))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i1 in 0..a.rows {
        for j1 in 0..a.cols {
            let x = a[(i1, j1)];
            for i2 in 0..b.rows {
                for j2 in 0..b.cols {
                    out[(i1 * b.rows + i2, j1 * b.cols + j2)] = x * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a sequence of matrices, left to right.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    factors
        .into_iter()
        .fold(ComplexMatrix::identity(1), |acc, m| kron(&acc, m))
}

/// `⟨a|b⟩`
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

/// `min_θ ‖a − e^{iθ} b‖`, the distance between two vectors after removing a global phase.
pub fn phase_aligned_distance(a: &[C64], b: &[C64]) -> f64 {
    let overlap = inner(b, a);
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - phase * y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Number of qubits for a dimension that is a power of two.
pub fn qubits_for_dim(dim: usize) -> Option<usize> {
    if dim.is_power_of_two() {
        Some(dim.trailing_zeros() as usize)
    } else {
        None
    }
}

pub(crate) fn check_qubit_list(indices: &[usize], n_qubits: usize) -> Result<()> {
    for (k, &q) in indices.iter().enumerate() {
        if q >= n_qubits {
            return Err(Error::IndexOutOfRange { index: q, n_qubits });
        }
        if indices[..k].contains(&q) {
            return Err(Error::DuplicateIndex(q));
        }
    }
    Ok(())
}

/// Maps (kept-subsystem index, traced-subsystem index) to a full-register index.
struct SplitIndex {
    keep_bits: Vec<usize>,
    rest_bits: Vec<usize>,
}

impl SplitIndex {
    fn new(n_qubits: usize, keep: &[usize]) -> Self {
        let bit = |q: usize| n_qubits - 1 - q;
        let keep_bits = keep.iter().map(|&q| bit(q)).collect();
        let rest_bits = (0..n_qubits)
            .filter(|q| !keep.contains(q))
            .map(bit)
            .collect();
        SplitIndex {
            keep_bits,
            rest_bits,
        }
    }

    fn compose(&self, kept: usize, rest: usize) -> usize {
        scatter(kept, &self.keep_bits) | scatter(rest, &self.rest_bits)
    }

    fn kept_dim(&self) -> usize {
        1 << self.keep_bits.len()
    }

    fn rest_dim(&self) -> usize {
        1 << self.rest_bits.len()
    }
}

/// Spreads the bits of `value` (most significant first) onto the absolute bit positions `bits`.
fn scatter(value: usize, bits: &[usize]) -> usize {
    let k = bits.len();
    bits.iter()
        .enumerate()
        .filter(|(pos, _)| value >> (k - 1 - pos) & 1 == 1)
        .fold(0, |acc, (_, &b)| acc | (1 << b))
}

/// Reduced density matrix of a pure state on the qubits in `keep`, in the given order.
pub fn partial_trace_pure(amplitudes: &[C64], keep: &[usize]) -> Result<ComplexMatrix> {
    let n = qubits_for_dim(amplitudes.len()).ok_or(Error::DimensionMismatch {
        expected: amplitudes.len().next_power_of_two(),
        found: amplitudes.len(),
    })?;
    check_qubit_list(keep, n)?;
    let split = SplitIndex::new(n, keep);
    let d = split.kept_dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for r in 0..split.rest_dim() {
        let column: Vec<C64> = (0..d).map(|a| amplitudes[split.compose(a, r)]).collect();
        for a in 0..d {
            if column[a] == ZERO {
                continue;
            }
            for b in 0..d {
                out[(a, b)] += column[a] * column[b].conj();
            }
        }
    }
    Ok(out)
}

/// Partial trace of an operator on a qubit register, keeping `keep` in the given order.
pub fn partial_trace_operator(m: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = qubits_for_dim(m.rows).ok_or(Error::DimensionMismatch {
        expected: m.rows.next_power_of_two(),
        found: m.rows,
    })?;
    check_qubit_list(keep, n)?;
    let split = SplitIndex::new(n, keep);
    let d = split.kept_dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for r in 0..split.rest_dim() {
        for a in 0..d {
            let ia = split.compose(a, r);
            for b in 0..d {
                out[(a, b)] += m[(ia, split.compose(b, r))];
            }
        }
    }
    Ok(out)
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the matching
/// eigenvectors as columns of a unitary matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.rows)
            .map(|i| self.vectors[(i, k)])
            .collect()
    }
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each plane rotation first removes the phase of `a[p][q]` and then applies the real Jacobi
/// rotation that annihilates it. Sweeps continue until the off-diagonal Frobenius norm falls
/// below `1e-14` (relative to the matrix norm when that exceeds one).
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n > MAX_EIGEN_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    let dev = m.hermiticity_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a
        .data
        .iter()
        .map(|x| x.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    let threshold = JACOBI_OFF_DIAG_TOL * scale;

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Rotation acting on columns p, q:
                //   [ c            s          ]
                //   [ -s·conj(φ)   c·conj(φ)  ]
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;
                rotate_columns(&mut a, p, q, u_pp, u_pq, u_qp, u_qq);
                rotate_rows(&mut a, p, q, u_pp, u_pq, u_qp, u_qq);
                rotate_columns(&mut v, p, q, u_pp, u_pq, u_qp, u_qq);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, k)] = v[(r, i)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|e| e.values)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let mut sum = 0.0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

// A ← A·U restricted to columns p, q.
fn rotate_columns(a: &mut ComplexMatrix, p: usize, q: usize, pp: C64, pq: C64, qp: C64, qq: C64) {
    for k in 0..a.rows {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * pp + akq * qp;
        a[(k, q)] = akp * pq + akq * qq;
    }
}

// A ← U†·A restricted to rows p, q.
fn rotate_rows(a: &mut ComplexMatrix, p: usize, q: usize, pp: C64, pq: C64, qp: C64, qq: C64) {
    for k in 0..a.cols {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = pp.conj() * apk + qp.conj() * aqk;
        a[(q, k)] = pq.conj() * apk + qq.conj() * aqk;
    }
}
