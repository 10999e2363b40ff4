//! Dense complex linear algebra: matrices, state vectors, density matrices,
//! Kronecker products, outer products, and partial traces.
//!
//! Everything here is immutable after construction and indexed row-major.
//! Basis index convention (which qubit owns which bit of an index) lives in
//! [`crate::circuit`]; this module only deals in raw dimensions.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Hard cap on state dimension: no object may exceed 2^20 amplitudes.
pub const MAX_QUBITS: u32 = 20;

/// Default tolerance for analytically exact comparisons.
pub const TOL_EXACT: f64 = 1e-9;

/// Tolerance when comparing against reference values printed to 4 decimals.
pub const TOL_PRINTED: f64 = 5e-4;

/// Checks the `2^qubits <= 2^MAX_QUBITS` cap and returns the dimension.
pub fn checked_dim(qubits: usize) -> Result<usize> {
    if qubits as u32 > MAX_QUBITS {
        return Err(Error::DimensionCap {
            qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(1usize << qubits)
}

/// Dense row-major complex matrix; the carrier for all gates and density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data. Length must equal `rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::shape(
                format!("{rows}x{cols}"),
                format!("{} entries", data.len()),
                "matrix construction",
            ));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::ONE;
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Convenience constructor from rows of `(re, im)` pairs.
    pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| {
            let (re, im) = rows[i][j];
            Complex64::new(re, im)
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    /// Row-major view of the entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Kronecker product: block `(i, j)` of the result is `a(i, j) * b`.
    pub fn kron(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * b.rows, self.cols * b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a_ij = self.get(i, j);
                if a_ij == Complex64::ZERO {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        out.set(i * b.rows + k, j * b.cols + l, a_ij * b.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Standard matrix product. Errors when inner dimensions disagree.
    pub fn matmul(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != b.rows {
            return Err(Error::shape(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", b.rows, b.cols),
                "matrix product",
            ));
        }
        let mut out = ComplexMatrix::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a_ik = self.get(i, k);
                if a_ik == Complex64::ZERO {
                    continue;
                }
                for j in 0..b.cols {
                    let v = out.get(i, j) + a_ik * b.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).conj())
    }

    /// `self` raised to a non-negative integer power (square matrices only).
    pub fn pow(&self, exponent: u32) -> Result<ComplexMatrix> {
        if !self.is_square() {
            return Err(Error::shape(
                format!("{}x{}", self.rows, self.cols),
                "square",
                "matrix power",
            ));
        }
        let mut out = ComplexMatrix::identity(self.rows);
        for _ in 0..exponent {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// Multiplies every entry by a scalar.
    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * factor)
    }

    /// Largest entrywise modulus of the difference. Errors on shape mismatch.
    pub fn max_diff(&self, b: &ComplexMatrix) -> Result<f64> {
        if self.rows != b.rows || self.cols != b.cols {
            return Err(Error::shape(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", b.rows, b.cols),
                "matrix comparison",
            ));
        }
        Ok(self
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    /// True iff the max entrywise modulus of the difference is within `tol`.
    pub fn approx_eq(&self, b: &ComplexMatrix, tol: f64) -> Result<bool> {
        Ok(self.max_diff(b)? <= tol)
    }

    /// Deviation of `self† self` from the identity.
    pub fn unitarity_error(&self) -> Result<f64> {
        self.dagger()
            .matmul(self)?
            .max_diff(&ComplexMatrix::identity(self.rows))
    }

    /// True iff `self† self = I` within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.unitarity_error().map(|e| e <= tol).unwrap_or(false)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}

/// Kronecker product as a free function, mirroring the `⊗` of gate algebra.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Normalized complex amplitude vector of length `2^p` over the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from amplitudes; must have length `2^num_qubits` and unit norm.
    pub fn new(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        let dim = checked_dim(num_qubits)?;
        if amps.len() != dim {
            return Err(Error::shape(
                format!("2^{num_qubits}"),
                format!("{} amplitudes", amps.len()),
                "state construction",
            ));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > TOL_EXACT {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { num_qubits, amps })
    }

    /// Computational basis state `|index⟩` on `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = checked_dim(num_qubits)?;
        if index >= dim {
            return Err(Error::invalid(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![Complex64::ZERO; dim];
        amps[index] = Complex64::ONE;
        Ok(Self { num_qubits, amps })
    }

    /// The all-zeros state `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// Single-qubit state `α|0⟩ + β|1⟩`.
    pub fn qubit(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::new(1, vec![alpha, beta])
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// Tensor product `self ⊗ other`; `self` owns the most significant bits.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let qubits = self.num_qubits + other.num_qubits;
        checked_dim(qubits)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector {
            num_qubits: qubits,
            amps,
        })
    }

    /// Applies a full-dimension matrix to the state.
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> Result<StateVector> {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(Error::shape(
                format!("{}x{}", m.rows(), m.cols()),
                format!("{} amplitudes", self.dim()),
                "matrix-state product",
            ));
        }
        let mut amps = vec![Complex64::ZERO; self.dim()];
        for (i, out) in amps.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for j in 0..self.dim() {
                acc += m.get(i, j) * self.amps[j];
            }
            *out = acc;
        }
        StateVector::new(self.num_qubits, amps)
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_diff(&self, other: &StateVector) -> Result<f64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::shape(
                format!("{} qubits", self.num_qubits),
                format!("{} qubits", other.num_qubits),
                "state comparison",
            ));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> Result<bool> {
        Ok(self.max_diff(other)? <= tol)
    }

    /// Squared overlap `|⟨self|other⟩|²`; 1 iff equal up to global phase.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::shape(
                format!("{} qubits", self.num_qubits),
                format!("{} qubits", other.num_qubits),
                "fidelity",
            ));
        }
        let overlap: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .sum();
        Ok(overlap.norm_sqr())
    }

    /// Column-vector view as a `dim x 1` matrix.
    pub fn as_column(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.dim(),
            cols: 1,
            data: self.amps.clone(),
        }
    }
}

/// Square, Hermitian, trace-one, positive semidefinite matrix over `2^p` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    mat: ComplexMatrix,
}

/// Eigenvalue floor for the positive-semidefiniteness check; looser than the
/// Hermiticity tolerance to absorb accumulated float error.
pub const PSD_EIGENVALUE_FLOOR: f64 = -1e-7;

impl DensityMatrix {
    /// Validates the density-matrix invariants and wraps the matrix.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::shape(
                format!("{}x{}", mat.rows(), mat.cols()),
                "square",
                "density matrix",
            ));
        }
        let dim = mat.rows();
        if !dim.is_power_of_two() {
            return Err(Error::invalid(format!(
                "density matrix dimension {dim} is not a power of two"
            )));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        checked_dim(num_qubits)?;

        let herm_dev = mat.max_diff(&mat.dagger())?;
        if herm_dev > TOL_EXACT {
            return Err(Error::NotHermitian {
                deviation: herm_dev,
            });
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > TOL_EXACT || trace.im.abs() > TOL_EXACT {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let min_ev = min_eigenvalue(&mat);
        if min_ev < PSD_EIGENVALUE_FLOOR {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min_ev,
            });
        }
        Ok(Self { num_qubits, mat })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.mat.get(i, j)
    }

    pub fn max_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        self.mat.max_diff(other)
    }
}

/// Smallest eigenvalue of a Hermitian matrix, to the accuracy the PSD floor
/// needs. A Gershgorin bound settles most matrices without an eigensolve;
/// otherwise rows that are numerically zero are deflated away and the active
/// block goes through cyclic Jacobi.
fn min_eigenvalue(mat: &ComplexMatrix) -> f64 {
    let n = mat.rows();
    let gershgorin = (0..n)
        .map(|r| {
            let radius: f64 = (0..n)
                .filter(|&c| c != r)
                .map(|c| mat.get(r, c).norm())
                .sum();
            mat.get(r, r).re - radius
        })
        .fold(f64::INFINITY, f64::min);
    if gershgorin >= PSD_EIGENVALUE_FLOOR {
        // Every eigenvalue is at least the Gershgorin bound, which already
        // clears the floor; no eigensolve needed.
        return gershgorin;
    }

    const DEFLATE: f64 = 1e-12;
    let active: Vec<usize> = (0..n)
        .filter(|&r| (0..n).any(|c| mat.get(r, c).norm() > DEFLATE))
        .collect();
    let mut min = (0..n)
        .filter(|r| !active.contains(r))
        .map(|r| mat.get(r, r).re)
        .fold(f64::INFINITY, f64::min);

    if !active.is_empty() {
        let block: Vec<Vec<Complex64>> = active
            .iter()
            .map(|&r| active.iter().map(|&c| mat.get(r, c)).collect())
            .collect();
        for ev in jacobi_hermitian_eigenvalues(block) {
            min = min.min(ev);
        }
    }
    min
}

/// Eigenvalues of a Hermitian matrix via the cyclic Jacobi method: each
/// rotation zeroes one off-diagonal entry with a complex Givens rotation;
/// sweeps repeat until the off-diagonal mass is negligible.
fn jacobi_hermitian_eigenvalues(mut a: Vec<Vec<Complex64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..60 {
        let mut largest = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                largest = largest.max(a[p][q].norm());
            }
        }
        if largest < 1e-13 {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p][q];
                let mag = apq.norm();
                if mag < 1e-15 {
                    continue;
                }
                let phase = apq / mag;
                let alpha = a[p][p].re;
                let beta = a[q][q].re;
                let tau = (beta - alpha) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p];
                    let arq = a[r][q];
                    let new_rp = arp * c - arq * phase.conj() * s;
                    let new_rq = arp * phase * s + arq * c;
                    a[r][p] = new_rp;
                    a[p][r] = new_rp.conj();
                    a[r][q] = new_rq;
                    a[q][r] = new_rq.conj();
                }
                a[p][p] = Complex64::new(c * c * alpha + s * s * beta - 2.0 * s * c * mag, 0.0);
                a[q][q] = Complex64::new(s * s * alpha + c * c * beta + 2.0 * s * c * mag, 0.0);
                a[p][q] = Complex64::ZERO;
                a[q][p] = Complex64::ZERO;
            }
        }
    }
    (0..n).map(|i| a[i][i].re).collect()
}

/// Outer product `|v⟩⟨v|` as a density matrix. Errors when `v` has drifted
/// off unit norm.
pub fn outer(v: &StateVector) -> Result<DensityMatrix> {
    let norm_sq = v.norm_sq();
    if (norm_sq - 1.0).abs() > TOL_EXACT {
        return Err(Error::NotNormalized { norm_sq });
    }
    let dim = v.dim();
    let mat = ComplexMatrix::from_fn(dim, dim, |i, j| v.amp(i) * v.amp(j).conj());
    DensityMatrix::new(mat)
}

/// Traces out every qubit not in `keep`. Kept qubits retain their relative
/// (ascending-index) order in the reduced matrix.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let p = rho.num_qubits();
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateTarget { qubit: w[0] });
        }
    }
    if let Some(&q) = sorted.iter().find(|&&q| q >= p) {
        return Err(Error::QubitOutOfRange {
            qubit: q,
            num_qubits: p,
        });
    }

    let traced: Vec<usize> = (0..p).filter(|q| !sorted.contains(q)).collect();
    let keep_dim = 1usize << sorted.len();
    let trace_dim = 1usize << traced.len();

    // q[0] is the most significant bit of a basis index (see `circuit`).
    let compose = |kept_bits: usize, traced_bits: usize| -> usize {
        let mut index = 0usize;
        for (pos, &q) in sorted.iter().enumerate() {
            let bit = (kept_bits >> (sorted.len() - 1 - pos)) & 1;
            index |= bit << (p - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let bit = (traced_bits >> (traced.len() - 1 - pos)) & 1;
            index |= bit << (p - 1 - q);
        }
        index
    };

    let mat = ComplexMatrix::from_fn(keep_dim, keep_dim, |i, j| {
        (0..trace_dim)
            .map(|r| rho.get(compose(i, r), compose(j, r)))
            .sum()
    });
    DensityMatrix::new(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn h() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_rows(&[vec![(s, 0.0), (s, 0.0)], vec![(s, 0.0), (-s, 0.0)]])
    }

    fn x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(1.0, 0.0), (0.0, 0.0)]])
    }

    fn z() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (-1.0, 0.0)]])
    }

    #[test]
    fn kron_identity_blocks() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_h_with_identity_on_zero_state() {
        let hi = h().kron(&ComplexMatrix::identity(2));
        let input = StateVector::basis(2, 0).unwrap();
        let out = input.apply_matrix(&hi).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = StateVector::new(2, vec![c(s, 0.0), C::ZERO, c(s, 0.0), C::ZERO]).unwrap();
        assert!(out.approx_eq(&expected, 1e-12).unwrap());
    }

    #[test]
    fn kron_x_with_z_expanded_by_hand() {
        // X ⊗ Z has Z in the off-diagonal blocks and zeros on the diagonal.
        let expected = ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.0, 0.0)],
            vec![(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
            vec![(0.0, 0.0), (-1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        ]);
        assert_eq!(x().kron(&z()), expected);
    }

    #[test]
    fn matmul_hadamard_squares_to_identity() {
        let hh = h().matmul(&h()).unwrap();
        assert!(hh.approx_eq(&ComplexMatrix::identity(2), 1e-12).unwrap());
    }

    #[test]
    fn matmul_shape_mismatch_is_an_error() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn matmul_identity_leaves_matrix_unchanged() {
        let m = x().kron(&h());
        let out = ComplexMatrix::identity(4).matmul(&m).unwrap();
        assert!(out.approx_eq(&m, 0.0).unwrap());
    }

    #[test]
    fn dagger_of_identity_and_s() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.dagger(), i2);
        let s =
            ComplexMatrix::from_rows(&[vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (0.0, 1.0)]]);
        let expected = ComplexMatrix::from_rows(&[
            vec![(1.0, 0.0), (0.0, 0.0)],
            vec![(0.0, 0.0), (0.0, -1.0)],
        ]);
        assert_eq!(s.dagger(), expected);
    }

    #[test]
    fn dagger_is_an_involution() {
        let m = h().kron(&x());
        assert_eq!(m.dagger().dagger(), m);
    }

    #[test]
    fn dagger_times_fourier_transform_is_identity() {
        let f = crate::gates::qft(2).unwrap();
        let product = f.dagger().matmul(&f).unwrap();
        assert!(product
            .approx_eq(&ComplexMatrix::identity(4), 1e-12)
            .unwrap());
    }

    #[test]
    fn outer_of_bell_state_gives_corner_matrix() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::new(2, vec![c(s, 0.0), C::ZERO, C::ZERO, c(s, 0.0)]).unwrap();
        let rho = outer(&bell).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            vec![(0.5, 0.0), (0.0, 0.0), (0.0, 0.0), (0.5, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
            vec![(0.5, 0.0), (0.0, 0.0), (0.0, 0.0), (0.5, 0.0)],
        ]);
        assert!(rho.max_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn outer_of_central_bell_state() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::new(2, vec![C::ZERO, c(s, 0.0), c(s, 0.0), C::ZERO]).unwrap();
        let rho = outer(&bell).unwrap();
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            assert!((rho.get(i, j) - c(0.5, 0.0)).norm() < 1e-12);
        }
        assert!(rho.get(0, 0).norm() < 1e-12 && rho.get(3, 3).norm() < 1e-12);
    }

    #[test]
    fn outer_of_basis_zero() {
        let v = StateVector::basis(1, 0).unwrap();
        let rho = outer(&v).unwrap();
        assert!((rho.get(0, 0) - C::ONE).norm() < 1e-15);
        assert!(rho.get(1, 1).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_pair_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::new(2, vec![c(s, 0.0), C::ZERO, C::ZERO, c(s, 0.0)]).unwrap();
        let rho = outer(&bell).unwrap();
        let reduced = partial_trace(&rho, &[0]).unwrap();
        let expected = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(reduced.max_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_keeping_everything_is_identity_operation() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = StateVector::new(2, vec![c(s, 0.0), C::ZERO, c(s, 0.0), C::ZERO]).unwrap();
        let rho = outer(&v).unwrap();
        let same = partial_trace(&rho, &[0, 1]).unwrap();
        assert!(same.max_diff(rho.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_of_product_state_recovers_factor() {
        let a = StateVector::qubit(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let b = StateVector::qubit(c(0.8, 0.0), c(-0.6, 0.0)).unwrap();
        let joint = outer(&a.tensor(&b).unwrap()).unwrap();
        let reduced = partial_trace(&joint, &[0]).unwrap();
        assert!(reduced.max_diff(outer(&a).unwrap().matrix()).unwrap() < 1e-12);
        let reduced_b = partial_trace(&joint, &[1]).unwrap();
        assert!(reduced_b.max_diff(outer(&b).unwrap().matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_keep_sets() {
        let v = StateVector::basis(2, 0).unwrap();
        let rho = outer(&v).unwrap();
        assert!(matches!(partial_trace(&rho, &[]), Err(Error::EmptyKeepSet)));
        assert!(matches!(
            partial_trace(&rho, &[2]),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            partial_trace(&rho, &[0, 0]),
            Err(Error::DuplicateTarget { .. })
        ));
    }

    #[test]
    fn approx_eq_cases() {
        let i2 = ComplexMatrix::identity(2);
        assert!(i2.approx_eq(&i2, 0.0).unwrap());
        assert!(h().matmul(&h()).unwrap().approx_eq(&i2, 1e-12).unwrap());
        assert!(!h().approx_eq(&x(), 1e-12).unwrap());
        assert!(matches!(
            i2.approx_eq(&ComplexMatrix::zeros(3, 3), 0.0),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn state_vector_rejects_unnormalized_input() {
        let bad = StateVector::new(1, vec![C::ONE, C::ONE]);
        assert!(matches!(bad, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn dimension_cap_is_enforced() {
        assert!(matches!(
            StateVector::zero(MAX_QUBITS as usize + 1),
            Err(Error::DimensionCap { .. })
        ));
        assert!(checked_dim(MAX_QUBITS as usize).is_ok());
    }

    #[test]
    fn density_matrix_rejects_non_hermitian() {
        let m =
            ComplexMatrix::from_rows(&[vec![(1.0, 0.0), (1.0, 0.0)], vec![(0.0, 0.0), (0.0, 0.0)]]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn density_matrix_rejects_wrong_trace() {
        let m = ComplexMatrix::identity(2);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::TraceNotOne { .. })
        ));
    }

    #[test]
    fn density_matrix_rejects_negative_eigenvalues() {
        // diag(1.5, -0.5) is Hermitian with trace one but not PSD.
        let m = ComplexMatrix::from_rows(&[
            vec![(1.5, 0.0), (0.0, 0.0)],
            vec![(0.0, 0.0), (-0.5, 0.0)],
        ]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }
}
