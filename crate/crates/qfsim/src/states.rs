//! The four families of Fourier states, Bell and GHZ states, the γ states
//! built from the fourth root of X, their density matrices, and the tile
//! layout classifier that separates maximal, non-maximal, and rough
//! entanglement by the support of the density matrix.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gates;
use crate::numerics::{checked_dim, outer, ComplexMatrix, DensityMatrix, StateVector};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Phase bit `a` and parity bit `b` selecting one of four states in every
/// two-qubit family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateLabel {
    pub a: bool,
    pub b: bool,
}

impl StateLabel {
    pub const fn new(a: bool, b: bool) -> Self {
        Self { a, b }
    }

    /// Builds a label from 0/1 bit values.
    pub fn from_bits(a: u8, b: u8) -> Result<Self> {
        if a > 1 || b > 1 {
            return Err(Error::invalid(format!(
                "state label bits must be 0 or 1, got a={a} b={b}"
            )));
        }
        Ok(Self::new(a == 1, b == 1))
    }

    /// Basis index of `|ab⟩`.
    pub fn basis_index(&self) -> usize {
        (usize::from(self.a) << 1) | usize::from(self.b)
    }

    pub fn all() -> [StateLabel; 4] {
        [
            StateLabel::new(false, false),
            StateLabel::new(false, true),
            StateLabel::new(true, false),
            StateLabel::new(true, true),
        ]
    }
}

impl std::fmt::Display for StateLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", u8::from(self.a), u8::from(self.b))
    }
}

/// Two-qubit Fourier state of the given degree:
/// `F_2^d (H ⊗ I) |ab⟩`. Degree 2 gives the Bell states; degrees 1 and 3 are
/// the rough-entangled pairs.
pub fn fourier_state_2q(degree: u32, label: StateLabel) -> Result<StateVector> {
    let prep = gates::hadamard().kron(&ComplexMatrix::identity(2));
    let input = StateVector::basis(2, label.basis_index())?;
    input
        .apply_matrix(&prep)?
        .apply_matrix(&gates::qfg(2, degree)?)
}

/// Fourier state on `p` qubits with all inputs `|0⟩`:
/// `F_p^d (H ⊗ I_{2^{p−1}}) |0…0⟩`.
pub fn fourier_state(p: usize, degree: u32) -> Result<StateVector> {
    if p == 0 {
        return Err(Error::TooFewQubits { needed: 1, got: 0 });
    }
    checked_dim(p)?;
    let prep = gates::hadamard().kron(&ComplexMatrix::identity(1 << (p - 1)));
    StateVector::zero(p)?
        .apply_matrix(&prep)?
        .apply_matrix(&gates::qfg(p, degree)?)
}

/// Bell state `(|0b⟩ + (−1)^a |1, b⊕1⟩)/√2`.
pub fn bell(label: StateLabel) -> StateVector {
    let mut amps = vec![Complex64::ZERO; 4];
    let first = usize::from(label.b);
    let second = 0b10 | usize::from(!label.b);
    amps[first] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[second] = Complex64::new(
        if label.a {
            -FRAC_1_SQRT_2
        } else {
            FRAC_1_SQRT_2
        },
        0.0,
    );
    StateVector::new(2, amps).expect("bell states are normalized")
}

/// Non-maximally entangled pair `CNOT (⁴√X ⊗ I) |ab⟩`.
pub fn gamma(label: StateLabel) -> StateVector {
    let prep = gates::fourth_root_x().kron(&ComplexMatrix::identity(2));
    StateVector::basis(2, label.basis_index())
        .expect("two-qubit basis state")
        .apply_matrix(&prep)
        .expect("dimension matches")
        .apply_matrix(&gates::cnot())
        .expect("dimension matches")
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n ≥ 2` qubits.
pub fn ghz(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::TooFewQubits { needed: 2, got: n });
    }
    let dim = checked_dim(n)?;
    let mut amps = vec![Complex64::ZERO; dim];
    amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    StateVector::new(n, amps)
}

/// Density matrix `|v⟩⟨v|` of a pure state.
pub fn density(state: &StateVector) -> Result<DensityMatrix> {
    outer(state)
}

/// Boolean mask of the nonzero entries of a two-qubit density matrix.
/// Hermiticity makes the mask symmetric under transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilePattern {
    pub mask: [[bool; 4]; 4],
}

impl TilePattern {
    pub const fn new(mask: [[bool; 4]; 4]) -> Self {
        Self { mask }
    }

    /// Mask with `true` exactly at the listed row/column support.
    const fn from_support(support: [bool; 4]) -> Self {
        let mut mask = [[false; 4]; 4];
        let mut i = 0;
        while i < 4 {
            let mut j = 0;
            while j < 4 {
                mask[i][j] = support[i] && support[j];
                j += 1;
            }
            i += 1;
        }
        Self { mask }
    }
}

/// Default threshold below which a density-matrix entry counts as zero.
/// Rough-state entries sit at the 0.25 scale, far above float noise.
pub const TILE_TOLERANCE: f64 = 1e-6;

/// The four corners: Bell/γ states with parity bit 0.
pub const TILES_CORNER: TilePattern = TilePattern::new([
    [true, false, false, true],
    [false, false, false, false],
    [false, false, false, false],
    [true, false, false, true],
]);

/// The central 2x2 block: Bell/γ states with parity bit 1.
pub const TILES_CENTER: TilePattern = TilePattern::new([
    [false, false, false, false],
    [false, true, true, false],
    [false, true, true, false],
    [false, false, false, false],
]);

/// Rows and columns {0, 2, 3}: rough states with phase bit 0.
pub const TILES_ROUGH_A: TilePattern = TilePattern::from_support([true, false, true, true]);

/// Rows and columns {1, 2, 3}: rough states with phase bit 1.
pub const TILES_ROUGH_B: TilePattern = TilePattern::from_support([false, true, true, true]);

/// Computes the nonzero-entry mask of a two-qubit density matrix.
pub fn tile_pattern(rho: &DensityMatrix, tol: f64) -> Result<TilePattern> {
    if rho.dim() != 4 {
        return Err(Error::shape(
            format!("{}x{}", rho.dim(), rho.dim()),
            "4x4",
            "tile pattern",
        ));
    }
    let mut mask = [[false; 4]; 4];
    for (i, row) in mask.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = rho.get(i, j).norm() > tol;
        }
    }
    Ok(TilePattern { mask })
}

/// Entanglement family read off the tile layout of a two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TileClass {
    /// Four corner tiles: maximal or non-maximal pair, parity bit 0.
    CornerEntangled,
    /// Central 2x2 block: maximal or non-maximal pair, parity bit 1.
    CenterEntangled,
    /// Support on rows/columns {0, 2, 3}: rough pair, phase bit 0.
    RoughA,
    /// Support on rows/columns {1, 2, 3}: rough pair, phase bit 1.
    RoughB,
    /// None of the four canonical layouts.
    Other,
}

impl std::fmt::Display for TileClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            TileClass::CornerEntangled => "corner-entangled",
            TileClass::CenterEntangled => "center-entangled",
            TileClass::RoughA => "rough-a",
            TileClass::RoughB => "rough-b",
            TileClass::Other => "other",
        };
        f.write_str(name)
    }
}

/// Matches the tile pattern of `rho` against the four canonical layouts.
pub fn classify(rho: &DensityMatrix) -> Result<TileClass> {
    classify_with_tol(rho, TILE_TOLERANCE)
}

pub fn classify_with_tol(rho: &DensityMatrix, tol: f64) -> Result<TileClass> {
    let pattern = tile_pattern(rho, tol)?;
    Ok(if pattern == TILES_CORNER {
        TileClass::CornerEntangled
    } else if pattern == TILES_CENTER {
        TileClass::CenterEntangled
    } else if pattern == TILES_ROUGH_A {
        TileClass::RoughA
    } else if pattern == TILES_ROUGH_B {
        TileClass::RoughB
    } else {
        TileClass::Other
    })
}

/// Circuit preparing GHZ on `n ∈ {3, 4}` qubits through the explicit
/// swap/CNOT chain that realizes `F_n^2` stepwise on this input.
pub fn ghz_gate_chain(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n, 0);
    match n {
        3 => {
            c.gate(gates::hadamard(), &[0])?;
            c.gate(gates::cnot(), &[0, 1])?;
            c.gate(gates::swap(), &[0, 1])?;
            c.gate(gates::cnot(), &[1, 2])?;
            c.gate(gates::swap(), &[0, 1])?;
        }
        4 => {
            c.gate(gates::hadamard(), &[0])?;
            c.gate(gates::cnot(), &[0, 1])?;
            c.gate(gates::swap(), &[0, 1])?;
            c.gate(gates::cnot(), &[1, 2])?;
            c.gate(gates::swap(), &[0, 1])?;
            c.gate(gates::swap(), &[0, 1])?;
            c.gate(gates::swap(), &[1, 2])?;
            c.gate(gates::cnot(), &[2, 3])?;
            c.gate(gates::swap(), &[1, 2])?;
            c.gate(gates::swap(), &[0, 1])?;
        }
        _ => {
            return Err(Error::invalid(format!(
                "gate chain is spelled out for 3 or 4 qubits, got {n}"
            )))
        }
    }
    Ok(c)
}

/// Circuit preparing GHZ on `n` qubits by fanning CNOTs out of qubit 0.
/// Equivalent to the Fourier-gate construction on `|0…0⟩` but NOT as a
/// unitary: on other basis inputs the two circuits disagree.
pub fn ghz_nested_cnot(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::TooFewQubits { needed: 2, got: n });
    }
    let mut c = Circuit::new(n, 0);
    c.gate(gates::hadamard(), &[0])?;
    for t in 1..n {
        c.gate(gates::cnot(), &[0, t])?;
    }
    Ok(c)
}

/// Circuit preparing GHZ on `n` qubits as `F_n^2 (H ⊗ I)`.
pub fn ghz_qfg_circuit(n: usize) -> Result<Circuit> {
    let mut c = Circuit::new(n, 0);
    c.gate(gates::hadamard(), &[0])?;
    let targets: Vec<usize> = (0..n).collect();
    c.gate(gates::qfg(n, 2)?, &targets)?;
    Ok(c)
}

/// Literal reference vectors and density matrices, frozen so the test suite
/// can tell a constructor bug from a fixture bug.
pub mod fixtures {
    use super::*;

    fn vector(entries: &[(f64, f64)]) -> StateVector {
        let amps: Vec<Complex64> = entries
            .iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect();
        StateVector::new(2, amps).expect("fixture vectors are normalized")
    }

    const R: f64 = FRAC_1_SQRT_2;
    /// `(1 ± i)/2` scaled by `1/√2`.
    const Q: f64 = 0.5 * FRAC_1_SQRT_2;

    /// Reference two-qubit Fourier state of the given degree and label.
    pub fn fourier_2q(degree: u32, label: StateLabel) -> StateVector {
        let (a, b) = (label.a, label.b);
        match degree % 4 {
            0 => match (a, b) {
                (false, false) => vector(&[(R, 0.0), (0.0, 0.0), (R, 0.0), (0.0, 0.0)]),
                (true, false) => vector(&[(R, 0.0), (0.0, 0.0), (-R, 0.0), (0.0, 0.0)]),
                (false, true) => vector(&[(0.0, 0.0), (R, 0.0), (0.0, 0.0), (R, 0.0)]),
                (true, true) => vector(&[(0.0, 0.0), (R, 0.0), (0.0, 0.0), (-R, 0.0)]),
            },
            1 => match (a, b) {
                (false, false) => vector(&[(R, 0.0), (0.0, 0.0), (Q, Q), (Q, -Q)]),
                (true, false) => vector(&[(0.0, 0.0), (R, 0.0), (Q, -Q), (Q, Q)]),
                (false, true) => vector(&[(R, 0.0), (0.0, 0.0), (-Q, -Q), (-Q, Q)]),
                (true, true) => vector(&[(0.0, 0.0), (R, 0.0), (-Q, Q), (-Q, -Q)]),
            },
            2 => match (a, b) {
                (false, false) => vector(&[(R, 0.0), (0.0, 0.0), (0.0, 0.0), (R, 0.0)]),
                (true, false) => vector(&[(R, 0.0), (0.0, 0.0), (0.0, 0.0), (-R, 0.0)]),
                (false, true) => vector(&[(0.0, 0.0), (R, 0.0), (R, 0.0), (0.0, 0.0)]),
                (true, true) => vector(&[(0.0, 0.0), (R, 0.0), (-R, 0.0), (0.0, 0.0)]),
            },
            _ => match (a, b) {
                (false, false) => vector(&[(R, 0.0), (0.0, 0.0), (Q, -Q), (Q, Q)]),
                (true, false) => vector(&[(0.0, 0.0), (R, 0.0), (Q, Q), (Q, -Q)]),
                (false, true) => vector(&[(R, 0.0), (0.0, 0.0), (-Q, Q), (-Q, -Q)]),
                (true, true) => vector(&[(0.0, 0.0), (R, 0.0), (-Q, -Q), (-Q, Q)]),
            },
        }
    }

    /// Reference γ states in terms of the printed `u`, `v` values.
    pub fn gamma(label: StateLabel) -> StateVector {
        let u = (0.8536, 0.3536);
        let v = (0.1464, -0.3536);
        let raw = match (label.a, label.b) {
            (false, false) => [u, (0.0, 0.0), (0.0, 0.0), v],
            (true, false) => [v, (0.0, 0.0), (0.0, 0.0), u],
            (false, true) => [(0.0, 0.0), u, v, (0.0, 0.0)],
            (true, true) => [(0.0, 0.0), v, u, (0.0, 0.0)],
        };
        // The printed entries are rounded to four decimals; rescale onto the
        // unit sphere so the fixture is a valid state.
        let amps: Vec<Complex64> = raw.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        StateVector::new(2, amps.into_iter().map(|z| z / norm).collect())
            .expect("normalized fixture")
    }

    fn matrix(rows: [[(f64, f64); 4]; 4]) -> ComplexMatrix {
        ComplexMatrix::from_fn(4, 4, |i, j| Complex64::new(rows[i][j].0, rows[i][j].1))
    }

    const O: (f64, f64) = (0.0, 0.0);

    /// `|β00⟩⟨β00|`: ones in the four corners, halved.
    pub fn density_bell_00() -> ComplexMatrix {
        matrix([
            [(0.5, 0.0), O, O, (0.5, 0.0)],
            [O, O, O, O],
            [O, O, O, O],
            [(0.5, 0.0), O, O, (0.5, 0.0)],
        ])
    }

    /// `|β01⟩⟨β01|`: central 2x2 block, halved.
    pub fn density_bell_01() -> ComplexMatrix {
        matrix([
            [O, O, O, O],
            [O, (0.5, 0.0), (0.5, 0.0), O],
            [O, (0.5, 0.0), (0.5, 0.0), O],
            [O, O, O, O],
        ])
    }

    /// `|γ00⟩⟨γ00|` with the printed four-decimal entries.
    pub fn density_gamma_00() -> ComplexMatrix {
        matrix([
            [(0.8536, 0.0), O, O, (0.0, 0.3536)],
            [O, O, O, O],
            [O, O, O, O],
            [(0.0, -0.3536), O, O, (0.1464, 0.0)],
        ])
    }

    /// `|γ01⟩⟨γ01|` with the printed four-decimal entries.
    pub fn density_gamma_01() -> ComplexMatrix {
        matrix([
            [O, O, O, O],
            [O, (0.8536, 0.0), (0.0, 0.3536), O],
            [O, (0.0, -0.3536), (0.1464, 0.0), O],
            [O, O, O, O],
        ])
    }

    /// Density matrix of the degree-1 state with label 00.
    pub fn density_rough_00() -> ComplexMatrix {
        matrix([
            [(0.5, 0.0), O, (0.25, -0.25), (0.25, 0.25)],
            [O, O, O, O],
            [(0.25, 0.25), O, (0.25, 0.0), (0.0, 0.25)],
            [(0.25, -0.25), O, (0.0, -0.25), (0.25, 0.0)],
        ])
    }

    /// Density matrix of the degree-1 state with label 01.
    pub fn density_rough_01() -> ComplexMatrix {
        matrix([
            [(0.5, 0.0), O, (-0.25, 0.25), (-0.25, -0.25)],
            [O, O, O, O],
            [(-0.25, -0.25), O, (0.25, 0.0), (0.0, 0.25)],
            [(-0.25, 0.25), O, (0.0, -0.25), (0.25, 0.0)],
        ])
    }

    /// Density matrix of the degree-1 state with label 10.
    pub fn density_rough_10() -> ComplexMatrix {
        matrix([
            [O, O, O, O],
            [O, (0.5, 0.0), (0.25, 0.25), (0.25, -0.25)],
            [O, (0.25, -0.25), (0.25, 0.0), (0.0, -0.25)],
            [O, (0.25, 0.25), (0.0, 0.25), (0.25, 0.0)],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{apply_gate, run_analytic};
    use crate::numerics::TOL_PRINTED;

    #[test]
    fn two_qubit_fourier_states_match_reference_tables() {
        for degree in 0..=3u32 {
            for label in StateLabel::all() {
                let built = fourier_state_2q(degree, label).unwrap();
                let reference = fixtures::fourier_2q(degree, label);
                let diff = built.max_diff(&reference).unwrap();
                assert!(
                    diff < 1e-12,
                    "degree {degree} label {label}: constructor differs from table by {diff}"
                );
            }
        }
    }

    #[test]
    fn degree_two_states_are_the_bell_states() {
        for label in StateLabel::all() {
            let built = fourier_state_2q(2, label).unwrap();
            assert!(built.max_diff(&bell(label)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn degree_three_is_conjugate_of_degree_one() {
        for label in StateLabel::all() {
            let d1 = fourier_state_2q(1, label).unwrap();
            let d3 = fourier_state_2q(3, label).unwrap();
            for (x, y) in d1.amps().iter().zip(d3.amps()) {
                assert!((x.conj() - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn state_degree_congruence_modulo_four() {
        for d in 0..=3u32 {
            for k in 1..=2u32 {
                let base = fourier_state(3, d).unwrap();
                let shifted = fourier_state(3, d + 4 * k).unwrap();
                assert!(base.max_diff(&shifted).unwrap() < 1e-15);
            }
        }
    }

    #[test]
    fn gamma_states_match_reference_table() {
        for label in StateLabel::all() {
            let built = gamma(label);
            let reference = fixtures::gamma(label);
            assert!(built.max_diff(&reference).unwrap() < TOL_PRINTED);
        }
    }

    #[test]
    fn ghz_matches_fourier_construction() {
        for n in 2..=4 {
            let closed = ghz(n).unwrap();
            let fourier = fourier_state(n, 2).unwrap();
            assert!(closed.max_diff(&fourier).unwrap() < 1e-9);
        }
        assert!(matches!(ghz(1), Err(Error::TooFewQubits { .. })));
    }

    #[test]
    fn ghz_two_is_bell_00() {
        let g = ghz(2).unwrap();
        assert!(g.max_diff(&bell(StateLabel::new(false, false))).unwrap() < 1e-12);
    }

    #[test]
    fn fourier_state_degree_zero_is_plus_on_first_qubit() {
        let s = fourier_state(2, 0).unwrap();
        let expected = fixtures::fourier_2q(0, StateLabel::new(false, false));
        assert!(s.max_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn density_matrices_match_reference_values() {
        let checks: Vec<(DensityMatrix, ComplexMatrix)> = vec![
            (
                density(&bell(StateLabel::new(false, false))).unwrap(),
                fixtures::density_bell_00(),
            ),
            (
                density(&bell(StateLabel::new(false, true))).unwrap(),
                fixtures::density_bell_01(),
            ),
            (
                density(&gamma(StateLabel::new(false, false))).unwrap(),
                fixtures::density_gamma_00(),
            ),
            (
                density(&gamma(StateLabel::new(false, true))).unwrap(),
                fixtures::density_gamma_01(),
            ),
            (
                density(&fourier_state_2q(1, StateLabel::new(false, false)).unwrap()).unwrap(),
                fixtures::density_rough_00(),
            ),
            (
                density(&fourier_state_2q(1, StateLabel::new(false, true)).unwrap()).unwrap(),
                fixtures::density_rough_01(),
            ),
            (
                density(&fourier_state_2q(1, StateLabel::new(true, false)).unwrap()).unwrap(),
                fixtures::density_rough_10(),
            ),
        ];
        for (built, reference) in checks {
            assert!(built.max_diff(&reference).unwrap() < TOL_PRINTED);
        }
    }

    #[test]
    fn tile_patterns_of_the_sixteen_reference_states() {
        for label in StateLabel::all() {
            let expected_pair = if label.b {
                TileClass::CenterEntangled
            } else {
                TileClass::CornerEntangled
            };
            let expected_rough = if label.a {
                TileClass::RoughB
            } else {
                TileClass::RoughA
            };
            assert_eq!(
                classify(&density(&bell(label)).unwrap()).unwrap(),
                expected_pair
            );
            assert_eq!(
                classify(&density(&gamma(label)).unwrap()).unwrap(),
                expected_pair
            );
            for degree in [1, 3] {
                let rho = density(&fourier_state_2q(degree, label).unwrap()).unwrap();
                assert_eq!(classify(&rho).unwrap(), expected_rough);
            }
        }
    }

    #[test]
    fn maximal_and_non_maximal_share_tile_layouts() {
        for label in StateLabel::all() {
            let bell_tiles = tile_pattern(&density(&bell(label)).unwrap(), TILE_TOLERANCE).unwrap();
            let gamma_tiles =
                tile_pattern(&density(&gamma(label)).unwrap(), TILE_TOLERANCE).unwrap();
            assert_eq!(bell_tiles, gamma_tiles);
        }
    }

    #[test]
    fn product_state_density_is_classified_other() {
        let rho = density(&StateVector::basis(2, 0).unwrap()).unwrap();
        assert_eq!(classify(&rho).unwrap(), TileClass::Other);
    }

    #[test]
    fn tile_pattern_rejects_wrong_dimension() {
        let rho = density(&StateVector::basis(1, 0).unwrap()).unwrap();
        assert!(matches!(
            tile_pattern(&rho, TILE_TOLERANCE),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn all_two_qubit_states_are_normalized() {
        for degree in 0..=3u32 {
            for label in StateLabel::all() {
                let s = fourier_state_2q(degree, label).unwrap();
                assert!((s.norm_sq() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ghz_chain_circuits_agree_with_closed_form() {
        for n in [3usize, 4] {
            let expected = ghz(n).unwrap();
            for circuit in [
                ghz_gate_chain(n).unwrap(),
                ghz_nested_cnot(n).unwrap(),
                ghz_qfg_circuit(n).unwrap(),
            ] {
                let branches = run_analytic(&circuit, &StateVector::zero(n).unwrap()).unwrap();
                assert_eq!(branches.len(), 1);
                assert!(branches[0].state.max_diff(&expected).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn nested_cnots_and_fourier_gate_disagree_off_the_all_zero_input() {
        // Three qubits: CNOT fan-out fixes |010⟩ while F_3^2 maps it to |011⟩.
        let f3 = gates::qfg(3, 2).unwrap();
        let from_qfg = StateVector::basis(3, 0b010)
            .unwrap()
            .apply_matrix(&f3)
            .unwrap();
        assert!((from_qfg.amp(0b011) - Complex64::ONE).norm() < 1e-9);

        let mut fan = Circuit::new(3, 0);
        fan.gate(gates::cnot(), &[0, 1]).unwrap();
        fan.gate(gates::cnot(), &[0, 2]).unwrap();
        let mut state = StateVector::basis(3, 0b010).unwrap();
        state = apply_gate(&state, &gates::cnot(), &[0, 1]).unwrap();
        state = apply_gate(&state, &gates::cnot(), &[0, 2]).unwrap();
        assert!((state.amp(0b010) - Complex64::ONE).norm() < 1e-12);

        // Four qubits: |0100⟩ stays fixed under the fan-out, maps to |0111⟩
        // under F_4^2.
        let f4 = gates::qfg(4, 2).unwrap();
        let from_qfg = StateVector::basis(4, 0b0100)
            .unwrap()
            .apply_matrix(&f4)
            .unwrap();
        assert!((from_qfg.amp(0b0111) - Complex64::ONE).norm() < 1e-9);
        let mut state = StateVector::basis(4, 0b0100).unwrap();
        for t in 1..4 {
            state = apply_gate(&state, &gates::cnot(), &[0, t]).unwrap();
        }
        assert!((state.amp(0b0100) - Complex64::ONE).norm() < 1e-12);
    }
}
