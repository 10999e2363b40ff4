//! Gate constructors: the discrete Fourier transform on `2^p` dimensions, the
//! equidistant-qubit swap (SBEQ), the Fourier gate family `F_p^d`, the usual
//! fixed gates, the fourth root of X, the four Hadamard rotation gates, the
//! general single-qubit unitary, generalized Toffoli, and the Boolean models
//! of how `F_p^2` and Toffoli act on computational basis states.

use crate::error::{Error, Result};
use crate::numerics::{checked_dim, ComplexMatrix};
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Symbolic gate description; `matrix()` realizes it.
#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
    Swap,
    Cnot,
    Qft { qubits: usize },
    Sbeq { qubits: usize },
    Qfg { qubits: usize, degree: u32 },
    FourthRootX,
    HadamardRotation { quadrant: u8 },
    General { theta: f64, phi: f64, lambda: f64 },
    Toffoli { qubits: usize },
}

impl GateSpec {
    /// Number of qubits the gate acts on.
    pub fn num_qubits(&self) -> usize {
        match self {
            GateSpec::I
            | GateSpec::X
            | GateSpec::Y
            | GateSpec::Z
            | GateSpec::H
            | GateSpec::S
            | GateSpec::T
            | GateSpec::FourthRootX
            | GateSpec::HadamardRotation { .. }
            | GateSpec::General { .. } => 1,
            GateSpec::Swap | GateSpec::Cnot => 2,
            GateSpec::Qft { qubits }
            | GateSpec::Sbeq { qubits }
            | GateSpec::Qfg { qubits, .. }
            | GateSpec::Toffoli { qubits } => *qubits,
        }
    }

    /// Builds the unitary matrix for this gate.
    pub fn matrix(&self) -> Result<ComplexMatrix> {
        match *self {
            GateSpec::I => Ok(ComplexMatrix::identity(2)),
            GateSpec::X => Ok(pauli_x()),
            GateSpec::Y => Ok(pauli_y()),
            GateSpec::Z => Ok(pauli_z()),
            GateSpec::H => Ok(hadamard()),
            GateSpec::S => Ok(phase_s()),
            GateSpec::T => Ok(phase_t()),
            GateSpec::Swap => Ok(swap()),
            GateSpec::Cnot => Ok(cnot()),
            GateSpec::Qft { qubits } => qft(qubits),
            GateSpec::Sbeq { qubits } => sbeq(qubits),
            GateSpec::Qfg { qubits, degree } => qfg(qubits, degree),
            GateSpec::FourthRootX => Ok(fourth_root_x()),
            GateSpec::HadamardRotation { quadrant } => hadamard_rotation(quadrant),
            GateSpec::General { theta, phi, lambda } => Ok(general_unitary(theta, phi, lambda)),
            GateSpec::Toffoli { qubits } => toffoli(qubits),
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn hadamard() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[vec![(s, 0.0), (s, 0.0)], vec![(s, 0.0), (-s, 0.0)]])
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(1.0, 0.0), (0.0, 0.0)]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![(0.0, 0.0), (0.0, -1.0)], vec![(0.0, 1.0), (0.0, 0.0)]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (-1.0, 0.0)]])
}

/// S = √Z = diag(1, i).
pub fn phase_s() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (0.0, 1.0)]])
}

/// T = ⁴√Z = diag(1, e^{iπ/4}).
pub fn phase_t() -> ComplexMatrix {
    let e = Complex64::from_polar(1.0, PI / 4.0);
    ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => Complex64::ONE,
        (1, 1) => e,
        _ => Complex64::ZERO,
    })
}

pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
        vec![(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
    ])
}

/// CNOT with the first (most significant) qubit as control.
pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        vec![(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
        vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
    ])
}

/// Quantum Fourier transform on `p` qubits: entry `(j, k)` is `ω^{jk}/√N`
/// with `ω = exp(2πi/N)` and `N = 2^p`. No qubit-reversal swaps are folded
/// in; pair with [`sbeq`] when a platform-style ordering is wanted.
pub fn qft(p: usize) -> Result<ComplexMatrix> {
    if p == 0 {
        return Err(Error::TooFewQubits { needed: 1, got: 0 });
    }
    let n = checked_dim(p)?;
    let scale = 1.0 / (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, n, |j, k| {
        // Reduce the exponent mod N before taking the angle so powers of the
        // root of unity stay exact enough for identities like QFT^4 = I.
        let e = (j * k) % n;
        Complex64::from_polar(scale, 2.0 * PI * e as f64 / n as f64)
    }))
}

/// Swap-between-equidistant-qubits gate: full reversal of qubit order, i.e.
/// the bit-reversal permutation on basis indices. `sbeq(1) = I` and
/// `sbeq(2) = SWAP`.
pub fn sbeq(p: usize) -> Result<ComplexMatrix> {
    if p == 0 {
        return Err(Error::TooFewQubits { needed: 1, got: 0 });
    }
    let n = checked_dim(p)?;
    let mut m = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        m.set(reverse_bits(j, p), j, Complex64::ONE);
    }
    Ok(m)
}

/// Reverses the low `p` bits of `index`.
pub fn reverse_bits(index: usize, p: usize) -> usize {
    let mut out = 0usize;
    for bit in 0..p {
        out |= ((index >> bit) & 1) << (p - 1 - bit);
    }
    out
}

/// Fourier gate `F_p^d = SBEQ · QFT^{d mod 4} · SBEQ`. The degree is reduced
/// modulo 4 eagerly; four Fourier blocks cancel to the identity.
pub fn qfg(p: usize, degree: u32) -> Result<ComplexMatrix> {
    let s = sbeq(p)?;
    let f = qft(p)?.pow(degree % 4)?;
    s.matmul(&f)?.matmul(&s)
}

/// Fourth root of the X gate, built from the exact closed form `H·T·H`:
/// `[[u, v], [v, u]]` with `u = (1 + e^{iπ/4})/2` and `v = (1 − e^{iπ/4})/2`.
pub fn fourth_root_x() -> ComplexMatrix {
    let (u, v) = fourth_root_x_entries();
    ComplexMatrix::from_fn(2, 2, |i, j| if i == j { u } else { v })
}

/// The `(u, v)` entries of [`fourth_root_x`].
pub fn fourth_root_x_entries() -> (Complex64, Complex64) {
    let e = Complex64::from_polar(1.0, PI / 4.0);
    ((Complex64::ONE + e) / 2.0, (Complex64::ONE - e) / 2.0)
}

/// The four Hadamard rotation gates, one per quadrant:
/// `H_I = H`, `H_II`, `H_III`, `H_IV` differ only in sign placement.
pub fn hadamard_rotation(quadrant: u8) -> Result<ComplexMatrix> {
    let s = FRAC_1_SQRT_2;
    let rows = match quadrant {
        1 => [[(s, 0.0), (s, 0.0)], [(s, 0.0), (-s, 0.0)]],
        2 => [[(s, 0.0), (-s, 0.0)], [(s, 0.0), (s, 0.0)]],
        3 => [[(-s, 0.0), (s, 0.0)], [(s, 0.0), (s, 0.0)]],
        4 => [[(s, 0.0), (s, 0.0)], [(-s, 0.0), (s, 0.0)]],
        q => return Err(Error::InvalidQuadrant { quadrant: q }),
    };
    Ok(ComplexMatrix::from_rows(&[
        rows[0].to_vec(),
        rows[1].to_vec(),
    ]))
}

/// General single-qubit unitary
/// `U(θ, φ, λ) = [[cos(θ/2), −e^{iλ} sin(θ/2)], [e^{iφ} sin(θ/2), e^{i(λ+φ)} cos(θ/2)]]`.
pub fn general_unitary(theta: f64, phi: f64, lambda: f64) -> ComplexMatrix {
    let cos = c((theta / 2.0).cos(), 0.0);
    let sin = c((theta / 2.0).sin(), 0.0);
    ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => cos,
        (0, 1) => -Complex64::from_polar(1.0, lambda) * sin,
        (1, 0) => Complex64::from_polar(1.0, phi) * sin,
        _ => Complex64::from_polar(1.0, lambda + phi) * cos,
    })
}

/// Generalized Toffoli on `p ≥ 2` qubits: X on the last qubit controlled by
/// all the others, i.e. identity except the last two basis states swap.
pub fn toffoli(p: usize) -> Result<ComplexMatrix> {
    if p < 2 {
        return Err(Error::TooFewQubits { needed: 2, got: p });
    }
    let n = checked_dim(p)?;
    let mut m = ComplexMatrix::identity(n);
    m.set(n - 2, n - 2, Complex64::ZERO);
    m.set(n - 1, n - 1, Complex64::ZERO);
    m.set(n - 2, n - 1, Complex64::ONE);
    m.set(n - 1, n - 2, Complex64::ONE);
    Ok(m)
}

/// Boolean model of how `F_p^2` maps computational basis states:
/// `out[0] = in[0]` and `out[k] = in[k] XOR (in[0] OR … OR in[k−1])`.
pub fn cbs_logic_qfg2(p: usize, bits: &[bool]) -> Result<Vec<bool>> {
    if bits.len() != p {
        return Err(Error::BitLengthMismatch {
            expected: p,
            got: bits.len(),
        });
    }
    let mut seen_one = false;
    let mut out = Vec::with_capacity(p);
    for &b in bits {
        out.push(b ^ seen_one);
        seen_one |= b;
    }
    Ok(out)
}

/// Boolean model of the generalized Toffoli on computational basis states:
/// identity on the first `p − 1` bits, last bit XOR the AND of the rest.
pub fn cbs_logic_toffoli(p: usize, bits: &[bool]) -> Result<Vec<bool>> {
    if bits.len() != p {
        return Err(Error::BitLengthMismatch {
            expected: p,
            got: bits.len(),
        });
    }
    let mut out = bits.to_vec();
    let all_controls = bits[..p - 1].iter().all(|&b| b);
    out[p - 1] ^= all_controls;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::StateVector;

    fn assert_close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) {
        let d = a.max_diff(b).unwrap();
        assert!(d <= tol, "matrices differ by {d}");
    }

    #[test]
    fn qft_on_one_qubit_is_hadamard() {
        assert_close(&qft(1).unwrap(), &hadamard(), 1e-15);
    }

    #[test]
    fn qft_on_two_qubits_matches_closed_form() {
        let expected = ComplexMatrix::from_rows(&[
            vec![(0.5, 0.0), (0.5, 0.0), (0.5, 0.0), (0.5, 0.0)],
            vec![(0.5, 0.0), (0.0, 0.5), (-0.5, 0.0), (0.0, -0.5)],
            vec![(0.5, 0.0), (-0.5, 0.0), (0.5, 0.0), (-0.5, 0.0)],
            vec![(0.5, 0.0), (0.0, -0.5), (-0.5, 0.0), (0.0, 0.5)],
        ]);
        assert_close(&qft(2).unwrap(), &expected, 1e-12);
    }

    #[test]
    fn qft_squared_is_reversed_cnot() {
        let sq = qft(2).unwrap().pow(2).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            vec![(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)],
            vec![(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)],
        ]);
        assert_close(&sq, &expected, 1e-12);
        let conjugated = swap().matmul(&cnot()).unwrap().matmul(&swap()).unwrap();
        assert_close(&sq, &conjugated, 1e-12);
    }

    #[test]
    fn qft_fourth_power_is_identity_up_to_five_qubits() {
        for p in 1..=5 {
            let m = qft(p).unwrap().pow(4).unwrap();
            let n = 1 << p;
            assert_close(&m, &ComplexMatrix::identity(n), 1e-9);
        }
    }

    #[test]
    fn sbeq_small_cases() {
        assert_close(&sbeq(1).unwrap(), &ComplexMatrix::identity(2), 0.0);
        assert_close(&sbeq(2).unwrap(), &swap(), 0.0);
    }

    #[test]
    fn sbeq_three_qubits_fixes_palindromes_and_swaps_the_rest() {
        // Enumerate bit reversal over all 8 basis states.
        let m = sbeq(3).unwrap();
        let expect: Vec<usize> = (0..8).map(|j| reverse_bits(j, 3)).collect();
        assert_eq!(expect, vec![0, 4, 2, 6, 1, 5, 3, 7]);
        for (j, &target) in expect.iter().enumerate() {
            let v = StateVector::basis(3, j).unwrap().apply_matrix(&m).unwrap();
            assert!((v.amp(target) - Complex64::ONE).norm() < 1e-15);
        }
    }

    #[test]
    fn sbeq_is_an_involution() {
        for p in 1..=4 {
            let s = sbeq(p).unwrap();
            let sq = s.matmul(&s).unwrap();
            assert_close(&sq, &ComplexMatrix::identity(1 << p), 0.0);
        }
    }

    #[test]
    fn qfg_degree_zero_is_identity() {
        for p in 1..=4 {
            assert_close(&qfg(p, 0).unwrap(), &ComplexMatrix::identity(1 << p), 1e-12);
        }
    }

    #[test]
    fn qfg_two_two_is_cnot() {
        assert_close(&qfg(2, 2).unwrap(), &cnot(), 1e-12);
    }

    #[test]
    fn qfg_one_one_is_hadamard() {
        assert_close(&qfg(1, 1).unwrap(), &hadamard(), 1e-12);
    }

    #[test]
    fn qfg_degree_is_modulo_four() {
        for p in 1..=4 {
            for d in 0..=8u32 {
                let a = qfg(p, d).unwrap();
                let b = qfg(p, d % 4).unwrap();
                assert_close(&a, &b, 0.0);
            }
        }
    }

    #[test]
    fn qfg_degrees_one_and_three_are_conjugates() {
        for p in 1..=4 {
            let d1 = qfg(p, 1).unwrap();
            let d3 = qfg(p, 3).unwrap();
            assert_close(&d1.conjugate(), &d3, 1e-12);
        }
    }

    #[test]
    fn constructed_gates_are_unitary() {
        let gates: Vec<ComplexMatrix> = vec![
            hadamard(),
            pauli_x(),
            pauli_y(),
            pauli_z(),
            phase_s(),
            phase_t(),
            swap(),
            cnot(),
            fourth_root_x(),
            qft(3).unwrap(),
            sbeq(3).unwrap(),
            qfg(3, 1).unwrap(),
            qfg(4, 3).unwrap(),
            toffoli(3).unwrap(),
            hadamard_rotation(2).unwrap(),
            general_unitary(0.4, 1.3, -0.7),
        ];
        for g in gates {
            assert!(g.is_unitary(1e-9));
        }
    }

    #[test]
    fn standard_gate_identities() {
        let s2 = phase_s().pow(2).unwrap();
        assert_close(&s2, &pauli_z(), 1e-12);
        let t2 = phase_t().pow(2).unwrap();
        assert_close(&t2, &phase_s(), 1e-12);
        let cc = cnot().matmul(&cnot()).unwrap();
        assert_close(&cc, &ComplexMatrix::identity(4), 1e-12);
        let x_on_zero = StateVector::basis(1, 0)
            .unwrap()
            .apply_matrix(&pauli_x())
            .unwrap();
        assert!((x_on_zero.amp(1) - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn fourth_root_x_matches_printed_entries() {
        let m = fourth_root_x();
        assert!((m.get(0, 0) - c(0.8536, 0.3536)).norm() < 5e-4);
        assert!((m.get(0, 1) - c(0.1464, -0.3536)).norm() < 5e-4);
        assert!((m.get(1, 0) - c(0.1464, -0.3536)).norm() < 5e-4);
        assert!((m.get(1, 1) - c(0.8536, 0.3536)).norm() < 5e-4);
    }

    #[test]
    fn fourth_root_x_fourth_power_is_x() {
        let m4 = fourth_root_x().pow(4).unwrap();
        assert_close(&m4, &pauli_x(), 1e-12);
    }

    #[test]
    fn fourth_root_x_is_h_t_h() {
        let hth = hadamard()
            .matmul(&phase_t())
            .unwrap()
            .matmul(&hadamard())
            .unwrap();
        assert_close(&fourth_root_x(), &hth, 1e-12);
    }

    #[test]
    fn fourth_root_x_entries_are_normalized() {
        let (u, v) = fourth_root_x_entries();
        assert!((u.norm_sqr() + v.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hadamard_rotation_quadrant_one_is_h() {
        assert_close(&hadamard_rotation(1).unwrap(), &hadamard(), 0.0);
        assert!(matches!(
            hadamard_rotation(5),
            Err(Error::InvalidQuadrant { .. })
        ));
    }

    #[test]
    fn pauli_identities_from_hadamard_rotations() {
        let h = |q| hadamard_rotation(q).unwrap();
        let prod = |a: &ComplexMatrix, b: &ComplexMatrix| a.matmul(b).unwrap();
        let i2 = ComplexMatrix::identity(2);
        let iu = c(0.0, 1.0);

        // Identity decompositions.
        assert_close(&prod(&h(1), &h(1)), &i2, 1e-12);
        assert_close(&prod(&h(3), &h(3)), &i2, 1e-12);
        assert_close(&prod(&h(2), &h(4)), &i2, 1e-12);
        assert_close(&prod(&h(4), &h(2)), &i2, 1e-12);
        // X decompositions.
        assert_close(&prod(&h(3), &h(2)), &pauli_x(), 1e-12);
        assert_close(&prod(&h(2), &h(1)), &pauli_x(), 1e-12);
        assert_close(&prod(&h(1), &h(4)), &pauli_x(), 1e-12);
        assert_close(&prod(&h(4), &h(3)), &pauli_x(), 1e-12);
        // Y decompositions.
        assert_close(&prod(&h(3), &h(1)).scale(iu), &pauli_y(), 1e-12);
        assert_close(&prod(&h(2), &h(2)).scale(iu), &pauli_y(), 1e-12);
        assert_close(&prod(&h(4), &h(4)).scale(-iu), &pauli_y(), 1e-12);
        assert_close(&prod(&h(1), &h(3)).scale(-iu), &pauli_y(), 1e-12);
        // Z decompositions.
        assert_close(
            &prod(&h(2), &h(3)).scale(-Complex64::ONE),
            &pauli_z(),
            1e-12,
        );
        assert_close(&prod(&h(1), &h(2)), &pauli_z(), 1e-12);
        assert_close(
            &prod(&h(3), &h(4)).scale(-Complex64::ONE),
            &pauli_z(),
            1e-12,
        );
        assert_close(&prod(&h(4), &h(1)), &pauli_z(), 1e-12);
    }

    #[test]
    fn general_unitary_parameterizes_the_rotations() {
        assert_close(&general_unitary(PI / 2.0, 0.0, PI), &hadamard(), 1e-12);
        assert_close(
            &general_unitary(0.0, 0.0, 0.0),
            &ComplexMatrix::identity(2),
            1e-12,
        );
        assert_close(
            &general_unitary(5.0 * PI / 2.0, PI, 0.0),
            &hadamard_rotation(3).unwrap(),
            1e-12,
        );
        assert_close(
            &general_unitary(PI / 2.0, 0.0, 0.0),
            &hadamard_rotation(2).unwrap(),
            1e-12,
        );
        assert_close(
            &general_unitary(PI / 2.0, PI, PI),
            &hadamard_rotation(4).unwrap(),
            1e-12,
        );
    }

    #[test]
    fn toffoli_small_cases() {
        assert_close(&toffoli(2).unwrap(), &cnot(), 0.0);
        assert!(matches!(toffoli(1), Err(Error::TooFewQubits { .. })));

        let t3 = toffoli(3).unwrap();
        let on_110 = StateVector::basis(3, 0b110)
            .unwrap()
            .apply_matrix(&t3)
            .unwrap();
        assert!((on_110.amp(0b111) - Complex64::ONE).norm() < 1e-15);
        let on_010 = StateVector::basis(3, 0b010)
            .unwrap()
            .apply_matrix(&t3)
            .unwrap();
        assert!((on_010.amp(0b010) - Complex64::ONE).norm() < 1e-15);
    }

    #[test]
    fn cbs_logic_examples() {
        let to_bits = |s: &str| -> Vec<bool> { s.chars().map(|ch| ch == '1').collect() };
        assert_eq!(cbs_logic_qfg2(3, &to_bits("010")).unwrap(), to_bits("011"));
        assert_eq!(
            cbs_logic_qfg2(4, &to_bits("0100")).unwrap(),
            to_bits("0111")
        );
        assert_eq!(
            cbs_logic_qfg2(4, &to_bits("0000")).unwrap(),
            to_bits("0000")
        );
        assert_eq!(
            cbs_logic_toffoli(3, &to_bits("110")).unwrap(),
            to_bits("111")
        );
        assert_eq!(
            cbs_logic_toffoli(3, &to_bits("010")).unwrap(),
            to_bits("010")
        );
        assert_eq!(
            cbs_logic_toffoli(4, &to_bits("1111")).unwrap(),
            to_bits("1110")
        );
        assert!(matches!(
            cbs_logic_qfg2(3, &to_bits("01")),
            Err(Error::BitLengthMismatch { .. })
        ));
    }

    #[test]
    fn boolean_models_match_matrix_action_on_every_basis_state() {
        for p in 2..=5usize {
            let f2 = qfg(p, 2).unwrap();
            let tof = toffoli(p).unwrap();
            for index in 0..(1usize << p) {
                let bits: Vec<bool> = (0..p).map(|q| (index >> (p - 1 - q)) & 1 == 1).collect();

                let expect_f2 = cbs_logic_qfg2(p, &bits).unwrap();
                let out = StateVector::basis(p, index)
                    .unwrap()
                    .apply_matrix(&f2)
                    .unwrap();
                let out_index = crate::circuit::bits_to_index(&expect_f2);
                assert!(
                    (out.amp(out_index) - Complex64::ONE).norm() < 1e-9,
                    "qfg({p},2) disagrees with the Boolean model on {index:0p$b}"
                );

                let expect_t = cbs_logic_toffoli(p, &bits).unwrap();
                let out = StateVector::basis(p, index)
                    .unwrap()
                    .apply_matrix(&tof)
                    .unwrap();
                let out_index = crate::circuit::bits_to_index(&expect_t);
                assert!((out.amp(out_index) - Complex64::ONE).norm() < 1e-12);
            }
        }
    }
}
