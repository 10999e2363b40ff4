//! Self-verification suite: every closed-form identity, reference vector,
//! density matrix, probability table, and application-level reduced-matrix
//! claim this crate reproduces, with its measured deviation and tolerance.
//! `qfsim verify` runs these; the acceptance test suite gates on them.

use crate::applications::{
    entanglement_swap, hyper_teleport, level, parallel_ghz, parallel_pairs, qss_sources,
    repeater_chain, stretch, LevelSpec, StretchSpec, SwapVariant,
};
use crate::circuit::{bits_to_index, run_pure};
use crate::error::Result;
use crate::gates;
use crate::numerics::{outer, partial_trace, ComplexMatrix, StateVector, TOL_EXACT, TOL_PRINTED};
use crate::states::{
    self, bell, classify, density, fixtures, fourier_state, fourier_state_2q, gamma, ghz,
    tile_pattern, StateLabel, TileClass, TILE_TOLERANCE,
};
use crate::teleport::{
    comparison_scenarios, outcome_error, teleport_analytic, teleport_joint_analytic,
    teleport_sampled, PairSource, PsiInput, RoughDegree, LIMA_REFERENCE,
};
use num_complex::Complex64;
use serde::Serialize;

/// Which part of the suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Gates,
    States,
    Teleport,
    Apps,
}

impl std::str::FromStr for Scope {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Scope::All),
            "gates" => Ok(Scope::Gates),
            "states" => Ok(Scope::States),
            "teleport" => Ok(Scope::Teleport),
            "apps" => Ok(Scope::Apps),
            other => Err(crate::error::Error::invalid(format!(
                "unknown scope `{other}`; expected all, gates, states, teleport, or apps"
            ))),
        }
    }
}

/// One verified claim: what was checked, how far off the computation was,
/// and the tolerance it had to meet.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub scope: String,
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(scope: &str, name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            scope: scope.to_string(),
            name: name.into(),
            deviation,
            tolerance,
            passed: deviation.is_finite() && deviation <= tolerance,
        }
    }
}

/// Sampling parameters for the statistical checks.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub shots: u64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        // 1e5 shots puts the 5-sigma binomial deviation bound under 0.01.
        Self {
            shots: 100_000,
            seed: 7,
        }
    }
}

/// Runs the requested scope and returns every check with its outcome.
pub fn run(scope: Scope, options: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if matches!(scope, Scope::All | Scope::Gates) {
        gate_checks(&mut checks)?;
    }
    if matches!(scope, Scope::All | Scope::States) {
        state_checks(&mut checks)?;
    }
    if matches!(scope, Scope::All | Scope::Teleport) {
        teleport_checks(&mut checks, options)?;
    }
    if matches!(scope, Scope::All | Scope::Apps) {
        application_checks(&mut checks, options)?;
    }
    Ok(checks)
}

fn diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.max_diff(b).unwrap_or(f64::INFINITY)
}

fn gate_checks(out: &mut Vec<Check>) -> Result<()> {
    const SCOPE: &str = "gates";

    out.push(Check::new(
        SCOPE,
        "qfg(2,2) equals CNOT",
        diff(&gates::qfg(2, 2)?, &gates::cnot()),
        TOL_EXACT,
    ));
    out.push(Check::new(
        SCOPE,
        "qfg(1,1) equals H",
        diff(&gates::qfg(1, 1)?, &gates::hadamard()),
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for p in 1..=4 {
        worst = worst.max(diff(&gates::qfg(p, 0)?, &ComplexMatrix::identity(1 << p)));
    }
    out.push(Check::new(
        SCOPE,
        "qfg(p,0) is the identity for p <= 4",
        worst,
        TOL_EXACT,
    ));

    let reversed_cnot = gates::swap()
        .matmul(&gates::cnot())?
        .matmul(&gates::swap())?;
    out.push(Check::new(
        SCOPE,
        "qft(2)^2 equals the reversed CNOT",
        diff(&gates::qft(2)?.pow(2)?, &reversed_cnot),
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for p in 1..=5 {
        worst = worst.max(diff(
            &gates::qft(p)?.pow(4)?,
            &ComplexMatrix::identity(1 << p),
        ));
    }
    out.push(Check::new(
        SCOPE,
        "qft(p)^4 is the identity for p <= 5",
        worst,
        TOL_EXACT,
    ));

    out.push(Check::new(
        SCOPE,
        "sbeq(2) equals SWAP",
        diff(&gates::sbeq(2)?, &gates::swap()),
        TOL_EXACT,
    ));
    out.push(Check::new(
        SCOPE,
        "sbeq(1) equals the identity",
        diff(&gates::sbeq(1)?, &ComplexMatrix::identity(2)),
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for p in 1..=4 {
        for d in 0..=8u32 {
            worst = worst.max(diff(&gates::qfg(p, d)?, &gates::qfg(p, d % 4)?));
        }
    }
    out.push(Check::new(
        SCOPE,
        "gate degree is modulo four (d <= 8, p <= 4)",
        worst,
        TOL_EXACT,
    ));

    // The sixteen Pauli decompositions over the rotation gates.
    let h = |q: u8| gates::hadamard_rotation(q);
    let iu = Complex64::new(0.0, 1.0);
    let one = Complex64::ONE;
    let i2 = ComplexMatrix::identity(2);
    let identities: Vec<(&str, ComplexMatrix, ComplexMatrix, Complex64)> = vec![
        ("I = H1 H1", h(1)?, h(1)?, one),
        ("I = H3 H3", h(3)?, h(3)?, one),
        ("I = H2 H4", h(2)?, h(4)?, one),
        ("I = H4 H2", h(4)?, h(2)?, one),
    ];
    let mut worst = 0.0f64;
    for (_, a, b, scale) in identities {
        worst = worst.max(diff(&a.matmul(&b)?.scale(scale), &i2));
    }
    let x_products = [(3u8, 2u8), (2, 1), (1, 4), (4, 3)];
    for (a, b) in x_products {
        worst = worst.max(diff(&h(a)?.matmul(&h(b)?)?, &gates::pauli_x()));
    }
    let y_products = [(3u8, 1u8, iu), (2, 2, iu), (4, 4, -iu), (1, 3, -iu)];
    for (a, b, scale) in y_products {
        worst = worst.max(diff(&h(a)?.matmul(&h(b)?)?.scale(scale), &gates::pauli_y()));
    }
    let z_products = [(2u8, 3u8, -one), (1, 2, one), (3, 4, -one), (4, 1, one)];
    for (a, b, scale) in z_products {
        worst = worst.max(diff(&h(a)?.matmul(&h(b)?)?.scale(scale), &gates::pauli_z()));
    }
    out.push(Check::new(
        SCOPE,
        "all sixteen Pauli products of the Hadamard rotation gates",
        worst,
        1e-12,
    ));

    out.push(Check::new(
        SCOPE,
        "fourth root of X to the fourth power equals X",
        diff(&gates::fourth_root_x().pow(4)?, &gates::pauli_x()),
        1e-12,
    ));
    out.push(Check::new(
        SCOPE,
        "fourth root of X equals H T H",
        diff(
            &gates::fourth_root_x(),
            &gates::hadamard()
                .matmul(&gates::phase_t())?
                .matmul(&gates::hadamard())?,
        ),
        1e-12,
    ));
    let printed = ComplexMatrix::from_rows(&[
        vec![(0.8536, 0.3536), (0.1464, -0.3536)],
        vec![(0.1464, -0.3536), (0.8536, 0.3536)],
    ]);
    out.push(Check::new(
        SCOPE,
        "fourth root of X matches its printed entries",
        diff(&gates::fourth_root_x(), &printed),
        TOL_PRINTED,
    ));

    // Boolean models against the matrix action, every basis state, p = 2..5.
    let mut worst = 0.0f64;
    for p in 2..=5usize {
        let f2 = gates::qfg(p, 2)?;
        let tof = gates::toffoli(p)?;
        for index in 0..(1usize << p) {
            let bits: Vec<bool> = crate::circuit::index_to_bits(index, p);
            let input = StateVector::basis(p, index)?;

            let expect = bits_to_index(&gates::cbs_logic_qfg2(p, &bits)?);
            let got = input.apply_matrix(&f2)?;
            worst = worst.max((got.amp(expect) - Complex64::ONE).norm());

            let expect = bits_to_index(&gates::cbs_logic_toffoli(p, &bits)?);
            let got = input.apply_matrix(&tof)?;
            worst = worst.max((got.amp(expect) - Complex64::ONE).norm());
        }
    }
    out.push(Check::new(
        SCOPE,
        "Boolean basis-state models match the matrix action (60 cases)",
        worst,
        TOL_EXACT,
    ));

    // The two counterexamples where nested CNOT fan-out and the degree-2
    // Fourier gate disagree.
    let f3_out = StateVector::basis(3, 0b010)?.apply_matrix(&gates::qfg(3, 2)?)?;
    let mut fan = StateVector::basis(3, 0b010)?;
    for t in 1..3 {
        fan = crate::circuit::apply_gate(&fan, &gates::cnot(), &[0, t])?;
    }
    let mut worst = (f3_out.amp(0b011) - Complex64::ONE).norm();
    worst = worst.max((fan.amp(0b010) - Complex64::ONE).norm());
    let f4_out = StateVector::basis(4, 0b0100)?.apply_matrix(&gates::qfg(4, 2)?)?;
    let mut fan = StateVector::basis(4, 0b0100)?;
    for t in 1..4 {
        fan = crate::circuit::apply_gate(&fan, &gates::cnot(), &[0, t])?;
    }
    worst = worst.max((f4_out.amp(0b0111) - Complex64::ONE).norm());
    worst = worst.max((fan.amp(0b0100) - Complex64::ONE).norm());
    out.push(Check::new(
        SCOPE,
        "fan-out CNOT chains fix the inputs the Fourier gate moves",
        worst,
        TOL_EXACT,
    ));

    // Unitarity across the whole constructor surface.
    let mut worst = 0.0f64;
    let mut gate_list: Vec<ComplexMatrix> = vec![
        gates::hadamard(),
        gates::pauli_x(),
        gates::pauli_y(),
        gates::pauli_z(),
        gates::phase_s(),
        gates::phase_t(),
        gates::swap(),
        gates::cnot(),
        gates::fourth_root_x(),
        gates::general_unitary(0.7, -1.1, 2.3),
    ];
    for q in 1..=4u8 {
        gate_list.push(gates::hadamard_rotation(q)?);
    }
    for p in 1..=5 {
        gate_list.push(gates::qft(p)?);
        gate_list.push(gates::sbeq(p)?);
        for d in 0..=3 {
            gate_list.push(gates::qfg(p, d)?);
        }
    }
    for p in 2..=5 {
        gate_list.push(gates::toffoli(p)?);
    }
    for g in gate_list {
        worst = worst.max(g.unitarity_error()?);
    }
    out.push(Check::new(
        SCOPE,
        "every constructed gate is unitary",
        worst,
        TOL_EXACT,
    ));

    Ok(())
}

fn state_checks(out: &mut Vec<Check>) -> Result<()> {
    const SCOPE: &str = "states";

    let mut worst = 0.0f64;
    for degree in 0..=3u32 {
        for label in StateLabel::all() {
            let built = fourier_state_2q(degree, label)?;
            worst = worst.max(built.max_diff(&fixtures::fourier_2q(degree, label))?);
        }
    }
    out.push(Check::new(
        SCOPE,
        "all sixteen two-qubit Fourier states match their tables",
        worst,
        1e-12,
    ));

    let mut worst = 0.0f64;
    for label in StateLabel::all() {
        worst = worst.max(gamma(label).max_diff(&fixtures::gamma(label))?);
    }
    out.push(Check::new(
        SCOPE,
        "gamma states match their printed table",
        worst,
        TOL_PRINTED,
    ));

    let mut worst = 0.0f64;
    for n in [3usize, 4] {
        let expected = ghz(n)?;
        worst = worst.max(fourier_state(n, 2)?.max_diff(&expected)?);
        let chain = run_pure(&states::ghz_gate_chain(n)?, &StateVector::zero(n)?)?;
        worst = worst.max(chain.max_diff(&expected)?);
        let fan = run_pure(&states::ghz_nested_cnot(n)?, &StateVector::zero(n)?)?;
        worst = worst.max(fan.max_diff(&expected)?);
    }
    out.push(Check::new(
        SCOPE,
        "GHZ on 3 and 4 qubits via the Fourier gate and the explicit chains",
        worst,
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for label in StateLabel::all() {
        let d1 = fourier_state_2q(1, label)?;
        let d3 = fourier_state_2q(3, label)?;
        for (x, y) in d1.amps().iter().zip(d3.amps()) {
            worst = worst.max((x.conj() - y).norm());
        }
    }
    out.push(Check::new(
        SCOPE,
        "degree-1 and degree-3 states are complex conjugates",
        worst,
        1e-12,
    ));

    let density_cases: Vec<(&str, StateVector, ComplexMatrix)> = vec![
        (
            "bell 00",
            bell(StateLabel::new(false, false)),
            fixtures::density_bell_00(),
        ),
        (
            "bell 01",
            bell(StateLabel::new(false, true)),
            fixtures::density_bell_01(),
        ),
        (
            "gamma 00",
            gamma(StateLabel::new(false, false)),
            fixtures::density_gamma_00(),
        ),
        (
            "gamma 01",
            gamma(StateLabel::new(false, true)),
            fixtures::density_gamma_01(),
        ),
        (
            "rough 00",
            fourier_state_2q(1, StateLabel::new(false, false))?,
            fixtures::density_rough_00(),
        ),
        (
            "rough 01",
            fourier_state_2q(1, StateLabel::new(false, true))?,
            fixtures::density_rough_01(),
        ),
        (
            "rough 10",
            fourier_state_2q(1, StateLabel::new(true, false))?,
            fixtures::density_rough_10(),
        ),
    ];
    let mut worst = 0.0f64;
    for (_, state, reference) in &density_cases {
        worst = worst.max(density(state)?.max_diff(reference)?);
    }
    out.push(Check::new(
        SCOPE,
        "seven worked density matrices match their printed values",
        worst,
        TOL_PRINTED,
    ));

    let mut misclassified = 0u32;
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
        if classify(&density(&bell(label))?)? != expected_pair {
            misclassified += 1;
        }
        if classify(&density(&gamma(label))?)? != expected_pair {
            misclassified += 1;
        }
        for degree in [1u32, 3] {
            if classify(&density(&fourier_state_2q(degree, label)?)?)? != expected_rough {
                misclassified += 1;
            }
        }
    }
    out.push(Check::new(
        SCOPE,
        "tile classification of all sixteen reference states",
        f64::from(misclassified),
        0.0,
    ));

    let mut mismatched = 0u32;
    for label in StateLabel::all() {
        let b = tile_pattern(&density(&bell(label))?, TILE_TOLERANCE)?;
        let g = tile_pattern(&density(&gamma(label))?, TILE_TOLERANCE)?;
        if b != g {
            mismatched += 1;
        }
    }
    out.push(Check::new(
        SCOPE,
        "maximal and non-maximal pairs occupy the same tiles",
        f64::from(mismatched),
        0.0,
    ));

    Ok(())
}

fn teleport_checks(out: &mut Vec<Check>, options: &VerifyOptions) -> Result<()> {
    const SCOPE: &str = "teleport";

    let mut worst = 0.0f64;
    for (psi, expect) in [(PsiInput::Zero, "0"), (PsiInput::One, "1")] {
        let report = teleport_analytic(&psi.state()?, &PairSource::maximal())?;
        worst = worst.max((report.bob_marginal.probability(expect) - 1.0).abs());
        for branch in &report.branch_table {
            worst = worst.max((branch.probability - 0.25).abs());
        }
    }
    out.push(Check::new(
        SCOPE,
        "maximal source teleports basis states with certainty",
        worst,
        TOL_EXACT,
    ));

    let report = teleport_analytic(&PsiInput::Zero.state()?, &PairSource::non_maximal())?;
    let mut worst = 0.0f64;
    for (bsm, expect) in [
        ("00", 0.4268),
        ("01", 0.0732),
        ("10", 0.4268),
        ("11", 0.0732),
    ] {
        let p: f64 = report
            .branch_table
            .iter()
            .filter(|b| b.bsm == bsm)
            .map(|b| b.probability)
            .sum();
        worst = worst.max((p - expect).abs());
    }
    out.push(Check::new(
        SCOPE,
        "non-maximal branch probabilities are 0.4268 / 0.0732",
        worst,
        1e-4,
    ));

    let mut worst = (report.bob_marginal.probability("0") - 1.0).abs();
    let report_one = teleport_analytic(&PsiInput::One.state()?, &PairSource::non_maximal())?;
    worst = worst.max((report_one.bob_marginal.probability("1") - 1.0).abs());
    out.push(Check::new(
        SCOPE,
        "non-maximal source still moves basis states with certainty",
        worst,
        TOL_EXACT,
    ));

    let report = teleport_analytic(
        &PsiInput::Zero.state()?,
        &PairSource::rough(RoughDegree::One),
    )?;
    let mut worst = (report.bob_marginal.probability("0") - 0.75).abs();
    worst = worst.max((report.bob_marginal.probability("1") - 0.25).abs());
    for (bsm, bit, expect) in [
        ("00", 0u8, 0.25),
        ("10", 0, 0.25),
        ("01", 0, 0.125),
        ("01", 1, 0.125),
        ("11", 0, 0.125),
        ("11", 1, 0.125),
    ] {
        worst = worst.max((report.joint_probability(bsm, bit) - expect).abs());
    }
    let report = teleport_analytic(
        &PsiInput::One.state()?,
        &PairSource::rough(RoughDegree::One),
    )?;
    worst = worst.max((report.bob_marginal.probability("1") - 0.75).abs());
    out.push(Check::new(
        SCOPE,
        "rough source gives the 75/25 split with 25/12.5 branch terms",
        worst,
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for psi in [PsiInput::Zero, PsiInput::One] {
        let s = psi.state()?;
        let one = teleport_analytic(&s, &PairSource::rough(RoughDegree::One))?;
        let three = teleport_analytic(&s, &PairSource::rough(RoughDegree::Three))?;
        for key in ["0", "1"] {
            worst = worst.max(
                (one.bob_marginal.probability(key) - three.bob_marginal.probability(key)).abs(),
            );
        }
    }
    out.push(Check::new(
        SCOPE,
        "rough degree 3 reproduces rough degree 1 on basis inputs",
        worst,
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for (_, source, psi) in comparison_scenarios() {
        let s = psi.state()?;
        let full = teleport_joint_analytic(&s, &source, false)?;
        let simplified = teleport_joint_analytic(&s, &source, true)?;
        let fm = full.marginal(|k| k[2..3].to_string());
        let sm = simplified.marginal(|k| k[2..3].to_string());
        for key in ["0", "1"] {
            worst = worst.max((fm.probability(key) - sm.probability(key)).abs());
        }
    }
    out.push(Check::new(
        SCOPE,
        "deferred-measurement variant agrees with the full protocol",
        worst,
        TOL_EXACT,
    ));

    // Sampled frequencies against analytic probabilities, both variants.
    let mut worst = 0.0f64;
    for (_, source, psi) in comparison_scenarios() {
        let s = psi.state()?;
        for simplified in [false, true] {
            let hist = teleport_sampled(&s, &source, options.shots, options.seed, simplified)?;
            let analytic = teleport_joint_analytic(&s, &source, simplified)?;
            for key in analytic.entries.keys() {
                worst = worst.max((hist.probability(key) - analytic.probability(key)).abs());
            }
        }
    }
    out.push(Check::new(
        SCOPE,
        "sampled frequencies converge to the analytic probabilities",
        worst,
        0.01,
    ));

    let s = PsiInput::Zero.state()?;
    let a = teleport_sampled(
        &s,
        &PairSource::rough(RoughDegree::One),
        4096,
        options.seed,
        false,
    )?;
    let b = teleport_sampled(
        &s,
        &PairSource::rough(RoughDegree::One),
        4096,
        options.seed,
        false,
    )?;
    out.push(Check::new(
        SCOPE,
        "histograms are bit-reproducible per seed",
        if a == b { 0.0 } else { 1.0 },
        0.0,
    ));

    let mut worst = (outcome_error(1.0, LIMA_REFERENCE[0].p_zero) - 0.0899).abs();
    worst = worst.max((outcome_error(1.0, LIMA_REFERENCE[2].p_zero) - 0.1192).abs());
    worst = worst.max((outcome_error(0.75, LIMA_REFERENCE[4].p_zero) - 0.0528).abs());
    out.push(Check::new(
        SCOPE,
        "outcome errors recomputed from the device reference rows",
        worst,
        1e-12,
    ));

    Ok(())
}

fn application_checks(out: &mut Vec<Check>, options: &VerifyOptions) -> Result<()> {
    const SCOPE: &str = "apps";

    let mut worst = 0.0f64;
    for k in 1..=5usize {
        let state = stretch(&StretchSpec::new(k, gates::hadamard())?)?;
        let expected = if k == 1 {
            StateVector::new(
                1,
                vec![
                    Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                    Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                ],
            )?
        } else {
            ghz(k)?
        };
        worst = worst.max(state.max_diff(&expected)?);
    }
    let (u, v) = gates::fourth_root_x_entries();
    for k in 1..=4usize {
        let state = stretch(&StretchSpec::new(k, gates::fourth_root_x())?)?;
        let dim = 1 << k;
        let mut amps = vec![Complex64::ZERO; dim];
        amps[0] = u;
        amps[dim - 1] = v;
        worst = worst.max(state.max_diff(&StateVector::new(k, amps)?)?);
    }
    out.push(Check::new(
        SCOPE,
        "stretching with H and fourth-root-of-X seeds",
        worst,
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for seed_gate in [gates::hadamard(), gates::fourth_root_x()] {
        for pos in 0..4usize {
            let state = level(&LevelSpec::new(4, pos, seed_gate.clone())?)?;
            let tail = stretch(&StretchSpec::new(4 - pos, seed_gate.clone())?)?;
            let expected = if pos == 0 {
                tail
            } else {
                StateVector::zero(pos)?.tensor(&tail)?
            };
            worst = worst.max(state.max_diff(&expected)?);
        }
    }
    out.push(Check::new(
        SCOPE,
        "entanglement levels equal zeros in front of a stretch",
        worst,
        TOL_EXACT,
    ));

    let (_, state) = parallel_pairs(4)?;
    let rho = outer(&state)?;
    let mut worst = 0.0f64;
    let bell_dm = fixtures::density_bell_00();
    for i in 0..4usize {
        worst = worst.max(partial_trace(&rho, &[i, 4 + i])?.max_diff(&bell_dm)?);
    }
    let quarter = ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0));
    for i in 0..4usize {
        for j in 0..4usize {
            if i != j {
                for pair in [[i, j], [4 + i, 4 + j], [i, 4 + j]] {
                    worst = worst.max(partial_trace(&rho, &pair)?.max_diff(&quarter)?);
                }
            }
        }
    }
    out.push(Check::new(
        SCOPE,
        "parallel pairs share a Bell state and nothing else",
        worst,
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for branch in [3usize, 4] {
        let fabric = parallel_ghz(branch)?;
        let rho = outer(&fabric.state)?;
        worst = worst.max(partial_trace(&rho, &[0, 1])?.max_diff(&quarter)?);
        let expected = outer(&ghz(branch)?)?;
        for group in [&fabric.upper, &fabric.lower] {
            worst = worst.max(partial_trace(&rho, group)?.max_diff(expected.matrix())?);
        }
    }
    out.push(Check::new(
        SCOPE,
        "parallel GHZ branches are pure with uncorrelated centers",
        worst,
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for variant in [SwapVariant::IndependentSources, SwapVariant::ParallelFabric] {
        let report = entanglement_swap(&PairSource::maximal(), variant)?;
        for branch in &report.branches {
            worst = worst.max((branch.bell_fidelity - 1.0).abs());
            worst = worst.max((branch.probability - 0.25).abs());
        }
    }
    out.push(Check::new(
        SCOPE,
        "entanglement swapping restores the Bell pair on every branch",
        worst,
        TOL_EXACT,
    ));

    let mut worst = 0.0f64;
    for hops in 1..=2usize {
        for (psi, expect) in [(PsiInput::Zero, "0"), (PsiInput::One, "1")] {
            let report = repeater_chain(
                &psi.state()?,
                hops,
                &PairSource::maximal(),
                64,
                options.seed,
            )?;
            worst = worst.max((report.analytic_marginal.probability(expect) - 1.0).abs());
        }
    }
    out.push(Check::new(
        SCOPE,
        "maximal repeater chains preserve basis states for two hops",
        worst,
        TOL_EXACT,
    ));

    let qss = qss_sources()?;
    out.push(Check::new(
        SCOPE,
        "secret-sharing triples are mutually independent",
        qss.max_cross_deviation.max(qss.max_single_deviation),
        TOL_EXACT,
    ));

    let psis = vec![PsiInput::Zero.state()?, PsiInput::One.state()?];
    let hyper = hyper_teleport(&psis, 64, options.seed)?;
    let mut worst = (hyper.analytic[0].probability("0") - 1.0).abs();
    worst = worst.max((hyper.analytic[1].probability("1") - 1.0).abs());
    out.push(Check::new(
        SCOPE,
        "simultaneous channels teleport independently",
        worst,
        TOL_EXACT,
    ));

    Ok(())
}

/// True iff every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
