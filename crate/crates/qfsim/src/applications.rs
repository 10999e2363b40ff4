//! Constructions built on the Fourier gate family: quantum stretching,
//! entanglement levels, parallel entanglement fabrics with independence
//! checks, multi-channel teleportation, secret-sharing source pairs, and
//! both repeater styles (entanglement swapping and teleportation cascade).

use crate::circuit::{run_analytic, run_pure, run_sampled, Circuit, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::gates;
use crate::numerics::{checked_dim, outer, partial_trace, ComplexMatrix, StateVector, MAX_QUBITS};
use crate::teleport::{pair_state, PairSource};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Stretching index plus the single-qubit gate that seeds the chain.
#[derive(Debug, Clone)]
pub struct StretchSpec {
    pub k: usize,
    pub seed_gate: ComplexMatrix,
}

impl StretchSpec {
    pub fn new(k: usize, seed_gate: ComplexMatrix) -> Result<Self> {
        if k == 0 {
            return Err(Error::TooFewQubits { needed: 1, got: 0 });
        }
        checked_dim(k)?;
        check_seed(&seed_gate)?;
        Ok(Self { k, seed_gate })
    }
}

fn check_seed(gate: &ComplexMatrix) -> Result<()> {
    if gate.rows() != 2 || gate.cols() != 2 {
        return Err(Error::GateDimension {
            dim: gate.rows(),
            targets: 1,
        });
    }
    let dev = gate.unitarity_error()?;
    if dev > 1e-9 {
        return Err(Error::invalid(format!(
            "seed gate is not unitary (deviation {dev})"
        )));
    }
    Ok(())
}

/// `F_k^2 (seed ⊗ I) |0…0⟩`: the seed's `|0⟩` column stretched across `k`
/// qubits, leaving its two amplitudes at the outermost basis states.
pub fn stretch(spec: &StretchSpec) -> Result<StateVector> {
    let prep = spec
        .seed_gate
        .kron(&ComplexMatrix::identity(1 << (spec.k - 1)));
    StateVector::zero(spec.k)?
        .apply_matrix(&prep)?
        .apply_matrix(&gates::qfg(spec.k, 2)?)
}

/// Total width, seed-gate position, and seed gate for the levels construction.
#[derive(Debug, Clone)]
pub struct LevelSpec {
    pub p: usize,
    pub position: usize,
    pub seed_gate: ComplexMatrix,
}

impl LevelSpec {
    pub fn new(p: usize, position: usize, seed_gate: ComplexMatrix) -> Result<Self> {
        if p == 0 {
            return Err(Error::TooFewQubits { needed: 1, got: 0 });
        }
        checked_dim(p)?;
        if position >= p {
            return Err(Error::QubitOutOfRange {
                qubit: position,
                num_qubits: p,
            });
        }
        check_seed(&seed_gate)?;
        Ok(Self {
            p,
            position,
            seed_gate,
        })
    }
}

/// `F_p^2 (I ⊗ seed ⊗ I) |0…0⟩` with the seed at the given qubit: the
/// entangled block shrinks to the trailing `p − position` qubits, leaving
/// `|0⟩`s in front.
pub fn level(spec: &LevelSpec) -> Result<StateVector> {
    let mut prep = ComplexMatrix::identity(1 << spec.position).kron(&spec.seed_gate);
    let trailing = spec.p - 1 - spec.position;
    if trailing > 0 {
        prep = prep.kron(&ComplexMatrix::identity(1 << trailing));
    }
    StateVector::zero(spec.p)?
        .apply_matrix(&prep)?
        .apply_matrix(&gates::qfg(spec.p, 2)?)
}

/// Parallel-pair fabric: `F_n^1` across `n` control qubits, each control
/// feeding a CNOT onto its own fresh target. Controls are qubits `0..n`,
/// targets `n..2n`; pair `i` is `(i, n + i)`.
pub fn parallel_pairs(n: usize) -> Result<(Circuit, StateVector)> {
    if n == 0 {
        return Err(Error::TooFewQubits { needed: 1, got: 0 });
    }
    if 2 * n > MAX_QUBITS as usize {
        return Err(Error::DimensionCap {
            qubits: 2 * n,
            max: MAX_QUBITS,
        });
    }
    let mut circuit = Circuit::new(2 * n, 0);
    let controls: Vec<usize> = (0..n).collect();
    circuit.gate(gates::qfg(n, 1)?, &controls)?;
    for i in 0..n {
        circuit.gate(gates::cnot(), &[i, n + i])?;
    }
    let state = run_pure(&circuit, &StateVector::zero(2 * n)?)?;
    Ok((circuit, state))
}

/// Two parallel GHZ sources grown out of one `F_2^1` gate: each of the two
/// central qubits fans CNOTs onto `branch − 1` fresh targets.
#[derive(Debug, Clone)]
pub struct GhzFabric {
    pub circuit: Circuit,
    pub state: StateVector,
    /// Qubits of the upper GHZ group (first central qubit plus its targets).
    pub upper: Vec<usize>,
    /// Qubits of the lower GHZ group.
    pub lower: Vec<usize>,
}

/// Builds the two-branch GHZ fabric for `branch ∈ {3, 4}` particles per side.
pub fn parallel_ghz(branch: usize) -> Result<GhzFabric> {
    if !(3..=4).contains(&branch) {
        return Err(Error::invalid(format!(
            "branch size must be 3 or 4, got {branch}"
        )));
    }
    let total = 2 * branch;
    let mut circuit = Circuit::new(total, 0);
    circuit.gate(gates::qfg(2, 1)?, &[0, 1])?;
    let mut upper = vec![0usize];
    let mut lower = vec![1usize];
    for t in 2..=branch {
        circuit.gate(gates::cnot(), &[0, t])?;
        upper.push(t);
    }
    for t in (branch + 1)..total {
        circuit.gate(gates::cnot(), &[1, t])?;
        lower.push(t);
    }
    let state = run_pure(&circuit, &StateVector::zero(total)?)?;
    Ok(GhzFabric {
        circuit,
        state,
        upper,
        lower,
    })
}

/// Marginal probabilities of reading 0 and 1 on one qubit of a pure state.
fn qubit_marginal(state: &StateVector, qubit: usize) -> [f64; 2] {
    let p = state.num_qubits();
    let shift = p - 1 - qubit;
    let mut out = [0.0; 2];
    for (i, a) in state.amps().iter().enumerate() {
        out[(i >> shift) & 1] += a.norm_sqr();
    }
    out
}

/// `⟨target| ρ_q |target⟩` for one qubit of a larger pure state, computed
/// without materializing the full density matrix.
fn single_qubit_fidelity(state: &StateVector, qubit: usize, target: &StateVector) -> f64 {
    let p = state.num_qubits();
    let shift = p - 1 - qubit;
    let mask = 1usize << shift;
    let mut rho = [[Complex64::ZERO; 2]; 2];
    for (i, &a) in state.amps().iter().enumerate() {
        if i & mask != 0 {
            continue;
        }
        let b = state.amp(i | mask);
        rho[0][0] += a * a.conj();
        rho[0][1] += a * b.conj();
        rho[1][1] += b * b.conj();
    }
    rho[1][0] = rho[0][1].conj();
    let mut fidelity = Complex64::ZERO;
    for r in 0..2 {
        for c in 0..2 {
            fidelity += target.amp(r).conj() * rho[r][c] * target.amp(c);
        }
    }
    fidelity.re
}

/// Pure sub-state on `keep` (in listed order) of a state whose remaining
/// qubits are collapsed to the `fixed` bit values.
fn collapsed_substate(
    state: &StateVector,
    keep: &[usize],
    fixed: &[(usize, u8)],
) -> Result<StateVector> {
    let p = state.num_qubits();
    let k = keep.len();
    let mut amps = vec![Complex64::ZERO; 1 << k];
    for (local, amp) in amps.iter_mut().enumerate() {
        let mut index = 0usize;
        for (pos, &q) in keep.iter().enumerate() {
            index |= ((local >> (k - 1 - pos)) & 1) << (p - 1 - q);
        }
        for &(q, bit) in fixed {
            index |= (bit as usize) << (p - 1 - q);
        }
        *amp = state.amp(index);
    }
    StateVector::new(k, amps)
}

/// Per-channel outcome of a multi-channel teleportation run.
#[derive(Debug, Clone)]
pub struct HyperTeleportReport {
    pub channels: usize,
    /// Analytic receiver marginal per channel, over {"0", "1"}.
    pub analytic: Vec<OutcomeDistribution>,
    /// Sampled receiver marginal per channel.
    pub sampled: Vec<OutcomeDistribution>,
    /// Branch-averaged fidelity of each corrected output to its input;
    /// 1 for every channel over the Bell fabric.
    pub channel_fidelities: Vec<f64>,
}

/// Teleports `n` independent states at once over the parallel-pair fabric.
/// Channel `i` uses message qubit `i` and pair `(n + i, 2n + i)`; all `n`
/// protocols run in one circuit with no cross-channel wiring.
pub fn hyper_teleport(psis: &[StateVector], shots: u64, seed: u64) -> Result<HyperTeleportReport> {
    let n = psis.len();
    if n == 0 {
        return Err(Error::TooFewQubits { needed: 1, got: 0 });
    }
    if 3 * n > MAX_QUBITS as usize {
        return Err(Error::DimensionCap {
            qubits: 3 * n,
            max: MAX_QUBITS,
        });
    }
    for psi in psis {
        if psi.num_qubits() != 1 {
            return Err(Error::shape(
                format!("{} qubits", psi.num_qubits()),
                "1 qubit",
                "hyper-teleport input",
            ));
        }
    }

    // Message qubits 0..n, pair controls n..2n, pair targets 2n..3n.
    let total = 3 * n;
    let build = |with_final_measure: bool| -> Result<Circuit> {
        let slots = if with_final_measure { 3 * n } else { 2 * n };
        let mut c = Circuit::new(total, slots);
        let controls: Vec<usize> = (n..2 * n).collect();
        c.gate(gates::qfg(n, 1)?, &controls)?;
        for i in 0..n {
            c.gate(gates::cnot(), &[n + i, 2 * n + i])?;
        }
        for i in 0..n {
            c.gate(gates::cnot(), &[i, n + i])?;
            c.gate(gates::hadamard(), &[i])?;
            c.measure(i, 2 * i)?;
            c.measure(n + i, 2 * i + 1)?;
            c.gate_if(gates::pauli_x(), &[2 * n + i], 2 * i + 1)?;
            c.gate_if(gates::pauli_z(), &[2 * n + i], 2 * i)?;
        }
        if with_final_measure {
            for i in 0..n {
                c.measure(2 * n + i, 2 * n + i)?;
            }
        }
        Ok(c)
    };

    let mut input = psis[0].clone();
    for psi in &psis[1..] {
        input = input.tensor(psi)?;
    }
    input = input.tensor(&StateVector::zero(2 * n)?)?;

    let branches = run_analytic(&build(false)?, &input)?;
    let mut analytic = Vec::with_capacity(n);
    let mut channel_fidelities = Vec::with_capacity(n);
    for (i, psi) in psis.iter().enumerate() {
        let mut p = [0.0f64; 2];
        let mut fidelity = 0.0;
        for b in &branches {
            let m = qubit_marginal(&b.state, 2 * n + i);
            p[0] += b.probability * m[0];
            p[1] += b.probability * m[1];
            fidelity += b.probability * single_qubit_fidelity(&b.state, 2 * n + i, psi);
        }
        let mut entries = BTreeMap::new();
        entries.insert("0".to_string(), p[0]);
        entries.insert("1".to_string(), p[1]);
        analytic.push(OutcomeDistribution::analytic(entries));
        channel_fidelities.push(fidelity);
    }

    let hist = run_sampled(&build(true)?, &input, shots, seed)?;
    let sampled = (0..n)
        .map(|i| hist.marginal(|k| k[2 * n + i..2 * n + i + 1].to_string()))
        .collect();

    Ok(HyperTeleportReport {
        channels: n,
        analytic,
        sampled,
        channel_fidelities,
    })
}

/// The secret-sharing source fabric: two independent GHZ triples grown from
/// one `F_2^1` gate, with the independence deviations measured.
#[derive(Debug, Clone)]
pub struct QssReport {
    pub circuit: Circuit,
    pub state: StateVector,
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
    /// Largest deviation of any cross-triple two-qubit reduced matrix from
    /// the maximally mixed `I/4`.
    pub max_cross_deviation: f64,
    /// Largest deviation of any single-qubit reduced matrix from `I/2`.
    pub max_single_deviation: f64,
}

/// Builds the six-qubit secret-sharing source and verifies that the two
/// triples are mutually independent.
pub fn qss_sources() -> Result<QssReport> {
    let fabric = parallel_ghz(3)?;
    let rho = outer(&fabric.state)?;

    let quarter_identity = ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0));
    let mut max_cross: f64 = 0.0;
    for &a in &fabric.upper {
        for &b in &fabric.lower {
            let reduced = partial_trace(&rho, &[a, b])?;
            max_cross = max_cross.max(reduced.max_diff(&quarter_identity)?);
        }
    }

    let half_identity = ComplexMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
    let mut max_single: f64 = 0.0;
    for q in 0..fabric.state.num_qubits() {
        let reduced = partial_trace(&rho, &[q])?;
        max_single = max_single.max(reduced.max_diff(&half_identity)?);
    }

    Ok(QssReport {
        circuit: fabric.circuit,
        state: fabric.state,
        upper: fabric.upper,
        lower: fabric.lower,
        max_cross_deviation: max_cross,
        max_single_deviation: max_single,
    })
}

/// How the two links of an entanglement swap are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapVariant {
    /// Two separate pair sources of the given kind.
    IndependentSources,
    /// One `F_2^1` fabric emitting two parallel Bell pairs; requires the
    /// maximal 00-labeled source.
    ParallelFabric,
}

/// One Bell-measurement branch of a swap: the post-correction joint state of
/// the end qubits and its overlap with the 00 Bell state.
#[derive(Debug, Clone)]
pub struct SwapBranch {
    pub bsm: String,
    pub probability: f64,
    pub joint: StateVector,
    pub bell_fidelity: f64,
}

#[derive(Debug, Clone)]
pub struct SwapReport {
    pub variant: SwapVariant,
    pub branches: Vec<SwapBranch>,
}

/// Entanglement swapping over two links `(A, B1)` and `(B2, C)`: a Bell
/// measurement on `(B1, B2)` followed by X/Z corrections on `C`. With
/// maximal links every corrected `(A, C)` branch is the 00 Bell state.
pub fn entanglement_swap(source: &PairSource, variant: SwapVariant) -> Result<SwapReport> {
    // Roles (a, b1, b2, c) as physical qubit indices.
    let (input, a, b1, b2, c) = match variant {
        SwapVariant::IndependentSources => {
            let pair = pair_state(source)?;
            (pair.tensor(&pair)?, 0usize, 1usize, 2usize, 3usize)
        }
        SwapVariant::ParallelFabric => {
            if *source != PairSource::maximal() {
                return Err(Error::invalid(
                    "the parallel fabric emits 00-labeled Bell pairs; use the maximal source",
                ));
            }
            let (_, state) = parallel_pairs(2)?;
            // parallel_pairs(2) pairs are (0, 2) and (1, 3).
            (state, 0usize, 2usize, 1usize, 3usize)
        }
    };

    let mut circuit = Circuit::new(4, 2);
    circuit.gate(gates::cnot(), &[b1, b2])?;
    circuit.gate(gates::hadamard(), &[b1])?;
    circuit.measure(b1, 0)?;
    circuit.measure(b2, 1)?;
    circuit.gate_if(gates::pauli_x(), &[c], 1)?;
    circuit.gate_if(gates::pauli_z(), &[c], 0)?;

    let bell00 = crate::states::bell(crate::states::StateLabel::new(false, false));
    let mut branches = Vec::new();
    for b in run_analytic(&circuit, &input)? {
        let bits: Vec<u8> = b.record.bytes().map(|ch| ch - b'0').collect();
        let joint = collapsed_substate(&b.state, &[a, c], &[(b1, bits[0]), (b2, bits[1])])?;
        let bell_fidelity = joint.fidelity(&bell00)?;
        branches.push(SwapBranch {
            bsm: b.record,
            probability: b.probability,
            joint,
            bell_fidelity,
        });
    }
    Ok(SwapReport { variant, branches })
}

/// Outcome of a teleportation cascade.
#[derive(Debug, Clone)]
pub struct ChainReport {
    pub hops: usize,
    /// Analytic marginal of the final qubit over {"0", "1"}.
    pub analytic_marginal: OutcomeDistribution,
    /// Sampled marginal of the final qubit.
    pub sampled_marginal: OutcomeDistribution,
    /// Branch-averaged fidelity of the final qubit to the input state; 1 for
    /// maximal links at any depth.
    pub analytic_fidelity: f64,
}

/// Repeater chain by cascaded teleportation: the output qubit of each hop is
/// the input of the next. Full X/Z corrections are applied at every hop; any
/// classical thresholding is left to the caller at the very end.
pub fn repeater_chain(
    psi: &StateVector,
    hops: usize,
    source: &PairSource,
    shots: u64,
    seed: u64,
) -> Result<ChainReport> {
    if psi.num_qubits() != 1 {
        return Err(Error::shape(
            format!("{} qubits", psi.num_qubits()),
            "1 qubit",
            "chain input",
        ));
    }
    if !(1..=3).contains(&hops) {
        return Err(Error::invalid(format!(
            "hops must be between 1 and 3, got {hops}"
        )));
    }

    let total = 2 * hops + 1;
    let pair = pair_state(source)?;
    let mut input = psi.clone();
    for _ in 0..hops {
        input = input.tensor(&pair)?;
    }

    let build = |with_final_measure: bool| -> Result<Circuit> {
        let slots = 2 * hops + usize::from(with_final_measure);
        let mut c = Circuit::new(total, slots);
        for hop in 0..hops {
            let wire = 2 * hop; // input of this hop: q0, then each hop's target
            let pair_a = 2 * hop + 1;
            let pair_b = 2 * hop + 2;
            c.gate(gates::cnot(), &[wire, pair_a])?;
            c.gate(gates::hadamard(), &[wire])?;
            c.measure(wire, 2 * hop)?;
            c.measure(pair_a, 2 * hop + 1)?;
            c.gate_if(gates::pauli_x(), &[pair_b], 2 * hop + 1)?;
            c.gate_if(gates::pauli_z(), &[pair_b], 2 * hop)?;
        }
        if with_final_measure {
            c.measure(total - 1, 2 * hops)?;
        }
        Ok(c)
    };

    let branches = run_analytic(&build(false)?, &input)?;
    let mut p = [0.0f64; 2];
    let mut analytic_fidelity = 0.0;
    for b in &branches {
        let m = qubit_marginal(&b.state, total - 1);
        p[0] += b.probability * m[0];
        p[1] += b.probability * m[1];
        analytic_fidelity += b.probability * single_qubit_fidelity(&b.state, total - 1, psi);
    }
    let mut entries = BTreeMap::new();
    entries.insert("0".to_string(), p[0]);
    entries.insert("1".to_string(), p[1]);
    let analytic_marginal = OutcomeDistribution::analytic(entries);

    let hist = run_sampled(&build(true)?, &input, shots, seed)?;
    let sampled_marginal = hist.marginal(|k| k[2 * hops..2 * hops + 1].to_string());

    Ok(ChainReport {
        hops,
        analytic_marginal,
        sampled_marginal,
        analytic_fidelity,
    })
}
