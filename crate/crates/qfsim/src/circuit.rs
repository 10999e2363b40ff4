//! Circuit model: gate application on arbitrary qubit subsets, mid-circuit
//! measurement with classical control, compilation of measurement-free
//! circuits to a single unitary, analytic branch enumeration, and seeded
//! shot sampling.
//!
//! Bit-order convention used everywhere in this crate: `q[0]` is the MOST
//! significant bit of a basis index, so the basis label reads `|q0 q1 … ⟩`
//! left to right. Platform-style displays that print the opposite order are
//! a presentation concern (see the `ibm` bit-order flag in the CLI); internal
//! math never reverses bits.

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, StateVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Branches with probability below this are dropped by the analytic runner.
pub const BRANCH_PRUNE_THRESHOLD: f64 = 1e-15;

/// Converts a basis index to qubit values, `q[0]` first.
pub fn index_to_bits(index: usize, num_qubits: usize) -> Vec<bool> {
    (0..num_qubits)
        .map(|q| (index >> (num_qubits - 1 - q)) & 1 == 1)
        .collect()
}

/// Converts qubit values (`q[0]` first) to a basis index.
pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
}

/// One step of a circuit program.
#[derive(Debug, Clone)]
pub enum Instruction {
    /// Unitary on the listed qubits; the first listed qubit is the gate's
    /// most significant qubit.
    Gate {
        matrix: ComplexMatrix,
        targets: Vec<usize>,
    },
    /// Computational-basis measurement of one qubit into a classical slot.
    Measure { qubit: usize, slot: usize },
    /// Unitary applied only when the classical slot holds 1.
    ClassicallyControlled {
        matrix: ComplexMatrix,
        targets: Vec<usize>,
        slot: usize,
    },
}

/// Ordered program of gates, measurements, and classically controlled gates
/// on `num_qubits` qubits and `num_slots` classical slots.
#[derive(Debug, Clone)]
pub struct Circuit {
    num_qubits: usize,
    num_slots: usize,
    instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(num_qubits: usize, num_slots: usize) -> Self {
        Self {
            num_qubits,
            num_slots,
            instructions: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_slots(&self) -> usize {
        self.num_slots
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    fn check_targets(&self, matrix: &ComplexMatrix, targets: &[usize]) -> Result<()> {
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: t,
                    num_qubits: self.num_qubits,
                });
            }
            if targets[..i].contains(&t) {
                return Err(Error::DuplicateTarget { qubit: t });
            }
        }
        let dim = 1usize << targets.len();
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::GateDimension {
                dim: matrix.rows(),
                targets: targets.len(),
            });
        }
        Ok(())
    }

    fn check_slot(&self, slot: usize) -> Result<()> {
        if slot >= self.num_slots {
            return Err(Error::SlotOutOfRange {
                slot,
                num_slots: self.num_slots,
            });
        }
        Ok(())
    }

    /// Appends a unitary on the listed qubits.
    pub fn gate(&mut self, matrix: ComplexMatrix, targets: &[usize]) -> Result<&mut Self> {
        self.check_targets(&matrix, targets)?;
        self.instructions.push(Instruction::Gate {
            matrix,
            targets: targets.to_vec(),
        });
        Ok(self)
    }

    /// Appends a measurement of `qubit` into classical `slot`.
    pub fn measure(&mut self, qubit: usize, slot: usize) -> Result<&mut Self> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        self.check_slot(slot)?;
        self.instructions.push(Instruction::Measure { qubit, slot });
        Ok(self)
    }

    /// Appends a gate applied only when `slot` reads 1. The slot must be
    /// written by an earlier measurement.
    pub fn gate_if(
        &mut self,
        matrix: ComplexMatrix,
        targets: &[usize],
        slot: usize,
    ) -> Result<&mut Self> {
        self.check_targets(&matrix, targets)?;
        self.check_slot(slot)?;
        let written = self
            .instructions
            .iter()
            .any(|ins| matches!(ins, Instruction::Measure { slot: s, .. } if *s == slot));
        if !written {
            return Err(Error::UnwrittenSlot { slot });
        }
        self.instructions.push(Instruction::ClassicallyControlled {
            matrix,
            targets: targets.to_vec(),
            slot,
        });
        Ok(self)
    }

    /// True when the circuit contains no measurement or classical control.
    pub fn is_unitary_only(&self) -> bool {
        self.instructions
            .iter()
            .all(|ins| matches!(ins, Instruction::Gate { .. }))
    }

    /// Slots written by some measurement, ascending.
    fn written_slots(&self) -> Vec<usize> {
        let mut slots: Vec<usize> = self
            .instructions
            .iter()
            .filter_map(|ins| match ins {
                Instruction::Measure { slot, .. } => Some(*slot),
                _ => None,
            })
            .collect();
        slots.sort_unstable();
        slots.dedup();
        slots
    }
}

/// Applies `gate` to the listed qubits of `state`, identity elsewhere. The
/// first listed qubit is the gate's most significant qubit. Embedding on
/// non-adjacent targets is done by index arithmetic, not by swap insertion.
pub fn apply_gate(
    state: &StateVector,
    gate: &ComplexMatrix,
    targets: &[usize],
) -> Result<StateVector> {
    let p = state.num_qubits();
    for (i, &t) in targets.iter().enumerate() {
        if t >= p {
            return Err(Error::QubitOutOfRange {
                qubit: t,
                num_qubits: p,
            });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTarget { qubit: t });
        }
    }
    let k = targets.len();
    let local_dim = 1usize << k;
    if gate.rows() != local_dim || gate.cols() != local_dim {
        return Err(Error::GateDimension {
            dim: gate.rows(),
            targets: k,
        });
    }

    let amps = apply_gate_raw(state.amps(), p, gate, targets);
    StateVector::new(p, amps)
}

/// Shift amounts that place bit `j` of a local index at target qubit `t_j`.
fn target_shifts(p: usize, targets: &[usize]) -> Vec<usize> {
    targets.iter().map(|&t| p - 1 - t).collect()
}

fn apply_gate_raw(
    amps: &[Complex64],
    p: usize,
    gate: &ComplexMatrix,
    targets: &[usize],
) -> Vec<Complex64> {
    let k = targets.len();
    let local_dim = 1usize << k;
    let shifts = target_shifts(p, targets);
    let target_mask: usize = shifts.iter().map(|&s| 1usize << s).sum();

    // Scatter bit (k-1-j) of a local index onto global bit position shifts[j].
    let scatter = |local: usize| -> usize {
        let mut out = 0usize;
        for (j, &s) in shifts.iter().enumerate() {
            out |= ((local >> (k - 1 - j)) & 1) << s;
        }
        out
    };
    let scattered: Vec<usize> = (0..local_dim).map(scatter).collect();

    let mut out = vec![Complex64::ZERO; amps.len()];
    for rest in 0..amps.len() {
        if rest & target_mask != 0 {
            continue;
        }
        let mut block = vec![Complex64::ZERO; local_dim];
        for (l, &sc) in scattered.iter().enumerate() {
            block[l] = amps[rest | sc];
        }
        for (i, &sc) in scattered.iter().enumerate() {
            let mut acc = Complex64::ZERO;
            for (j, b) in block.iter().enumerate() {
                acc += gate.get(i, j) * b;
            }
            out[rest | sc] = acc;
        }
    }
    out
}

/// Embeds a gate on the listed qubits into the full `2^p x 2^p` unitary.
pub fn embed_gate(gate: &ComplexMatrix, targets: &[usize], p: usize) -> Result<ComplexMatrix> {
    let k = targets.len();
    let local_dim = 1usize << k;
    if gate.rows() != local_dim || gate.cols() != local_dim {
        return Err(Error::GateDimension {
            dim: gate.rows(),
            targets: k,
        });
    }
    let shifts = target_shifts(p, targets);
    let target_mask: usize = shifts.iter().map(|&s| 1usize << s).sum();
    let local_of = |index: usize| -> usize {
        let mut local = 0usize;
        for (j, &s) in shifts.iter().enumerate() {
            local |= ((index >> s) & 1) << (k - 1 - j);
        }
        local
    };
    let dim = 1usize << p;
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i & !target_mask == j & !target_mask {
            gate.get(local_of(i), local_of(j))
        } else {
            Complex64::ZERO
        }
    }))
}

/// Multiplies a measurement-free circuit into a single unitary, in
/// application order.
pub fn to_unitary(circuit: &Circuit) -> Result<ComplexMatrix> {
    let mut u = ComplexMatrix::identity(1 << circuit.num_qubits());
    for ins in circuit.instructions() {
        match ins {
            Instruction::Gate { matrix, targets } => {
                let embedded = embed_gate(matrix, targets, circuit.num_qubits())?;
                u = embedded.matmul(&u)?;
            }
            _ => return Err(Error::MeasurementInCircuit),
        }
    }
    Ok(u)
}

/// One branch of an analytic run: the classical record, its probability, and
/// the renormalized post-measurement state.
#[derive(Debug, Clone)]
pub struct Branch {
    pub record: String,
    pub probability: f64,
    pub state: StateVector,
}

/// Probability that `qubit` reads 0, plus the projected (unnormalized) states
/// for outcomes 0 and 1.
fn project_measure(
    amps: &[Complex64],
    p: usize,
    qubit: usize,
) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    let shift = p - 1 - qubit;
    let mut p0 = 0.0;
    let mut zero = vec![Complex64::ZERO; amps.len()];
    let mut one = vec![Complex64::ZERO; amps.len()];
    for (i, &a) in amps.iter().enumerate() {
        if (i >> shift) & 1 == 0 {
            p0 += a.norm_sqr();
            zero[i] = a;
        } else {
            one[i] = a;
        }
    }
    (p0.clamp(0.0, 1.0), zero, one)
}

fn renormalize(mut amps: Vec<Complex64>, probability: f64) -> Vec<Complex64> {
    let scale = 1.0 / probability.sqrt();
    for a in &mut amps {
        *a *= scale;
    }
    amps
}

/// Enumerates every measurement branch of the circuit. Branch probability is
/// the product of Born-rule probabilities along the way; branch states are
/// collapsed, renormalized, and classically corrected. Branches below
/// [`BRANCH_PRUNE_THRESHOLD`] are dropped.
pub fn run_analytic(circuit: &Circuit, input: &StateVector) -> Result<Vec<Branch>> {
    if input.num_qubits() != circuit.num_qubits() {
        return Err(Error::shape(
            format!("{} qubits", input.num_qubits()),
            format!("{} qubits", circuit.num_qubits()),
            "circuit input",
        ));
    }
    let p = circuit.num_qubits();
    let record_slots = circuit.written_slots();

    struct Pending {
        amps: Vec<Complex64>,
        probability: f64,
        slots: Vec<u8>,
        next_instruction: usize,
    }

    let mut work = vec![Pending {
        amps: input.amps().to_vec(),
        probability: 1.0,
        slots: vec![0; circuit.num_slots()],
        next_instruction: 0,
    }];
    let mut done = Vec::new();

    while let Some(mut branch) = work.pop() {
        let mut split = None;
        while branch.next_instruction < circuit.instructions().len() {
            let ins = &circuit.instructions()[branch.next_instruction];
            branch.next_instruction += 1;
            match ins {
                Instruction::Gate { matrix, targets } => {
                    branch.amps = apply_gate_raw(&branch.amps, p, matrix, targets);
                }
                Instruction::ClassicallyControlled {
                    matrix,
                    targets,
                    slot,
                } => {
                    if branch.slots[*slot] == 1 {
                        branch.amps = apply_gate_raw(&branch.amps, p, matrix, targets);
                    }
                }
                Instruction::Measure { qubit, slot } => {
                    let (p0, zero, one) = project_measure(&branch.amps, p, *qubit);
                    split = Some((p0, zero, one, *slot));
                    break;
                }
            }
        }
        match split {
            Some((p0, zero, one, slot)) => {
                for (outcome, projected, prob) in [(0u8, zero, p0), (1u8, one, 1.0 - p0)] {
                    let total = branch.probability * prob;
                    if total < BRANCH_PRUNE_THRESHOLD {
                        continue;
                    }
                    let mut slots = branch.slots.clone();
                    slots[slot] = outcome;
                    work.push(Pending {
                        amps: renormalize(projected, prob),
                        probability: total,
                        slots,
                        next_instruction: branch.next_instruction,
                    });
                }
            }
            None => {
                let record: String = record_slots
                    .iter()
                    .map(|&s| char::from(b'0' + branch.slots[s]))
                    .collect();
                done.push(Branch {
                    record,
                    probability: branch.probability,
                    state: StateVector::new(p, branch.amps)?,
                });
            }
        }
    }

    done.sort_by(|a, b| a.record.cmp(&b.record));
    Ok(done)
}

/// Runs a measurement-free circuit on an input state.
pub fn run_pure(circuit: &Circuit, input: &StateVector) -> Result<StateVector> {
    if !circuit.is_unitary_only() {
        return Err(Error::MeasurementInCircuit);
    }
    let mut branches = run_analytic(circuit, input)?;
    debug_assert_eq!(branches.len(), 1);
    Ok(branches.pop().expect("one branch").state)
}

/// Measures the listed qubits of a state, returning every outcome with
/// probability above [`BRANCH_PRUNE_THRESHOLD`] together with its collapsed,
/// renormalized state.
pub fn measure_qubits(
    state: &StateVector,
    qubits: &[usize],
) -> Result<Vec<(String, f64, StateVector)>> {
    let p = state.num_qubits();
    let mut circuit = Circuit::new(p, qubits.len());
    for (slot, &q) in qubits.iter().enumerate() {
        circuit.measure(q, slot)?;
    }
    let branches = run_analytic(&circuit, state)?;
    Ok(branches
        .into_iter()
        .map(|b| (b.record, b.probability, b.state))
        .collect())
}

/// How an outcome distribution was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionMode {
    Analytic,
    Sampled,
}

/// Map from classical bitstrings to probabilities (analytic mode) or counts
/// (sampled mode).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    pub mode: DistributionMode,
    /// Probabilities in analytic mode; counts in sampled mode.
    pub entries: BTreeMap<String, f64>,
    /// Total shots in sampled mode; absent in analytic mode.
    pub shots: Option<u64>,
}

impl OutcomeDistribution {
    pub fn analytic(entries: BTreeMap<String, f64>) -> Self {
        Self {
            mode: DistributionMode::Analytic,
            entries,
            shots: None,
        }
    }

    pub fn sampled(counts: BTreeMap<String, u64>, shots: u64) -> Self {
        Self {
            mode: DistributionMode::Sampled,
            entries: counts.into_iter().map(|(k, v)| (k, v as f64)).collect(),
            shots: Some(shots),
        }
    }

    /// Probability of an outcome; counts are divided by shots.
    pub fn probability(&self, outcome: &str) -> f64 {
        let raw = self.entries.get(outcome).copied().unwrap_or(0.0);
        match self.mode {
            DistributionMode::Analytic => raw,
            DistributionMode::Sampled => raw / self.shots.unwrap_or(1) as f64,
        }
    }

    /// All outcomes as relative frequencies.
    pub fn frequencies(&self) -> BTreeMap<String, f64> {
        self.entries
            .keys()
            .map(|k| (k.clone(), self.probability(k)))
            .collect()
    }

    /// Total variation distance: half the L1 distance between frequencies.
    pub fn total_variation(&self, other: &OutcomeDistribution) -> f64 {
        let mut keys: Vec<&String> = self.entries.keys().collect();
        keys.extend(other.entries.keys());
        keys.sort();
        keys.dedup();
        0.5 * keys
            .iter()
            .map(|k| (self.probability(k) - other.probability(k)).abs())
            .sum::<f64>()
    }

    /// Aggregates outcomes by a projection of the bitstring key.
    pub fn marginal(&self, project: impl Fn(&str) -> String) -> OutcomeDistribution {
        let mut entries: BTreeMap<String, f64> = BTreeMap::new();
        for (k, v) in &self.entries {
            *entries.entry(project(k)).or_insert(0.0) += v;
        }
        OutcomeDistribution {
            mode: self.mode.clone(),
            entries,
            shots: self.shots,
        }
    }
}

/// Runs `shots` independent trajectories of the circuit. The result is
/// bit-reproducible for a given `(seed, shot index)` pair: every shot draws
/// from its own stream of a seeded ChaCha8 generator, so the histogram does
/// not depend on evaluation order.
pub fn run_sampled(
    circuit: &Circuit,
    input: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<OutcomeDistribution> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    if input.num_qubits() != circuit.num_qubits() {
        return Err(Error::shape(
            format!("{} qubits", input.num_qubits()),
            format!("{} qubits", circuit.num_qubits()),
            "circuit input",
        ));
    }
    let p = circuit.num_qubits();
    let record_slots = circuit.written_slots();
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();

    // Everything before the first measurement is deterministic; evolve
    // through it once and start each shot from there.
    let prefix_len = circuit
        .instructions()
        .iter()
        .position(|ins| matches!(ins, Instruction::Measure { .. }))
        .unwrap_or(circuit.instructions().len());
    let mut prefix = input.amps().to_vec();
    for ins in &circuit.instructions()[..prefix_len] {
        if let Instruction::Gate { matrix, targets } = ins {
            prefix = apply_gate_raw(&prefix, p, matrix, targets);
        }
    }

    for shot in 0..shots {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shot);
        let mut amps = prefix.clone();
        let mut slots = vec![0u8; circuit.num_slots()];
        for ins in &circuit.instructions()[prefix_len..] {
            match ins {
                Instruction::Gate { matrix, targets } => {
                    amps = apply_gate_raw(&amps, p, matrix, targets);
                }
                Instruction::ClassicallyControlled {
                    matrix,
                    targets,
                    slot,
                } => {
                    if slots[*slot] == 1 {
                        amps = apply_gate_raw(&amps, p, matrix, targets);
                    }
                }
                Instruction::Measure { qubit, slot } => {
                    let (p0, zero, one) = project_measure(&amps, p, *qubit);
                    let draw: f64 = rng.random();
                    if draw < p0 {
                        slots[*slot] = 0;
                        amps = renormalize(zero, p0);
                    } else {
                        slots[*slot] = 1;
                        amps = renormalize(one, 1.0 - p0);
                    }
                }
            }
        }
        let record: String = record_slots
            .iter()
            .map(|&s| char::from(b'0' + slots[s]))
            .collect();
        *counts.entry(record).or_insert(0) += 1;
    }

    Ok(OutcomeDistribution::sampled(counts, shots))
}
