//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building gates, states, or circuits.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {left} vs {right} ({context})")]
    ShapeMismatch {
        left: String,
        right: String,
        context: &'static str,
    },

    #[error("state of {qubits} qubits exceeds the dimension cap of 2^{max} amplitudes")]
    DimensionCap { qubits: usize, max: u32 },

    #[error("vector is not normalized: |amps|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("non-finite value encountered")]
    NonFinite,

    #[error("qubit index {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("duplicate target qubit {qubit}")]
    DuplicateTarget { qubit: usize },

    #[error("gate of dimension {dim} does not fit {targets} target qubits")]
    GateDimension { dim: usize, targets: usize },

    #[error("at least {needed} qubits required, got {got}")]
    TooFewQubits { needed: usize, got: usize },

    #[error("keep set for partial trace is empty")]
    EmptyKeepSet,

    #[error("quadrant {quadrant} is not in 1..=4")]
    InvalidQuadrant { quadrant: u8 },

    #[error("bit sequence of length {got} does not match {expected} qubits")]
    BitLengthMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian: max |a - a†| = {deviation}")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("classical slot {slot} is read before any measurement writes it")]
    UnwrittenSlot { slot: usize },

    #[error("classical slot {slot} out of range for {num_slots} slots")]
    SlotOutOfRange { slot: usize, num_slots: usize },

    #[error(
        "circuit contains measurements or classically controlled gates; no single unitary exists"
    )]
    MeasurementInCircuit,

    #[error("shots must be at least 1")]
    ZeroShots,

    #[error("outcome is ambiguous: both results are equally likely")]
    AmbiguousOutcome,

    #[error("probability {value} outside [0, 1]")]
    ProbabilityRange { value: f64 },

    #[error("unknown gate `{name}`")]
    UnknownGate { name: String },

    #[error("invalid argument: {message}")]
    InvalidArgument { message: String },
}

impl Error {
    pub(crate) fn shape(left: impl ToString, right: impl ToString, context: &'static str) -> Self {
        Error::ShapeMismatch {
            left: left.to_string(),
            right: right.to_string(),
            context,
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument {
            message: message.into(),
        }
    }
}
