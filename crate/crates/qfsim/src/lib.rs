//! Dense state-vector simulation of the quantum Fourier gate family
//! `F_p^d = SBEQ · QFT^d · SBEQ`, the four families of Fourier states it
//! generates (including the rough-entangled pairs of degrees 1 and 3), and
//! the teleportation protocol driven by maximal, non-maximal, and rough pair
//! sources, plus the stretching, parallelization, secret-sharing, and
//! repeater constructions built on top.
//!
//! Start with the runnable programs under `examples/`; each one walks through
//! a single capability. The `qfsim` binary exposes the same functionality as
//! a small CLI with `gate`, `state`, `teleport`, `verify`, and `apps`
//! subcommands.
//!
//! Conventions used throughout:
//! - `q[0]` is the most significant bit of a basis index (`circuit` module).
//! - Sampling uses a seeded ChaCha8 generator with one stream per shot, so
//!   every histogram is bit-reproducible from `(seed, shots)`.
//! - State dimension is capped at `2^20` amplitudes.

pub mod applications;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod gates;
pub mod numerics;
pub mod output;
pub mod states;
pub mod teleport;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, DensityMatrix, StateVector};

/// Re-export of the complex scalar used everywhere.
pub use num_complex::Complex64;
