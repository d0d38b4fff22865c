//! Dense simulation of few-qubit circuits.
//!
//! States are stored densely: a [`StateVector`] holds `2^n` amplitudes and a
//! [`DensityMatrix`] holds `4^n` entries. Both are indexed big-endian. Noise is
//! limited to a local two-qubit depolarizing channel applied after every
//! two-qubit gate (see [`NoiseSpec`]).

mod circuit;
mod kernel;
mod noise;
pub mod random;
mod sampling;
mod state;

pub use circuit::{Circuit, Gate, GateKind};
pub use noise::{apply_circuit_noisy, depolarize_pair, NoiseSpec};
pub use sampling::{derive_seed, sample_counts, Counts};
pub use state::{
    apply_circuit_pure, measurement_probabilities, DensityMatrix, QuantumState, StateVector,
};

/// Probabilities in `[-PROB_CLAMP, 0)` are treated as float noise and set to zero.
pub const PROB_CLAMP: f64 = 1e-12;

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 12;
