//! Duplicate-circuit virtual distillation on a dense simulator.
//!
//! Virtual distillation estimates the purified expectation value
//! `Tr(O ρ²) / Tr(ρ²)` from measurements on two copies of a noisy circuit.
//! This crate compiles the measurement circuits needed for that ratio using
//! only CNOT and Hadamard gates:
//!
//! - a single pairwise projection (one CNOT per qubit pair) whose outcome
//!   probabilities, combined with ±1 coefficients and the computational
//!   measurement, give the purity `⟨S₂⟩`;
//! - one CNOT-chain projection per difference mask, from which the
//!   statistics of every swap eigenvector can be reconstructed and any
//!   Pauli string evaluated.
//!
//! The modules are layered bottom-up:
//!
//! - [`sim`]: dense statevector / density-matrix simulation with two-qubit
//!   depolarizing noise and multinomial shot sampling;
//! - [`pauli`]: Pauli strings, Hamiltonians, basis rotations and exact
//!   diagonalization;
//! - [`vd`]: circuit duplication, swap-basis classification, projection plan
//!   synthesis (pairwise, mask chains, B gates) and signed recipes;
//! - [`estimate`]: turning measured distributions into corrected estimates;
//! - [`vqe`]: ansatz circuits, parameter sweeps and multi-start simplex search.
//!
//! Basis states are labelled big-endian throughout: qubit 0 is the most
//! significant bit of a basis index.

pub mod error;
pub mod estimate;
pub mod fixture;
pub mod pauli;
pub mod sim;
pub mod text;
pub mod vd;
pub mod vqe;

pub use error::{Result, VdError};

/// Complex amplitude type used everywhere.
pub type C64 = num_complex::Complex64;
