//! Pauli strings, Pauli-sum Hamiltonians and their dense forms.

mod decompose;
mod string;
mod sum;

pub use decompose::{exact_diagonalize, pauli_decompose, DiagonalizationResult};
pub use string::{basis_rotation_circuit, eigenvalue_of_outcome, Pauli, PauliString};
pub use sum::PauliSum;
