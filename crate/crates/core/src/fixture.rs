//! Hamiltonian fixture files.
//!
//! ```json
//! {"n_qubits": 2,
//!  "terms": [{"pauli": "ZI", "coeff": 0.39}],
//!  "constant": -0.33,
//!  "exact_energy": -1.137,
//!  "meta": {"molecule": "H2", "distance_angstrom": 0.735, "mapping": "parity", "basis": "sto-3g"}}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, VdError};
use crate::pauli::{exact_diagonalize, PauliString, PauliSum};

/// Agreement required between the stored and recomputed ground energy.
pub const EXACT_ENERGY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureTerm {
    pub pauli: PauliString,
    pub coeff: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FixtureMeta {
    #[serde(default)]
    pub molecule: String,
    #[serde(default)]
    pub distance_angstrom: f64,
    #[serde(default)]
    pub mapping: String,
    #[serde(default)]
    pub basis: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianFixture {
    pub n_qubits: usize,
    pub terms: Vec<FixtureTerm>,
    pub constant: f64,
    pub exact_energy: f64,
    #[serde(default)]
    pub meta: FixtureMeta,
}

impl HamiltonianFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: Self = serde_json::from_str(text)?;
        f.hamiltonian()?;
        Ok(f)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn hamiltonian(&self) -> Result<PauliSum> {
        PauliSum::from_terms(
            self.n_qubits,
            self.terms.iter().map(|t| (t.pauli.clone(), t.coeff)),
            self.constant,
        )
    }

    /// Recompute the ground energy and compare with the stored value.
    pub fn verify(&self) -> Result<f64> {
        let e = exact_diagonalize(&self.hamiltonian()?)?.ground_energy();
        if (e - self.exact_energy).abs() > EXACT_ENERGY_TOL {
            return Err(VdError::input(format!(
                "fixture exact_energy {} disagrees with diagonalization {e}",
                self.exact_energy
            )));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_verify() {
        let text = r#"{"n_qubits": 1, "terms": [{"pauli": "Z", "coeff": 1.0}], "constant": 0.5, "exact_energy": -0.5}"#;
        let f = HamiltonianFixture::from_json(text).unwrap();
        assert_eq!(f.verify().unwrap(), -0.5);
    }

    #[test]
    fn rejects_bad_fixtures() {
        let wrong_len = r#"{"n_qubits": 2, "terms": [{"pauli": "Z", "coeff": 1.0}], "constant": 0, "exact_energy": -1}"#;
        assert!(HamiltonianFixture::from_json(wrong_len).is_err());
        let unknown =
            r#"{"n_qubits": 1, "terms": [], "constant": 0, "exact_energy": 0, "extra": 1}"#;
        assert!(HamiltonianFixture::from_json(unknown).is_err());
        let wrong_energy = r#"{"n_qubits": 1, "terms": [{"pauli": "Z", "coeff": 1.0}], "constant": 0, "exact_energy": -0.9}"#;
        assert!(HamiltonianFixture::from_json(wrong_energy)
            .unwrap()
            .verify()
            .is_err());
    }
}
