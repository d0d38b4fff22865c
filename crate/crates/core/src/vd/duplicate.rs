use serde::{Deserialize, Serialize};

use crate::sim::Circuit;

/// Two disjoint copies of a base circuit on `2n` qubits. Pair `i` is
/// `(qubit i, qubit i + n)`.
///
/// Gates are interleaved: base gate `k` appears at doubled positions `2k`
/// (first copy) and `2k + 1` (second copy).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuplicatedCircuit {
    pub base: Circuit,
    pub doubled: Circuit,
}

impl DuplicatedCircuit {
    pub fn n(&self) -> usize {
        self.base.n_qubits
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        (i, i + self.n())
    }
}

pub fn duplicate(base: &Circuit) -> DuplicatedCircuit {
    let n = base.n_qubits;
    let mut doubled =
        Circuit::new(2 * n).with_label(format!("{} x2", base.label).trim().to_string());
    for g in &base.gates {
        doubled.gates.push(g.clone());
        doubled.gates.push(g.shifted(n));
    }
    DuplicatedCircuit {
        base: base.clone(),
        doubled,
    }
}
