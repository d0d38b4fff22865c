use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use super::state::DensityMatrix;
use crate::error::{Result, VdError};
use crate::C64;

/// Two-qubit depolarization applied after every gate acting on exactly two
/// qubits. The channel on the gate's pair is
/// `ρ → (1-λ) ρ + λ · I₄/4 ⊗ Tr_pair ρ`, so `λ = 1` leaves the pair maximally
/// mixed.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub two_qubit_depolarization: f64,
    /// Gate position → λ, replacing the default for that gate.
    #[serde(default)]
    pub per_gate_overrides: BTreeMap<usize, f64>,
}

impl NoiseSpec {
    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn depolarizing(lambda: f64) -> Self {
        Self {
            two_qubit_depolarization: lambda,
            per_gate_overrides: BTreeMap::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |l: f64| {
            if (0.0..=1.0).contains(&l) {
                Ok(())
            } else {
                Err(VdError::domain(format!(
                    "depolarization {l} outside [0, 1]"
                )))
            }
        };
        check(self.two_qubit_depolarization)?;
        self.per_gate_overrides.values().try_for_each(|&l| check(l))
    }

    pub fn lambda_at(&self, position: usize) -> f64 {
        self.per_gate_overrides
            .get(&position)
            .copied()
            .unwrap_or(self.two_qubit_depolarization)
    }

    /// Same default λ, no per-gate overrides.
    pub fn uniform(&self) -> Self {
        Self::depolarizing(self.two_qubit_depolarization)
    }

    /// Overrides remapped onto a duplicated circuit whose gate `i` appears at
    /// positions `2i` and `2i + 1`.
    pub fn duplicated(&self) -> Self {
        let per_gate_overrides = self
            .per_gate_overrides
            .iter()
            .flat_map(|(&p, &l)| [(2 * p, l), (2 * p + 1, l)])
            .collect();
        Self {
            two_qubit_depolarization: self.two_qubit_depolarization,
            per_gate_overrides,
        }
    }

    pub fn is_noiseless(&self) -> bool {
        self.two_qubit_depolarization == 0.0 && self.per_gate_overrides.values().all(|&l| l == 0.0)
    }
}

/// Replaces qubits `a` and `b` by the maximally mixed state with weight λ.
pub fn depolarize_pair(rho: &mut DensityMatrix, a: usize, b: usize, lambda: f64) {
    if lambda == 0.0 {
        return;
    }
    let n = rho.n_qubits();
    let dim = rho.dim();
    let (ba, bb) = (1usize << (n - 1 - a), 1usize << (n - 1 - b));
    let locals = [0, bb, ba, ba | bb];
    let mask = ba | bb;
    let keep = 1.0 - lambda;
    let data = rho.data_mut();
    for r in (0..dim).filter(|r| r & mask == 0) {
        for c in (0..dim).filter(|c| c & mask == 0) {
            let traced: C64 = locals.iter().map(|&s| data[(r | s) * dim + (c | s)]).sum();
            let fill = traced * (lambda / 4.0);
            for &s in &locals {
                for &t in &locals {
                    let idx = (r | s) * dim + (c | t);
                    data[idx] *= keep;
                    if s == t {
                        data[idx] += fill;
                    }
                }
            }
        }
    }
}

/// Evolves `input` through `circuit`, depolarizing each two-qubit gate's pair.
pub fn apply_circuit_noisy(
    circuit: &Circuit,
    input: &DensityMatrix,
    noise: &NoiseSpec,
) -> Result<DensityMatrix> {
    noise.validate()?;
    if circuit.n_qubits != input.n_qubits() {
        return Err(VdError::dim(format!(
            "{}-qubit circuit applied to a {}-qubit state",
            circuit.n_qubits,
            input.n_qubits()
        )));
    }
    let mut rho = input.clone();
    for (pos, gate) in circuit.gates.iter().enumerate() {
        rho.apply_gate(gate);
        if gate.is_two_qubit() {
            depolarize_pair(
                &mut rho,
                gate.qubits[0],
                gate.qubits[1],
                noise.lambda_at(pos),
            );
        }
    }
    Ok(rho)
}
