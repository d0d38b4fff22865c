use serde::{Deserialize, Serialize};

use crate::error::{Result, VdError};
use crate::sim::Circuit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnsatzKind {
    /// `X` on the occupied qubit, `Ry(θ)` on qubit 0, `CNOT(0 → 1)`.
    ReducedUcc2q,
    /// Layers of `Ry` and `Rz` on every qubit separated by a reverse-linear
    /// CNOT ladder, ending with a final rotation layer.
    HardwareEfficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzSpec {
    pub kind: AnsatzKind,
    pub n_qubits: usize,
    #[serde(default)]
    pub layers: usize,
    /// Computational-basis reference state, qubit 0 first.
    pub initial_state: String,
}

impl AnsatzSpec {
    pub fn reduced_ucc_2q() -> Self {
        Self {
            kind: AnsatzKind::ReducedUcc2q,
            n_qubits: 2,
            layers: 0,
            initial_state: "01".into(),
        }
    }

    pub fn hardware_efficient(n_qubits: usize, layers: usize, initial_state: &str) -> Self {
        Self {
            kind: AnsatzKind::HardwareEfficient,
            n_qubits,
            layers,
            initial_state: initial_state.into(),
        }
    }

    pub fn n_params(&self) -> usize {
        match self.kind {
            AnsatzKind::ReducedUcc2q => 1,
            AnsatzKind::HardwareEfficient => 2 * self.n_qubits * (self.layers + 1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial_state.len() != self.n_qubits
            || !self.initial_state.chars().all(|c| c == '0' || c == '1')
        {
            return Err(VdError::input(format!(
                "initial state {:?} is not a {}-bit string",
                self.initial_state, self.n_qubits
            )));
        }
        match self.kind {
            AnsatzKind::ReducedUcc2q if self.n_qubits != 2 => Err(VdError::input(
                "the reduced two-qubit ansatz needs exactly 2 qubits",
            )),
            AnsatzKind::HardwareEfficient if self.n_qubits == 0 => {
                Err(VdError::input("ansatz needs qubits"))
            }
            _ => Ok(()),
        }
    }
}

pub fn build_ansatz(spec: &AnsatzSpec, params: &[f64]) -> Result<Circuit> {
    spec.validate()?;
    if params.len() != spec.n_params() {
        return Err(VdError::input(format!(
            "ansatz takes {} parameters, got {}",
            spec.n_params(),
            params.len()
        )));
    }
    if let Some(p) = params.iter().find(|p| !p.is_finite()) {
        return Err(VdError::Numeric(format!("parameter {p}")));
    }
    let n = spec.n_qubits;
    let mut c = Circuit::new(n).with_label(match spec.kind {
        AnsatzKind::ReducedUcc2q => "reduced ucc".to_string(),
        AnsatzKind::HardwareEfficient => format!("hardware efficient, {} layers", spec.layers),
    });
    for (q, bit) in spec.initial_state.chars().enumerate() {
        if bit == '1' {
            c.x(q);
        }
    }
    match spec.kind {
        AnsatzKind::ReducedUcc2q => {
            c.ry(params[0], 0).cnot(0, 1);
        }
        AnsatzKind::HardwareEfficient => {
            let mut k = 0;
            for layer in 0..=spec.layers {
                for q in 0..n {
                    c.ry(params[k + q], q);
                }
                k += n;
                for q in 0..n {
                    c.rz(params[k + q], q);
                }
                k += n;
                if layer < spec.layers {
                    for q in (0..n.saturating_sub(1)).rev() {
                        c.cnot(q, q + 1);
                    }
                }
            }
        }
    }
    Ok(c)
}
