use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::swap::SwapOperator;
use crate::error::{Result, VdError};
use crate::pauli::PauliString;
use crate::sim::{apply_circuit_pure, Circuit, StateVector};
use crate::C64;

/// Bell-type state of one `(i, i+n)` pair: `S± = (|00⟩ ± |11⟩)/√2`,
/// `A± = (|01⟩ ± |10⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairLabel {
    SPlus,
    APlus,
    SMinus,
    AMinus,
}

impl PairLabel {
    /// Eigenvalue of the pair swap.
    pub fn swap_sign(self) -> i8 {
        if self == PairLabel::AMinus {
            -1
        } else {
            1
        }
    }

    pub fn is_antisymmetric_type(self) -> bool {
        matches!(self, PairLabel::APlus | PairLabel::AMinus)
    }

    fn vector(self) -> [C64; 4] {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        match self {
            PairLabel::SPlus => [h, z, z, h],
            PairLabel::SMinus => [h, z, z, -h],
            PairLabel::APlus => [z, h, h, z],
            PairLabel::AMinus => [z, h, -h, z],
        }
    }
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairLabel::SPlus => "S+",
            PairLabel::APlus => "A+",
            PairLabel::SMinus => "S-",
            PairLabel::AMinus => "A-",
        })
    }
}

/// The two basis states `lo < hi` that a mask-plan outcome projects onto:
/// `(|lo⟩ + sign·|hi⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskOutcome {
    pub lo: usize,
    pub hi: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OutcomeLabel {
    /// Per-pair Bell labels, pair 0 first.
    Pairs(Vec<PairLabel>),
    Mask(MaskOutcome),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PlanKind {
    S2,
    Mask(usize),
    PauliExpectation(PauliString),
}

impl fmt::Display for PlanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanKind::S2 => f.write_str("s2"),
            PlanKind::Mask(_) => f.write_str("mask"),
            PlanKind::PauliExpectation(p) => write!(f, "pauli-{p}"),
        }
    }
}

/// A Clifford measurement circuit on the doubled register and the meaning
/// of each of its `4^n` outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionPlan {
    pub kind: PlanKind,
    pub n: usize,
    pub circuit: Circuit,
    pub outcomes: Vec<OutcomeLabel>,
}

impl ProjectionPlan {
    pub fn mask(&self) -> Option<usize> {
        match self.kind {
            PlanKind::Mask(d) => Some(d),
            _ => None,
        }
    }

    /// Mask rendered as an `n`-character bitstring, qubit 0 first.
    pub fn mask_bits(&self) -> Option<String> {
        self.mask().map(|d| format!("{d:0w$b}", w = self.n))
    }
}

/// Outcome-index → Bell label for a single pair, frozen by running the
/// one-pair circuit backwards on each basis outcome.
fn pair_label_table() -> &'static [PairLabel; 4] {
    static TABLE: OnceLock<[PairLabel; 4]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut c = Circuit::new(2);
        c.cnot(0, 1).h(0);
        let inv = c.inverse();
        let mut table = [PairLabel::SPlus; 4];
        for (o, slot) in table.iter_mut().enumerate() {
            let back = apply_circuit_pure(&inv, &StateVector::basis(2, o)).expect("width matches");
            let found = [
                PairLabel::SPlus,
                PairLabel::APlus,
                PairLabel::SMinus,
                PairLabel::AMinus,
            ]
            .into_iter()
            .find(|l| {
                let overlap: C64 = l
                    .vector()
                    .iter()
                    .zip(back.amplitudes())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                (overlap.norm() - 1.0).abs() < 1e-12
            })
            .expect("pair projection outcome is a Bell state");
            *slot = found;
        }
        table
    })
}

fn bit(width: usize, x: usize, q: usize) -> usize {
    (x >> (width - 1 - q)) & 1
}

/// Pair labels of an outcome of the `S₂` projection circuit on `2n` qubits.
pub(crate) fn pair_labels(n: usize, outcome: usize) -> Vec<PairLabel> {
    let table = pair_label_table();
    (0..n)
        .map(|i| table[2 * bit(2 * n, outcome, i) + bit(2 * n, outcome, i + n)])
        .collect()
}

/// `CNOT(i → i+n)` then `H(i)` for each pair in turn.
pub fn build_s2_projection(n: usize) -> Result<ProjectionPlan> {
    if n == 0 {
        return Err(VdError::domain("S2 projection needs at least one qubit"));
    }
    let mut circuit = Circuit::new(2 * n).with_label("s2 projection");
    for i in 0..n {
        circuit.cnot(i, i + n).h(i);
    }
    let outcomes = (0..1usize << (2 * n))
        .map(|o| OutcomeLabel::Pairs(pair_labels(n, o)))
        .collect();
    Ok(ProjectionPlan {
        kind: PlanKind::S2,
        n,
        circuit,
        outcomes,
    })
}

/// Qubits touched by the projection for `mask`: both members of every
/// flagged pair, ascending.
pub(crate) fn mask_support(n: usize, mask: usize) -> Vec<usize> {
    let firsts: Vec<usize> = (0..n).filter(|&i| bit(n, mask, i) == 1).collect();
    firsts
        .iter()
        .copied()
        .chain(firsts.iter().map(|i| i + n))
        .collect()
}

/// CNOT chain over the mask's support from the bottom up, then `H` on the
/// first support qubit.
pub fn build_mask_projection(n: usize, mask: usize) -> Result<ProjectionPlan> {
    if mask == 0 {
        return Err(VdError::domain("the zero mask has no paired states"));
    }
    if n == 0 || mask >> n != 0 {
        return Err(VdError::domain(format!(
            "mask {mask:b} does not fit {n} qubits"
        )));
    }
    let support = mask_support(n, mask);
    let mut circuit = Circuit::new(2 * n).with_label(format!("mask {mask:0n$b} projection"));
    for j in (1..support.len()).rev() {
        circuit.cnot(support[j - 1], support[j]);
    }
    circuit.h(support[0]);
    let outcomes = decode_outcomes(&circuit)?;
    Ok(ProjectionPlan {
        kind: PlanKind::Mask(mask),
        n,
        circuit,
        outcomes,
    })
}

/// Runs the circuit backwards on each outcome and reads off the two-state
/// superposition it projects onto.
fn decode_outcomes(circuit: &Circuit) -> Result<Vec<OutcomeLabel>> {
    let width = circuit.n_qubits;
    let inv = circuit.inverse();
    (0..1usize << width)
        .map(|o| {
            let back = apply_circuit_pure(&inv, &StateVector::basis(width, o))?;
            let support: Vec<(usize, C64)> = back
                .amplitudes()
                .iter()
                .copied()
                .enumerate()
                .filter(|(_, a)| a.norm() > 1e-9)
                .collect();
            match support.as_slice() {
                [(lo, a), (hi, b)] if (a.norm() - b.norm()).abs() < 1e-12 => {
                    let ratio = b / a;
                    if ratio.im.abs() > 1e-12 {
                        return Err(VdError::Numeric(format!(
                            "outcome {o} has a complex relative phase"
                        )));
                    }
                    let sign = if ratio.re > 0.0 { 1 } else { -1 };
                    Ok(OutcomeLabel::Mask(MaskOutcome {
                        lo: *lo,
                        hi: *hi,
                        sign,
                    }))
                }
                _ => Err(VdError::Numeric(format!(
                    "outcome {o} is not a two-state superposition"
                ))),
            }
        })
        .collect()
}

impl MaskOutcome {
    /// True when the two states are `S₂` partners.
    pub fn is_swap_pair(&self, swap: &SwapOperator) -> bool {
        swap.apply(self.lo) == self.hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gates(c: &Circuit) -> Vec<String> {
        c.gates.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn single_pair_labels() {
        assert_eq!(
            pair_label_table(),
            &[
                PairLabel::SPlus,
                PairLabel::APlus,
                PairLabel::SMinus,
                PairLabel::AMinus
            ]
        );
    }

    #[test]
    fn s2_plan_shape() {
        let p = build_s2_projection(2).unwrap();
        let mut want = Circuit::new(4);
        want.cnot(0, 2).h(0).cnot(1, 3).h(1);
        assert_eq!(gates(&p.circuit), gates(&want));
    }

    #[test]
    fn full_mask_chain_n2() {
        let p = build_mask_projection(2, 0b11).unwrap();
        let mut want = Circuit::new(4);
        want.cnot(2, 3).cnot(1, 2).cnot(0, 1).h(0);
        assert_eq!(gates(&p.circuit), gates(&want));
    }

    #[test]
    fn zero_mask_rejected() {
        assert!(matches!(
            build_mask_projection(2, 0),
            Err(VdError::Domain(_))
        ));
        assert!(build_mask_projection(2, 0b100).is_err());
    }
}
