use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::plan::pair_labels;
use super::swap::classify_basis;
use super::MAX_MASK_QUBITS;
use crate::error::{Result, VdError};
use crate::pauli::{PauliString, PauliSum};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RecipeTarget {
    S2,
    PauliExpectation(PauliString),
}

/// Signed linear combination of computational-basis probabilities on the
/// doubled register and of one projection circuit's outcome probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionRecipe {
    pub target: RecipeTarget,
    pub n: usize,
    /// `(basis state, coefficient)` read from the computational measurement.
    pub computational: Vec<(usize, f64)>,
    /// Coefficient in `{-1, 0, +1}` per projection outcome.
    pub signed: Vec<i8>,
}

impl ReconstructionRecipe {
    pub fn evaluate(&self, computational: &[f64], projection: &[f64]) -> Result<f64> {
        let dim = 1usize << (2 * self.n);
        if computational.len() != dim || projection.len() != dim {
            return Err(VdError::dim(format!(
                "recipe over {dim} outcomes given {} and {} probabilities",
                computational.len(),
                projection.len()
            )));
        }
        let comp: f64 = self
            .computational
            .iter()
            .map(|&(x, c)| c * computational[x])
            .sum();
        let proj: f64 = self
            .signed
            .iter()
            .zip(projection)
            .map(|(&s, p)| s as f64 * p)
            .sum();
        Ok(comp + proj)
    }

    /// Nonzero projection coefficients as `(outcome, coefficient)`.
    pub fn signed_terms(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.signed
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(o, &s)| (o, s))
    }
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 {
        return Err(VdError::domain("recipe needs at least one qubit"));
    }
    Ok(())
}

/// Invariant states from the computational measurement plus, for each
/// `S₂`-plan outcome with at least one A-type pair, the product of pair swap
/// signs. All-S outcomes get coefficient zero.
pub fn solve_s2_recipe(n: usize) -> Result<ReconstructionRecipe> {
    check_width(n)?;
    let classes = classify_basis(n);
    let computational = classes.invariant_states().map(|x| (x, 1.0)).collect();
    let signed = (0..1usize << (2 * n))
        .map(|o| {
            let labels = pair_labels(n, o);
            if labels.iter().any(|l| l.is_antisymmetric_type()) {
                labels.iter().map(|l| l.swap_sign()).product()
            } else {
                0
            }
        })
        .collect();
    Ok(ReconstructionRecipe {
        target: RecipeTarget::S2,
        n,
        computational,
        signed,
    })
}

/// Every `S₂`-plan outcome weighted by its swap eigenvalue, with no
/// computational part.
pub fn solve_s2_recipe_full_sum(n: usize) -> Result<ReconstructionRecipe> {
    check_width(n)?;
    let signed = (0..1usize << (2 * n))
        .map(|o| pair_labels(n, o).iter().map(|l| l.swap_sign()).product())
        .collect();
    Ok(ReconstructionRecipe {
        target: RecipeTarget::S2,
        n,
        computational: Vec::new(),
        signed,
    })
}

/// Difference masks whose paired states carry a nonzero symmetrized
/// eigenvalue for at least one term of `h`.
pub fn required_masks(h: &PauliSum) -> Result<BTreeSet<usize>> {
    let n = h.n_qubits();
    if n > MAX_MASK_QUBITS {
        return Err(VdError::Capacity(format!(
            "mask enumeration limited to {MAX_MASK_QUBITS} qubits, got {n}"
        )));
    }
    let classes = classify_basis(n);
    let mut masks = BTreeSet::new();
    for (p, _) in h.terms() {
        let diag = p.diagonalized();
        for (x, partner) in classes.pairs() {
            let mask = classes.masks[x];
            if masks.contains(&mask) {
                continue;
            }
            let (a, b) = (x >> n, partner >> n);
            if diag.diagonal_sign(a) + diag.diagonal_sign(b) != 0.0 {
                masks.insert(mask);
            }
        }
    }
    Ok(masks)
}
