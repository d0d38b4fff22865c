use super::plan::{pair_labels, OutcomeLabel, PlanKind, ProjectionPlan};
use super::recipe::{RecipeTarget, ReconstructionRecipe};
use crate::error::{Result, VdError};
use crate::pauli::PauliString;
use crate::sim::Circuit;

fn parity(x: usize) -> usize {
    (x.count_ones() & 1) as usize
}

/// Phase function on the register after the CNOT layer, where the first half
/// holds `a` and the second half the difference `d`.
///
/// Swapping copies maps `a` to `a ⊕ d`. With `t` a single bit of `d`, the
/// phase `(s·a)(t·a)` changes by exactly `s·a` under that map whenever `s·d`
/// is even, which is the eigenvalue the pair must carry.
fn phase_bit(n: usize, s: usize, y: usize) -> usize {
    let a = y >> n;
    let d = y & ((1usize << n) - 1);
    if d == 0 || parity(s & d) == 1 {
        return 0;
    }
    let t = 1usize << (usize::BITS - 1 - d.leading_zeros());
    parity(s & a) & parity(t & a)
}

/// Algebraic normal form of a boolean function given as a truth table:
/// the returned set bits index monomials.
fn anf(mut table: Vec<u8>) -> Vec<u8> {
    let len = table.len();
    let mut step = 1;
    while step < len {
        for y in 0..len {
            if y & step != 0 {
                table[y] ^= table[y ^ step];
            }
        }
        step <<= 1;
    }
    table
}

/// Projection circuit and recipe whose value on exact probabilities is
/// `Tr(O · S₂ · ρ⊗ρ) = Tr(O ρ²)` for a diagonal string `O`.
///
/// The circuit is the `S₂` projection with a diagonal phase layer, realized
/// by multi-control-Z gates, inserted between the CNOTs and the Hadamards.
pub fn build_pauli_expectation_plan(
    p: &PauliString,
) -> Result<(ProjectionPlan, ReconstructionRecipe)> {
    if !p.is_diagonal() {
        return Err(VdError::domain(format!(
            "{p} is not diagonal; rotate it first"
        )));
    }
    let n = p.n_qubits();
    let width = 2 * n;
    let s = p.support_mask();
    let mut circuit = Circuit::new(width).with_label(format!("pauli {p} projection"));
    for i in 0..n {
        circuit.cnot(i, i + n);
    }
    let table: Vec<u8> = (0..1usize << width)
        .map(|y| phase_bit(n, s, y) as u8)
        .collect();
    for (y, &c) in anf(table).iter().enumerate() {
        if c == 1 && y != 0 {
            let qubits = (0..width)
                .filter(|&q| (y >> (width - 1 - q)) & 1 == 1)
                .collect();
            circuit.mcz(qubits);
        }
    }
    for i in 0..n {
        circuit.h(i);
    }
    let outcomes = (0..1usize << width)
        .map(|o| OutcomeLabel::Pairs(pair_labels(n, o)))
        .collect();
    let plan = ProjectionPlan {
        kind: PlanKind::PauliExpectation(p.clone()),
        n,
        circuit,
        outcomes,
    };

    let computational = (0..1usize << n)
        .map(|a| ((a << n) | a, p.diagonal_sign(a)))
        .collect();
    let low = (1usize << n) - 1;
    let signed = (0..1usize << width)
        .map(|y| {
            let (c, d) = (y >> n, y & low);
            if d == 0 || parity(s & d) == 1 {
                0
            } else if parity(c & d) == 1 {
                -1
            } else {
                1
            }
        })
        .collect();
    let recipe = ReconstructionRecipe {
        target: RecipeTarget::PauliExpectation(p.clone()),
        n,
        computational,
        signed,
    };
    Ok((plan, recipe))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vd::solve_s2_recipe;

    #[test]
    fn anf_of_and() {
        assert_eq!(anf(vec![0, 0, 0, 1]), vec![0, 0, 0, 1]);
        assert_eq!(anf(vec![0, 1, 1, 0]), vec![0, 1, 1, 0]);
        assert_eq!(anf(vec![1, 1, 1, 1]), vec![1, 0, 0, 0]);
    }

    #[test]
    fn identity_reduces_to_s2_recipe() {
        for n in 1..=3 {
            let (plan, recipe) = build_pauli_expectation_plan(&PauliString::identity(n)).unwrap();
            assert_eq!(plan.circuit.count("MCZ"), 0);
            let s2 = solve_s2_recipe(n).unwrap();
            assert_eq!(recipe.signed, s2.signed);
            assert_eq!(recipe.computational, s2.computational);
        }
    }

    #[test]
    fn rejects_non_diagonal() {
        assert!(matches!(
            build_pauli_expectation_plan(&"XZ".parse().unwrap()),
            Err(VdError::Domain(_))
        ));
    }
}
