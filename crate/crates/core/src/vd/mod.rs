//! Duplicate-circuit compilation: doubling, the swap operator `S₂`, basis
//! classification, projection circuits and signed reconstruction recipes.

mod bgate;
mod duplicate;
mod expectation;
mod plan;
mod recipe;
mod swap;

pub use bgate::{build_b_gate, BGatePlan};
pub use duplicate::{duplicate, DuplicatedCircuit};
pub use expectation::build_pauli_expectation_plan;
pub use plan::{
    build_mask_projection, build_s2_projection, MaskOutcome, OutcomeLabel, PairLabel, PlanKind,
    ProjectionPlan,
};
pub use recipe::{
    required_masks, solve_s2_recipe, solve_s2_recipe_full_sum, RecipeTarget, ReconstructionRecipe,
};
pub use swap::{classify_basis, BasisClassification, BasisKind, SwapOperator};

/// Largest base width accepted by mask enumeration.
pub const MAX_MASK_QUBITS: usize = 6;
