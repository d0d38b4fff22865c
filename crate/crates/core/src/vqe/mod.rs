//! Ansatz circuits, derivative-free minimization and sweep drivers.

mod ansatz;
mod driver;
mod simplex;

pub use ansatz::{build_ansatz, AnsatzKind, AnsatzSpec};
pub use driver::{
    optimize, sweep_1d, Correction, Evaluation, OptimizationTrace, OptimizerSettings,
};
pub use simplex::{nelder_mead, SimplexResult, SimplexSettings};
