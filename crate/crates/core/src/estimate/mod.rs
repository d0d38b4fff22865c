//! From measured distributions to purity, reconstructed statistics and
//! corrected expectation values.

mod bundle;
mod energy;
mod pipeline;
mod reconstruct;

pub use bundle::{Distribution, MeasurementBundle, PlanId, Shots};
pub use energy::{
    b_gate_estimate, corrected_energy, BGateMeasurements, CorrectedEstimate, Diagnostics,
    RotationGroup, TermDiagnostic,
};
pub use pipeline::{EnergyPipeline, EnergyReport, GroupPlan, Method, PipelineOptions};
pub use reconstruct::{
    corrected_pauli_expectation, estimate_s2, reconstruct_statistics, s2_from_statistics,
    EigenVector, ReconstructedStatistics,
};

/// Below this `|⟨S₂⟩|` the corrected ratio is refused.
pub const PURITY_GUARD: f64 = 1e-6;
