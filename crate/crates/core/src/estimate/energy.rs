use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::bundle::{Distribution, MeasurementBundle};
use super::reconstruct::{corrected_pauli_expectation, reconstruct_statistics};
use super::PURITY_GUARD;
use crate::error::{Result, VdError};
use crate::pauli::{PauliString, PauliSum};
use crate::vd::{BGatePlan, BasisClassification, ProjectionPlan};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDiagnostic {
    pub pauli: String,
    pub coeff: f64,
    /// Estimate of `Tr(O S₂ ρ⊗ρ)`.
    pub numerator: f64,
    pub corrected: f64,
    pub raw: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    pub terms: Vec<TermDiagnostic>,
    pub clamped_mass: f64,
    pub missing_masks: Vec<usize>,
    /// Numerator contribution per difference mask (mask 0 = invariant states).
    pub numerator_by_mask: Vec<(usize, f64)>,
}

/// `value = numerator / denominator`, next to the uncorrected estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectedEstimate {
    pub numerator: f64,
    pub denominator: f64,
    pub value: f64,
    pub raw_value: f64,
    pub diagnostics: Diagnostics,
}

/// Terms sharing one measurement basis with their measured distributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationGroup {
    pub key: PauliString,
    pub terms: Vec<(PauliString, f64)>,
    /// Doubled register after the basis rotation.
    pub bundle: MeasurementBundle,
    /// Undoubled circuit after the basis rotation.
    pub base: Distribution,
}

fn raw_term(p: &PauliString, base: &[f64]) -> f64 {
    let diag = p.diagonalized();
    base.iter()
        .enumerate()
        .map(|(x, pr)| pr * diag.diagonal_sign(x))
        .sum()
}

fn check_coverage(h: &PauliSum, groups: &[RotationGroup]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for g in groups {
        for (p, _) in &g.terms {
            if p.basis_key() != g.key {
                return Err(VdError::input(format!(
                    "{p} is not measurable in basis {}",
                    g.key
                )));
            }
            seen.insert(p.clone());
        }
    }
    match h.terms().find(|(p, _)| !seen.contains(*p)) {
        Some((p, _)) => Err(VdError::Coverage(format!("no measurement group for {p}"))),
        None => Ok(()),
    }
}

fn guard(s2: f64) -> Result<()> {
    if s2.abs() < PURITY_GUARD || !s2.is_finite() {
        return Err(VdError::DegeneratePurity(s2));
    }
    Ok(())
}

/// Termwise corrected energy: `Σ c·Tr(P S₂ ρ⊗ρ)/⟨S₂⟩ + constant`. The raw
/// value uses the undoubled distributions.
pub fn corrected_energy(
    h: &PauliSum,
    groups: &[RotationGroup],
    plans: &[ProjectionPlan],
    classification: &BasisClassification,
    s2_value: f64,
) -> Result<CorrectedEstimate> {
    guard(s2_value)?;
    check_coverage(h, groups)?;
    let mut numerator = h.constant() * s2_value;
    let mut raw = h.constant();
    let mut diag = Diagnostics::default();
    let mut by_mask: BTreeMap<usize, f64> = BTreeMap::new();
    let mut missing = BTreeSet::new();
    for g in groups {
        let stats = reconstruct_statistics(&g.bundle, classification, plans)?;
        let base = g.base.probabilities();
        diag.clamped_mass += stats.clamped_mass;
        for (p, c) in &g.terms {
            let est = corrected_pauli_expectation(&p.diagonalized(), &stats, s2_value)?;
            let r = raw_term(p, &base);
            numerator += c * est.numerator;
            raw += c * r;
            for (m, v) in est.diagnostics.numerator_by_mask {
                *by_mask.entry(m).or_default() += c * v;
            }
            missing.extend(est.diagnostics.missing_masks);
            diag.terms.push(TermDiagnostic {
                pauli: p.to_string(),
                coeff: *c,
                numerator: est.numerator,
                corrected: est.value,
                raw: r,
            });
        }
    }
    diag.numerator_by_mask = by_mask.into_iter().collect();
    diag.missing_masks = missing.into_iter().collect();
    Ok(CorrectedEstimate {
        numerator,
        denominator: s2_value,
        value: numerator / s2_value,
        raw_value: raw,
        diagnostics: diag,
    })
}

/// B-gate readouts: the unrotated doubled register for `⟨S₂⟩` and, per
/// measurement basis holding 1-local terms, the rotated register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BGateMeasurements {
    pub plan: BGatePlan,
    pub s2: Distribution,
    pub per_group: BTreeMap<PauliString, Distribution>,
}

impl BGateMeasurements {
    pub fn s2_value(&self) -> f64 {
        self.s2
            .probabilities()
            .iter()
            .enumerate()
            .map(|(o, p)| p * self.plan.s2_eigenvalue(o))
            .sum()
    }
}

/// Energy with `⟨S₂⟩` and 1-local numerators from B-gate readouts and
/// multi-qubit numerators from reconstructed statistics.
pub fn b_gate_estimate(
    h: &PauliSum,
    groups: &[RotationGroup],
    plans: &[ProjectionPlan],
    classification: &BasisClassification,
    bgate: &BGateMeasurements,
) -> Result<CorrectedEstimate> {
    check_coverage(h, groups)?;
    let s2 = bgate.s2_value();
    guard(s2)?;
    let mut numerator = h.constant() * s2;
    let mut raw = h.constant();
    let mut diag = Diagnostics::default();
    for g in groups {
        let base = g.base.probabilities();
        let needs_stats = g.terms.iter().any(|(p, _)| p.weight() > 1);
        let stats = if needs_stats {
            Some(reconstruct_statistics(&g.bundle, classification, plans)?)
        } else {
            None
        };
        for (p, c) in &g.terms {
            let num = if p.weight() == 1 {
                let q = p
                    .letters()
                    .iter()
                    .position(|&l| l != crate::pauli::Pauli::I)
                    .expect("weight one");
                let dist = bgate.per_group.get(&g.key).ok_or_else(|| {
                    VdError::Coverage(format!("no B-gate readout in basis {}", g.key))
                })?;
                dist.probabilities()
                    .iter()
                    .enumerate()
                    .map(|(o, pr)| pr * bgate.plan.one_local_z_eigenvalue(o, q))
                    .sum()
            } else {
                let stats = stats.as_ref().expect("computed for multi-qubit terms");
                corrected_pauli_expectation(&p.diagonalized(), stats, s2)?.numerator
            };
            let r = raw_term(p, &base);
            numerator += c * num;
            raw += c * r;
            diag.terms.push(TermDiagnostic {
                pauli: p.to_string(),
                coeff: *c,
                numerator: num,
                corrected: num / s2,
                raw: r,
            });
        }
        if let Some(s) = stats {
            diag.clamped_mass += s.clamped_mass;
        }
    }
    Ok(CorrectedEstimate {
        numerator,
        denominator: s2,
        value: numerator / s2,
        raw_value: raw,
        diagnostics: diag,
    })
}
