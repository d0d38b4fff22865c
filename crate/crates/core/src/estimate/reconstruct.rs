use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::bundle::{MeasurementBundle, PlanId};
use super::energy::{CorrectedEstimate, Diagnostics, TermDiagnostic};
use super::PURITY_GUARD;
use crate::error::{Result, VdError};
use crate::pauli::PauliString;
use crate::vd::{
    BasisClassification, BasisKind, OutcomeLabel, ProjectionPlan, ReconstructionRecipe,
    SwapOperator,
};

/// `⟨S₂⟩` from the bundle's computational readout and its `S₂`-plan
/// distribution.
pub fn estimate_s2(bundle: &MeasurementBundle, recipe: &ReconstructionRecipe) -> Result<f64> {
    let proj = bundle.plan(&PlanId::S2)?.probabilities();
    recipe.evaluate(&bundle.computational.probabilities(), &proj)
}

/// One vector of the `S₂` eigenbasis of the doubled register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenVector {
    Invariant(usize),
    /// `(|lo⟩ + |hi⟩)/√2` with `hi = S₂ lo`.
    Symmetric {
        lo: usize,
        hi: usize,
    },
    /// `(|lo⟩ - |hi⟩)/√2` with `hi = S₂ lo`.
    Antisymmetric {
        lo: usize,
        hi: usize,
    },
}

/// Probabilities over the `S₂` eigenbasis, indexed so that invariant `x` is
/// entry `x`, and a partner pair `lo < hi` has its symmetric vector at `lo`
/// and its antisymmetric vector at `hi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructedStatistics {
    pub n: usize,
    pub probabilities: Vec<f64>,
    /// Masks with no projection measurement; their entries are zero and
    /// their class weight is carried in `missing_mass`.
    pub missing_masks: BTreeSet<usize>,
    pub missing_mass: f64,
    /// Total negative weight removed before normalization.
    pub clamped_mass: f64,
}

impl ReconstructedStatistics {
    pub fn eigenvector(&self, id: usize) -> EigenVector {
        let partner = SwapOperator::new(self.n).apply(id);
        match partner.cmp(&id) {
            std::cmp::Ordering::Equal => EigenVector::Invariant(id),
            std::cmp::Ordering::Greater => EigenVector::Symmetric {
                lo: id,
                hi: partner,
            },
            std::cmp::Ordering::Less => EigenVector::Antisymmetric {
                lo: partner,
                hi: id,
            },
        }
    }

    fn mask(&self, id: usize) -> usize {
        (id >> self.n) ^ (id & ((1usize << self.n) - 1))
    }

    /// Sum of all entries plus the weight of missing classes.
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum::<f64>() + self.missing_mass
    }
}

/// Assemble eigenbasis statistics: invariant states from the computational
/// readout, partner superpositions from each mask plan's outcomes. Negative
/// entries are clamped to zero and the result is normalized.
pub fn reconstruct_statistics(
    bundle: &MeasurementBundle,
    classification: &BasisClassification,
    plans: &[ProjectionPlan],
) -> Result<ReconstructedStatistics> {
    let n = classification.n;
    if bundle.n != n {
        return Err(VdError::dim(format!(
            "bundle for n={} with classification for n={n}",
            bundle.n
        )));
    }
    let swap = SwapOperator::new(n);
    let comp = bundle.computational.probabilities();
    let mut probabilities = vec![0.0; comp.len()];
    for x in classification.invariant_states() {
        probabilities[x] = comp[x];
    }
    let mut covered = BTreeSet::new();
    for plan in plans {
        let Some(mask) = plan.mask() else { continue };
        if plan.n != n {
            return Err(VdError::dim(format!(
                "mask plan for n={} used with n={n}",
                plan.n
            )));
        }
        let Some(dist) = bundle.per_plan.get(&PlanId::Mask(mask)) else {
            continue;
        };
        let probs = dist.probabilities();
        for (o, label) in plan.outcomes.iter().enumerate() {
            if let OutcomeLabel::Mask(m) = label {
                if m.is_swap_pair(&swap) {
                    let id = if m.sign > 0 { m.lo } else { m.hi };
                    probabilities[id] += probs[o];
                }
            }
        }
        covered.insert(mask);
    }
    let missing_masks: BTreeSet<usize> =
        (1..1usize << n).filter(|d| !covered.contains(d)).collect();
    let mut missing_mass: f64 = (0..comp.len())
        .filter(|&x| matches!(classification.kinds[x], BasisKind::Paired { .. }))
        .filter(|&x| missing_masks.contains(&classification.masks[x]))
        .map(|x| comp[x])
        .sum();

    let mut clamped_mass = 0.0;
    for p in probabilities.iter_mut() {
        if *p < 0.0 {
            clamped_mass -= *p;
            *p = 0.0;
        }
    }
    let total = probabilities.iter().sum::<f64>() + missing_mass;
    if total <= 0.0 || !total.is_finite() {
        return Err(VdError::Numeric(format!(
            "reconstructed statistics have total weight {total}"
        )));
    }
    probabilities.iter_mut().for_each(|p| *p /= total);
    missing_mass /= total;
    Ok(ReconstructedStatistics {
        n,
        probabilities,
        missing_masks,
        missing_mass,
        clamped_mass,
    })
}

/// `⟨S₂⟩` read from complete eigenbasis statistics: `+1` on invariant and
/// symmetric vectors, `-1` on antisymmetric ones.
pub fn s2_from_statistics(stats: &ReconstructedStatistics) -> Result<f64> {
    if let Some(d) = stats.missing_masks.iter().next() {
        return Err(VdError::Coverage(format!(
            "mask {d:0w$b} not measured",
            w = stats.n
        )));
    }
    Ok(stats
        .probabilities
        .iter()
        .enumerate()
        .map(|(id, p)| match stats.eigenvector(id) {
            EigenVector::Antisymmetric { .. } => -p,
            _ => *p,
        })
        .sum())
}

/// Per-vector weights `(corrected, raw)` for a diagonal string: the
/// eigenvalue of `O_sym · S₂` and the expectation of `O` on the first copy.
fn weights(p: &PauliString, stats: &ReconstructedStatistics, id: usize) -> (f64, f64) {
    let n = stats.n;
    let o = |x: usize| p.diagonal_sign(x >> n);
    match stats.eigenvector(id) {
        EigenVector::Invariant(x) => (o(x), o(x)),
        EigenVector::Symmetric { lo, hi } => {
            let s = (o(lo) + o(hi)) / 2.0;
            (s, s)
        }
        EigenVector::Antisymmetric { lo, hi } => {
            let s = (o(lo) + o(hi)) / 2.0;
            (-s, s)
        }
    }
}

/// Corrected `Tr(O S₂ ρ⊗ρ) / ⟨S₂⟩` for a diagonal string from eigenbasis
/// statistics. The value is not clipped.
pub fn corrected_pauli_expectation(
    p: &PauliString,
    stats: &ReconstructedStatistics,
    s2_value: f64,
) -> Result<CorrectedEstimate> {
    if !p.is_diagonal() {
        return Err(VdError::domain(format!(
            "{p} is not diagonal; rotate it first"
        )));
    }
    if p.n_qubits() != stats.n {
        return Err(VdError::dim(format!("{p} on statistics for n={}", stats.n)));
    }
    if s2_value.abs() < PURITY_GUARD || !s2_value.is_finite() {
        return Err(VdError::DegeneratePurity(s2_value));
    }
    let s = p.support_mask();
    if let Some(d) = stats
        .missing_masks
        .iter()
        .find(|&&d| (s & d).count_ones().is_multiple_of(2))
    {
        return Err(VdError::Coverage(format!(
            "{p} needs mask {d:0w$b}",
            w = stats.n
        )));
    }
    let mut numerator = 0.0;
    let mut raw = 0.0;
    let mut by_mask: BTreeMap<usize, f64> = BTreeMap::new();
    for (id, &prob) in stats.probabilities.iter().enumerate() {
        if prob == 0.0 {
            continue;
        }
        let (w, r) = weights(p, stats, id);
        numerator += prob * w;
        raw += prob * r;
        *by_mask.entry(stats.mask(id)).or_default() += prob * w;
    }
    Ok(CorrectedEstimate {
        numerator,
        denominator: s2_value,
        value: numerator / s2_value,
        raw_value: raw,
        diagnostics: Diagnostics {
            terms: vec![TermDiagnostic {
                pauli: p.to_string(),
                coeff: 1.0,
                numerator,
                corrected: numerator / s2_value,
                raw,
            }],
            clamped_mass: stats.clamped_mass,
            missing_masks: stats.missing_masks.iter().copied().collect(),
            numerator_by_mask: by_mask.into_iter().collect(),
        },
    })
}
