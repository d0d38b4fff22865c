use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bundle::{Distribution, MeasurementBundle, PlanId, Shots};
use super::energy::{
    b_gate_estimate, corrected_energy, BGateMeasurements, CorrectedEstimate, RotationGroup,
};
use super::reconstruct::estimate_s2;
use crate::error::Result;
use crate::pauli::{basis_rotation_circuit, PauliString, PauliSum};
use crate::sim::{
    apply_circuit_noisy, derive_seed, measurement_probabilities, Circuit, DensityMatrix, NoiseSpec,
};
use crate::vd::{
    build_b_gate, build_mask_projection, build_s2_projection, classify_basis, required_masks,
    solve_s2_recipe, BGatePlan, BasisClassification, ProjectionPlan, ReconstructionRecipe,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Raw,
    Vd,
    BgateHybrid,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Raw => "raw",
            Method::Vd => "vd",
            Method::BgateHybrid => "bgate-hybrid",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub noise: NoiseSpec,
    pub shots: Shots,
    pub seed: u64,
    /// Also run the B-gate readouts.
    pub with_bgate: bool,
}

/// Terms measured after one basis rotation, and the masks they need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupPlan {
    pub key: PauliString,
    pub terms: Vec<(PauliString, f64)>,
    pub rotation: Circuit,
    /// Every compiled mask is measured in every basis.
    pub masks: Vec<usize>,
}

/// Every circuit and recipe needed to estimate the energy of one
/// Hamiltonian.
#[derive(Debug, Clone)]
pub struct EnergyPipeline {
    pub hamiltonian: PauliSum,
    pub groups: Vec<GroupPlan>,
    pub mask_plans: Vec<ProjectionPlan>,
    pub s2_plan: ProjectionPlan,
    pub s2_recipe: ReconstructionRecipe,
    pub bgate: BGatePlan,
    pub classification: BasisClassification,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub raw: f64,
    pub s2: f64,
    pub vd: CorrectedEstimate,
    pub bgate: Option<CorrectedEstimate>,
}

impl EnergyReport {
    pub fn value(&self, method: Method) -> Option<f64> {
        match method {
            Method::Raw => Some(self.raw),
            Method::Vd => Some(self.vd.value),
            Method::BgateHybrid => self.bgate.as_ref().map(|b| b.value),
        }
    }
}

struct Sampler {
    shots: Shots,
    seed: u64,
    next: u64,
}

impl Sampler {
    fn take(&mut self, probs: Vec<f64>) -> Result<Distribution> {
        let stream = self.next;
        self.next += 1;
        Distribution::measure(probs, self.shots, derive_seed(self.seed, stream))
    }
}

fn rotate(rho: &DensityMatrix, rotation: &Circuit) -> Result<DensityMatrix> {
    if rotation.is_empty() {
        return Ok(rho.clone());
    }
    apply_circuit_noisy(rotation, rho, &NoiseSpec::noiseless())
}

impl EnergyPipeline {
    pub fn compile(h: &PauliSum) -> Result<Self> {
        let n = h.n_qubits();
        let masks: Vec<usize> = required_masks(h)?.into_iter().collect();
        let groups = h
            .basis_groups()
            .into_iter()
            .map(|(key, terms)| GroupPlan {
                rotation: basis_rotation_circuit(&key),
                key,
                terms,
                masks: masks.clone(),
            })
            .collect();
        let mask_plans = masks
            .iter()
            .map(|&d| build_mask_projection(n, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            hamiltonian: h.clone(),
            groups,
            mask_plans,
            s2_plan: build_s2_projection(n)?,
            s2_recipe: solve_s2_recipe(n)?,
            bgate: build_b_gate(n)?,
            classification: classify_basis(n),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.hamiltonian.n_qubits()
    }

    pub fn required_masks(&self) -> Vec<usize> {
        self.mask_plans.iter().filter_map(|p| p.mask()).collect()
    }

    fn mask_plan(&self, d: usize) -> &ProjectionPlan {
        self.mask_plans
            .iter()
            .find(|p| p.mask() == Some(d))
            .expect("group masks are a subset of the compiled set")
    }

    /// Prepares the ansatz under `opts.noise` from `|0…0⟩` and estimates.
    pub fn run(&self, ansatz: &Circuit, opts: &PipelineOptions) -> Result<EnergyReport> {
        let rho = apply_circuit_noisy(ansatz, &DensityMatrix::zero(ansatz.n_qubits), &opts.noise)?;
        self.run_state(&rho, opts)
    }

    /// Estimates from a prepared base state. Both copies carry the same
    /// state, so the doubled register is `ρ ⊗ ρ`; projection circuits are
    /// depolarized at the uniform rate of `opts.noise`.
    pub fn run_state(&self, rho: &DensityMatrix, opts: &PipelineOptions) -> Result<EnergyReport> {
        let n = self.n_qubits();
        let plan_noise = opts.noise.uniform();
        let mut sampler = Sampler {
            shots: opts.shots,
            seed: opts.seed,
            next: 0,
        };
        let identity_key = PauliString::identity(n).basis_key();

        let mut groups = Vec::with_capacity(self.groups.len());
        let mut unrotated_comp = None;
        let mut bgate_groups = BTreeMap::new();
        let mut unrotated_b = None;
        for g in &self.groups {
            let rho_r = rotate(rho, &g.rotation)?;
            let base = sampler.take(measurement_probabilities(&rho_r)?)?;
            let doubled = rho_r.tensor(&rho_r);
            let comp = sampler.take(measurement_probabilities(&doubled)?)?;
            let mut bundle = MeasurementBundle::new(n, comp, opts.shots, opts.seed);
            for &d in &g.masks {
                let out = apply_circuit_noisy(&self.mask_plan(d).circuit, &doubled, &plan_noise)?;
                bundle.per_plan.insert(
                    PlanId::Mask(d),
                    sampler.take(measurement_probabilities(&out)?)?,
                );
            }
            if opts.with_bgate && g.terms.iter().any(|(p, _)| p.weight() == 1) {
                let out = apply_circuit_noisy(&self.bgate.circuit, &doubled, &plan_noise)?;
                let dist = sampler.take(measurement_probabilities(&out)?)?;
                if g.key == identity_key {
                    unrotated_b = Some(dist.clone());
                }
                bgate_groups.insert(g.key.clone(), dist);
            }
            if g.key == identity_key {
                unrotated_comp = Some(bundle.computational.clone());
            }
            groups.push(RotationGroup {
                key: g.key.clone(),
                terms: g.terms.clone(),
                bundle,
                base,
            });
        }

        let doubled = rho.tensor(rho);
        let comp = match unrotated_comp {
            Some(c) => c,
            None => sampler.take(measurement_probabilities(&doubled)?)?,
        };
        let s2_out = apply_circuit_noisy(&self.s2_plan.circuit, &doubled, &plan_noise)?;
        let s2_bundle = MeasurementBundle::new(n, comp, opts.shots, opts.seed).with_plan(
            PlanId::S2,
            sampler.take(measurement_probabilities(&s2_out)?)?,
        );
        let s2 = estimate_s2(&s2_bundle, &self.s2_recipe)?;

        let vd = corrected_energy(
            &self.hamiltonian,
            &groups,
            &self.mask_plans,
            &self.classification,
            s2,
        )?;
        let bgate = if opts.with_bgate {
            let s2_dist = match unrotated_b {
                Some(d) => d,
                None => {
                    let out = apply_circuit_noisy(&self.bgate.circuit, &doubled, &plan_noise)?;
                    sampler.take(measurement_probabilities(&out)?)?
                }
            };
            let m = BGateMeasurements {
                plan: self.bgate.clone(),
                s2: s2_dist,
                per_group: bgate_groups,
            };
            Some(b_gate_estimate(
                &self.hamiltonian,
                &groups,
                &self.mask_plans,
                &self.classification,
                &m,
            )?)
        } else {
            None
        };
        Ok(EnergyReport {
            raw: vd.raw_value,
            s2,
            vd,
            bgate,
        })
    }

    /// Raw energy only, from the undoubled state.
    pub fn raw_energy(&self, rho: &DensityMatrix) -> f64 {
        self.hamiltonian.expectation(rho)
    }
}
