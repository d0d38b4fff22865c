use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ansatz::{build_ansatz, AnsatzSpec};
use super::simplex::{nelder_mead, SimplexSettings};
use crate::error::{Result, VdError};
use crate::estimate::{EnergyPipeline, EnergyReport, PipelineOptions};
use crate::pauli::PauliSum;
use crate::sim::{
    apply_circuit_noisy, apply_circuit_pure, derive_seed, DensityMatrix, NoiseSpec, StateVector,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub params: Vec<f64>,
    pub raw_energy: f64,
    pub corrected_energy: Option<f64>,
    /// Restart index, or grid index for sweeps.
    pub run: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    pub restarts: usize,
    pub seed: u64,
    pub simplex: SimplexSettings,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            restarts: 5,
            seed: 0,
            simplex: SimplexSettings::default(),
        }
    }
}

/// Evaluated points with the minimum raw energy at `best`. Optimizer traces
/// record each restart's improving steps; sweep traces record every grid
/// point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationTrace {
    pub evaluations: Vec<Evaluation>,
    pub best: usize,
    pub seed: u64,
    pub settings: Option<OptimizerSettings>,
    pub converged: bool,
    pub best_report: Option<EnergyReport>,
}

impl OptimizationTrace {
    pub fn best(&self) -> &Evaluation {
        &self.evaluations[self.best]
    }
}

/// Corrected estimation applied at the optimum.
#[derive(Debug, Clone, Copy)]
pub struct Correction<'a> {
    pub pipeline: &'a EnergyPipeline,
    pub options: &'a PipelineOptions,
}

fn raw_energy(h: &PauliSum, spec: &AnsatzSpec, params: &[f64], noise: &NoiseSpec) -> Result<f64> {
    let c = build_ansatz(spec, params)?;
    if noise.is_noiseless() {
        let psi = apply_circuit_pure(&c, &StateVector::zero(spec.n_qubits))?;
        Ok(h.expectation_pure(&psi))
    } else {
        let rho = apply_circuit_noisy(&c, &DensityMatrix::zero(spec.n_qubits), noise)?;
        Ok(h.expectation(&rho))
    }
}

fn argmin(evals: &[Evaluation]) -> usize {
    (0..evals.len())
        .min_by(|&a, &b| evals[a].raw_energy.total_cmp(&evals[b].raw_energy))
        .unwrap_or(0)
}

fn finish(
    h: &PauliSum,
    spec: &AnsatzSpec,
    mut evaluations: Vec<Evaluation>,
    correction: Option<Correction<'_>>,
) -> Result<(Vec<Evaluation>, usize, Option<EnergyReport>)> {
    let best = argmin(&evaluations);
    let mut report = None;
    if let Some(c) = correction {
        if c.pipeline.hamiltonian != *h {
            return Err(VdError::input(
                "correction pipeline was compiled for a different Hamiltonian",
            ));
        }
        let circuit = build_ansatz(spec, &evaluations[best].params)?;
        let r = c.pipeline.run(&circuit, c.options)?;
        evaluations[best].corrected_energy = Some(r.vd.value);
        report = Some(r);
    }
    Ok((evaluations, best, report))
}

/// Raw energy on every grid angle of a one-parameter ansatz; the corrected
/// energy is evaluated at the raw minimum only.
pub fn sweep_1d(
    h: &PauliSum,
    spec: &AnsatzSpec,
    grid: &[f64],
    noise: &NoiseSpec,
    correction: Option<Correction<'_>>,
) -> Result<OptimizationTrace> {
    if grid.is_empty() {
        return Err(VdError::input("empty angle grid"));
    }
    if spec.n_params() != 1 {
        return Err(VdError::input(format!(
            "sweep needs a one-parameter ansatz, got {}",
            spec.n_params()
        )));
    }
    noise.validate()?;
    let evaluations = grid
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            Ok(Evaluation {
                params: vec![t],
                raw_energy: raw_energy(h, spec, &[t], noise)?,
                corrected_energy: None,
                run: i,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (evaluations, best, best_report) = finish(h, spec, evaluations, correction)?;
    Ok(OptimizationTrace {
        evaluations,
        best,
        seed: 0,
        settings: None,
        converged: true,
        best_report,
    })
}

/// Multi-start simplex descent on the raw energy from seeded uniform
/// initial points in `[-π, π)`.
pub fn optimize(
    h: &PauliSum,
    spec: &AnsatzSpec,
    noise: &NoiseSpec,
    settings: &OptimizerSettings,
    correction: Option<Correction<'_>>,
) -> Result<OptimizationTrace> {
    if settings.restarts == 0 {
        return Err(VdError::input("at least one restart is required"));
    }
    spec.validate()?;
    noise.validate()?;
    let dim = spec.n_params();
    let runs = (0..settings.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(settings.seed, r as u64));
            let x0: Vec<f64> = (0..dim)
                .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            let mut steps: Vec<Evaluation> = Vec::new();
            let mut failure = None;
            let result = nelder_mead(
                |x| match raw_energy(h, spec, x, noise) {
                    Ok(e) => {
                        if steps.last().is_none_or(|s| e < s.raw_energy) {
                            steps.push(Evaluation {
                                params: x.to_vec(),
                                raw_energy: e,
                                corrected_energy: None,
                                run: r,
                            });
                        }
                        e
                    }
                    Err(err) => {
                        failure.get_or_insert(err);
                        f64::INFINITY
                    }
                },
                &x0,
                &settings.simplex,
            );
            match failure {
                Some(e) => Err(e),
                None => Ok((steps, result.converged)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let converged = runs.iter().all(|(_, c)| *c);
    let evaluations: Vec<Evaluation> = runs.into_iter().flat_map(|(s, _)| s).collect();
    let (evaluations, best, best_report) = finish(h, spec, evaluations, correction)?;
    Ok(OptimizationTrace {
        evaluations,
        best,
        seed: settings.seed,
        settings: Some(settings.clone()),
        converged,
        best_report,
    })
}
