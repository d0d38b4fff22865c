//! Seeded random states for property tests and oracle checks.

use rand::Rng;
use rand_distr::StandardNormal;

use super::state::{DensityMatrix, StateVector};
use crate::C64;

/// Haar-random pure state (normalized complex Gaussian vector).
pub fn random_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> StateVector {
    let amps = (0..1usize << n_qubits)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::normalized(amps).expect("gaussian vector is nonzero")
}

/// Random mixed state of the given rank: a uniformly weighted-at-random
/// mixture of `rank` random pure states.
pub fn random_density_matrix<R: Rng + ?Sized>(
    n_qubits: usize,
    rank: usize,
    rng: &mut R,
) -> DensityMatrix {
    let weights: Vec<f64> = (0..rank.max(1))
        .map(|_| rng.random::<f64>() + 1e-3)
        .collect();
    let total: f64 = weights.iter().sum();
    let parts: Vec<(f64, StateVector)> = weights
        .iter()
        .map(|w| (w / total, random_state(n_qubits, rng)))
        .collect();
    DensityMatrix::mixture(&parts).expect("mixture of valid states")
}
