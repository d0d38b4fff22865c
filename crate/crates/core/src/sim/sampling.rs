use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Result, VdError};

const SUM_TOL: f64 = 1e-8;

/// Outcome counts from a multinomial draw, indexed by basis outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub counts: Vec<u64>,
    pub shots: u64,
}

impl Counts {
    pub fn get(&self, outcome: usize) -> u64 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.shots as f64)
            .collect()
    }

    /// Nonzero entries as `(outcome, count)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
    }
}

/// Draws `shots` outcomes from `probs` with a ChaCha8 stream seeded by `seed`.
///
/// The multinomial is sampled as a chain of conditional binomials, so the
/// result is identical across platforms for a given seed.
pub fn sample_counts(probs: &[f64], shots: u64, seed: u64) -> Result<Counts> {
    if shots == 0 {
        return Err(VdError::input("shots must be at least 1"));
    }
    if let Some((i, p)) = probs
        .iter()
        .enumerate()
        .find(|(_, p)| !p.is_finite() || **p < -super::PROB_CLAMP)
    {
        return Err(VdError::domain(format!(
            "probability of outcome {i} is {p}"
        )));
    }
    let total: f64 = probs.iter().map(|p| p.max(0.0)).sum();
    if (total - 1.0).abs() > SUM_TOL {
        return Err(VdError::domain(format!("probabilities sum to {total}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; probs.len()];
    let mut remaining_shots = shots;
    let mut remaining_mass = total;
    for (i, &p) in probs.iter().enumerate() {
        if remaining_shots == 0 {
            break;
        }
        let p = p.max(0.0);
        if i + 1 == probs.len() || p >= remaining_mass {
            counts[i] = remaining_shots;
            break;
        }
        let conditional = (p / remaining_mass).clamp(0.0, 1.0);
        let draw = Binomial::new(remaining_shots, conditional)
            .map_err(|e| VdError::domain(e.to_string()))?
            .sample(&mut rng);
        counts[i] = draw;
        remaining_shots -= draw;
        remaining_mass -= p;
    }
    Ok(Counts { counts, shots })
}

/// Mixes a base seed with a stream index (SplitMix64 finalizer) so that
/// independent circuits in one experiment draw from unrelated streams.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_outcome_takes_every_shot() {
        let c = sample_counts(&[1.0, 0.0], 100, 7).unwrap();
        assert_eq!(c.counts, vec![100, 0]);
    }

    #[test]
    fn uniform_counts_within_five_sigma() {
        let sigma = (8196.0f64 * 0.25 * 0.75).sqrt();
        for seed in 0..20 {
            let c = sample_counts(&[0.25; 4], 8196, seed).unwrap();
            assert_eq!(c.counts.iter().sum::<u64>(), 8196);
            for &k in &c.counts {
                assert!((k as f64 - 2049.0).abs() < 5.0 * sigma, "seed {seed}: {k}");
            }
        }
    }

    #[test]
    fn bell_frequencies_average_out() {
        let mean: f64 = (0..100)
            .map(|seed| {
                sample_counts(&[0.5, 0.0, 0.0, 0.5], 8196, seed)
                    .unwrap()
                    .frequencies()[0]
            })
            .sum::<f64>()
            / 100.0;
        assert!((mean - 0.5).abs() < 0.01);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let p = [0.1, 0.2, 0.3, 0.4];
        assert_eq!(
            sample_counts(&p, 1000, 42).unwrap(),
            sample_counts(&p, 1000, 42).unwrap()
        );
        assert_ne!(
            sample_counts(&p, 1000, 42).unwrap(),
            sample_counts(&p, 1000, 43).unwrap()
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(sample_counts(&[1.0], 0, 0).is_err());
        assert!(sample_counts(&[1.1, -0.1], 10, 0).is_err());
        assert!(sample_counts(&[0.5, 0.4], 10, 0).is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        let a: Vec<u64> = (0..50).map(|i| derive_seed(1, i)).collect();
        let mut b = a.clone();
        b.sort();
        b.dedup();
        assert_eq!(a.len(), b.len());
    }
}
