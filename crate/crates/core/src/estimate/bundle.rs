use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, VdError};
use crate::sim::{sample_counts, Counts};

/// Either exact outcome probabilities or sampled counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Distribution {
    Exact(Vec<f64>),
    Sampled(Counts),
}

impl Distribution {
    /// Draw `shots` samples, or keep the exact vector.
    pub fn measure(probs: Vec<f64>, shots: Shots, seed: u64) -> Result<Self> {
        match shots {
            Shots::Exact => Ok(Distribution::Exact(probs)),
            Shots::Finite(s) => Ok(Distribution::Sampled(sample_counts(&probs, s, seed)?)),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Distribution::Exact(p) => p.len(),
            Distribution::Sampled(c) => c.counts.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Probabilities or empirical frequencies.
    pub fn probabilities(&self) -> Vec<f64> {
        match self {
            Distribution::Exact(p) => p.clone(),
            Distribution::Sampled(c) => c.frequencies(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Distribution::Exact(p) => {
                let total: f64 = p.iter().sum();
                if (total - 1.0).abs() > 1e-8 {
                    return Err(VdError::input(format!("probabilities sum to {total}")));
                }
            }
            Distribution::Sampled(c) => {
                if c.counts.iter().sum::<u64>() != c.shots {
                    return Err(VdError::input("counts do not sum to the shot count"));
                }
            }
        }
        Ok(())
    }
}

/// Serialized as the string `"exact"` or a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "ShotsRepr", into = "ShotsRepr")]
pub enum Shots {
    #[default]
    Exact,
    Finite(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ShotsRepr {
    Count(u64),
    Text(String),
}

impl From<Shots> for ShotsRepr {
    fn from(s: Shots) -> Self {
        match s {
            Shots::Exact => ShotsRepr::Text("exact".into()),
            Shots::Finite(n) => ShotsRepr::Count(n),
        }
    }
}

impl TryFrom<ShotsRepr> for Shots {
    type Error = VdError;

    fn try_from(r: ShotsRepr) -> Result<Self> {
        match r {
            ShotsRepr::Count(n) => n.to_string().parse(),
            ShotsRepr::Text(s) => s.parse(),
        }
    }
}

impl fmt::Display for Shots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shots::Exact => f.write_str("exact"),
            Shots::Finite(s) => write!(f, "{s}"),
        }
    }
}

impl std::str::FromStr for Shots {
    type Err = VdError;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("exact") {
            return Ok(Shots::Exact);
        }
        match s.parse::<u64>() {
            Ok(0) | Err(_) => Err(VdError::input(format!(
                "shots must be a positive integer or \"exact\", got {s:?}"
            ))),
            Ok(n) => Ok(Shots::Finite(n)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlanId {
    S2,
    Mask(usize),
    BGate,
}

/// Distributions measured on one doubled-register preparation: the
/// computational readout plus any projection circuits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBundle {
    pub n: usize,
    pub computational: Distribution,
    pub per_plan: BTreeMap<PlanId, Distribution>,
    pub shots_per_circuit: Shots,
    pub seed: u64,
}

impl MeasurementBundle {
    pub fn new(n: usize, computational: Distribution, shots_per_circuit: Shots, seed: u64) -> Self {
        Self {
            n,
            computational,
            per_plan: BTreeMap::new(),
            shots_per_circuit,
            seed,
        }
    }

    pub fn with_plan(mut self, id: PlanId, d: Distribution) -> Self {
        self.per_plan.insert(id, d);
        self
    }

    pub fn plan(&self, id: &PlanId) -> Result<&Distribution> {
        self.per_plan
            .get(id)
            .ok_or_else(|| VdError::input(format!("bundle has no {id:?} measurement")))
    }

    pub fn validate(&self) -> Result<()> {
        let dim = 1usize << (2 * self.n);
        for d in std::iter::once(&self.computational).chain(self.per_plan.values()) {
            if d.len() != dim {
                return Err(VdError::dim(format!(
                    "distribution over {} outcomes, expected {dim}",
                    d.len()
                )));
            }
            d.validate()?;
        }
        Ok(())
    }
}
