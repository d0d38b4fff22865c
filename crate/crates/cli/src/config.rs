//! Experiment configuration files.
//!
//! ```json
//! {"experiment": "depol-sweep",
//!  "fixture": "fixtures/h2_2q_2.json",
//!  "lambda_grid": [0.0, 0.01, 0.02],
//!  "shots": "exact",
//!  "method": "bgate-hybrid",
//!  "output": "out/sweep.csv"}
//! ```
//!
//! Relative paths resolve against the directory holding the config file.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use vdistill::estimate::{Method, Shots};
use vdistill::vqe::AnsatzSpec;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Compile,
    DepolSweep,
    Dissociation,
    Vqe,
    ShotNoise,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Experiment::Compile => "compile",
            Experiment::DepolSweep => "depol-sweep",
            Experiment::Dissociation => "dissociation",
            Experiment::Vqe => "vqe",
            Experiment::ShotNoise => "shot-noise",
        })
    }
}

fn default_method() -> Method {
    Method::Vd
}

fn default_repetitions() -> usize {
    100
}

fn default_restarts() -> usize {
    8
}

fn default_grid_points() -> usize {
    51
}

/// `0, 0.01, …, 0.1`.
pub fn default_lambda_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 100.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Single fixture for compile, depol-sweep and vqe.
    #[serde(default)]
    pub fixture: Option<PathBuf>,
    /// One fixture per distance for dissociation, one per row for shot-noise.
    #[serde(default)]
    pub fixtures: Vec<PathBuf>,
    /// Defaults by width: the reduced ansatz for 2 qubits, two-layer
    /// hardware-efficient for 3 (`010`) and 4 (`1100`).
    #[serde(default)]
    pub ansatz: Option<AnsatzSpec>,
    #[serde(default)]
    pub lambda_grid: Option<Vec<f64>>,
    /// Depolarization for every experiment except depol-sweep.
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub shots: Shots,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_method")]
    pub method: Method,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    /// Angle grid size for one-parameter ansätze.
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    /// CSV path, or the artifact directory for compile.
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub svg: Option<PathBuf>,
}

/// Command-line values that replace those in the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub shots: Option<Shots>,
    pub lambda_grid: Option<Vec<f64>>,
    pub output: Option<PathBuf>,
    /// Directory for outputs the config leaves unnamed.
    pub out_dir: Option<PathBuf>,
}

fn check_lambda(l: f64) -> CliResult<()> {
    if !(0.0..=1.0).contains(&l) {
        return Err(CliError::config(format!(
            "depolarization {l} is outside [0, 1]"
        )));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::config(e.to_string()))
    }

    /// Reads, resolves relative paths and validates.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_json(&text)?;
        if let Some(dir) = path.parent() {
            cfg.resolve_paths(dir);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        let join = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        self.fixture.iter_mut().for_each(join);
        self.fixtures.iter_mut().for_each(join);
        self.output.iter_mut().for_each(join);
        self.svg.iter_mut().for_each(join);
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(s) = o.shots {
            self.shots = s;
        }
        if let Some(g) = &o.lambda_grid {
            self.lambda_grid = Some(g.clone());
        }
        if let Some(p) = &o.output {
            self.output = Some(p.clone());
        }
        if self.output.is_none() {
            if let Some(dir) = &o.out_dir {
                let name = match self.experiment {
                    Experiment::Compile => self.experiment.to_string(),
                    e => format!("{e}.csv"),
                };
                self.output = Some(dir.join(name));
            }
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        match self.experiment {
            Experiment::Compile | Experiment::DepolSweep | Experiment::Vqe => {
                if self.fixture.is_none() || !self.fixtures.is_empty() {
                    return Err(CliError::config(format!(
                        "{} takes exactly one `fixture`",
                        self.experiment
                    )));
                }
            }
            Experiment::Dissociation | Experiment::ShotNoise => {
                if self.fixture.is_some() {
                    return Err(CliError::config(format!(
                        "{} takes a `fixtures` list",
                        self.experiment
                    )));
                }
            }
        }
        check_lambda(self.lambda)?;
        for &l in self.lambda_grid() {
            check_lambda(l)?;
        }
        if self.experiment == Experiment::ShotNoise && self.repetitions < 2 {
            return Err(CliError::config("shot-noise needs at least 2 repetitions"));
        }
        if self.restarts == 0 {
            return Err(CliError::config("restarts must be at least 1"));
        }
        if self.grid_points < 2 {
            return Err(CliError::config("grid_points must be at least 2"));
        }
        if let Some(a) = &self.ansatz {
            a.validate()
                .map_err(|e| CliError::config(format!("ansatz: {e}")))?;
        }
        Ok(())
    }

    pub fn lambda_grid(&self) -> &[f64] {
        static DEFAULT: std::sync::OnceLock<Vec<f64>> = std::sync::OnceLock::new();
        match &self.lambda_grid {
            Some(g) => g,
            None => DEFAULT.get_or_init(default_lambda_grid),
        }
    }

    /// The configured ansatz, or the default for an `n`-qubit fixture.
    pub fn ansatz_for(&self, n: usize) -> CliResult<AnsatzSpec> {
        let spec = match &self.ansatz {
            Some(a) => a.clone(),
            None => match n {
                2 => AnsatzSpec::reduced_ucc_2q(),
                3 => AnsatzSpec::hardware_efficient(3, 2, "010"),
                4 => AnsatzSpec::hardware_efficient(4, 2, "1100"),
                _ => {
                    return Err(CliError::config(format!(
                        "no default ansatz for {n} qubits; set `ansatz`"
                    )))
                }
            },
        };
        if spec.n_qubits != n {
            return Err(CliError::config(format!(
                "ansatz has {} qubits, fixture has {n}",
                spec.n_qubits
            )));
        }
        Ok(spec)
    }
}
