//! Experiment runner for the `vdistill` command.
//!
//! A JSON [`ExperimentConfig`] names one experiment and its inputs;
//! [`run_file`] executes it and writes CSV tables (each headed by a `#`
//! metadata block) plus optional SVG plots or, for `compile`, circuit text
//! and recipe files.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

use std::path::Path;

pub use config::{Experiment, ExperimentConfig, Overrides};
pub use error::{CliError, CliResult};
pub use experiments::{run, RunSummary};

/// Loads a config, applies command-line overrides and runs it.
pub fn run_file(config: &Path, overrides: &Overrides) -> CliResult<RunSummary> {
    let mut cfg = ExperimentConfig::load(config)?;
    cfg.apply(overrides);
    run(&cfg)
}
