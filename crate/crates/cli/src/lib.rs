//! Config-driven experiment runner for random walks on hyperbolic groups.
//!
//! The pipeline is [`parse_config`] → [`run_experiment`] → [`write_report`].
//! Trials run on a rayon pool; each trial draws its randomness from a seed
//! derived from `(master seed, experiment id, n, trial index)`, so the
//! records do not depend on the number of workers.

pub mod config;
pub mod experiments;
pub mod report;
pub mod runner;

pub use config::{parse_config, ConfigErrors, ConfigIssue, ExperimentConfig, ExperimentKind};
pub use report::{aggregate, read_records, summary_csv, write_report, Outcome, Report, TrialRecord};
pub use runner::{run_experiment, RunError, RunOptions, SEED_ENV};
