//! Fan-out of trials over a worker pool and fan-in of their records.

use std::time::Instant;

use hypwalk_core::walk::derive_seed;
use hypwalk_core::Error;
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::experiments::Prepared;
use crate::report::{aggregate, Report, SeedSource, TrialFailure, TrialRecord, WallTime};

pub const SEED_ENV: &str = "HYPWALK_SEED";

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Worker count; `None` uses one per available core.
    pub threads: Option<usize>,
    pub seed_override: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("no master seed: set `seed` in the config, pass --seed, or export {SEED_ENV}")]
    MissingSeed,
    #[error("{SEED_ENV}={0:?} is not an unsigned integer")]
    BadSeedEnv(String),
    #[error("could not start {0} worker threads: {1}")]
    Pool(usize, String),
    #[error(transparent)]
    Setup(#[from] Error),
}

/// Picks the master seed: `--seed`, then the config, then the environment.
pub fn resolve_seed(config: &ExperimentConfig, opts: &RunOptions) -> Result<(u64, SeedSource), RunError> {
    if let Some(s) = opts.seed_override {
        return Ok((s, SeedSource::Override));
    }
    if let Some(s) = config.seed {
        return Ok((s, SeedSource::Config));
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map(|s| (s, SeedSource::Environment)).map_err(|_| RunError::BadSeedEnv(v)),
        Err(_) if config.kind.is_profile() => Ok((0, SeedSource::Unused)),
        Err(_) => Err(RunError::MissingSeed),
    }
}

/// Runs every `(n, trial)` of the grid. A failing trial stops the run after
/// its grid point; the records before the first failure are kept and the
/// report is marked incomplete.
pub fn run_experiment(config: &ExperimentConfig, opts: &RunOptions) -> Result<Report, RunError> {
    let start = Instant::now();
    let (master_seed, seed_source) = resolve_seed(config, opts)?;
    let threads = opts.threads.unwrap_or_else(rayon::current_num_threads).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| RunError::Pool(threads, e.to_string()))?;
    let prepared = Prepared::new(config)?;

    let mut records = Vec::new();
    let mut wall_times = Vec::new();
    let mut failure = None;
    for &n in &config.n_grid {
        let t0 = Instant::now();
        let results: Vec<_> = pool.install(|| {
            (0..config.trials)
                .into_par_iter()
                .map(|t| {
                    let seed = derive_seed(master_seed, &config.id, n, t);
                    (t, seed, prepared.run_trial(n, seed))
                })
                .collect()
        });
        for (trial_index, derived_seed, result) in results {
            match result {
                Ok(outcome) => records.push(TrialRecord {
                    experiment_id: config.id.clone(),
                    n,
                    trial_index,
                    derived_seed,
                    outcome,
                }),
                Err(e) => {
                    failure = Some(TrialFailure {
                        n,
                        trial_index,
                        budget_exceeded: matches!(e, Error::BudgetExceeded { .. }),
                        message: e.to_string(),
                    });
                    break;
                }
            }
        }
        wall_times.push(WallTime { n, seconds: t0.elapsed().as_secs_f64() });
        if failure.is_some() {
            break;
        }
    }

    Ok(Report {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        experiment_id: config.id.clone(),
        config: config.clone(),
        master_seed,
        seed_source,
        threads,
        complete: failure.is_none(),
        failure,
        record_count: records.len(),
        aggregates: aggregate(&records),
        wall_times,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        records,
    })
}
