use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use hypwalk::{aggregate, parse_config, read_records, run_experiment, summary_csv, write_report, RunOptions};

#[derive(Parser)]
#[command(name = "hypwalk", version, about = "Random-walk experiments on hyperbolic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write records.jsonl, summary.csv and report.json.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: one per core).
        #[arg(long)]
        threads: Option<usize>,
        /// Master seed, overriding the config and HYPWALK_SEED.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a config file and list every schema violation.
    Validate { config: PathBuf },
    /// Re-aggregate a records file and print its summary. When a summary.csv
    /// sits next to the records it is compared byte for byte.
    Replay { records: PathBuf },
}

fn load_config(path: &Path) -> Result<hypwalk::ExperimentConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).map_err(|e| anyhow::anyhow!("{}: invalid config\n{e}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Run { config, out, threads, seed } => {
            let config = load_config(&config)?;
            if threads == Some(0) {
                bail!("--threads must be at least 1");
            }
            let report = run_experiment(&config, &RunOptions { threads, seed_override: seed })?;
            write_report(&report, &out).with_context(|| format!("writing to {}", out.display()))?;
            print!("{}", summary_csv(&report.aggregates));
            if let Some(f) = &report.failure {
                eprintln!("incomplete: n = {}, trial {}: {}", f.n, f.trial_index, f.message);
            }
            Ok(report.exit_code() as u8)
        }
        Command::Validate { config } => {
            let c = load_config(&config)?;
            println!(
                "ok: {} ({}), group {}, {} grid points x {} trials",
                c.id,
                c.kind,
                c.group,
                c.n_grid.len(),
                c.trials
            );
            Ok(0)
        }
        Command::Replay { records } => {
            let recs = read_records(&records).with_context(|| format!("reading {}", records.display()))?;
            let mut keys: Vec<_> = recs.iter().map(|r| (&r.experiment_id, r.n, r.trial_index)).collect();
            keys.sort();
            if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
                bail!("duplicate record {} n={} trial={}", w[0].0, w[0].1, w[0].2);
            }
            let csv = summary_csv(&aggregate(&recs));
            print!("{csv}");
            let sibling = records.with_file_name("summary.csv");
            if sibling.exists() {
                let written = fs::read_to_string(&sibling)?;
                if written != csv {
                    eprintln!("{} differs from the re-aggregated summary", sibling.display());
                    return Ok(1);
                }
                eprintln!("{} reproduced exactly", sibling.display());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
