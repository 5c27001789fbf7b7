//! Trial records, per-`n` aggregates and the three output files.
//!
//! Aggregates are a pure function of the records, so `replay` on a
//! `records.jsonl` reproduces `summary.csv` byte for byte.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use hypwalk_core::walk::{BernoulliEstimate, DriftEstimate, Z_95};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::ExperimentConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreenessOutcome {
    /// Stallings free-product certificate; `None` outside free groups.
    pub certificate: Option<bool>,
    pub relation_found: bool,
    pub witness: Option<String>,
    pub words_examined: u64,
    pub s_count: usize,
    pub max_syllables: usize,
    pub exponent_bound: u32,
    /// A relation was found although the certificate claimed freeness.
    pub soundness_violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QgOutcome {
    pub certificate: Option<bool>,
    pub words_checked: u64,
    /// Words whose labeled path is not an `(8, c_final)`-quasi-geodesic.
    pub bound_violations: u64,
    /// Words ending at the basepoint on a trial with a true certificate.
    pub nontrivial_violations: u64,
    pub closed_words: u64,
    pub max_measured_c: String,
    pub c_final: String,
    pub first_violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchOutcome {
    pub matched: bool,
    pub a: u64,
    pub b: u64,
    pub candidates: usize,
    pub self_match: bool,
    pub g: Option<String>,
    pub range_p: Option<(usize, usize)>,
    pub range_q: Option<(usize, usize)>,
    pub reversed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileOutcome {
    /// `K` for transversality, `κ` for separation.
    pub param: u64,
    pub max_diameter: u64,
    pub candidates: usize,
    pub excluded: usize,
    pub truncation: u32,
    /// Candidate attaining the maximum, first in candidate order.
    pub argmax: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoxOutcome {
    pub loxodromic: bool,
    pub translation_length: u64,
    pub z_length: u64,
    pub path_length: u64,
    pub lambda: Option<String>,
    pub c: Option<String>,
    pub exponents: Vec<i64>,
    pub factor_lengths: Vec<u64>,
    /// Rejected samples before every factor was loxodromic and independent.
    pub resamples: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Outcome {
    Drift { distance: u64, in_band: Option<bool> },
    Freeness(FreenessOutcome),
    RelationSearch(FreenessOutcome),
    QgWords(QgOutcome),
    Matching(MatchOutcome),
    Transversality(ProfileOutcome),
    Separation(ProfileOutcome),
    Lox(LoxOutcome),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub experiment_id: String,
    pub n: u64,
    pub trial_index: u64,
    pub derived_seed: u64,
    pub outcome: Outcome,
}

/// One `summary.csv` row plus kind-specific detail for `report.json`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub n: u64,
    pub statistic: &'static str,
    pub trials: u64,
    pub estimate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub successes: Option<u64>,
    /// Exact value of the estimate when it is rational.
    pub exact: Option<String>,
    pub candidates: Option<usize>,
    pub truncation: Option<u32>,
    pub detail: BTreeMap<String, Value>,
}

fn bernoulli(n: u64, statistic: &'static str, successes: u64, trials: u64) -> Aggregate {
    let est = BernoulliEstimate::from_counts(successes, trials);
    Aggregate {
        n,
        statistic,
        trials,
        estimate: est.p_hat_f64(),
        ci_lo: est.wilson.0,
        ci_hi: est.wilson.1,
        successes: Some(successes),
        exact: Some(est.p_hat.to_string()),
        candidates: None,
        truncation: None,
        detail: BTreeMap::new(),
    }
}

fn aggregate_group(n: u64, records: &[&TrialRecord]) -> Aggregate {
    let trials = records.len() as u64;
    let count = |f: &dyn Fn(&Outcome) -> bool| records.iter().filter(|r| f(&r.outcome)).count() as u64;
    let Some(first) = records.first() else {
        return bernoulli(n, "empty", 0, 0);
    };
    match &first.outcome {
        Outcome::Drift { .. } => {
            let distances: Vec<u64> = records
                .iter()
                .map(|r| match r.outcome {
                    Outcome::Drift { distance, .. } => distance,
                    _ => 0,
                })
                .collect();
            let est = DriftEstimate::from_distances(n as usize, distances);
            let mean = est.mean_f64();
            let half = Z_95 * est.std_error;
            let banded = count(&|o| matches!(o, Outcome::Drift { in_band: Some(_), .. }));
            let outside = count(&|o| matches!(o, Outcome::Drift { in_band: Some(false), .. }));
            let mut detail = BTreeMap::new();
            detail.insert("std_error".into(), json!(est.std_error));
            if banded == trials {
                detail.insert("outside_band".into(), json!(outside));
                detail.insert("fraction_outside".into(), json!(outside as f64 / trials as f64));
            }
            Aggregate {
                n,
                statistic: "mean d/n",
                trials,
                estimate: mean,
                ci_lo: mean - half,
                ci_hi: mean + half,
                successes: None,
                exact: Some(est.mean_normalized_distance.to_string()),
                candidates: None,
                truncation: None,
                detail,
            }
        }
        Outcome::Freeness(_) | Outcome::RelationSearch(_) => {
            let outs: Vec<&FreenessOutcome> = records
                .iter()
                .filter_map(|r| match &r.outcome {
                    Outcome::Freeness(o) | Outcome::RelationSearch(o) => Some(o),
                    _ => None,
                })
                .collect();
            let freeness = matches!(first.outcome, Outcome::Freeness(_));
            let mut agg = if freeness {
                let s = outs.iter().filter(|o| o.certificate == Some(true)).count() as u64;
                bernoulli(n, "p(free-product certificate)", s, trials)
            } else {
                let s = outs.iter().filter(|o| !o.relation_found).count() as u64;
                bernoulli(n, "p(no relation found)", s, trials)
            };
            let d = &mut agg.detail;
            d.insert("relations_found".into(), json!(outs.iter().filter(|o| o.relation_found).count()));
            d.insert("soundness_violations".into(), json!(outs.iter().filter(|o| o.soundness_violation).count()));
            d.insert("words_examined".into(), json!(outs.iter().map(|o| o.words_examined).sum::<u64>()));
            if let Some(o) = outs.first() {
                d.insert("s_count".into(), json!(o.s_count));
                d.insert("max_syllables".into(), json!(o.max_syllables));
                d.insert("exponent_bound".into(), json!(o.exponent_bound));
                agg.candidates = Some(o.s_count);
            }
            agg
        }
        Outcome::QgWords(_) => {
            let outs: Vec<&QgOutcome> = records
                .iter()
                .filter_map(|r| match &r.outcome {
                    Outcome::QgWords(o) => Some(o),
                    _ => None,
                })
                .collect();
            let clean = outs.iter().filter(|o| o.bound_violations == 0 && o.nontrivial_violations == 0).count() as u64;
            let mut agg = bernoulli(n, "p(no violation)", clean, trials);
            let d = &mut agg.detail;
            d.insert("certificate_trials".into(), json!(outs.iter().filter(|o| o.certificate == Some(true)).count()));
            d.insert("words_checked".into(), json!(outs.iter().map(|o| o.words_checked).sum::<u64>()));
            d.insert("bound_violations".into(), json!(outs.iter().map(|o| o.bound_violations).sum::<u64>()));
            d.insert("nontrivial_violations".into(), json!(outs.iter().map(|o| o.nontrivial_violations).sum::<u64>()));
            d.insert("closed_words".into(), json!(outs.iter().map(|o| o.closed_words).sum::<u64>()));
            let max_c =
                outs.iter().filter_map(|o| hypwalk_core::rational::parse_rational(&o.max_measured_c).ok()).max();
            if let Some(c) = max_c {
                d.insert("max_measured_c".into(), json!(c.to_string()));
            }
            if let Some(o) = outs.first() {
                d.insert("c_final".into(), json!(o.c_final));
            }
            agg
        }
        Outcome::Matching(m0) => {
            let matched = count(&|o| matches!(o, Outcome::Matching(m) if m.matched));
            let mut agg = bernoulli(n, if m0.self_match { "p(self-match)" } else { "p(match)" }, matched, trials);
            agg.candidates = Some(m0.candidates);
            agg.detail.insert("a".into(), json!(m0.a));
            agg.detail.insert("b".into(), json!(m0.b));
            agg
        }
        Outcome::Transversality(p) | Outcome::Separation(p) => {
            let outs: Vec<&ProfileOutcome> = records
                .iter()
                .filter_map(|r| match &r.outcome {
                    Outcome::Transversality(o) | Outcome::Separation(o) => Some(o),
                    _ => None,
                })
                .collect();
            let max = outs.iter().map(|o| o.max_diameter).max().unwrap_or(0);
            let mut detail = BTreeMap::new();
            detail.insert("excluded".into(), json!(p.excluded));
            detail.insert("argmax".into(), json!(p.argmax));
            Aggregate {
                n,
                statistic: "max diameter",
                trials,
                estimate: max as f64,
                ci_lo: max as f64,
                ci_hi: max as f64,
                successes: None,
                exact: Some(max.to_string()),
                candidates: Some(p.candidates),
                truncation: Some(p.truncation),
                detail,
            }
        }
        Outcome::Lox(_) => {
            let outs: Vec<&LoxOutcome> = records
                .iter()
                .filter_map(|r| match &r.outcome {
                    Outcome::Lox(o) => Some(o),
                    _ => None,
                })
                .collect();
            let lox = outs.iter().filter(|o| o.loxodromic).count() as u64;
            let mut agg = bernoulli(n, "p(loxodromic)", lox, trials);
            let d = &mut agg.detail;
            d.insert("resamples".into(), json!(outs.iter().map(|o| o.resamples).sum::<u64>()));
            d.insert("min_translation_length".into(), json!(outs.iter().map(|o| o.translation_length).min()));
            agg
        }
    }
}

/// Per-`n` aggregates in order of first appearance.
pub fn aggregate(records: &[TrialRecord]) -> Vec<Aggregate> {
    let mut order: Vec<u64> = Vec::new();
    let mut groups: BTreeMap<u64, Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        if !groups.contains_key(&r.n) {
            order.push(r.n);
        }
        groups.entry(r.n).or_default().push(r);
    }
    order.into_iter().map(|n| aggregate_group(n, &groups[&n])).collect()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub const SUMMARY_HEADER: &str = "n,estimate,ci_lo,ci_hi,trials,successes,candidates,truncation";

pub fn summary_csv(aggregates: &[Aggregate]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for a in aggregates {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            a.n,
            a.estimate,
            a.ci_lo,
            a.ci_hi,
            a.trials,
            opt(a.successes),
            opt(a.candidates),
            opt(a.truncation)
        ));
    }
    out
}

/// One JSON object per line, sorted by `(n, trial_index)`.
pub fn records_jsonl(records: &[TrialRecord]) -> String {
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.n, r.trial_index));
    let mut out = String::new();
    for r in sorted {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn read_records(path: &Path) -> io::Result<Vec<TrialRecord>> {
    let file = fs::File::open(path)?;
    let mut out = Vec::new();
    for (i, line) in io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("line {}: {e}", i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSource {
    Override,
    Config,
    Environment,
    /// Deterministic profiles run without a seed.
    Unused,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialFailure {
    pub n: u64,
    pub trial_index: u64,
    pub budget_exceeded: bool,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallTime {
    pub n: u64,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub experiment_id: String,
    pub config: ExperimentConfig,
    pub master_seed: u64,
    pub seed_source: SeedSource,
    pub threads: usize,
    pub complete: bool,
    pub failure: Option<TrialFailure>,
    pub record_count: usize,
    pub aggregates: Vec<Aggregate>,
    pub wall_times: Vec<WallTime>,
    pub wall_time_seconds: f64,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl Report {
    /// Exit status: 0 complete, 2 stopped by a budget, 1 any other failure.
    pub fn exit_code(&self) -> i32 {
        match &self.failure {
            None => 0,
            Some(f) if f.budget_exceeded => 2,
            Some(_) => 1,
        }
    }
}

pub fn write_report(report: &Report, out_dir: &Path) -> io::Result<()> {
    fs::create_dir_all(out_dir)?;
    let write = |name: &str, body: &str| -> io::Result<()> {
        let mut f = fs::File::create(out_dir.join(name))?;
        f.write_all(body.as_bytes())?;
        f.sync_all()
    };
    write("records.jsonl", &records_jsonl(&report.records))?;
    write("summary.csv", &summary_csv(&report.aggregates))?;
    let mut json = serde_json::to_string_pretty(report).map_err(io::Error::other)?;
    json.push('\n');
    write("report.json", &json)
}
