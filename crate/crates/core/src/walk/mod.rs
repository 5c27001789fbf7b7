//! Finitely supported step laws, seeded walks `w(n) = g_1⋯g_n`, drift, and
//! Monte Carlo event probabilities.

mod oracle;
mod stats;
mod stream;

use alloc::format;
use alloc::vec::Vec;

use rand::distributions::{Distribution as _, WeightedIndex};

use crate::geometry::Path;
use crate::group::{GroupModel, Word};
use crate::rational::Rational;
use crate::{Error, Result};

pub use oracle::{distance_law_uniform_free, drift_oracle, drift_oracle_uniform_free, expected_distance_uniform_free};
pub use stats::{wilson_interval, BernoulliEstimate, Z_95};
pub use stream::{derive_seed, label_hash, mix64, rng_from_seed, walk_seed};

/// Tolerance on the total mass of a step law.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// A finitely supported probability law on the group.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    support: Vec<(Word, f64)>,
    symmetric: bool,
    full_support_generators: bool,
}

impl Distribution {
    /// Normalizes positive weights. Atoms are reduced and merged.
    pub fn from_weights(model: &GroupModel, atoms: &[(Word, f64)]) -> Result<Self> {
        let total: f64 = atoms.iter().map(|(_, w)| *w).sum();
        if atoms.iter().any(|(_, w)| !(w.is_finite() && *w > 0.0)) || atoms.is_empty() || !total.is_finite() {
            return Err(Error::InvalidProbabilities("weights must be positive and finite".into()));
        }
        let scaled: Vec<(Word, f64)> = atoms.iter().map(|(w, p)| (w.clone(), p / total)).collect();
        Self::from_probabilities(model, &scaled)
    }

    /// Takes probabilities as given; they must be positive and sum to one.
    pub fn from_probabilities(model: &GroupModel, atoms: &[(Word, f64)]) -> Result<Self> {
        let mut support: Vec<(Word, f64)> = Vec::new();
        for (w, p) in atoms {
            if !(p.is_finite() && *p > 0.0) {
                return Err(Error::InvalidProbabilities(format!("probability {p} is not positive")));
            }
            let w = model.reduce(w)?;
            match support.iter_mut().find(|(v, _)| *v == w) {
                Some((_, q)) => *q += p,
                None => support.push((w, *p)),
            }
        }
        let total: f64 = support.iter().map(|(_, p)| p).sum();
        if support.is_empty() || (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidProbabilities(format!("total mass {total} is not 1")));
        }
        let mut d = Distribution { support, symmetric: false, full_support_generators: false };
        d.symmetric = d.compute_symmetric(model);
        d.full_support_generators = model.generators().iter().all(|&g| d.probability(&Word::from(g)) > 0.0);
        Ok(d)
    }

    /// Uniform on the generating set of `model`.
    pub fn uniform_generators(model: &GroupModel) -> Self {
        let atoms: Vec<(Word, f64)> = model.generators().into_iter().map(|g| (Word::from(g), 1.0)).collect();
        Self::from_weights(model, &atoms).expect("generating sets are nonempty")
    }

    pub fn support(&self) -> &[(Word, f64)] {
        &self.support
    }

    pub fn probability(&self, w: &Word) -> f64 {
        self.support.iter().find(|(v, _)| v == w).map_or(0.0, |(_, p)| *p)
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn full_support_generators(&self) -> bool {
        self.full_support_generators
    }

    pub fn has_identity(&self) -> bool {
        self.support.iter().any(|(w, _)| w.is_identity())
    }

    /// Largest word length in the support.
    pub fn max_step_length(&self, model: &GroupModel) -> u64 {
        self.support.iter().map(|(w, _)| model.length(w)).max().unwrap_or(0)
    }

    fn compute_symmetric(&self, model: &GroupModel) -> bool {
        self.support.iter().all(|(w, p)| (self.probability(&model.invert(w)) - p).abs() <= MASS_TOLERANCE)
    }

    pub(crate) fn is_uniform_on_generators(&self, model: &GroupModel) -> bool {
        let gens = model.generators();
        let target = 1.0 / gens.len() as f64;
        model.is_tree()
            && self.support.len() == gens.len()
            && gens.iter().all(|&g| (self.probability(&Word::from(g)) - target).abs() <= MASS_TOLERANCE)
    }

    fn sampler(&self) -> WeightedIndex<f64> {
        WeightedIndex::new(self.support.iter().map(|(_, p)| *p)).expect("validated probabilities")
    }
}

/// Permissibility findings for a step law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistributionReport {
    pub symmetric: bool,
    pub full_support_generators: bool,
    pub identity_in_support: bool,
    /// Finite support, symmetric, and charging every generator. For the
    /// implemented models this suffices for non-elementarity and WPD, and
    /// `E(μ) = E(G) = {1}`.
    pub permissible: bool,
}

pub fn validate_distribution(model: &GroupModel, dist: &Distribution) -> Result<DistributionReport> {
    let checked = Distribution::from_probabilities(model, dist.support())?;
    let symmetric = checked.symmetric;
    let full = checked.full_support_generators;
    Ok(DistributionReport {
        symmetric,
        full_support_generators: full,
        identity_in_support: checked.has_identity(),
        permissible: symmetric && full,
    })
}

/// One seeded realization `w(n) = g_1⋯g_n` with every prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkSample {
    pub seed: u64,
    pub n: usize,
    pub increments: Vec<Word>,
    /// `prefixes[j] = g_1⋯g_j`, reduced; `prefixes[0]` is the identity.
    pub prefixes: Vec<Word>,
}

impl WalkSample {
    pub fn endpoint(&self) -> &Word {
        self.prefixes.last().expect("prefixes always hold the identity")
    }
}

/// Indices into the support of `dist` for the `n` steps keyed by `seed`.
fn step_indices(dist: &Distribution, n: usize, seed: u64) -> impl Iterator<Item = usize> {
    let sampler = dist.sampler();
    let mut rng = rng_from_seed(seed);
    (0..n).map(move |_| sampler.sample(&mut rng))
}

pub fn sample_walk(model: &GroupModel, dist: &Distribution, n: usize, seed: u64) -> WalkSample {
    let mut increments = Vec::with_capacity(n);
    let mut prefixes = Vec::with_capacity(n + 1);
    let mut current = Word::identity();
    prefixes.push(current.clone());
    for idx in step_indices(dist, n, seed) {
        let g = &dist.support[idx].0;
        current = model.multiply(&current, g);
        increments.push(g.clone());
        prefixes.push(current.clone());
    }
    WalkSample { seed, n, increments, prefixes }
}

/// The endpoint `w(n)` of [`sample_walk`] without storing prefixes.
pub fn walk_endpoint(model: &GroupModel, dist: &Distribution, n: usize, seed: u64) -> Word {
    let mut stack = Vec::new();
    for idx in step_indices(dist, n, seed) {
        for &l in dist.support[idx].0.letters() {
            model.push_letter(&mut stack, l);
        }
    }
    Word::new(stack)
}

/// Geodesic from the basepoint to `w(n)`.
pub fn walk_geodesic(model: &GroupModel, sample: &WalkSample) -> Path {
    model.geodesic_path(&Word::identity(), sample.endpoint())
}

/// Monte Carlo estimate of `d(x_0, w(n) x_0) / n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DriftEstimate {
    pub n: usize,
    pub trials: usize,
    /// Exact mean of `d/n` over the trials.
    pub mean_normalized_distance: Rational,
    pub std_error: f64,
    /// `d(x_0, w(n) x_0)` per trial, in trial order.
    pub distances: Vec<u64>,
}

impl DriftEstimate {
    pub fn from_distances(n: usize, distances: Vec<u64>) -> Self {
        let trials = distances.len();
        let sum: u64 = distances.iter().sum();
        let mean = Rational::new(sum as i64, (n.max(1) * trials.max(1)) as i64);
        let mean_f = crate::rational::to_f64(&mean);
        let var = if trials > 1 {
            distances
                .iter()
                .map(|&d| {
                    let x = d as f64 / n as f64 - mean_f;
                    x * x
                })
                .sum::<f64>()
                / (trials - 1) as f64
        } else {
            0.0
        };
        DriftEstimate {
            n,
            trials,
            mean_normalized_distance: mean,
            std_error: libm::sqrt(var / trials.max(1) as f64),
            distances,
        }
    }

    pub fn mean_f64(&self) -> f64 {
        crate::rational::to_f64(&self.mean_normalized_distance)
    }

    /// Fraction of trials with `d` outside `[(1−ε) D n, (1+ε) D n]`.
    pub fn fraction_outside(&self, drift: Rational, epsilon: Rational) -> f64 {
        let n = Rational::from_integer(self.n as i64);
        let lo = (Rational::from_integer(1) - epsilon) * drift * n;
        let hi = (Rational::from_integer(1) + epsilon) * drift * n;
        let outside = self
            .distances
            .iter()
            .filter(|&&d| {
                let d = Rational::from_integer(d as i64);
                d < lo || d > hi
            })
            .count();
        outside as f64 / self.trials.max(1) as f64
    }
}

/// Stream label used by [`drift_estimate`].
pub const DRIFT_STREAM: &str = "drift";
/// Stream label used by [`event_probability`].
pub const EVENT_STREAM: &str = "event";

pub fn drift_estimate(
    model: &GroupModel,
    dist: &Distribution,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<DriftEstimate> {
    if trials < 30 {
        return Err(Error::InvalidArgument(format!("drift estimates need at least 30 trials, got {trials}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("walk length must be positive".into()));
    }
    let distances = (0..trials as u64)
        .map(|t| {
            let s = derive_seed(seed, DRIFT_STREAM, n as u64, t);
            model.length(&walk_endpoint(model, dist, n, s))
        })
        .collect();
    Ok(DriftEstimate::from_distances(n, distances))
}

/// Samples one walk per law in `dists` for trial `t` of the stream `label`.
pub fn sample_trial(
    model: &GroupModel,
    dists: &[Distribution],
    n: usize,
    master: u64,
    label: &str,
    trial: u64,
) -> Vec<WalkSample> {
    let trial_seed = derive_seed(master, label, n as u64, trial);
    dists.iter().enumerate().map(|(i, d)| sample_walk(model, d, n, walk_seed(trial_seed, i as u64))).collect()
}

/// Estimates `Prob(P(w_1(n), .., w_k(n)))` with independent walks per trial.
pub fn event_probability<F>(
    model: &GroupModel,
    dists: &[Distribution],
    n: usize,
    trials: usize,
    seed: u64,
    predicate: F,
) -> BernoulliEstimate
where
    F: Fn(&[WalkSample]) -> bool,
{
    let successes =
        (0..trials as u64).filter(|&t| predicate(&sample_trial(model, dists, n, seed, EVENT_STREAM, t))).count();
    BernoulliEstimate::from_counts(successes as u64, trials as u64)
}
