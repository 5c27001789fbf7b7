//! One trial of each experiment kind.
//!
//! [`Prepared`] resolves everything that does not depend on the trial (the
//! model, the step law, `S`, candidate balls), after which
//! [`Prepared::run_trial`] is a pure function of `(n, trial seed)`.

use hypwalk_core::freeness::{
    enumerate_mixed_words, free_product_certificate, generator_ball, lox_product_word, relation_search,
    separation_profile, theorem_constants, transversality_profile, LabelContext, DEFAULT_WORD_BUDGET,
};
use hypwalk_core::geometry::{find_match, find_self_match};
use hypwalk_core::group::{format_word, parse_word};
use hypwalk_core::rational::{ceil_u64, int};
use hypwalk_core::walk::{rng_from_seed, sample_walk, walk_endpoint, walk_geodesic, walk_seed, Distribution};
use hypwalk_core::{Error, GroupKind, GroupModel, Rational, Result, Word};
use rand::Rng;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::report::{FreenessOutcome, LoxOutcome, MatchOutcome, Outcome, ProfileOutcome, QgOutcome};

/// Walk draws allowed per loxodromic factor before a trial gives up.
pub const LOX_RESAMPLE_CAP: u64 = 1000;

pub struct Prepared {
    pub config: ExperimentConfig,
    pub model: GroupModel,
    pub dist: Option<Distribution>,
    pub h: Vec<Word>,
    /// Letter values of `S`.
    pub s_values: Vec<Word>,
    /// Matching candidates or profile representatives.
    pub candidates: Vec<Word>,
    pub element: Option<Word>,
}

impl Prepared {
    pub fn new(config: &ExperimentConfig) -> Result<Self> {
        let model = config.model();
        let dist = config.step_distribution(&model);
        let h = config.subgroup_words(&model);
        let p = &config.params;
        let s_values = match config.kind {
            ExperimentKind::Freeness | ExperimentKind::RelationSearch | ExperimentKind::QgWords => {
                generator_ball(&model, &h, p.s_radius)
            }
            _ => Vec::new(),
        };
        let candidates = match config.kind {
            ExperimentKind::MatchingDecay | ExperimentKind::Separation | ExperimentKind::Transversality => {
                model.ball(p.candidate_radius)?
            }
            _ => Vec::new(),
        };
        let element = p.element.as_deref().map(|e| parse_word(&model, e)).transpose()?;
        Ok(Prepared { config: config.clone(), model, dist, h, s_values, candidates, element })
    }

    fn dist(&self) -> &Distribution {
        self.dist.as_ref().expect("walk kinds carry a distribution")
    }

    fn drift(&self) -> Rational {
        self.config.params.drift.expect("validated at parse time")
    }

    fn endpoints(&self, n: u64, seed: u64, k: usize) -> Vec<Word> {
        (0..k as u64).map(|i| walk_endpoint(&self.model, self.dist(), n as usize, walk_seed(seed, i))).collect()
    }

    fn certificate(&self, walks: &[Word]) -> Result<Option<bool>> {
        match self.model.kind() {
            GroupKind::Free { .. } => free_product_certificate(&self.model, &self.h, walks).map(Some),
            GroupKind::FreeProduct { .. } => Ok(None),
        }
    }

    /// Runs trial `seed` at grid value `n`.
    pub fn run_trial(&self, n: u64, seed: u64) -> Result<Outcome> {
        match self.config.kind {
            ExperimentKind::Drift => Ok(self.drift_trial(n, seed)),
            ExperimentKind::Freeness => self.freeness_trial(n, seed).map(Outcome::Freeness),
            ExperimentKind::RelationSearch => self.freeness_trial(n, seed).map(Outcome::RelationSearch),
            ExperimentKind::QgWords => self.qg_trial(n, seed).map(Outcome::QgWords),
            ExperimentKind::MatchingDecay => self.matching_trial(n, seed).map(Outcome::Matching),
            ExperimentKind::Transversality => self.transversality(n).map(Outcome::Transversality),
            ExperimentKind::Separation => self.separation(n).map(Outcome::Separation),
            ExperimentKind::LoxProducts => self.lox_trial(n, seed).map(Outcome::Lox),
        }
    }

    fn drift_trial(&self, n: u64, seed: u64) -> Outcome {
        let w = walk_endpoint(&self.model, self.dist(), n as usize, walk_seed(seed, 0));
        let distance = self.model.length(&w);
        let in_band = self.config.params.drift.map(|drift| {
            let (centre, eps) = (drift * int(n as i64), self.config.params.epsilon);
            let d = int(distance as i64);
            (int(1) - eps) * centre <= d && d <= (int(1) + eps) * centre
        });
        Outcome::Drift { distance, in_band }
    }

    fn freeness_trial(&self, n: u64, seed: u64) -> Result<FreenessOutcome> {
        let p = &self.config.params;
        let walks = self.endpoints(n, seed, p.walks);
        let certificate = self.certificate(&walks)?;
        let report = relation_search(&self.model, &self.s_values, &walks, p.max_syllables, p.exponent_bound)?;
        Ok(FreenessOutcome {
            certificate,
            relation_found: report.found,
            witness: report.witness.as_ref().map(|w| w.to_string()),
            words_examined: report.words_examined as u64,
            s_count: self.s_values.len(),
            max_syllables: p.max_syllables,
            exponent_bound: p.exponent_bound,
            soundness_violation: report.found && certificate == Some(true),
        })
    }

    fn qg_trial(&self, n: u64, seed: u64) -> Result<QgOutcome> {
        let p = &self.config.params;
        let walks = self.endpoints(n, seed, p.walks);
        let certificate = self.certificate(&walks)?;
        let constants = theorem_constants(n, p.epsilon, p.epsilon_prime, self.drift(), self.model.delta())?;
        let ctx = LabelContext::new(&self.model, &self.s_values, &walks);
        let mut out = QgOutcome {
            certificate,
            words_checked: 0,
            bound_violations: 0,
            nontrivial_violations: 0,
            closed_words: 0,
            max_measured_c: "0".into(),
            c_final: constants.c_final.to_string(),
            first_violation: None,
        };
        let mut max_c = int(0);
        let words = enumerate_mixed_words(
            self.s_values.len(),
            p.walks,
            p.max_syllables,
            p.exponent_bound,
            DEFAULT_WORD_BUDGET,
        )?;
        for w in words {
            let check = ctx.qg_word_check(&self.model, &w, &constants)?;
            out.words_checked += 1;
            max_c = max_c.max(check.measured.c());
            let closed = check.endpoint_distance == 0;
            out.closed_words += closed as u64;
            let bad_bound = !check.bound_holds;
            let bad_closed = closed && certificate == Some(true);
            out.bound_violations += bad_bound as u64;
            out.nontrivial_violations += bad_closed as u64;
            if (bad_bound || bad_closed) && out.first_violation.is_none() {
                out.first_violation = Some(w.to_string());
            }
        }
        out.max_measured_c = max_c.to_string();
        Ok(out)
    }

    fn matching_trial(&self, n: u64, seed: u64) -> Result<MatchOutcome> {
        let p = &self.config.params;
        let a = ceil_u64(&(p.match_fraction * self.drift() * int(n as i64)));
        let geodesic =
            |i: u64| walk_geodesic(&self.model, &sample_walk(&self.model, self.dist(), n as usize, walk_seed(seed, i)));
        let first = geodesic(0);
        let witness = if p.self_match {
            find_self_match(&self.model, &first, a, p.match_b, &self.candidates)?
        } else {
            find_match(&self.model, &first, &geodesic(1), a, p.match_b, &self.candidates)?
        };
        Ok(MatchOutcome {
            matched: witness.is_some(),
            a,
            b: p.match_b,
            candidates: self.candidates.len(),
            self_match: p.self_match,
            g: witness.as_ref().map(|w| format_word(&w.g)),
            range_p: witness.as_ref().map(|w| w.range_p),
            range_q: witness.as_ref().map(|w| w.range_q),
            reversed: witness.as_ref().map(|w| w.reversed),
        })
    }

    fn transversality(&self, k: u64) -> Result<ProfileOutcome> {
        let p = &self.config.params;
        let f = self.element.as_ref().expect("validated at parse time");
        let prof = transversality_profile(&self.model, f, &self.h, k, &self.candidates, p.axis_range, p.truncation)?;
        Ok(ProfileOutcome {
            param: k,
            max_diameter: prof.max_diameter,
            candidates: self.candidates.len(),
            excluded: 0,
            truncation: p.truncation,
            argmax: prof.records.iter().find(|r| r.1 == prof.max_diameter).map(|r| format_word(&r.0)),
        })
    }

    fn separation(&self, kappa: u64) -> Result<ProfileOutcome> {
        let p = &self.config.params;
        let prof = separation_profile(&self.model, &self.h, kappa, &self.candidates, p.truncation)?;
        Ok(ProfileOutcome {
            param: kappa,
            max_diameter: prof.max_diameter,
            candidates: self.candidates.len(),
            excluded: prof.excluded,
            truncation: p.truncation,
            argmax: prof.records.iter().find(|r| r.1 == prof.max_diameter).map(|r| format_word(&r.0)),
        })
    }

    /// Draws the factors `y_i` as walk endpoints, redrawing until each is
    /// loxodromic and (in free groups) together they span a free group of
    /// full rank, then multiplies out the alternating power sequence.
    fn lox_trial(&self, n: u64, seed: u64) -> Result<LoxOutcome> {
        let p = &self.config.params;
        let k = p.walks;
        let mut ys = Vec::with_capacity(k);
        let mut stream = 0u64;
        let mut resamples = 0u64;
        let cap = LOX_RESAMPLE_CAP * k as u64;
        while ys.len() < k {
            if resamples > cap {
                return Err(Error::BudgetExceeded {
                    what: "loxodromic resamples",
                    needed: resamples as u128,
                    cap: cap as u128,
                });
            }
            let y = walk_endpoint(&self.model, self.dist(), n as usize, walk_seed(seed, stream));
            stream += 1;
            let mut candidate = ys.clone();
            candidate.push(y.clone());
            let independent = match self.model.kind() {
                GroupKind::Free { .. } => self.model.stallings_core(&candidate)?.rank() == candidate.len(),
                GroupKind::FreeProduct { .. } => true,
            };
            if self.model.is_loxodromic(&y) && independent {
                ys.push(y);
            } else {
                resamples += 1;
            }
        }
        let mut rng = rng_from_seed(walk_seed(seed, u64::MAX));
        let (lo, hi) = p.exponent_range;
        let sequence: Vec<(usize, i64)> = (0..p.lox_terms).map(|i| (i % k, rng.gen_range(lo..=hi))).collect();
        let prod = lox_product_word(&self.model, &ys, &sequence)?;
        Ok(LoxOutcome {
            loxodromic: prod.loxodromic,
            translation_length: prod.translation_length,
            z_length: self.model.length(&prod.z),
            path_length: prod.path.len(),
            lambda: prod.measured.map(|q| q.lambda().to_string()),
            c: prod.measured.map(|q| q.c().to_string()),
            exponents: sequence.iter().map(|s| s.1).collect(),
            factor_lengths: ys.iter().map(|y| self.model.length(y)).collect(),
            resamples,
        })
    }
}
