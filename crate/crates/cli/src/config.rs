//! Experiment files.
//!
//! A config is a TOML document:
//!
//! ```toml
//! id = "drift-f2"            # optional, defaults to the kind
//! kind = "drift"             # drift | freeness | relation-search | qg-words |
//!                            # matching-decay | separation | transversality | lox-products
//! group = "free(2)"          # or "product(2,3)"
//! seed = 42                  # optional; --seed and HYPWALK_SEED also supply it
//! n_grid = [500, 1000, 2000] # walk lengths; K or kappa values for profiles
//! trials = 2000
//!
//! [distribution]             # walk kinds only
//! uniform_generators = true  # or: support = [{ word = "a^1", weight = 1.0 }, ...]
//!
//! [subgroup]
//! gens = ["a^1"]
//!
//! [params]                   # kind-specific, see `Params`
//! epsilon = "0.1"
//! ```
//!
//! Rational parameters accept TOML numbers or exact strings such as `"1/3"`
//! and `"0.05"`.

use std::collections::BTreeSet;
use std::fmt;

use hypwalk_core::freeness::{count_mixed_words, DEFAULT_WORD_BUDGET};
use hypwalk_core::geometry::DEFAULT_CANDIDATE_BUDGET;
use hypwalk_core::group::{format_word, parse_group, parse_word, GroupSpec};
use hypwalk_core::rational::{parse_rational, ratio};
use hypwalk_core::walk::{drift_oracle, Distribution};
use hypwalk_core::{GroupKind, GroupModel, Rational, Word};
use serde::{Serialize, Serializer};
use toml::{Table, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Drift,
    Freeness,
    RelationSearch,
    QgWords,
    MatchingDecay,
    Separation,
    Transversality,
    LoxProducts,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 8] = [
        ExperimentKind::Drift,
        ExperimentKind::Freeness,
        ExperimentKind::RelationSearch,
        ExperimentKind::QgWords,
        ExperimentKind::MatchingDecay,
        ExperimentKind::Separation,
        ExperimentKind::Transversality,
        ExperimentKind::LoxProducts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Drift => "drift",
            ExperimentKind::Freeness => "freeness",
            ExperimentKind::RelationSearch => "relation-search",
            ExperimentKind::QgWords => "qg-words",
            ExperimentKind::MatchingDecay => "matching-decay",
            ExperimentKind::Separation => "separation",
            ExperimentKind::Transversality => "transversality",
            ExperimentKind::LoxProducts => "lox-products",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Profiles are deterministic: the grid holds `K` or `κ`, not walk lengths.
    pub fn is_profile(self) -> bool {
        matches!(self, ExperimentKind::Separation | ExperimentKind::Transversality)
    }

    fn needs_subgroup(self) -> bool {
        matches!(
            self,
            ExperimentKind::Freeness
                | ExperimentKind::RelationSearch
                | ExperimentKind::QgWords
                | ExperimentKind::Separation
                | ExperimentKind::Transversality
        )
    }

    fn needs_drift(self) -> bool {
        matches!(self, ExperimentKind::QgWords | ExperimentKind::MatchingDecay)
    }

    fn default_walks(self) -> usize {
        match self {
            ExperimentKind::Freeness | ExperimentKind::RelationSearch | ExperimentKind::MatchingDecay => 2,
            ExperimentKind::LoxProducts => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One schema violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigIssue {
    pub key: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ConfigErrors(pub Vec<ConfigIssue>);

impl ConfigErrors {
    pub fn keys(&self) -> Vec<&str> {
        self.0.iter().map(|i| i.key.as_str()).collect()
    }
}

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", issue.key, issue.reason)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionSpec {
    UniformGenerators,
    /// `(word, weight)` atoms, normalized on use.
    Support(Vec<(String, f64)>),
}

/// Kind-specific parameters with their defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Params {
    /// Number of independent walks per trial.
    pub walks: usize,
    #[serde(serialize_with = "rational_str")]
    pub epsilon: Rational,
    #[serde(serialize_with = "rational_str")]
    pub epsilon_prime: Rational,
    /// Drift `D`; filled from the exact oracle when one exists.
    #[serde(serialize_with = "opt_rational_str")]
    pub drift: Option<Rational>,
    pub max_syllables: usize,
    pub exponent_bound: u32,
    /// Radius of the generator ball of `H` used as the letter set `S`.
    pub s_radius: u32,
    /// Candidates and coset representatives are `ball(candidate_radius)`.
    pub candidate_radius: u32,
    /// `A = ⌈match_fraction · D · n⌉`.
    #[serde(serialize_with = "rational_str")]
    pub match_fraction: Rational,
    pub match_b: u64,
    pub self_match: bool,
    /// Orbit truncation radius in the word metric of `H`.
    pub truncation: u32,
    pub axis_range: (i64, i64),
    /// The loxodromic `f` of a transversality profile.
    pub element: Option<String>,
    pub exponent_range: (i64, i64),
    pub lox_terms: usize,
}

impl Params {
    fn defaults(kind: ExperimentKind) -> Self {
        Params {
            walks: kind.default_walks(),
            epsilon: ratio(1, 10),
            epsilon_prime: ratio(1, 20),
            drift: None,
            max_syllables: 4,
            exponent_bound: 3,
            s_radius: 2,
            candidate_radius: 3,
            match_fraction: ratio(1, 2),
            match_b: 0,
            self_match: false,
            truncation: 8,
            axis_range: (-8, 8),
            element: None,
            exponent_range: (3, 6),
            lox_terms: 2,
        }
    }
}

fn rational_str<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn opt_rational_str<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

fn group_str<S: Serializer>(g: &GroupSpec, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub id: String,
    pub kind: ExperimentKind,
    #[serde(serialize_with = "group_str")]
    pub group: GroupSpec,
    pub seed: Option<u64>,
    pub n_grid: Vec<u64>,
    pub trials: u64,
    pub distribution: Option<DistributionSpec>,
    /// Generators of `H`, in the word syntax of the group.
    pub subgroup: Vec<String>,
    pub params: Params,
}

impl ExperimentConfig {
    pub fn model(&self) -> GroupModel {
        self.group.build().expect("validated at parse time")
    }

    pub fn subgroup_words(&self, model: &GroupModel) -> Vec<Word> {
        self.subgroup.iter().map(|w| parse_word(model, w).expect("validated at parse time")).collect()
    }

    pub fn step_distribution(&self, model: &GroupModel) -> Option<Distribution> {
        self.distribution.as_ref().map(|d| build_distribution(model, d).expect("validated at parse time"))
    }
}

fn build_distribution(model: &GroupModel, spec: &DistributionSpec) -> Result<Distribution, String> {
    match spec {
        DistributionSpec::UniformGenerators => Ok(Distribution::uniform_generators(model)),
        DistributionSpec::Support(atoms) => {
            let parsed = atoms
                .iter()
                .map(|(w, p)| parse_word(model, w).map(|w| (w, *p)).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            Distribution::from_weights(model, &parsed).map_err(|e| e.to_string())
        }
    }
}

struct Issues(Vec<ConfigIssue>);

impl Issues {
    fn push(&mut self, key: impl Into<String>, reason: impl Into<String>) {
        self.0.push(ConfigIssue { key: key.into(), reason: reason.into() });
    }
}

fn type_name(v: &Value) -> &'static str {
    v.type_str()
}

fn get_uint(issues: &mut Issues, key: &str, v: &Value) -> Option<u64> {
    match v {
        Value::Integer(i) if *i >= 0 => Some(*i as u64),
        Value::Integer(_) => {
            issues.push(key, "must be nonnegative");
            None
        }
        Value::String(s) => match s.parse::<u64>() {
            Ok(x) => Some(x),
            Err(_) => {
                issues.push(key, format!("expected an unsigned integer, got {s:?}"));
                None
            }
        },
        other => {
            issues.push(key, format!("expected an integer, got {}", type_name(other)));
            None
        }
    }
}

fn get_int(issues: &mut Issues, key: &str, v: &Value) -> Option<i64> {
    match v {
        Value::Integer(i) => Some(*i),
        other => {
            issues.push(key, format!("expected an integer, got {}", type_name(other)));
            None
        }
    }
}

fn get_rational(issues: &mut Issues, key: &str, v: &Value) -> Option<Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Integer(i) => i.to_string(),
        Value::Float(f) => format!("{f}"),
        other => {
            issues.push(key, format!("expected a number or a rational string, got {}", type_name(other)));
            return None;
        }
    };
    match parse_rational(&text) {
        Ok(q) => Some(q),
        Err(e) => {
            issues.push(key, e.to_string());
            None
        }
    }
}

fn get_pair(issues: &mut Issues, key: &str, v: &Value) -> Option<(i64, i64)> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([a, b]) => {
            let a = get_int(issues, key, a)?;
            let b = get_int(issues, key, b)?;
            if a > b {
                issues.push(key, format!("empty range [{a}, {b}]"));
                return None;
            }
            Some((a, b))
        }
        _ => {
            issues.push(key, "expected a two-element array [lo, hi]");
            None
        }
    }
}

const TOP_KEYS: [&str; 9] = ["id", "kind", "group", "seed", "n_grid", "trials", "distribution", "subgroup", "params"];
const PARAM_KEYS: [&str; 16] = [
    "walks",
    "epsilon",
    "epsilon_prime",
    "drift",
    "max_syllables",
    "exponent_bound",
    "s_radius",
    "candidate_radius",
    "match_fraction",
    "match_b",
    "self_match",
    "truncation",
    "axis_range",
    "element",
    "exponent_range",
    "lox_terms",
];

/// Parses and validates an experiment file, collecting every violation.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigErrors> {
    let table: Table = text.parse::<Table>().map_err(|e| {
        ConfigErrors(vec![ConfigIssue { key: "<document>".into(), reason: e.message().trim().to_string() }])
    })?;
    let mut issues = Issues(Vec::new());
    for key in table.keys() {
        if !TOP_KEYS.contains(&key.as_str()) {
            issues.push(key.clone(), "unknown key");
        }
    }

    let kind = match table.get("kind") {
        None => {
            issues.push("kind", "missing");
            None
        }
        Some(Value::String(s)) => match ExperimentKind::parse(s) {
            Some(k) => Some(k),
            None => {
                let names: Vec<&str> = ExperimentKind::ALL.iter().map(|k| k.name()).collect();
                issues.push("kind", format!("unknown experiment kind {s:?}; expected one of {}", names.join(", ")));
                None
            }
        },
        Some(other) => {
            issues.push("kind", format!("expected a string, got {}", type_name(other)));
            None
        }
    };

    let id = match table.get("id") {
        None => kind.map(|k| k.name().to_string()),
        Some(Value::String(s)) if !s.trim().is_empty() => Some(s.clone()),
        Some(_) => {
            issues.push("id", "expected a nonempty string");
            None
        }
    };

    let model = match table.get("group") {
        None => {
            issues.push("group", "missing");
            None
        }
        Some(Value::String(s)) => match parse_group(s).and_then(|g| g.build().map(|m| (g, m))) {
            Ok(gm) => Some(gm),
            Err(e) => {
                issues.push("group", e.to_string());
                None
            }
        },
        Some(other) => {
            issues.push("group", format!("expected a string, got {}", type_name(other)));
            None
        }
    };

    let seed = table.get("seed").and_then(|v| get_uint(&mut issues, "seed", v));

    let n_grid: Option<Vec<u64>> = match table.get("n_grid") {
        None => {
            issues.push("n_grid", "missing");
            None
        }
        Some(Value::Array(items)) => {
            let before = issues.0.len();
            let grid: Vec<u64> = items.iter().filter_map(|v| get_uint(&mut issues, "n_grid", v)).collect();
            if issues.0.len() > before {
                None
            } else if grid.is_empty() {
                issues.push("n_grid", "must not be empty");
                None
            } else if grid.windows(2).any(|w| w[0] >= w[1]) {
                issues.push("n_grid", "must be strictly ascending");
                None
            } else if !kind.is_some_and(ExperimentKind::is_profile) && grid[0] == 0 {
                issues.push("n_grid", "walk lengths must be positive");
                None
            } else {
                Some(grid)
            }
        }
        Some(other) => {
            issues.push("n_grid", format!("expected an array, got {}", type_name(other)));
            None
        }
    };

    let trials = match table.get("trials") {
        None if kind.is_some_and(ExperimentKind::is_profile) => Some(1),
        None => {
            issues.push("trials", "missing");
            None
        }
        Some(v) => match get_uint(&mut issues, "trials", v) {
            Some(0) => {
                issues.push("trials", "must be at least 1");
                None
            }
            Some(t) if t > 1 && kind.is_some_and(ExperimentKind::is_profile) => {
                issues.push("trials", "profiles are deterministic; use trials = 1");
                None
            }
            t => t,
        },
    };

    let distribution = match table.get("distribution") {
        None => None,
        Some(Value::Table(t)) => parse_distribution(&mut issues, t),
        Some(other) => {
            issues.push("distribution", format!("expected a table, got {}", type_name(other)));
            None
        }
    };
    let walk_kind = kind.is_some_and(|k| !k.is_profile());
    if walk_kind && table.get("distribution").is_none() {
        issues.push("distribution", "missing; walk experiments need a step distribution");
    }

    let subgroup: Vec<String> = match table.get("subgroup") {
        None => Vec::new(),
        Some(Value::Table(t)) => {
            for key in t.keys() {
                if key != "gens" {
                    issues.push(format!("subgroup.{key}"), "unknown key");
                }
            }
            match t.get("gens") {
                None => Vec::new(),
                Some(Value::Array(a)) => a
                    .iter()
                    .filter_map(|v| match v {
                        Value::String(s) => Some(s.clone()),
                        other => {
                            issues.push("subgroup.gens", format!("expected word strings, got {}", type_name(other)));
                            None
                        }
                    })
                    .collect(),
                Some(other) => {
                    issues.push("subgroup.gens", format!("expected an array, got {}", type_name(other)));
                    Vec::new()
                }
            }
        }
        Some(other) => {
            issues.push("subgroup", format!("expected a table, got {}", type_name(other)));
            Vec::new()
        }
    };

    let mut params = Params::defaults(kind.unwrap_or(ExperimentKind::Drift));
    match table.get("params") {
        None => {}
        Some(Value::Table(t)) => parse_params(&mut issues, t, &mut params),
        Some(other) => issues.push("params", format!("expected a table, got {}", type_name(other))),
    }

    if let (Some(kind), Some((_, model))) = (kind, &model) {
        check_semantics(&mut issues, kind, model, distribution.as_ref(), &subgroup, &mut params);
    }

    if !issues.0.is_empty() {
        return Err(ConfigErrors(issues.0));
    }
    let (group, _) = model.expect("no issues");
    Ok(ExperimentConfig {
        id: id.expect("no issues"),
        kind: kind.expect("no issues"),
        group,
        seed,
        n_grid: n_grid.expect("no issues"),
        trials: trials.expect("no issues"),
        distribution,
        subgroup,
        params,
    })
}

fn parse_distribution(issues: &mut Issues, t: &Table) -> Option<DistributionSpec> {
    for key in t.keys() {
        if key != "uniform_generators" && key != "support" {
            issues.push(format!("distribution.{key}"), "unknown key");
        }
    }
    match (t.get("uniform_generators"), t.get("support")) {
        (Some(Value::Boolean(true)), None) => Some(DistributionSpec::UniformGenerators),
        (Some(Value::Boolean(false)) | None, Some(Value::Array(atoms))) => {
            let mut out = Vec::new();
            for (i, atom) in atoms.iter().enumerate() {
                let key = format!("distribution.support[{i}]");
                let Some(a) = atom.as_table() else {
                    issues.push(key, "expected a table { word = \"..\", weight = .. }");
                    continue;
                };
                let word = a.get("word").and_then(Value::as_str);
                let weight = a.get("weight").and_then(|w| w.as_float().or_else(|| w.as_integer().map(|i| i as f64)));
                match (word, weight) {
                    (Some(w), Some(p)) if p > 0.0 && p.is_finite() => out.push((w.to_string(), p)),
                    (Some(_), Some(_)) => issues.push(key, "weight must be positive"),
                    _ => issues.push(key, "needs a string `word` and a numeric `weight`"),
                }
            }
            if out.is_empty() {
                issues.push("distribution.support", "must list at least one atom");
                return None;
            }
            Some(DistributionSpec::Support(out))
        }
        (Some(_), Some(_)) => {
            issues.push("distribution", "give either uniform_generators = true or support, not both");
            None
        }
        _ => {
            issues.push("distribution", "expected uniform_generators = true or a support list");
            None
        }
    }
}

fn parse_params(issues: &mut Issues, t: &Table, p: &mut Params) {
    for (key, v) in t {
        let name = format!("params.{key}");
        let k = name.as_str();
        match key.as_str() {
            "walks" => {
                if let Some(x) = get_uint(issues, k, v) {
                    p.walks = x as usize
                }
            }
            "epsilon" => {
                if let Some(x) = get_rational(issues, k, v) {
                    p.epsilon = x
                }
            }
            "epsilon_prime" => {
                if let Some(x) = get_rational(issues, k, v) {
                    p.epsilon_prime = x
                }
            }
            "drift" => p.drift = get_rational(issues, k, v),
            "max_syllables" => {
                if let Some(x) = get_uint(issues, k, v) {
                    p.max_syllables = x as usize
                }
            }
            "exponent_bound" => {
                if let Some(x) = get_uint(issues, k, v) {
                    p.exponent_bound = x as u32
                }
            }
            "s_radius" => {
                if let Some(x) = get_uint(issues, k, v) {
                    p.s_radius = x as u32
                }
            }
            "candidate_radius" => {
                if let Some(x) = get_uint(issues, k, v) {
                    p.candidate_radius = x as u32
                }
            }
            "match_fraction" => {
                if let Some(x) = get_rational(issues, k, v) {
                    p.match_fraction = x
                }
            }
            "match_b" => {
                if let Some(x) = get_uint(issues, k, v) {
                    p.match_b = x
                }
            }
            "self_match" => match v.as_bool() {
                Some(b) => p.self_match = b,
                None => issues.push(k, "expected a boolean"),
            },
            "truncation" => {
                if let Some(x) = get_uint(issues, k, v) {
                    p.truncation = x as u32
                }
            }
            "axis_range" => {
                if let Some(x) = get_pair(issues, k, v) {
                    p.axis_range = x
                }
            }
            "element" => match v.as_str() {
                Some(s) => p.element = Some(s.to_string()),
                None => issues.push(k, "expected a word string"),
            },
            "exponent_range" => {
                if let Some(x) = get_pair(issues, k, v) {
                    p.exponent_range = x
                }
            }
            "lox_terms" => {
                if let Some(x) = get_uint(issues, k, v) {
                    p.lox_terms = x as usize
                }
            }
            _ => issues.push(k, format!("unknown parameter; expected one of {}", PARAM_KEYS.join(", "))),
        }
    }
}

fn check_semantics(
    issues: &mut Issues,
    kind: ExperimentKind,
    model: &GroupModel,
    distribution: Option<&DistributionSpec>,
    subgroup: &[String],
    p: &mut Params,
) {
    let dist = distribution.and_then(|d| match build_distribution(model, d) {
        Ok(d) => Some(d),
        Err(e) => {
            issues.push("distribution", e);
            None
        }
    });

    let mut h = Vec::new();
    for (i, w) in subgroup.iter().enumerate() {
        match parse_word(model, w) {
            Ok(x) => h.push(x),
            Err(e) => issues.push(format!("subgroup.gens[{i}]"), e.to_string()),
        }
    }
    if kind.needs_subgroup() && subgroup.is_empty() && kind != ExperimentKind::Freeness {
        issues.push("subgroup.gens", format!("{kind} needs subgroup generators"));
    }

    if p.walks == 0 {
        issues.push("params.walks", "must be at least 1");
    }
    if p.exponent_bound == 0 {
        issues.push("params.exponent_bound", "must be at least 1");
    }
    if p.max_syllables == 0 {
        issues.push("params.max_syllables", "must be at least 1");
    }

    if p.drift.is_none() {
        if let Some(d) = dist.as_ref() {
            p.drift = drift_oracle(model, d).ok();
        }
    }
    if let Some(d) = p.drift {
        if d <= ratio(0, 1) {
            issues.push("params.drift", "must be positive");
        }
    } else if kind.needs_drift() {
        issues.push("params.drift", "required: no exact drift oracle for this group and distribution");
    }

    if kind == ExperimentKind::QgWords
        && !(ratio(0, 1) < p.epsilon_prime && p.epsilon_prime < p.epsilon && p.epsilon < ratio(1, 1))
    {
        issues.push(
            "params.epsilon_prime",
            format!(
                "must satisfy 0 < epsilon' < epsilon < 1 (got epsilon = {}, epsilon' = {})",
                p.epsilon, p.epsilon_prime
            ),
        );
    }
    if kind == ExperimentKind::Drift && !(ratio(0, 1) < p.epsilon && p.epsilon < ratio(1, 1)) {
        issues.push("params.epsilon", "must lie in (0, 1)");
    }

    if matches!(kind, ExperimentKind::Freeness | ExperimentKind::RelationSearch | ExperimentKind::QgWords) {
        let s_count = hypwalk_core::freeness::generator_ball(model, &h, p.s_radius).len();
        let words = count_mixed_words(s_count, p.walks, p.max_syllables, p.exponent_bound);
        if words > DEFAULT_WORD_BUDGET {
            issues.push(
                "params.max_syllables",
                format!("{words} mixed words exceed the budget of {DEFAULT_WORD_BUDGET}"),
            );
        }
    }
    if kind == ExperimentKind::Freeness {
        match model.kind() {
            GroupKind::Free { .. } => {
                if let Ok(core) = model.stallings_core(&h) {
                    if core.rank() != h.len() {
                        issues.push(
                            "subgroup.gens",
                            format!("not a free basis (rank {} for {} generators)", core.rank(), h.len()),
                        );
                    }
                }
            }
            GroupKind::FreeProduct { .. } => issues.push("group", "the free-product certificate needs a free group"),
        }
    }

    if matches!(kind, ExperimentKind::MatchingDecay | ExperimentKind::Separation | ExperimentKind::Transversality) {
        let size = model.ball_size(p.candidate_radius);
        if size > DEFAULT_CANDIDATE_BUDGET as u128 {
            issues.push(
                "params.candidate_radius",
                format!(
                    "ball of radius {} has {size} elements, above the budget of {DEFAULT_CANDIDATE_BUDGET}",
                    p.candidate_radius
                ),
            );
        }
    }
    if kind == ExperimentKind::MatchingDecay && !p.self_match && p.walks < 2 {
        issues.push("params.walks", "matching between walks needs at least 2 walks");
    }

    if kind == ExperimentKind::Transversality {
        match p.element.as_deref().map(|e| parse_word(model, e)) {
            None => issues.push("params.element", "required: the loxodromic element f"),
            Some(Err(e)) => issues.push("params.element", e.to_string()),
            Some(Ok(f)) if !model.is_loxodromic(&f) => {
                issues.push("params.element", format!("{} is not loxodromic", format_word(&f)))
            }
            Some(Ok(_)) => {}
        }
    }

    if kind == ExperimentKind::LoxProducts {
        if p.walks < 1 {
            return;
        }
        if p.exponent_range.0 < 1 {
            issues.push("params.exponent_range", "exponents must be positive");
        }
        if p.lox_terms == 0 {
            issues.push("params.lox_terms", "must be at least 1");
        } else if p.lox_terms > 1 && (p.walks < 2 || (p.lox_terms - 1).is_multiple_of(p.walks)) {
            issues.push("params.lox_terms", "cyclically adjacent factors would repeat; use lox_terms ≢ 1 (mod walks)");
        }
    }

    let dup: BTreeSet<&String> = subgroup.iter().collect();
    if dup.len() != subgroup.len() {
        issues.push("subgroup.gens", "duplicate generators");
    }
}
