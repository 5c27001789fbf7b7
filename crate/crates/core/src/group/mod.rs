//! Words, normal forms and the word metric.
//!
//! Both implemented families are free products of cyclic groups: `F_k` is the
//! free product of `k` infinite cyclic factors, and `product(m1, ..)` is the
//! free product of finite cyclic factors. A [`Word`] is therefore a sequence
//! of syllables `x_f^p`, and the normal form has adjacent syllables in
//! distinct factors. What differs between the two kinds is the generating set
//! and hence the metric:
//!
//! - free groups are generated by `a_f^{±1}`, so a syllable `a^p` has length `|p|`
//!   and the Cayley graph is the `2k`-regular tree (`δ = 0`);
//! - free products are generated by every nontrivial element of every factor,
//!   so each syllable is one edge and the Cayley graph is a tree of cliques.
//!
//! The basepoint is the identity and the orbit map is the identity on
//! vertices, so group elements and Cayley graph vertices are the same thing.

mod notation;
mod stallings;
mod tracker;

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{Path, QGConstants};
use crate::rational::{int, Rational};
use crate::{Error, Result};

pub use notation::{format_word, parse_group, parse_word, GroupSpec};
pub use stallings::CoreGraph;
pub(crate) use tracker::Tracker;

/// Default cap on the number of elements [`GroupModel::ball`] may produce.
pub const DEFAULT_BALL_BUDGET: usize = 10_000_000;

/// Largest ball used when certifying a configured `δ` for a free product.
const DELTA_VALIDATION_POINTS: u128 = 160;

/// One syllable `x_factor^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub factor: u32,
    pub power: i32,
}

impl Letter {
    pub const fn new(factor: u32, power: i32) -> Self {
        Letter { factor, power }
    }
}

/// A sequence of syllables. Words produced by [`GroupModel`] operations are
/// always in normal form; [`Word::new`] accepts arbitrary letters, which
/// [`GroupModel::reduce`] normalizes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Number of syllables, which is not the word length for free groups.
    pub fn syllables(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word(vec![l])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Free { rank: u32 },
    FreeProduct { orders: Vec<u32> },
}

/// Result of certifying a configured hyperbolicity constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaValidation {
    pub radius: u32,
    pub points: usize,
    pub four_point_delta: Rational,
}

/// Facts about the model that are recorded rather than computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelMetadata {
    /// The maximal finite normal subgroup `E(G)` is trivial.
    pub finite_radical_trivial: bool,
    /// The action on the Cayley graph is acylindrical, hence WPD. Trusted,
    /// not checked.
    pub acylindrical_trusted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModel {
    kind: GroupKind,
    /// Factor orders, `0` for an infinite cyclic factor.
    orders: Vec<u32>,
    delta: Rational,
    delta_validation: Option<DeltaValidation>,
    ball_budget: usize,
}

impl GroupModel {
    /// The free group of rank `rank >= 2`.
    pub fn free(rank: u32) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidModel(format!("free group rank must be >= 2, got {rank}")));
        }
        if rank > 26 {
            return Err(Error::InvalidModel("at most 26 factors are supported".to_string()));
        }
        Ok(GroupModel {
            kind: GroupKind::Free { rank },
            orders: vec![0; rank as usize],
            delta: int(0),
            delta_validation: None,
            ball_budget: DEFAULT_BALL_BUDGET,
        })
    }

    /// Free product of finite cyclic groups with the default `δ = 1`.
    pub fn free_product(orders: &[u32]) -> Result<Self> {
        Self::free_product_with_delta(orders, int(1))
    }

    /// Free product of finite cyclic groups. The configured `delta` is
    /// accepted only if the exact four-point constant of a ball around the
    /// identity is at most `2 * delta`.
    pub fn free_product_with_delta(orders: &[u32], delta: Rational) -> Result<Self> {
        if orders.len() < 2 {
            return Err(Error::InvalidModel("a free product needs at least two factors".to_string()));
        }
        if orders.len() > 26 {
            return Err(Error::InvalidModel("at most 26 factors are supported".to_string()));
        }
        if let Some(m) = orders.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidModel(format!("factor orders must be >= 2, got {m}")));
        }
        if orders == [2, 2] {
            return Err(Error::InvalidModel("Z/2 * Z/2 is virtually cyclic (elementary)".to_string()));
        }
        if delta < int(0) {
            return Err(Error::InvalidModel("delta must be nonnegative".to_string()));
        }
        let mut model = GroupModel {
            kind: GroupKind::FreeProduct { orders: orders.to_vec() },
            orders: orders.to_vec(),
            delta,
            delta_validation: None,
            ball_budget: DEFAULT_BALL_BUDGET,
        };
        let radius = (1..=5u32).rev().find(|&r| model.ball_size(r) <= DELTA_VALIDATION_POINTS).unwrap_or(1);
        let points = model.ball(radius)?;
        let four_point = crate::geometry::four_point_delta(&model, &points)?;
        if four_point > delta * int(2) {
            return Err(Error::InvalidModel(format!(
                "configured delta {delta} is not certified: four-point constant on ball({radius}) is {four_point}"
            )));
        }
        model.delta_validation = Some(DeltaValidation { radius, points: points.len(), four_point_delta: four_point });
        Ok(model)
    }

    pub fn with_ball_budget(mut self, cap: usize) -> Self {
        self.ball_budget = cap;
        self
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn delta(&self) -> Rational {
        self.delta
    }

    pub fn delta_validation(&self) -> Option<&DeltaValidation> {
        self.delta_validation.as_ref()
    }

    pub fn metadata(&self) -> ModelMetadata {
        ModelMetadata { finite_radical_trivial: true, acylindrical_trusted: true }
    }

    pub fn factor_count(&self) -> usize {
        self.orders.len()
    }

    /// `None` for an infinite cyclic factor.
    pub fn factor_order(&self, factor: u32) -> Option<u32> {
        match self.orders.get(factor as usize) {
            Some(0) | None => None,
            Some(&m) => Some(m),
        }
    }

    /// Whether the Cayley graph is a tree (the free-group kind).
    pub fn is_tree(&self) -> bool {
        matches!(self.kind, GroupKind::Free { .. })
    }

    /// The generating set: `a_f^{±1}` for free groups, every nontrivial
    /// power of every factor for free products.
    pub fn generators(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (f, &m) in self.orders.iter().enumerate() {
            if m == 0 {
                out.push(Letter::new(f as u32, 1));
                out.push(Letter::new(f as u32, -1));
            } else {
                out.extend((1..m as i32).map(|p| Letter::new(f as u32, p)));
            }
        }
        out
    }

    pub(crate) fn order_of(&self, factor: u32) -> u32 {
        self.orders[factor as usize]
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        if (l.factor as usize) < self.orders.len() && l.power != 0 {
            Ok(())
        } else {
            Err(Error::InvalidLetter { factor: l.factor, power: l.power })
        }
    }

    /// Length contribution of a normalized syllable.
    pub(crate) fn syllable_weight(&self, l: Letter) -> u64 {
        if self.order_of(l.factor) == 0 {
            l.power.unsigned_abs() as u64
        } else {
            1
        }
    }

    fn normalize_power(&self, factor: u32, power: i32) -> i32 {
        match self.order_of(factor) {
            0 => power,
            m => power.rem_euclid(m as i32),
        }
    }

    /// Right-multiplies a normal-form stack by one syllable.
    pub(crate) fn push_letter(&self, stack: &mut Vec<Letter>, l: Letter) {
        if let Some(top) = stack.last_mut() {
            if top.factor == l.factor {
                let p = self.normalize_power(l.factor, top.power + l.power);
                if p == 0 {
                    stack.pop();
                } else {
                    top.power = p;
                }
                return;
            }
        }
        let p = self.normalize_power(l.factor, l.power);
        if p != 0 {
            stack.push(Letter::new(l.factor, p));
        }
    }

    /// The unique normal form of `w`.
    pub fn reduce(&self, w: &Word) -> Result<Word> {
        let mut stack = Vec::with_capacity(w.0.len());
        for &l in &w.0 {
            self.check_letter(l)?;
            self.push_letter(&mut stack, l);
        }
        Ok(Word(stack))
    }

    /// Parses and reduces raw letters.
    pub fn word(&self, letters: &[Letter]) -> Result<Word> {
        self.reduce(&Word(letters.to_vec()))
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        self.reduce(w).map(|r| &r == w).unwrap_or(false)
    }

    pub fn multiply(&self, g: &Word, h: &Word) -> Word {
        let mut stack = g.0.clone();
        for &l in &h.0 {
            self.push_letter(&mut stack, l);
        }
        Word(stack)
    }

    pub fn invert(&self, g: &Word) -> Word {
        Word(g.0.iter().rev().map(|l| Letter::new(l.factor, self.normalize_power(l.factor, -l.power))).collect())
    }

    /// `g^m` for any integer `m`.
    pub fn power(&self, g: &Word, m: i64) -> Word {
        let base = if m < 0 { self.invert(g) } else { g.clone() };
        let mut out = Word::identity();
        for _ in 0..m.unsigned_abs() {
            out = self.multiply(&out, &base);
        }
        out
    }

    /// Word length `|g|`, the distance from the identity.
    pub fn length(&self, g: &Word) -> u64 {
        g.0.iter().map(|&l| self.syllable_weight(l)).sum()
    }

    pub fn distance(&self, g: &Word, h: &Word) -> u64 {
        let common = g.0.iter().zip(&h.0).take_while(|(a, b)| a == b).count();
        let tail_g = Word(g.0[common..].to_vec());
        let tail_h = Word(h.0[common..].to_vec());
        self.length(&self.multiply(&self.invert(&tail_g), &tail_h))
    }

    /// Spelling of a normal-form word as a sequence of generators, read left
    /// to right. Its length is `|g|`.
    pub fn generator_steps(&self, g: &Word) -> Vec<Letter> {
        let mut steps = Vec::with_capacity(self.length(g) as usize);
        for &l in &g.0 {
            if self.order_of(l.factor) == 0 {
                let unit = Letter::new(l.factor, l.power.signum());
                steps.extend(core::iter::repeat_n(unit, l.power.unsigned_abs() as usize));
            } else {
                steps.push(l);
            }
        }
        steps
    }

    /// Inverse of a single generator step.
    pub(crate) fn invert_step(&self, s: Letter) -> Letter {
        Letter::new(s.factor, self.normalize_power(s.factor, -s.power))
    }

    /// The geodesic from `g` to `h` that spells the normal form of `g⁻¹h`.
    /// Free-group geodesics are unique; in free products this is the
    /// leftmost spelling.
    pub fn geodesic_path(&self, g: &Word, h: &Word) -> Path {
        let q = self.multiply(&self.invert(g), h);
        Path::from_parts(g.clone(), self.generator_steps(&q), h.clone())
    }

    /// Number of elements of length at most `r` (saturating).
    #[allow(clippy::needless_range_loop)]
    pub fn ball_size(&self, r: u32) -> u128 {
        // count[len][f]: words of length `len` whose last syllable is in factor f.
        let r = r as usize;
        let nf = self.orders.len();
        let mut count = vec![vec![0u128; nf]; r + 1];
        let mut total_at = vec![0u128; r + 1];
        total_at[0] = 1;
        for len in 1..=r {
            for f in 0..nf {
                let m = self.orders[f];
                let mut c: u128 = 0;
                let prev_not_f = |l: usize| -> u128 {
                    if l == 0 {
                        1
                    } else {
                        total_at[l].saturating_sub(count[l][f])
                    }
                };
                if m == 0 {
                    for w in 1..=len {
                        c = c.saturating_add(prev_not_f(len - w).saturating_mul(2));
                    }
                } else {
                    c = prev_not_f(len - 1).saturating_mul((m - 1) as u128);
                }
                count[len][f] = c;
            }
            total_at[len] = count[len].iter().fold(0u128, |a, &b| a.saturating_add(b));
        }
        total_at.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }

    /// All elements of length at most `r`, in shortlex order.
    pub fn ball(&self, r: u32) -> Result<Vec<Word>> {
        let needed = self.ball_size(r);
        if needed > self.ball_budget as u128 {
            return Err(Error::BudgetExceeded { what: "ball", needed, cap: self.ball_budget as u128 });
        }
        let gens = self.generators();
        let mut out = vec![Word::identity()];
        let mut sphere = vec![Word::identity()];
        for len in 1..=r as u64 {
            let mut next = Vec::new();
            for w in &sphere {
                for &s in &gens {
                    let ws = self.multiply(w, &Word::from(s));
                    if self.length(&ws) == len {
                        next.push(ws);
                    }
                }
            }
            next.sort();
            next.dedup();
            out.extend(next.iter().cloned());
            sphere = next;
        }
        Ok(out)
    }

    /// Writes `g = conjugator · core · conjugator⁻¹` with `core` cyclically
    /// reduced.
    pub fn cyclic_reduce(&self, g: &Word) -> (Word, Word) {
        let mut conj = Word::identity();
        let mut core = g.clone();
        while core.0.len() >= 2 {
            let first = core.0[0];
            let last = core.0[core.0.len() - 1];
            if first.factor != last.factor {
                break;
            }
            let strip = if self.order_of(first.factor) == 0 {
                if first.power.signum() == last.power.signum() {
                    break;
                }
                let k = first.power.abs().min(last.power.abs());
                Word::from(Letter::new(first.factor, first.power.signum() * k))
            } else {
                Word::from(first)
            };
            core = self.multiply(&self.multiply(&self.invert(&strip), &core), &strip);
            conj = self.multiply(&conj, &strip);
        }
        (conj, core)
    }

    /// Stable translation length: `|core|` for a cyclically reduced core,
    /// and zero for the identity and for elements conjugate into a finite
    /// factor.
    pub fn translation_length(&self, g: &Word) -> u64 {
        let (_, core) = self.cyclic_reduce(g);
        match core.0.as_slice() {
            [] => 0,
            [l] if self.order_of(l.factor) != 0 => 0,
            _ => self.length(&core),
        }
    }

    pub fn is_loxodromic(&self, g: &Word) -> bool {
        self.translation_length(g) > 0
    }

    /// The path through `f^lo, f^{lo+1}, .., f^hi` joined by geodesics,
    /// together with quasi-geodesic constants `(|f| / τ(f), 2|f|)`.
    pub fn axis_path(&self, f: &Word, lo: i64, hi: i64) -> Result<Axis> {
        let tau = self.translation_length(f);
        if tau == 0 {
            return Err(Error::NotLoxodromic);
        }
        if hi < lo {
            return Err(Error::InvalidArgument(format!("empty axis range [{lo}, {hi}]")));
        }
        let start = self.power(f, lo);
        let piece = self.generator_steps(f);
        let mut steps = Vec::with_capacity(piece.len() * (hi - lo) as usize);
        for _ in lo..hi {
            steps.extend_from_slice(&piece);
        }
        let end = self.power(f, hi);
        let len = self.length(f) as i64;
        let constants = QGConstants::new(Rational::new(len, tau as i64), int(2 * len))?;
        Ok(Axis { path: Path::from_parts(start, steps, end), constants })
    }

    /// The Stallings core graph of `⟨gens⟩`; free groups only.
    pub fn stallings_core(&self, gens: &[Word]) -> Result<CoreGraph> {
        match self.kind {
            GroupKind::Free { rank } => CoreGraph::build(self, rank, gens),
            GroupKind::FreeProduct { .. } => Err(Error::WrongModel),
        }
    }

    pub fn spec(&self) -> GroupSpec {
        match &self.kind {
            GroupKind::Free { rank } => GroupSpec::Free(*rank),
            GroupKind::FreeProduct { orders } => GroupSpec::Product(orders.clone()),
        }
    }
}

/// An axis segment of a loxodromic element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub path: Path,
    pub constants: QGConstants,
}
