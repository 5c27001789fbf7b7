//! Reduced words over `S ∪ {x_1, …, x_k}` in normal form.
//!
//! A syllable is either a letter `s_i^{±1}` or a power `x_i^e` with
//! `1 ≤ |e| ≤ bound`. Normal form forbids two adjacent `S` letters and two
//! adjacent powers of the same `x_i`. Words of each syllable length are
//! listed in lexicographic order over the alphabet
//!
//! ```text
//! x_1^1, x_1^-1, x_1^2, x_1^-2, …, x_k^-bound, s_1, s_1^-1, …, s_l^-1
//! ```
//!
//! and lengths are listed in increasing order starting at 1. Every position
//! of that order can be reached directly with [`MixedWordIter::starting_at`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Default cap on the number of enumerated words.
pub const DEFAULT_WORD_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Syllable {
    /// `s_index`, or its inverse.
    S { index: usize, inverse: bool },
    /// `x_index^exponent`, `exponent ≠ 0`.
    X { index: usize, exponent: i32 },
}

impl Syllable {
    pub fn is_s(&self) -> bool {
        matches!(self, Syllable::S { .. })
    }

    pub fn inverse(&self) -> Syllable {
        match *self {
            Syllable::S { index, inverse } => Syllable::S { index, inverse: !inverse },
            Syllable::X { index, exponent } => Syllable::X { index, exponent: -exponent },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedWord(Vec<Syllable>);

impl MixedWord {
    /// Validates normal form. Indices are not checked against any value list.
    pub fn new(syllables: Vec<Syllable>) -> Result<Self> {
        let w = MixedWord(syllables);
        if let Some(reason) = w.violation() {
            return Err(Error::InvalidArgument(reason.into()));
        }
        Ok(w)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    /// Largest `|e|` over the `x` syllables.
    pub fn max_exponent(&self) -> u32 {
        self.0
            .iter()
            .filter_map(|s| match s {
                Syllable::X { exponent, .. } => Some(exponent.unsigned_abs()),
                Syllable::S { .. } => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> MixedWord {
        MixedWord(self.0.iter().rev().map(Syllable::inverse).collect())
    }

    fn violation(&self) -> Option<&'static str> {
        if self.0.iter().any(|s| matches!(s, Syllable::X { exponent: 0, .. })) {
            return Some("zero exponent on a walk variable");
        }
        for pair in self.0.windows(2) {
            match (pair[0], pair[1]) {
                (Syllable::S { .. }, Syllable::S { .. }) => return Some("adjacent letters from S"),
                (Syllable::X { index: i, .. }, Syllable::X { index: j, .. }) if i == j => {
                    return Some("adjacent powers of the same walk variable")
                }
                _ => {}
            }
        }
        None
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, s) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(".")?;
            }
            match *s {
                Syllable::S { index, inverse: false } => write!(f, "s{}", index + 1)?,
                Syllable::S { index, inverse: true } => write!(f, "s{}^-1", index + 1)?,
                Syllable::X { index, exponent } => write!(f, "x{}^{}", index + 1, exponent)?,
            }
        }
        Ok(())
    }
}

/// The enumeration alphabet and transfer counts for one choice of bounds.
#[derive(Clone, Debug)]
struct Alphabet {
    symbols: Vec<Syllable>,
    /// `counts[r][class]`: valid continuations of `r` syllables after a
    /// syllable of `class` (class `k` is `S`, class `k + 1` is the start).
    counts: Vec<Vec<u128>>,
    k: usize,
}

/// The enumeration alphabet in order.
pub(crate) fn alphabet(l: usize, k: usize, bound: u32) -> Vec<Syllable> {
    let mut symbols = Vec::with_capacity(2 * (k * bound as usize + l));
    for index in 0..k {
        for e in 1..=bound as i32 {
            symbols.push(Syllable::X { index, exponent: e });
            symbols.push(Syllable::X { index, exponent: -e });
        }
    }
    for index in 0..l {
        symbols.push(Syllable::S { index, inverse: false });
        symbols.push(Syllable::S { index, inverse: true });
    }
    symbols
}

/// Whether `next` may follow `prev` in a normal form.
pub(crate) fn may_follow(prev: Option<&Syllable>, next: &Syllable) -> bool {
    match (prev, next) {
        (None, _) => true,
        (Some(Syllable::S { .. }), Syllable::S { .. }) => false,
        (Some(Syllable::X { index: i, .. }), Syllable::X { index: j, .. }) => i != j,
        _ => true,
    }
}

impl Alphabet {
    fn new(l: usize, k: usize, max_syllables: usize, bound: u32) -> Self {
        let symbols = alphabet(l, k, bound);
        let classes = k + 2;
        let mut counts = vec![vec![1u128; classes]];
        for r in 1..=max_syllables {
            let prev = &counts[r - 1];
            let row = (0..classes)
                .map(|c| {
                    symbols
                        .iter()
                        .filter(|s| allowed(k, c, s))
                        .fold(0u128, |acc, s| acc.saturating_add(prev[class_of(k, s)]))
                })
                .collect();
            counts.push(row);
        }
        Alphabet { symbols, counts, k }
    }

    fn start(&self) -> usize {
        self.k + 1
    }

    fn words_of_length(&self, len: usize) -> u128 {
        self.counts[len][self.start()]
    }

    fn unrank(&self, len: usize, mut rank: u128) -> MixedWord {
        let mut class = self.start();
        let mut out = Vec::with_capacity(len);
        for pos in 0..len {
            let rest = len - pos - 1;
            for s in self.symbols.iter().filter(|s| allowed(self.k, class, s)) {
                let c = self.counts[rest][class_of(self.k, s)];
                if rank < c {
                    out.push(*s);
                    class = class_of(self.k, s);
                    break;
                }
                rank -= c;
            }
        }
        MixedWord(out)
    }
}

fn class_of(k: usize, s: &Syllable) -> usize {
    match s {
        Syllable::X { index, .. } => *index,
        Syllable::S { .. } => k,
    }
}

fn allowed(k: usize, prev_class: usize, s: &Syllable) -> bool {
    prev_class == k + 1 || prev_class != class_of(k, s)
}

/// Number of words with `1..=max_syllables` syllables.
pub fn count_mixed_words(l: usize, k: usize, max_syllables: usize, exponent_bound: u32) -> u128 {
    let a = Alphabet::new(l, k, max_syllables, exponent_bound);
    (1..=max_syllables).fold(0u128, |acc, len| acc.saturating_add(a.words_of_length(len)))
}

/// Graded-lexicographic stream of normal-form words.
#[derive(Clone, Debug)]
pub struct MixedWordIter {
    alphabet: Alphabet,
    max_syllables: usize,
    len: usize,
    rank: u128,
}

impl MixedWordIter {
    /// Skips to global position `index` of the stream.
    pub fn starting_at(mut self, mut index: u128) -> Self {
        self.len = 1;
        self.rank = 0;
        while self.len <= self.max_syllables {
            let here = self.alphabet.words_of_length(self.len);
            if index < here {
                self.rank = index;
                return self;
            }
            index -= here;
            self.len += 1;
        }
        self
    }
}

impl Iterator for MixedWordIter {
    type Item = MixedWord;

    fn next(&mut self) -> Option<MixedWord> {
        while self.len <= self.max_syllables {
            if self.rank < self.alphabet.words_of_length(self.len) {
                let w = self.alphabet.unrank(self.len, self.rank);
                self.rank += 1;
                return Some(w);
            }
            self.len += 1;
            self.rank = 0;
        }
        None
    }
}

/// Every normal-form word with `l` letters in `S`, `k` walk variables, at
/// most `max_syllables` syllables and exponents bounded by `exponent_bound`.
pub fn enumerate_mixed_words(
    l: usize,
    k: usize,
    max_syllables: usize,
    exponent_bound: u32,
    budget: u128,
) -> Result<MixedWordIter> {
    let needed = count_mixed_words(l, k, max_syllables, exponent_bound);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "mixed words", needed, cap: budget });
    }
    Ok(MixedWordIter { alphabet: Alphabet::new(l, k, max_syllables, exponent_bound), max_syllables, len: 1, rank: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use proptest::prelude::*;

    /// Generate-and-filter oracle over all syllable strings.
    fn brute_force(l: usize, k: usize, max_syllables: usize, bound: u32) -> Vec<MixedWord> {
        let mut letters = Vec::new();
        for index in 0..l {
            letters.push(Syllable::S { index, inverse: false });
            letters.push(Syllable::S { index, inverse: true });
        }
        for index in 0..k {
            for e in 1..=bound as i32 {
                letters.push(Syllable::X { index, exponent: e });
                letters.push(Syllable::X { index, exponent: -e });
            }
        }
        let mut out = Vec::new();
        let mut layer: Vec<Vec<Syllable>> = vec![Vec::new()];
        for _ in 0..max_syllables {
            let mut next = Vec::new();
            for w in &layer {
                for s in &letters {
                    let mut v = w.clone();
                    v.push(*s);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned().map(MixedWord).filter(MixedWord::is_valid));
            layer = next;
        }
        out
    }

    #[test]
    fn single_syllables() {
        let words: Vec<_> = enumerate_mixed_words(1, 1, 1, 2, DEFAULT_WORD_BUDGET).unwrap().collect();
        let shown: Vec<_> = words.iter().map(|w| alloc::format!("{w}")).collect();
        assert_eq!(shown, ["x1^1", "x1^-1", "x1^2", "x1^-2", "s1", "s1^-1"]);
    }

    #[test]
    fn counts_match_brute_force() {
        for (l, k, m, b) in [(1, 1, 4, 2), (2, 1, 3, 1), (0, 2, 4, 2), (2, 2, 3, 2), (0, 1, 5, 3)] {
            let fast: Vec<_> = enumerate_mixed_words(l, k, m, b, DEFAULT_WORD_BUDGET).unwrap().collect();
            let slow = brute_force(l, k, m, b);
            assert_eq!(fast.len() as u128, count_mixed_words(l, k, m, b));
            assert_eq!(fast.len(), slow.len(), "{l} {k} {m} {b}");
            let fast_set: BTreeSet<_> = fast.iter().cloned().collect();
            assert_eq!(fast_set.len(), fast.len(), "no duplicates");
            assert_eq!(fast_set, slow.into_iter().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn order_is_graded() {
        let words: Vec<_> = enumerate_mixed_words(2, 2, 3, 2, DEFAULT_WORD_BUDGET).unwrap().collect();
        assert!(words.windows(2).all(|p| p[0].len() <= p[1].len()));
        assert!(words.iter().all(|w| !w.syllables().windows(2).any(|p| p[0].is_s() && p[1].is_s())));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_mixed_words(3, 3, 8, 3, 1000),
            Err(Error::BudgetExceeded { what: "mixed words", .. })
        ));
    }

    #[test]
    fn rejects_non_normal_forms() {
        let s = Syllable::S { index: 0, inverse: false };
        let x = Syllable::X { index: 0, exponent: 1 };
        assert!(MixedWord::new(vec![s, s]).is_err());
        assert!(MixedWord::new(vec![x, x.inverse()]).is_err());
        assert!(MixedWord::new(vec![Syllable::X { index: 0, exponent: 0 }]).is_err());
        assert!(MixedWord::new(vec![x, s, x]).is_ok());
    }

    proptest! {
        #[test]
        fn restart_matches_skip(l in 0usize..3, k in 1usize..3, m in 1usize..4, b in 1u32..3, at in 0u128..400) {
            let it = enumerate_mixed_words(l, k, m, b, DEFAULT_WORD_BUDGET).unwrap();
            let skipped: Vec<_> = it.clone().skip(at as usize).collect();
            let restarted: Vec<_> = it.starting_at(at).collect();
            prop_assert_eq!(skipped, restarted);
        }
    }
}
