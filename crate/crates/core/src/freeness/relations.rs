use alloc::vec::Vec;

use super::mixed::{alphabet, count_mixed_words, may_follow, MixedWord, Syllable, DEFAULT_WORD_BUDGET};
use crate::group::{GroupModel, Word};
use crate::{Error, Result};

/// Substitutes `s_values` and `walk_values` into `w` and reduces.
pub fn evaluate(model: &GroupModel, w: &MixedWord, s_values: &[Word], walk_values: &[Word]) -> Result<Word> {
    let mut acc = Word::identity();
    for syl in w.syllables() {
        acc = model.multiply(&acc, &syllable_value(model, syl, s_values, walk_values)?);
    }
    Ok(acc)
}

pub(crate) fn syllable_value(
    model: &GroupModel,
    syl: &Syllable,
    s_values: &[Word],
    walk_values: &[Word],
) -> Result<Word> {
    match *syl {
        Syllable::S { index, inverse } => {
            let s =
                s_values.get(index).ok_or(Error::IndexOutOfRange { what: "S letter", index, len: s_values.len() })?;
            Ok(if inverse { model.invert(s) } else { s.clone() })
        }
        Syllable::X { index, exponent } => {
            let x = walk_values.get(index).ok_or(Error::IndexOutOfRange {
                what: "walk variable",
                index,
                len: walk_values.len(),
            })?;
            Ok(model.power(x, exponent as i64))
        }
    }
}

/// Outcome of a bounded search for a word that evaluates to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub found: bool,
    pub witness: Option<MixedWord>,
    pub syllable_length: Option<usize>,
    pub words_examined: u128,
    pub max_syllables: usize,
    pub exponent_bound: u32,
    pub s_count: usize,
}

pub fn relation_search(
    model: &GroupModel,
    s_values: &[Word],
    walk_values: &[Word],
    max_syllables: usize,
    exponent_bound: u32,
) -> Result<RelationReport> {
    relation_search_with_budget(model, s_values, walk_values, max_syllables, exponent_bound, DEFAULT_WORD_BUDGET)
}

/// [`relation_search`] with an explicit cap on the number of candidate words.
///
/// Words are visited in the order of [`enumerate_mixed_words`](super::enumerate_mixed_words),
/// depth first within each syllable length, so every prefix is multiplied
/// out once.
pub fn relation_search_with_budget(
    model: &GroupModel,
    s_values: &[Word],
    walk_values: &[Word],
    max_syllables: usize,
    exponent_bound: u32,
    budget: u128,
) -> Result<RelationReport> {
    let (l, k) = (s_values.len(), walk_values.len());
    let needed = count_mixed_words(l, k, max_syllables, exponent_bound);
    if needed > budget {
        return Err(Error::BudgetExceeded { what: "mixed words", needed, cap: budget });
    }
    let search = Dfs {
        model,
        table: ValueTable::new(model, s_values, walk_values, exponent_bound),
        symbols: alphabet(l, k, exponent_bound),
    };
    let mut report = RelationReport {
        found: false,
        witness: None,
        syllable_length: None,
        words_examined: 0,
        max_syllables,
        exponent_bound,
        s_count: l,
    };
    let mut stack = Vec::with_capacity(max_syllables);
    for len in 1..=max_syllables {
        if search.descend(&Word::identity(), &mut stack, len, &mut report.words_examined) {
            report.found = true;
            report.syllable_length = Some(len);
            report.witness = Some(MixedWord::new(stack).expect("normal forms by construction"));
            break;
        }
    }
    Ok(report)
}

struct Dfs<'a> {
    model: &'a GroupModel,
    table: ValueTable,
    symbols: Vec<Syllable>,
}

impl Dfs<'_> {
    /// Extends `stack` by `remaining` syllables; true (with the witness left
    /// on `stack`) at the first completion that evaluates to the identity.
    fn descend(&self, prefix: &Word, stack: &mut Vec<Syllable>, remaining: usize, examined: &mut u128) -> bool {
        for s in &self.symbols {
            if !may_follow(stack.last(), s) {
                continue;
            }
            let value = self.model.multiply(prefix, self.table.value(s));
            stack.push(*s);
            if remaining == 1 {
                *examined += 1;
                if value.is_identity() {
                    return true;
                }
            } else if self.descend(&value, stack, remaining - 1, examined) {
                return true;
            }
            stack.pop();
        }
        false
    }
}

/// Precomputed values of every syllable in a bounded alphabet.
pub(crate) struct ValueTable {
    s: Vec<[Word; 2]>,
    /// `x[i][2(e−1)]` holds `x_i^e`, `x[i][2(e−1)+1]` holds `x_i^{−e}`.
    x: Vec<Vec<Word>>,
}

impl ValueTable {
    pub(crate) fn new(model: &GroupModel, s_values: &[Word], walk_values: &[Word], bound: u32) -> Self {
        let s = s_values.iter().map(|v| [v.clone(), model.invert(v)]).collect();
        let x = walk_values
            .iter()
            .map(|v| (1..=bound as i64).flat_map(|e| [model.power(v, e), model.power(v, -e)]).collect())
            .collect();
        ValueTable { s, x }
    }

    pub(crate) fn value(&self, syl: &Syllable) -> &Word {
        match *syl {
            Syllable::S { index, inverse } => &self.s[index][inverse as usize],
            Syllable::X { index, exponent } => {
                let e = exponent.unsigned_abs() as usize;
                &self.x[index][2 * (e - 1) + (exponent < 0) as usize]
            }
        }
    }

    #[cfg(test)]
    fn evaluate(&self, model: &GroupModel, w: &MixedWord) -> Word {
        w.syllables().iter().fold(Word::identity(), |acc, s| model.multiply(&acc, self.value(s)))
    }
}
