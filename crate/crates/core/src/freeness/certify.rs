//! Certificates for words in `H` and the walk endpoints.
//!
//! In a free group the subgroup `⟨H, R⟩` is a free product `H ∗ R` with `R`
//! free on the `k` walk values exactly when the Stallings core of
//! `H ∪ {w_1..w_k}` has rank `|H| + k`: the natural surjection
//! `F_{|H|} ∗ F_k → ⟨H, R⟩` is then a surjection between free groups of the
//! same finite rank, hence an isomorphism since free groups are Hopfian.
//! This needs `H` to be given by a basis, which is checked first.

use alloc::vec::Vec;

use super::mixed::{MixedWord, Syllable};
use crate::geometry::{min_additive_constant, Path, QGConstants};
use crate::group::{GroupKind, GroupModel, Letter, Word};
use crate::{Error, Result};

use super::TheoremConstants;

/// Generator steps of every letter value, for building labeled paths.
#[derive(Clone, Debug)]
pub struct LabelContext {
    s_steps: Vec<[Vec<Letter>; 2]>,
    x_steps: Vec<[Vec<Letter>; 2]>,
}

impl LabelContext {
    pub fn new(model: &GroupModel, s_values: &[Word], walk_values: &[Word]) -> Self {
        let both = |w: &Word| [model.generator_steps(w), model.generator_steps(&model.invert(w))];
        LabelContext { s_steps: s_values.iter().map(both).collect(), x_steps: walk_values.iter().map(both).collect() }
    }

    /// The path from the identity labeled by `w`: one geodesic per letter, so
    /// `x_i^e` contributes `|e|` consecutive copies of a geodesic for `w_i^{±1}`.
    pub fn labeled_path(&self, model: &GroupModel, w: &MixedWord) -> Result<Path> {
        let mut steps = Vec::new();
        for syl in w.syllables() {
            match *syl {
                Syllable::S { index, inverse } => {
                    let s = self.s_steps.get(index).ok_or(Error::IndexOutOfRange {
                        what: "S letter",
                        index,
                        len: self.s_steps.len(),
                    })?;
                    steps.extend_from_slice(&s[inverse as usize]);
                }
                Syllable::X { index, exponent } => {
                    let x = self.x_steps.get(index).ok_or(Error::IndexOutOfRange {
                        what: "walk variable",
                        index,
                        len: self.x_steps.len(),
                    })?;
                    for _ in 0..exponent.unsigned_abs() {
                        steps.extend_from_slice(&x[(exponent < 0) as usize]);
                    }
                }
            }
        }
        Path::from_steps(model, Word::identity(), steps)
    }

    pub fn qg_word_check(
        &self,
        model: &GroupModel,
        w: &MixedWord,
        constants: &TheoremConstants,
    ) -> Result<QgWordOutcome> {
        let path = self.labeled_path(model, w)?;
        let c = min_additive_constant(model, &path, constants.qg.lambda());
        Ok(QgWordOutcome {
            bound_holds: c <= constants.qg.c(),
            measured: QGConstants::new(constants.qg.lambda(), c)?,
            endpoint_distance: model.length(path.end()),
            path_length: path.len(),
        })
    }
}

pub fn labeled_path(model: &GroupModel, w: &MixedWord, s_values: &[Word], walk_values: &[Word]) -> Result<Path> {
    LabelContext::new(model, s_values, walk_values).labeled_path(model, w)
}

/// Result of checking one labeled path against `(8, c_final)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QgWordOutcome {
    pub bound_holds: bool,
    /// `(8, c)` with the least `c` for which the path is quasi-geodesic.
    pub measured: QGConstants,
    pub endpoint_distance: u64,
    pub path_length: u64,
}

pub fn qg_word_check(
    model: &GroupModel,
    w: &MixedWord,
    s_values: &[Word],
    walk_values: &[Word],
    constants: &TheoremConstants,
) -> Result<QgWordOutcome> {
    LabelContext::new(model, s_values, walk_values).qg_word_check(model, w, constants)
}

/// Whether `⟨H, w_1..w_k⟩ ≅ ⟨H⟩ ∗ F_k` with the walks as a free basis of
/// the second factor.
pub fn free_product_certificate(model: &GroupModel, h_gens: &[Word], walk_values: &[Word]) -> Result<bool> {
    if !matches!(model.kind(), GroupKind::Free { .. }) {
        return Err(Error::WrongModel);
    }
    let h_rank = model.stallings_core(h_gens)?.rank();
    if h_rank != h_gens.len() {
        return Err(Error::NotABasis { rank: h_rank, gens: h_gens.len() });
    }
    let all: Vec<Word> = h_gens.iter().chain(walk_values).cloned().collect();
    Ok(model.stallings_core(&all)?.rank() == h_gens.len() + walk_values.len())
}
