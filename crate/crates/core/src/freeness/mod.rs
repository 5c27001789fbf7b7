//! Words in a finite set `S ⊂ G` and walk variables `x_1..x_k`.
//!
//! [`enumerate_mixed_words`] lists normal forms, [`relation_search`] looks
//! for one that evaluates to the identity, [`qg_word_check`] measures the
//! labeled path of a word against [`theorem_constants`], and
//! [`free_product_certificate`] decides `⟨H, R⟩ ≅ H ∗ R` exactly in free
//! groups. The profiles examine transversality of axes and separation of
//! subgroup orbits inside finite windows, and [`lox_product_word`] builds
//! products of powers of loxodromic elements.

mod certify;
mod constants;
mod lox;
mod mixed;
mod profiles;
mod relations;

pub use certify::{free_product_certificate, labeled_path, qg_word_check, LabelContext, QgWordOutcome};
pub use constants::{theorem_constants, TheoremConstants};
pub use lox::{lox_product_word, LoxProduct};
pub use mixed::{count_mixed_words, enumerate_mixed_words, MixedWord, MixedWordIter, Syllable, DEFAULT_WORD_BUDGET};
pub use profiles::{
    generator_ball, separation_profile, subgroup_member, subgroup_orbit, transversality_profile, SeparationProfile,
    TransversalityProfile,
};
pub use relations::{evaluate, relation_search, relation_search_with_budget, RelationReport};
