use alloc::vec::Vec;

use crate::geometry::{min_additive_constant, Path, QGConstants};
use crate::group::{GroupModel, Word};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// `z = y_{i_1}^{m_1} ⋯ y_{i_t}^{m_t}` with its partial-product path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoxProduct {
    pub z: Word,
    /// Geodesic segments between consecutive partial products.
    pub path: Path,
    /// `λ = max(1, ℓ/d)` for path length `ℓ` and endpoint distance `d`, with
    /// the least `c` at that `λ`. `None` when the path closes up.
    pub measured: Option<QGConstants>,
    pub loxodromic: bool,
    pub translation_length: u64,
}

pub fn lox_product_word(model: &GroupModel, y_values: &[Word], sequence: &[(usize, i64)]) -> Result<LoxProduct> {
    if !y_values.iter().all(|y| model.is_loxodromic(y)) {
        return Err(Error::NotLoxodromic);
    }
    for (pos, &(i, _)) in sequence.iter().enumerate() {
        if i >= y_values.len() {
            return Err(Error::IndexOutOfRange { what: "loxodromic factor", index: i, len: y_values.len() });
        }
        if sequence.len() > 1 && sequence[(pos + 1) % sequence.len()].0 == i {
            return Err(Error::AdjacentIndex(pos));
        }
    }
    let mut partial = Word::identity();
    let mut steps = Vec::new();
    for &(i, m) in sequence {
        let factor = model.power(&y_values[i], m);
        let next = model.multiply(&partial, &factor);
        steps.extend(model.generator_steps(&factor));
        partial = next;
    }
    let path = Path::from_steps(model, Word::identity(), steps)?;
    let d = model.length(&partial);
    let measured = if d == 0 && !path.is_empty() {
        None
    } else {
        let lambda = if d == 0 { int(1) } else { Rational::new(path.len() as i64, d as i64).max(int(1)) };
        Some(QGConstants::new(lambda, min_additive_constant(model, &path, lambda))?)
    };
    let translation_length = model.translation_length(&partial);
    Ok(LoxProduct { z: partial, path, measured, loxodromic: translation_length > 0, translation_length })
}
