use alloc::format;

use super::{gromov_product, is_quasi_geodesic, Path, QGConstants};
use crate::group::GroupModel;
use crate::rational::{int, ratio, Rational};
use crate::{Error, Result};

/// Upper bound `92 λ² (c + δ)` on the Morse constant of
/// `(λ, c)`-quasi-geodesics in a `δ`-hyperbolic space.
pub fn morse_bound(delta: Rational, k: QGConstants) -> Rational {
    int(92) * k.lambda() * k.lambda() * (k.c() + delta)
}

/// Constants predicted for a concatenation of `(λ, c)`-quasi-geodesics whose
/// junction Gromov products are at most `C0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BrokenConcatConstants {
    pub c0: Rational,
    /// `C1 = 12 (C0 + δ) + c + 1`; each piece must have length `≥ λ C1`.
    pub c1: Rational,
    pub morse: Rational,
    /// `(4λ, 5M/2 + C1)` for quasi-geodesic pieces.
    pub general: QGConstants,
    /// `(2, 2 C1)` when every piece is geodesic.
    pub geodesic_case: QGConstants,
}

pub fn broken_concat_constants(delta: Rational, k: QGConstants, c0: Rational) -> Result<BrokenConcatConstants> {
    if c0 < int(14) * delta {
        return Err(Error::HypothesisViolated(format!("C0 = {c0} is below 14·δ = {}", int(14) * delta)));
    }
    let c1 = int(12) * (c0 + delta) + k.c() + int(1);
    let morse = morse_bound(delta, k);
    Ok(BrokenConcatConstants {
        c0,
        c1,
        morse,
        general: QGConstants::new(int(4) * k.lambda(), ratio(5, 2) * morse + c1)?,
        geodesic_case: QGConstants::new(int(2), int(2) * c1)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConcatVerdict {
    /// The inputs do not satisfy the hypotheses; nothing is predicted.
    HypothesesNotMet(alloc::string::String),
    PredictionHolds,
    PredictionFails,
}

impl ConcatVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ConcatVerdict::PredictionHolds)
    }
}

/// Checks the hypotheses on `segments` (each a `(λ, c)`-quasi-geodesic of
/// length at least `λ C1`, consecutive pieces meeting, junction Gromov
/// products at most `C0`) and, when they hold, whether the concatenation is a
/// quasi-geodesic with the predicted constants. Geodesic pieces are also
/// checked against the sharper `(2, 2 C1)`.
pub fn broken_concat_verify(
    model: &GroupModel,
    segments: &[Path],
    delta: Rational,
    c0: Rational,
    k: QGConstants,
) -> ConcatVerdict {
    let consts = match broken_concat_constants(delta, k, c0) {
        Ok(c) => c,
        Err(e) => return ConcatVerdict::HypothesesNotMet(format!("{e}")),
    };
    if segments.is_empty() {
        return ConcatVerdict::HypothesesNotMet("no segments".into());
    }
    let min_len = k.lambda() * consts.c1;
    for (i, seg) in segments.iter().enumerate() {
        if !is_quasi_geodesic(model, seg, k) {
            return ConcatVerdict::HypothesesNotMet(format!(
                "segment {i} is not a ({}, {})-quasi-geodesic",
                k.lambda(),
                k.c()
            ));
        }
        if segments.len() > 1 && int(seg.len() as i64) < min_len {
            return ConcatVerdict::HypothesesNotMet(format!("segment {i} is shorter than λ·C1 = {min_len}"));
        }
    }
    for (i, pair) in segments.windows(2).enumerate() {
        if pair[0].end() != pair[1].start() {
            return ConcatVerdict::HypothesesNotMet(format!("segments {i} and {} do not meet", i + 1));
        }
        let g = gromov_product(model, pair[0].start(), pair[1].end(), pair[0].end());
        if g > c0 {
            return ConcatVerdict::HypothesesNotMet(format!("junction {} has Gromov product {g} > C0", i + 1));
        }
    }
    let mut whole = segments[0].clone();
    for seg in &segments[1..] {
        whole = whole.concat(seg).expect("junctions checked above");
    }
    let geodesic_pieces = segments.iter().all(|s| s.is_geodesic(model));
    let ok = is_quasi_geodesic(model, &whole, consts.general)
        && (!geodesic_pieces || is_quasi_geodesic(model, &whole, consts.geodesic_case));
    if ok {
        ConcatVerdict::PredictionHolds
    } else {
        ConcatVerdict::PredictionFails
    }
}
