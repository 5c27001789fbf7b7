//! Search for `(A, B)`-matches between paths.
//!
//! A match is a translate `g·p'` of a subpath of `p` and a subpath `q'` of `q`,
//! both of arc length at least `A`, at Hausdorff distance at most `B`. The
//! translating element ranges over a caller-supplied candidate set.
//!
//! For each candidate the search pairs vertex `i` of `g·p` with vertex `j` of
//! `q` along every diagonal `j − i = const` (same orientation) and every
//! anti-diagonal `i + j = const` (opposite orientation), and looks for maximal
//! runs of consecutive pairs at distance `≤ B`. A run of `A + 1` vertices is a
//! bijection between the two vertex sets with every pair within `B`, hence a
//! sound witness. For `B = 0` between geodesics this is also complete, since
//! equal vertex sets of geodesics coincide up to orientation.
//!
//! Scan order: candidates in lexicographic order of their serialized form
//! (see [`format_word`]); for each, diagonals by
//! increasing offset, then anti-diagonals by increasing sum; the first
//! qualifying maximal run is returned.

use alloc::vec::Vec;

use super::{hausdorff_distance, Path};
use crate::group::{format_word, GroupModel, Word};
use crate::{Error, Result};

pub const DEFAULT_CANDIDATE_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchWitness {
    /// The translating element.
    pub g: Word,
    /// Vertex index range `[from, to]` of `p'` in `p`.
    pub range_p: (usize, usize),
    /// Vertex index range `[from, to]` of `q'` in `q`.
    pub range_q: (usize, usize),
    /// Whether `g·p'` runs along `q'` in the opposite direction.
    pub reversed: bool,
    /// Vertex Hausdorff distance between `g·p'` and `q'`.
    pub hausdorff: u64,
}

impl MatchWitness {
    /// Arc length of the shorter of the two matched subpaths.
    pub fn length(&self) -> usize {
        (self.range_p.1 - self.range_p.0).min(self.range_q.1 - self.range_q.0)
    }
}

pub fn find_match(
    model: &GroupModel,
    p: &Path,
    q: &Path,
    a: u64,
    b: u64,
    candidates: &[Word],
) -> Result<Option<MatchWitness>> {
    search(model, p, q, a, b, candidates, false)
}

/// Matches of `p` with itself under a nontrivial translate; the two
/// subpaths may overlap. The identity is skipped if present.
pub fn find_self_match(
    model: &GroupModel,
    p: &Path,
    a: u64,
    b: u64,
    candidates: &[Word],
) -> Result<Option<MatchWitness>> {
    search(model, p, p, a, b, candidates, true)
}

fn search(
    model: &GroupModel,
    p: &Path,
    q: &Path,
    a: u64,
    b: u64,
    candidates: &[Word],
    skip_identity: bool,
) -> Result<Option<MatchWitness>> {
    if a == 0 {
        return Err(Error::InvalidArgument("match length A must be positive".into()));
    }
    if candidates.len() > DEFAULT_CANDIDATE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "match candidates",
            needed: candidates.len() as u128,
            cap: DEFAULT_CANDIDATE_BUDGET as u128,
        });
    }
    let need = a as usize + 1;
    if p.vertex_count() < need || q.vertex_count() < need {
        return Ok(None);
    }
    let mut order: Vec<(alloc::string::String, &Word)> = candidates.iter().map(|g| (format_word(g), g)).collect();
    order.sort();
    for (_, g) in order {
        if skip_identity && g.is_identity() {
            continue;
        }
        let gp = p.translate(model, g);
        let close: Vec<Vec<bool>> =
            gp.vertices(model).iter().map(|v| q.distances_from(model, v).iter().map(|&d| d <= b).collect()).collect();
        if let Some((range_p, range_q, reversed)) = scan(&close, need) {
            let sub_p = gp.subpath(model, range_p.0, range_p.1);
            let sub_q = q.subpath(model, range_q.0, range_q.1);
            let hausdorff = hausdorff_distance(model, &sub_p, &sub_q);
            return Ok(Some(MatchWitness { g: g.clone(), range_p, range_q, reversed, hausdorff }));
        }
    }
    Ok(None)
}

type Range = (usize, usize);

fn scan(close: &[Vec<bool>], need: usize) -> Option<(Range, Range, bool)> {
    let (np, nq) = (close.len() as isize, close[0].len() as isize);
    for offset in -(np - 1)..nq {
        let mut run = 0usize;
        let i_lo = 0.max(-offset);
        let i_hi = np.min(nq - offset);
        for i in i_lo..=i_hi {
            let ok = i < i_hi && close[i as usize][(i + offset) as usize];
            if ok {
                run += 1;
            } else if run >= need {
                let (i0, i1) = ((i - run as isize) as usize, (i - 1) as usize);
                let j0 = (i0 as isize + offset) as usize;
                return Some(((i0, i1), (j0, j0 + run - 1), false));
            } else {
                run = 0;
            }
        }
    }
    for sum in 0..(np + nq - 1) {
        let mut run = 0usize;
        let i_lo = 0.max(sum - (nq - 1));
        let i_hi = np.min(sum + 1);
        for i in i_lo..=i_hi {
            let ok = i < i_hi && close[i as usize][(sum - i) as usize];
            if ok {
                run += 1;
            } else if run >= need {
                let (i0, i1) = ((i - run as isize) as usize, (i - 1) as usize);
                let j_hi = (sum - i0 as isize) as usize;
                let j_lo = (sum - i1 as isize) as usize;
                return Some(((i0, i1), (j_lo, j_hi), true));
            } else {
                run = 0;
            }
        }
    }
    None
}
