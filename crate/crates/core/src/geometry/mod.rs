//! Metric geometry of the Cayley graph: Gromov products, quasi-geodesics,
//! Morse and broken-geodesic constants, central segments, Hausdorff
//! distance, neighborhood diameters, matching, and four-point `δ`.
//!
//! Every check works on vertices at integer arc length. A point on an edge is
//! within `1/2` of a vertex, so continuous statements about `N_r(p)` are
//! tested as "vertex within `floor(r + 1/2)` of a vertex of `p`"; in a tree
//! with `r = 0` this is literal containment.

mod constants;
mod delta;
mod matching;
mod path;
mod quasi;

use alloc::vec::Vec;

use crate::group::{GroupModel, Word};
use crate::rational::{floor_u64, int, ratio, Rational};

pub use constants::{broken_concat_constants, broken_concat_verify, morse_bound, BrokenConcatConstants, ConcatVerdict};
pub use delta::four_point_delta;
pub use matching::{find_match, find_self_match, MatchWitness, DEFAULT_CANDIDATE_BUDGET};
pub use path::Path;
pub use quasi::{is_quasi_geodesic, min_additive_constant, min_additive_constant_exhaustive, QGConstants};

/// `(x|y)_z = ½(d(x,z) + d(y,z) − d(x,y))`.
pub fn gromov_product(model: &GroupModel, x: &Word, y: &Word, z: &Word) -> Rational {
    let dxz = model.distance(x, z) as i64;
    let dyz = model.distance(y, z) as i64;
    let dxy = model.distance(x, y) as i64;
    ratio(dxz + dyz - dxy, 2)
}

/// Distance from `x` to the nearest vertex of `p`.
pub fn distance_to_path(model: &GroupModel, x: &Word, p: &Path) -> u64 {
    p.distances_from(model, x).into_iter().min().unwrap_or(0)
}

/// Vertex-level Hausdorff distance between two paths.
pub fn hausdorff_distance(model: &GroupModel, p: &Path, q: &Path) -> u64 {
    let one_sided =
        |a: &Path, b: &Path| a.vertices(model).iter().map(|v| distance_to_path(model, v, b)).max().unwrap_or(0);
    one_sided(p, q).max(one_sided(q, p))
}

/// Integer radius used to test membership in a closed `r`-neighborhood of a
/// path at vertex level.
pub fn vertex_radius(r: Rational) -> u64 {
    floor_u64(&(r + ratio(1, 2)))
}

/// The `K`-central segment `[γ(K), γ(n − K)]` of a geodesic, restricted to
/// vertices. `None` when no vertex survives, in particular when `K > n/2`.
pub fn central_segment(model: &GroupModel, p: &Path, k: Rational) -> Option<Path> {
    let n = int(p.len() as i64);
    let k = k.max(int(0));
    if k > n / int(2) {
        return None;
    }
    let from = k.ceil().to_integer() as usize;
    let to = (n - k).floor().to_integer() as usize;
    (from <= to).then(|| p.subpath(model, from, to))
}

/// Outcome of the central-segment containment check for a pair of geodesics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentCheck {
    /// Larger of the two endpoint gaps.
    pub k: u64,
    /// Vertices of the `(K + 2δ)`-central segment that were tested.
    pub checked: usize,
    /// Every tested vertex lies within `2δ` of the other geodesic.
    pub holds: bool,
}

/// For geodesics `p1`, `p2` with endpoint gap `K`, tests that the
/// `(K + 2δ)`-central segment of `p1` lies in the `2δ`-neighborhood of `p2`.
pub fn central_segment_containment_check(
    model: &GroupModel,
    p1: &Path,
    p2: &Path,
    delta: Rational,
) -> ContainmentCheck {
    let k = model.distance(p1.start(), p2.start()).max(model.distance(p1.end(), p2.end()));
    let radius = vertex_radius(delta * int(2));
    match central_segment(model, p1, int(k as i64) + delta * int(2)) {
        None => ContainmentCheck { k, checked: 0, holds: true },
        Some(seg) => {
            let verts = seg.vertices(model);
            let holds = verts.iter().all(|v| distance_to_path(model, v, p2) <= radius);
            ContainmentCheck { k, checked: verts.len(), holds }
        }
    }
}

/// Diameter of a finite vertex set; zero when it has fewer than two points.
pub fn diameter(model: &GroupModel, points: &[Word]) -> u64 {
    let mut best = 0;
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            best = best.max(model.distance(x, y));
        }
    }
    best
}

/// `diam{v ∈ p : d(v, targets) ≤ K}` over the vertices of `p`.
pub fn neighborhood_diameter(model: &GroupModel, p: &Path, targets: &[Word], k: u64) -> u64 {
    let mut near = alloc::vec![false; p.vertex_count()];
    for t in targets {
        for (i, d) in p.distances_from(model, t).into_iter().enumerate() {
            if d <= k {
                near[i] = true;
            }
        }
    }
    let verts = p.vertices(model);
    let chosen: Vec<Word> = verts.into_iter().zip(near).filter(|(_, n)| *n).map(|(v, _)| v).collect();
    diameter(model, &chosen)
}
