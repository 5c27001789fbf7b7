//! Exact quasi-geodesic measurement.
//!
//! For a unit-speed path `p` and `λ ≥ 1` the least additive constant is
//! `max_{s ≤ t} (t − s)/λ − d(p(s), p(t))`, taken over vertex parameters.
//! The general routine sweeps a [`Tracker`] from every vertex (quadratic).
//! In a tree the path splits into maximal backtrack-free runs, each of which
//! is a geodesic; along a geodesic `[u, v]` the distance to a fixed `x` is
//! `h + |t − t*|` with `t* = (x|v)_u` and `h = (u|v)_x`, so each (vertex, run)
//! pair has a closed-form maximizer and the cost drops to `O(runs · L)`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::Path;
use crate::group::{GroupModel, Tracker, Word};
use crate::rational::{int, Rational};
use crate::{Error, Result};

/// Constants `(λ, c)` of a quasi-geodesic: `(t − s)/λ − c ≤ d(p(s), p(t))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QGConstants {
    lambda: Rational,
    c: Rational,
}

impl QGConstants {
    pub fn new(lambda: Rational, c: Rational) -> Result<Self> {
        if lambda < Rational::one() || c < Rational::zero() {
            return Err(Error::InvalidArgument(alloc::format!(
                "quasi-geodesic constants need lambda >= 1 and c >= 0, got ({lambda}, {c})"
            )));
        }
        Ok(QGConstants { lambda, c })
    }

    pub fn geodesic() -> Self {
        QGConstants { lambda: int(1), c: int(0) }
    }

    pub fn lambda(&self) -> Rational {
        self.lambda
    }

    pub fn c(&self) -> Rational {
        self.c
    }
}

/// Least `c` such that `p` is a `(lambda, c)`-quasi-geodesic.
pub fn min_additive_constant(model: &GroupModel, p: &Path, lambda: Rational) -> Rational {
    assert!(lambda > Rational::zero(), "lambda must be positive");
    if model.is_tree() {
        tree_min_additive_constant(model, p, lambda)
    } else {
        min_additive_constant_exhaustive(model, p, lambda)
    }
}

pub fn is_quasi_geodesic(model: &GroupModel, p: &Path, k: QGConstants) -> bool {
    // Every pair satisfies the bound when the whole length fits in c.
    if Rational::from_integer(p.len() as i64) / k.lambda <= k.c {
        return true;
    }
    min_additive_constant(model, p, k.lambda) <= k.c
}

/// Reference implementation: one tracker sweep per starting vertex.
pub fn min_additive_constant_exhaustive(model: &GroupModel, p: &Path, lambda: Rational) -> Rational {
    let (num, den) = (*lambda.numer() as i128, *lambda.denom() as i128);
    let steps = p.steps();
    let mut best: i128 = 0;
    for i in 0..steps.len() {
        let mut t = Tracker::new(model, &Word::identity());
        for (off, &s) in steps[i..].iter().enumerate() {
            t.step(s);
            let v = (off as i128 + 1) * den - t.len() as i128 * num;
            if v > best {
                best = v;
            }
        }
    }
    Rational::new(best as i64, num as i64)
}

#[allow(clippy::needless_range_loop)]
fn tree_min_additive_constant(model: &GroupModel, p: &Path, lambda: Rational) -> Rational {
    let (num, den) = (*lambda.numer() as i128, *lambda.denom() as i128);
    let steps = p.steps();
    let n = steps.len();
    if n == 0 {
        return int(0);
    }
    let mut bounds = Vec::new();
    bounds.push(0usize);
    for b in 1..n {
        if steps[b] == model.invert_step(steps[b - 1]) {
            bounds.push(b);
        }
    }
    bounds.push(n);
    let dist: Vec<Vec<u64>> = bounds.iter().map(|&b| p.distances_from_vertex(model, b)).collect();

    let mut best: i128 = 0;
    let mut own = 0usize;
    for i in 0..=n {
        while own + 1 < bounds.len() - 1 && bounds[own + 1] <= i {
            own += 1;
        }
        // Same run: d = j − i, best at the run's far end.
        let e = bounds[own + 1];
        if e > i {
            let gap = (e - i) as i128;
            best = best.max(gap * den - gap * num);
        }
        for r in own + 1..bounds.len() - 1 {
            let (s, e) = (bounds[r], bounds[r + 1]);
            let (ds, de) = (dist[r][i] as i128, dist[r + 1][i] as i128);
            let len = (e - s) as i128;
            let t_star = (ds + len - de) / 2;
            let h = (ds + de - len) / 2;
            let j = s as i128 + t_star;
            best = best.max((j - i as i128) * den - h * num);
            best = best.max((e - i) as i128 * den - de * num);
        }
    }
    Rational::new(best as i64, num as i64)
}
