use alloc::vec::Vec;

use crate::group::{GroupModel, Word};
use crate::rational::{ratio, Rational};
use crate::{Error, Result};

/// Cap on the number of quadruples examined by [`four_point_delta`].
pub const QUADRUPLE_BUDGET: u128 = 200_000_000;

/// Least `δ₄` with `(x|y)_w ≥ min((x|z)_w, (y|z)_w) − δ₄` for all quadruples
/// of `points`; equivalently half the gap between the two largest of the
/// three pair sums `d(x,y)+d(z,w)`, `d(x,z)+d(y,w)`, `d(x,w)+d(y,z)`.
pub fn four_point_delta(model: &GroupModel, points: &[Word]) -> Result<Rational> {
    let n = points.len();
    let quads = (n as u128).pow(4) / 24;
    if quads > QUADRUPLE_BUDGET {
        return Err(Error::BudgetExceeded { what: "four-point quadruples", needed: quads, cap: QUADRUPLE_BUDGET });
    }
    let d: Vec<Vec<i64>> =
        points.iter().map(|x| points.iter().map(|y| model.distance(x, y) as i64).collect()).collect();
    let mut worst = 0i64;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for e in c + 1..n {
                    let mut s = [d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]];
                    s.sort_unstable();
                    worst = worst.max(s[2] - s[1]);
                }
            }
        }
    }
    Ok(ratio(worst, 2))
}
