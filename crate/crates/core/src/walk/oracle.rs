//! Exact reference values for the simple random walk on `F_k`.
//!
//! Under the uniform law on the `2k` one-letter generators the distance to
//! the identity is a birth–death chain: from `0` it moves to `1`; from
//! `m ≥ 1` it moves up with probability `(2k−1)/2k` and down with `1/2k`.

use alloc::vec;
use alloc::vec::Vec;

use super::Distribution;
use crate::group::{GroupKind, GroupModel};
use crate::rational::{ratio, Rational};
use crate::{Error, Result};

/// Exact law of `d(e, w(n))`, indexed by distance.
pub fn distance_law_uniform_free(k: u32, n: usize) -> Vec<f64> {
    let up = (2 * k - 1) as f64 / (2 * k) as f64;
    let down = 1.0 / (2 * k) as f64;
    let mut law = vec![0.0f64; n + 1];
    law[0] = 1.0;
    for step in 0..n {
        let mut next = vec![0.0f64; n + 1];
        for m in 0..=step.min(n) {
            let p = law[m];
            if p == 0.0 {
                continue;
            }
            if m == 0 {
                next[1] += p;
            } else {
                next[m + 1] += p * up;
                next[m - 1] += p * down;
            }
        }
        law = next;
    }
    law
}

/// `E[d(e, w(n))]` from the exact law.
pub fn expected_distance_uniform_free(k: u32, n: usize) -> f64 {
    distance_law_uniform_free(k, n).iter().enumerate().map(|(m, p)| m as f64 * p).sum()
}

/// Asymptotic speed of the chain. It is transient for `k ≥ 2`, so it visits
/// `0` finitely often and the speed is the mean increment away from `0`:
/// `(2k−1)/2k − 1/2k = (k−1)/k`.
pub fn drift_oracle_uniform_free(k: u32) -> Rational {
    assert!(k >= 2, "rank must be at least 2");
    ratio((2 * k - 1) as i64, (2 * k) as i64) - ratio(1, (2 * k) as i64)
}

/// The oracle drift for `dist`, which must be uniform on the one-letter
/// generators of a free group.
pub fn drift_oracle(model: &GroupModel, dist: &Distribution) -> Result<Rational> {
    let GroupKind::Free { rank } = *model.kind() else {
        return Err(Error::WrongDistribution);
    };
    if !dist.is_uniform_on_generators(model) {
        return Err(Error::WrongDistribution);
    }
    Ok(drift_oracle_uniform_free(rank))
}
