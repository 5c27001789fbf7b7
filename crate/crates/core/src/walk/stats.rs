use num_traits::Zero;

use crate::rational::{ratio, Rational};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Success count with its 95% Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BernoulliEstimate {
    pub successes: u64,
    pub trials: u64,
    pub p_hat: Rational,
    pub wilson: (f64, f64),
}

impl BernoulliEstimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        assert!(successes <= trials, "more successes than trials");
        if trials == 0 {
            return BernoulliEstimate { successes, trials, p_hat: Rational::zero(), wilson: (0.0, 1.0) };
        }
        let p_hat = ratio(successes as i64, trials as i64);
        BernoulliEstimate { successes, trials, p_hat, wilson: wilson_interval(successes, trials) }
    }

    /// Combines two batches; the result depends only on the summed counts.
    pub fn merge(&self, other: &Self) -> Self {
        Self::from_counts(self.successes + other.successes, self.trials + other.trials)
    }

    pub fn p_hat_f64(&self) -> f64 {
        crate::rational::to_f64(&self.p_hat)
    }
}

/// Wilson score interval at 95%, clamped to `[0, 1]` and to contain `p̂`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    let lo = (center - half).max(0.0).min(p);
    let hi = (center + half).min(1.0).max(p);
    (lo, hi)
}
