use alloc::string::ToString;

use num_traits::{One, Zero};

use crate::geometry::{morse_bound, QGConstants};
use crate::rational::{int, ratio, Rational};
use crate::{Error, Result};

/// The constant chain for the quasi-geodesic words built from `k` walks at
/// time `n`, with drift `D`, deviation `ε`, junction slack `ε′` and
/// hyperbolicity `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremConstants {
    pub n: u64,
    pub epsilon: Rational,
    pub epsilon_prime: Rational,
    pub drift: Rational,
    pub delta: Rational,
    /// `24 ε′ D n + 24 δ + 2`
    pub c_prime: Rational,
    /// Morse constant of `(2, c′)`-quasi-geodesics.
    pub morse: Rational,
    /// `ε D n + 4M`
    pub c0: Rational,
    /// `12 (C0 + δ) + c′ + 1`
    pub c1: Rational,
    /// `5M/2 + C1`
    pub c_final: Rational,
    /// `(8, c_final)`
    pub qg: QGConstants,
}

pub fn theorem_constants(
    n: u64,
    epsilon: Rational,
    epsilon_prime: Rational,
    drift: Rational,
    delta: Rational,
) -> Result<TheoremConstants> {
    if !(Rational::zero() < epsilon_prime && epsilon_prime < epsilon && epsilon < Rational::one()) {
        return Err(Error::InvalidEpsilon { epsilon: epsilon.to_string(), epsilon_prime: epsilon_prime.to_string() });
    }
    if drift <= Rational::zero() {
        return Err(Error::InvalidArgument("drift must be positive".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if delta < Rational::zero() {
        return Err(Error::InvalidArgument("delta must be nonnegative".into()));
    }
    let nn = int(n as i64);
    let c_prime = int(24) * epsilon_prime * drift * nn + int(24) * delta + int(2);
    let morse = morse_bound(delta, QGConstants::new(int(2), c_prime)?);
    let c0 = epsilon * drift * nn + int(4) * morse;
    let c1 = int(12) * (c0 + delta) + c_prime + int(1);
    let c_final = ratio(5, 2) * morse + c1;
    Ok(TheoremConstants {
        n,
        epsilon,
        epsilon_prime,
        drift,
        delta,
        c_prime,
        morse,
        c0,
        c1,
        c_final,
        qg: QGConstants::new(int(8), c_final)?,
    })
}
