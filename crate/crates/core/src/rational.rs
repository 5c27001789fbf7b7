//! Exact rational arithmetic for metric values and the theorem constants.

use alloc::format;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational number. Distances in this crate are integers and Gromov
/// products are half-integers, so 64-bit components are ample.
pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer `>= r`.
pub fn ceil_u64(r: &Rational) -> u64 {
    let c = r.ceil().to_integer();
    if c < 0 {
        0
    } else {
        c as u64
    }
}

/// Largest integer `<= r`, clamped at zero.
pub fn floor_u64(r: &Rational) -> u64 {
    let f = r.floor().to_integer();
    if f < 0 {
        0
    } else {
        f as u64
    }
}

/// Parses `"3"`, `"-0.125"`, `"1/10"` or `"2.5e-1"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut num: i64 = 0;
    for c in whole.chars().chain(frac.chars()) {
        num = num.checked_mul(10).and_then(|v| v.checked_add(c as i64 - '0' as i64)).ok_or_else(bad)?;
    }
    let scale = frac.len() as i32 - exp;
    let ten = |p: u32| 10i64.checked_pow(p).ok_or_else(bad);
    let mut r = if scale >= 0 {
        Rational::new(num, ten(scale as u32)?)
    } else {
        Rational::from_integer(num.checked_mul(ten((-scale) as u32)?).ok_or_else(bad)?)
    };
    if neg && !r.is_zero() {
        r = -r;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("-2.50").unwrap(), ratio(-5, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("5e-2").unwrap(), ratio(1, 20));
        assert_eq!(parse_rational("1.5E2").unwrap(), int(150));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(ceil_u64(&ratio(5, 2)), 3);
        assert_eq!(floor_u64(&ratio(5, 2)), 2);
        assert_eq!(floor_u64(&ratio(-1, 2)), 0);
    }
}
