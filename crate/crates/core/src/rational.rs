//! Exact rational truth values.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Chain labels and truth values of rational-family chains.
pub type Rational = num_rational::BigRational;

/// `num / den` as a [`Rational`]. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `p/q` or an integer.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    let r = Rational::from_str(text).ok()?;
    Some(r)
}

/// Canonical `p/q` text (`p` alone when the denominator is 1).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// True iff `0 <= r <= 1`.
pub fn in_unit_interval(r: &Rational) -> bool {
    *r >= zero() && *r <= one()
}

/// All rationals in `[0, 1]` with denominator at most `max_den`, ascending.
pub fn unit_grid(max_den: u32) -> alloc::vec::Vec<Rational> {
    let mut out = alloc::collections::BTreeSet::new();
    for den in 1..=max_den.max(1) as i64 {
        for num in 0..=den {
            out.insert(ratio(num, den));
        }
    }
    out.into_iter().collect()
}
