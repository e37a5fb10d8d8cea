//! Text syntax for exact rationals: `p`, `p/q`, with an optional leading sign.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let malformed = || Error::MalformedNumber(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (t, None),
    };
    let num: BigInt = parse_signed_integer(num).ok_or_else(malformed)?;
    let den: BigInt = match den {
        Some(q) => {
            if q.is_empty() || !q.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            q.parse().map_err(|_| malformed())?
        }
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(malformed());
    }
    Ok(BigRational::new(num, den))
}

fn parse_signed_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -v } else { v })
}

/// Canonical `p/q` rendering (`p` when the denominator is one).
pub fn format_rational(v: &BigRational) -> String {
    debug_assert!(v.denom().is_positive());
    v.to_string()
}
