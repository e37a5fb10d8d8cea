//! Closed forms for the sum of independent uniforms on `[-a_j, a_j]`.
//!
//! With `A = Σ a_j` the density is
//!
//! ```text
//! f(x) = Σ_ε (∏ε_j) (x + ε·a)_+^{n-1} / ((n-1)! ∏ 2a_j)
//! ```
//!
//! summed over all `2^n` sign vectors, and the distribution function is the
//! same sum with exponent `n` over `n! ∏ 2a_j`. The untruncated power sum is
//! identically `0` for exponents below `n` and `n! 2^n ∏ a_j` at `n`.

mod halfwidths;

pub use halfwidths::HalfWidths;

use crate::error::{Error, Result};
use crate::numerics::scalar::naive_signed_power_sum;
use crate::numerics::{factorial, Scalar};

/// A density value together with the point it was evaluated at.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityValue<S> {
    pub x: S,
    pub value: S,
}

fn box_volume<S: Scalar>(a: &HalfWidths<S>) -> S {
    let two = S::one() + S::one();
    a.iter().fold(S::one(), |acc, aj| acc * (two.clone() * aj.clone()))
}

fn check_finite<S: Scalar>(x: &S) -> Result<()> {
    if x.is_finite_value() {
        Ok(())
    } else {
        Err(Error::NonFinite(x.to_string()))
    }
}

/// Density of `X_1 + … + X_n` at `x`.
///
/// Breakpoints need no special handling: there the truncated power takes
/// `τ(0) = 1/2`, which for `n = 1` yields the midpoint value `1/(4a)`.
pub fn density<S: Scalar>(a: &HalfWidths<S>, x: &S) -> Result<DensityValue<S>> {
    check_finite(x)?;
    let n = a.len() as u32;
    if !S::EXACT && x.abs() > *a.support_radius() {
        return Ok(DensityValue { x: x.clone(), value: S::zero() });
    }
    let sum = S::signed_power_sum(x, a.as_slice(), n - 1, true);
    let denom = S::from_bigint(&factorial(n - 1)) * box_volume(a);
    let mut value = sum / denom;
    if !S::EXACT && value < S::zero() {
        value = S::zero();
    }
    Ok(DensityValue { x: x.clone(), value })
}

/// `P(X_1 + … + X_n ≤ x)`.
pub fn cdf<S: Scalar>(a: &HalfWidths<S>, x: &S) -> Result<S> {
    check_finite(x)?;
    let n = a.len() as u32;
    if !S::EXACT {
        if *x >= *a.support_radius() {
            return Ok(S::one());
        }
        if *x <= -a.support_radius().clone() {
            return Ok(S::zero());
        }
    }
    let sum = S::signed_power_sum(x, a.as_slice(), n, true);
    let denom = S::from_bigint(&factorial(n)) * box_volume(a);
    let value = sum / denom;
    if S::EXACT {
        return Ok(value);
    }
    Ok(if value < S::zero() {
        S::zero()
    } else if value > S::one() {
        S::one()
    } else {
        value
    })
}

/// `Σ_ε (∏ε_j)(x + ε·a)^r` with plain powers, for `0 ≤ r ≤ n`.
pub fn signed_power_sum<S: Scalar>(a: &HalfWidths<S>, x: &S, r: u32) -> Result<S> {
    check_finite(x)?;
    if r as usize > a.len() {
        return Err(Error::PowerOutOfRange { r, n: a.len() });
    }
    Ok(S::signed_power_sum(x, a.as_slice(), r, false))
}

/// The value the signed power sum takes for every `x`: zero below `n`,
/// `n! 2^n ∏ a_j` at `r = n`.
pub fn signed_power_sum_expected<S: Scalar>(a: &HalfWidths<S>, r: u32) -> Result<S> {
    let n = a.len();
    if r as usize > n {
        return Err(Error::PowerOutOfRange { r, n });
    }
    if (r as usize) < n {
        return Ok(S::zero());
    }
    Ok(S::from_bigint(&factorial(n as u32)) * box_volume(a))
}

/// Measure of the slice `{Σ x_j = x}` of the box `∏(-a_j, a_j)`, taken as
/// Lebesgue measure on the first `n - 1` coordinates; equals
/// `density · ∏ 2a_j`.
pub fn slice_volume<S: Scalar>(a: &HalfWidths<S>, x: &S) -> Result<S> {
    Ok(density(a, x)?.value * box_volume(a))
}

/// True iff `density(a, x) == density(a, -x)` for every `x` in `xs`.
pub fn density_is_even_check<S: Scalar>(a: &HalfWidths<S>, xs: &[S]) -> Result<bool> {
    for x in xs {
        if density(a, x)?.value != density(a, &-x.clone())?.value {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Float density with plain (uncompensated) arithmetic throughout; kept to
/// measure how much the compensated kernel buys.
pub fn density_uncompensated(a: &HalfWidths<f64>, x: f64) -> f64 {
    let n = a.len() as u32;
    let sum = naive_signed_power_sum(x, a.as_slice(), n - 1);
    let denom: f64 = (1..n).map(f64::from).product::<f64>() * a.iter().map(|v| 2.0 * v).product::<f64>();
    sum / denom
}
