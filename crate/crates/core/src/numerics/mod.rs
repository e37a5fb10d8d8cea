//! Scalars, step and truncated-power primitives, `sinc`, and compensated
//! summation.

pub mod compensated;
pub mod rational;
pub mod scalar;
pub mod sign;
pub mod value;

use num_traits::Float;

pub use compensated::{compensated_sum, CompensatedSum, DoubleWord};
pub use rational::{format_rational, parse_rational};
pub use scalar::{factorial, naive_signed_power_sum, Scalar};
pub use sign::{GrayStep, GrayWalk, SignVector, MAX_COMPONENTS};
pub use value::{Mode, Value};

/// Half-maximum step: 1 for `x > 0`, 1/2 at zero, 0 for `x < 0`.
pub fn tau<S: Scalar>(x: &S) -> S {
    if *x > S::zero() {
        S::one()
    } else if x.is_zero() {
        S::half()
    } else {
        S::zero()
    }
}

/// Truncated power `x^k τ(x)`; `plus_power(x, 0) = τ(x)`.
pub fn plus_power<S: Scalar>(x: &S, k: u32) -> S {
    if k == 0 {
        return tau(x);
    }
    if *x > S::zero() {
        num_traits::pow(x.clone(), k as usize)
    } else {
        S::zero()
    }
}

/// Below this magnitude `sinc` switches to its Taylor polynomial.
pub const SINC_TAYLOR_THRESHOLD: f64 = 1e-4;

/// `sin(x)/x`, with `sinc(0) = 1`.
pub fn sinc<F: Float>(x: F) -> F {
    let threshold = F::from(SINC_TAYLOR_THRESHOLD).unwrap();
    if x.abs() < threshold {
        let x2 = x * x;
        F::one() - x2 / F::from(6.0).unwrap() + x2 * x2 / F::from(120.0).unwrap()
    } else {
        x.sin() / x
    }
}
