//! Densities, distribution functions and sinc-product integrals for
//! `X_1 + … + X_n` with `X_j` independent and uniform on `[-a_j, a_j]`.
//!
//! Everything is generic over [`Scalar`]: [`BigRational`] gives exact
//! answers, `f64`/`f32` give fast ones. The float kernels run the alternating
//! `2^n`-term sums in compensated double-word arithmetic, because plain
//! floating point loses every significant digit to cancellation once `n`
//! approaches twenty.
//!
//! ```
//! use boxsum::{density, cdf, ExactHalfWidths, Rational};
//!
//! let r = |p: i64, q: i64| Rational::new(p.into(), q.into());
//! let a = ExactHalfWidths::new(vec![r(1, 1), r(1, 1), r(1, 1)]).unwrap();
//! assert_eq!(density(&a, &r(0, 1)).unwrap().value, r(3, 8));
//! assert_eq!(cdf(&a, &r(0, 1)).unwrap(), r(1, 2));
//! ```
//!
//! Independent checks live in [`oracles`] (exact spline convolution, Monte
//! Carlo) and [`sincint::fourier_density_quadrature`].

pub mod closedform;
pub mod error;
pub mod numerics;
pub mod oracles;
pub mod sincint;

pub use closedform::{
    cdf, density, density_is_even_check, signed_power_sum, signed_power_sum_expected, slice_volume,
    DensityValue, HalfWidths,
};
pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use numerics::{Mode, Scalar, SignVector, Value};
pub use sincint::PiTimesRational;

/// Exact rational scalar.
pub type Rational = BigRational;

pub type ExactHalfWidths = HalfWidths<Rational>;
pub type FloatHalfWidths = HalfWidths<f64>;
pub type SingleHalfWidths = HalfWidths<f32>;

pub type ExactDensity = DensityValue<Rational>;
pub type FloatDensity = DensityValue<f64>;
