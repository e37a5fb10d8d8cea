//! Improper sinc-product integrals.
//!
//! Products run over `j = 1..n`:
//!
//! ```text
//! ∫_0^∞ ∏_{j=1}^n sinc(a_j t) dt = π f(0)
//! ```
//!
//! where `f` is the density of the uniform sum with half-widths `a`. The
//! classical form that starts the product at `j = 0` is the same integral
//! for an `(n+1)`-component vector; pass all factors explicitly.

mod quadrature;

use std::fmt;

use num_rational::BigRational;
use num_traits::{Float, FloatConst, ToPrimitive};

use crate::closedform::{density, HalfWidths};
use crate::error::Result;
use crate::numerics::{format_rational, parse_rational, Scalar};

pub use quadrature::{fourier_density_quadrature, gauss_legendre, QuadratureEstimate, MIN_TOLERANCE};

/// The exact real number `coefficient · π`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiTimesRational {
    coefficient: BigRational,
}

impl PiTimesRational {
    pub fn new(coefficient: BigRational) -> Self {
        PiTimesRational { coefficient }
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coefficient
    }

    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI
    }
}

impl fmt::Display for PiTimesRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·π", format_rational(&self.coefficient))
    }
}

/// The integral divided by `π`, i.e. `f(0)`, in any scalar mode.
pub fn sinc_integral_coefficient<S: Scalar>(a: &HalfWidths<S>) -> Result<S> {
    Ok(density(a, &S::zero())?.value)
}

/// `∫_0^∞ ∏ sinc(a_j t) dt` as an exact multiple of `π`. No numerical
/// integration is involved.
pub fn sinc_integral_exact(a: &HalfWidths<BigRational>) -> Result<PiTimesRational> {
    sinc_integral_coefficient(a).map(PiTimesRational::new)
}

pub fn sinc_integral_float<F: Float + FloatConst + Scalar>(a: &HalfWidths<F>) -> Result<F> {
    Ok(F::PI() * sinc_integral_coefficient(a)?)
}

/// Exact integrals of every prefix `(a_1), (a_1, a_2), …, (a_1, …, a_n)`.
///
/// Each extension convolves the density with another centred box, which can
/// only lower its peak, so the sequence is non-increasing.
pub fn monotone_sequence(a_full: &HalfWidths<BigRational>) -> Result<Vec<PiTimesRational>> {
    (1..=a_full.len()).map(|k| sinc_integral_exact(&a_full.prefix(k)?)).collect()
}

/// The classical family `a_j = 1/(2j - 1)`, `j = 1..terms`.
pub fn borwein_halfwidths(terms: usize) -> Result<HalfWidths<BigRational>> {
    HalfWidths::new((1..=terms as i64).map(|j| BigRational::new(1.into(), (2 * j - 1).into())).collect())
}

/// Coefficient for the eight-term Borwein product, the first that falls below
/// one half.
pub const BORWEIN_EIGHT_TERM_COEFFICIENT: &str =
    "467807924713440738696537864469/935615849440640907310521750000";

/// Known coefficient of the `terms`-factor Borwein integral, where one is
/// recorded: `1/2` through seven factors, then the frozen eight-factor value.
pub fn borwein_expected(terms: usize) -> Option<BigRational> {
    match terms {
        1..=7 => Some(BigRational::new(1.into(), 2.into())),
        8 => Some(parse_rational(BORWEIN_EIGHT_TERM_COEFFICIENT).expect("valid constant")),
        _ => None,
    }
}
