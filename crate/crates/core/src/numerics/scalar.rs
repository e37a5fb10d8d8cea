//! The scalar abstraction shared by every evaluator.
//!
//! The closed forms are polynomials in `x` and the half-widths, so they can be
//! evaluated without rounding over [`BigRational`]; `f32`/`f64` trade that for
//! speed. Each backend supplies its own kernel for the alternating power sum
//! over sign vectors, since that is where the two differ most.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use super::compensated::DoubleWord;
use super::sign::{gray_code, map_blocks, GrayWalk};

/// A real scalar type the closed forms can be evaluated over.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_bigint(v: &BigInt) -> Self;

    fn approx_f64(&self) -> f64;

    fn is_finite_value(&self) -> bool;

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    /// Sum in the given order; float backends compensate.
    fn sum_ordered<I: IntoIterator<Item = Self>>(terms: I) -> Self;

    /// `Σ_ε (∏ε_j) · g(x + ε·a)` over all `2^n` sign vectors, where `g(s)` is
    /// `s^k` or, when `truncate` is set, the truncated power `s^k τ(s)`.
    ///
    /// Sign vectors are visited in Gray-code order with the running dot product
    /// updated by `±2a_j` per step.
    fn signed_power_sum(x: &Self, a: &[Self], k: u32, truncate: bool) -> Self;
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_bigint(v: &BigInt) -> Self {
                v.to_f64().map(|f| f as $t).unwrap_or(<$t>::INFINITY)
            }

            fn approx_f64(&self) -> f64 {
                *self as f64
            }

            fn is_finite_value(&self) -> bool {
                self.is_finite()
            }

            fn half() -> Self {
                0.5
            }

            fn sum_ordered<I: IntoIterator<Item = Self>>(terms: I) -> Self {
                super::compensated::compensated_sum(terms)
            }

            fn signed_power_sum(x: &Self, a: &[Self], k: u32, truncate: bool) -> Self {
                float_signed_power_sum(*x, a, k, truncate)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

fn float_signed_power_sum<F: Float + Send + Sync>(x: F, a: &[F], k: u32, truncate: bool) -> F {
    let n = a.len() as u32;
    let two = F::one() + F::one();
    let half = F::one() / two;
    let partials = map_blocks(n, |start, end| {
        let first = gray_code(start);
        let mut dot = DoubleWord::from_single(x);
        for (j, &aj) in a.iter().enumerate() {
            dot = dot.add_single(if first >> j & 1 == 1 { -aj } else { aj });
        }
        let mut acc = DoubleWord::zero();
        for step in GrayWalk::new(start, end) {
            if let Some(j) = step.flipped {
                let shift = two * a[j as usize];
                dot = dot.add_single(if step.bits >> j & 1 == 1 { -shift } else { shift });
            }
            let term = match (truncate, dot.signum_exact()) {
                (true, -1) => continue,
                (true, 0) if k == 0 => DoubleWord::from_single(half),
                (true, 0) => continue,
                _ => dot.powi(k),
            };
            acc = if step.bits.count_ones().is_multiple_of(2) { acc + term } else { acc + -term };
        }
        acc
    });
    partials.into_iter().fold(DoubleWord::zero(), |acc, p| acc + p).value()
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn sum_ordered<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, t| acc + t)
    }

    fn signed_power_sum(x: &Self, a: &[Self], k: u32, truncate: bool) -> Self {
        exact_signed_power_sum(x, a, k, truncate)
    }
}

/// Rescales everything to a common denominator `d` so the walk runs on
/// integers, then divides by `d^k` once at the end.
fn exact_signed_power_sum(x: &BigRational, a: &[BigRational], k: u32, truncate: bool) -> BigRational {
    let n = a.len() as u32;
    let d = a.iter().fold(x.denom().clone(), |l, v| l.lcm(v.denom()));
    let scale = |v: &BigRational| v.numer() * (&d / v.denom());
    let x_int = scale(x);
    let a_int: Vec<BigInt> = a.iter().map(scale).collect();
    let two_a: Vec<BigInt> = a_int.iter().map(|v| v << 1).collect();

    // (sum of terms, signed count of zero-argument τ(0) = 1/2 contributions)
    let partials = map_blocks(n, |start, end| {
        let first = gray_code(start);
        let mut dot = x_int.clone();
        for (j, aj) in a_int.iter().enumerate() {
            if first >> j & 1 == 1 {
                dot -= aj;
            } else {
                dot += aj;
            }
        }
        let mut sum = BigInt::zero();
        let mut halves = 0i64;
        for step in GrayWalk::new(start, end) {
            if let Some(j) = step.flipped {
                if step.bits >> j & 1 == 1 {
                    dot -= &two_a[j as usize];
                } else {
                    dot += &two_a[j as usize];
                }
            }
            let positive = step.bits.count_ones().is_multiple_of(2);
            if truncate && !dot.is_positive() {
                if dot.is_zero() && k == 0 {
                    halves += if positive { 1 } else { -1 };
                }
                continue;
            }
            let term = num_traits::pow(dot.clone(), k as usize);
            if positive {
                sum += term;
            } else {
                sum -= term;
            }
        }
        (sum, halves)
    });
    let (sum, halves) = partials
        .into_iter()
        .fold((BigInt::zero(), 0i64), |(s, h), (ps, ph)| (s + ps, h + ph));
    let numer = BigRational::from_integer(sum) + BigRational::new(halves.into(), 2.into());
    numer / BigRational::from_integer(num_traits::pow(d, k as usize))
}

/// Uncompensated reference used only to document the cancellation hazard.
pub fn naive_signed_power_sum(x: f64, a: &[f64], k: u32) -> f64 {
    let mut dot = x + a.iter().sum::<f64>();
    let mut acc = 0.0;
    for step in GrayWalk::full(a.len() as u32) {
        if let Some(j) = step.flipped {
            let shift = 2.0 * a[j as usize];
            dot += if step.bits >> j & 1 == 1 { -shift } else { shift };
        }
        let term = if dot > 0.0 {
            dot.powi(k as i32)
        } else if dot == 0.0 && k == 0 {
            0.5
        } else {
            0.0
        };
        acc += if step.bits.count_ones().is_multiple_of(2) { term } else { -term };
    }
    acc
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Compensated accumulation for float types, plain for exact ones, behind one
/// interface usable in generic code.
pub(crate) fn sum_refs<S: Scalar>(terms: &[S]) -> S {
    S::sum_ordered(terms.iter().cloned())
}

