//! Error-free transformations and compensated accumulation.
//!
//! The alternating sums over sign vectors lose nearly all significant digits
//! in plain floating point once `n` reaches the high teens, so float mode runs
//! the whole evaluation (running dot product, powers, accumulation) in
//! double-word arithmetic built from [`two_sum`] and [`two_prod`].

use std::ops::{Add, Div, Mul, Neg};

use num_traits::Float;

/// `a + b = s + e` exactly, with `s = fl(a + b)`.
#[inline]
pub fn two_sum<F: Float>(a: F, b: F) -> (F, F) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum<F: Float>(a: F, b: F) -> (F, F) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `a * b = p + e` exactly (barring underflow), using a fused multiply-add.
#[inline]
pub fn two_prod<F: Float>(a: F, b: F) -> (F, F) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleWord<F> {
    pub hi: F,
    pub lo: F,
}

impl<F: Float> DoubleWord<F> {
    pub fn zero() -> Self {
        Self::from_single(F::zero())
    }

    pub fn from_single(v: F) -> Self {
        DoubleWord { hi: v, lo: F::zero() }
    }

    pub fn from_parts(hi: F, lo: F) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        DoubleWord { hi, lo }
    }

    pub fn value(self) -> F {
        self.hi + self.lo
    }

    pub fn add_single(self, b: F) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        DoubleWord { hi, lo }
    }

    pub fn mul_single(self, b: F) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DoubleWord { hi, lo }
    }

    pub fn powi(self, k: u32) -> Self {
        let mut result = Self::from_single(F::one());
        let mut base = self;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        result
    }

    /// Sign of the represented value: -1, 0 or 1.
    pub fn signum_exact(self) -> i8 {
        let v = if self.hi != F::zero() { self.hi } else { self.lo };
        if v > F::zero() {
            1
        } else if v < F::zero() {
            -1
        } else {
            0
        }
    }
}

impl<F: Float> Add for DoubleWord<F> {
    type Output = Self;

    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleWord { hi, lo }
    }
}

impl<F: Float> Neg for DoubleWord<F> {
    type Output = Self;

    fn neg(self) -> Self {
        DoubleWord { hi: -self.hi, lo: -self.lo }
    }
}

impl<F: Float> Mul for DoubleWord<F> {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleWord { hi, lo }
    }
}

impl<F: Float> Div for DoubleWord<F> {
    type Output = Self;

    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self + -b.mul_single(q1);
        let q2 = r.hi / b.hi;
        let r = r + -b.mul_single(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleWord { hi, lo }.add_single(q3)
    }
}

/// Neumaier's variant of Kahan summation.
///
/// Unlike plain Kahan it stays exact-ish when an incoming term is larger in
/// magnitude than the running sum, which is the common case for alternating
/// series.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<F> {
    sum: F,
    compensation: F,
}

impl<F: Float> Default for CompensatedSum<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Float> CompensatedSum<F> {
    pub fn new() -> Self {
        CompensatedSum { sum: F::zero(), compensation: F::zero() }
    }

    #[inline]
    pub fn add(&mut self, value: F) {
        let (s, e) = two_sum(self.sum, value);
        self.sum = s;
        self.compensation = self.compensation + e;
    }

    pub fn value(&self) -> F {
        self.sum + self.compensation
    }
}

impl<F: Float> Extend<F> for CompensatedSum<F> {
    fn extend<I: IntoIterator<Item = F>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

/// Compensated sum of `terms` in the given order.
pub fn compensated_sum<F: Float, I: IntoIterator<Item = F>>(terms: I) -> F {
    let mut acc = CompensatedSum::new();
    acc.extend(terms);
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{FromPrimitive, Signed, ToPrimitive};
    use proptest::prelude::*;

    fn exact(v: f64) -> BigRational {
        BigRational::from_f64(v).unwrap()
    }

    fn ulp(v: f64) -> f64 {
        let b = v.abs().to_bits();
        f64::from_bits(b + 1) - v.abs()
    }

    #[test]
    fn keeps_small_residual() {
        assert_eq!(compensated_sum([1.0, -1.0, 1e-20]), 1e-20);
        assert_eq!(compensated_sum([1e-20, 1.0, -1.0]), 1e-20);
    }

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(compensated_sum(std::iter::empty::<f64>()), 0.0);
    }

    #[test]
    fn many_tenths() {
        let n = 1usize << 20;
        let got = compensated_sum(std::iter::repeat_n(0.1, n));
        let want = (BigRational::from_integer(BigInt::from(n)) / BigInt::from(10)).to_f64().unwrap();
        assert!((got - want).abs() <= ulp(want), "{got} vs {want}");
        let naive: f64 = std::iter::repeat_n(0.1, n).sum();
        assert!((naive - want).abs() > ulp(want));
    }

    #[test]
    fn double_word_powers_are_accurate() {
        let x = DoubleWord::from_single(1.0f64 / 3.0);
        let p = x.powi(19);
        let want = exact(1.0 / 3.0).pow(19);
        let err = (exact(p.hi) + exact(p.lo) - &want).abs() / &want;
        assert!(err.to_f64().unwrap() < 1e-30);
    }

    #[test]
    fn double_word_division() {
        let a = DoubleWord::from_single(1.0f64);
        let b = DoubleWord::from_single(3.0f64);
        let q = a / b;
        let err = (exact(q.hi) + exact(q.lo)) * BigInt::from(3) - BigRational::from_integer(1.into());
        assert!(err.abs().to_f64().unwrap() < 1e-31);
    }

    proptest! {
        #[test]
        fn two_sum_is_error_free(a in -1e10f64..1e10, b in -1e10f64..1e10) {
            let (s, e) = two_sum(a, b);
            prop_assert_eq!(exact(s) + exact(e), exact(a) + exact(b));
        }

        #[test]
        fn two_prod_is_error_free(a in -1e10f64..1e10, b in -1e10f64..1e10) {
            let (p, e) = two_prod(a, b);
            prop_assert_eq!(exact(p) + exact(e), exact(a) * exact(b));
        }

        #[test]
        fn any_order_within_two_ulps(mut terms in proptest::collection::vec(-1e6f64..1e6, 1..200), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let want: BigRational = terms.iter().map(|&t| exact(t)).fold(BigRational::from_integer(0.into()), |a, b| a + b);
            let want = want.to_f64().unwrap();
            terms.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let got = compensated_sum(terms.iter().copied());
            prop_assert!((got - want).abs() <= 2.0 * ulp(want), "{} vs {}", got, want);
        }
    }
}
