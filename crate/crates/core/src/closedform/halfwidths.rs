use std::ops::Index;

use crate::error::{Error, Result};
use crate::numerics::scalar::sum_refs;
use crate::numerics::{Scalar, MAX_COMPONENTS};

/// Positive half-widths `a_1, …, a_n` with the support radius `A = Σ a_j`.
///
/// Ties are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfWidths<S> {
    a: Vec<S>,
    support_radius: S,
}

impl<S: Scalar> HalfWidths<S> {
    pub fn new(a: Vec<S>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyHalfWidths);
        }
        if a.len() > MAX_COMPONENTS {
            return Err(Error::TooManyComponents { n: a.len(), max: MAX_COMPONENTS });
        }
        for (index, v) in a.iter().enumerate() {
            if !v.is_finite_value() {
                return Err(Error::NonFinite(v.to_string()));
            }
            if *v <= S::zero() {
                return Err(Error::NonPositiveHalfWidth { index: index + 1, value: v.to_string() });
            }
        }
        let support_radius = sum_refs(&a);
        Ok(HalfWidths { a, support_radius })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.a
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.a.iter()
    }

    /// `A = Σ a_j`; the density vanishes outside `[-A, A]`.
    pub fn support_radius(&self) -> &S {
        &self.support_radius
    }

    /// The first `k` components, `1 ≤ k ≤ n`.
    pub fn prefix(&self, k: usize) -> Result<Self> {
        Self::new(self.a[..k.min(self.a.len())].to_vec())
    }

    /// Converts every component with `f`, revalidating.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<HalfWidths<T>> {
        HalfWidths::new(self.a.iter().map(f).collect())
    }

    pub fn into_vec(self) -> Vec<S> {
        self.a
    }
}

impl<S> Index<usize> for HalfWidths<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.a[i]
    }
}

impl<'a, S> IntoIterator for &'a HalfWidths<S> {
    type Item = &'a S;
    type IntoIter = std::slice::Iter<'a, S>;

    fn into_iter(self) -> Self::IntoIter {
        self.a.iter()
    }
}
