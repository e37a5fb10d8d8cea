use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::closedform::HalfWidths;

/// Coefficients in ascending degree, in the global variable `x`.
pub type Polynomial = Vec<BigRational>;

fn trim(mut p: Polynomial) -> Polynomial {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn antiderivative(p: &[BigRational]) -> Polynomial {
    let mut out = vec![BigRational::zero()];
    for (k, c) in p.iter().enumerate() {
        out.push(c / BigInt::from(k + 1));
    }
    trim(out)
}

/// `q(x) = p(x + c)`.
fn shift(p: &[BigRational], c: &BigRational) -> Polynomial {
    // Horner in polynomial form: q = (…(p_d (x+c) + p_{d-1})(x+c) + …).
    let mut q: Polynomial = Vec::new();
    for coeff in p.iter().rev() {
        let mut next = vec![BigRational::zero(); q.len() + 1];
        for (k, v) in q.iter().enumerate() {
            next[k + 1] += v;
            next[k] += v * c;
        }
        next[0] += coeff;
        q = next;
    }
    trim(q)
}

fn sub(p: &[BigRational], q: &[BigRational]) -> Polynomial {
    let len = p.len().max(q.len());
    trim((0..len)
        .map(|k| {
            let a = p.get(k).cloned().unwrap_or_else(BigRational::zero);
            let b = q.get(k).cloned().unwrap_or_else(BigRational::zero);
            a - b
        })
        .collect())
}

/// An exact spline: polynomial pieces between strictly increasing
/// breakpoints, zero outside the outermost ones.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<BigRational>,
    segments: Vec<Polynomial>,
    antiderivative: OnceLock<Vec<Polynomial>>,
}

impl PiecewisePolynomial {
    /// The box density `1/(2a)` on `(-a, a)`.
    pub fn box_density(a: &BigRational) -> Self {
        let height = (BigRational::one() + BigRational::one()) * a;
        PiecewisePolynomial {
            breakpoints: vec![-a.clone(), a.clone()],
            segments: vec![vec![height.recip()]],
            antiderivative: OnceLock::new(),
        }
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Polynomial] {
        &self.segments
    }

    /// Highest segment degree (0 for constants and zero pieces).
    pub fn degree(&self) -> usize {
        self.segments.iter().map(|s| s.len().saturating_sub(1)).max().unwrap_or(0)
    }

    fn locate(&self, x: &BigRational) -> usize {
        // index of the segment [b_i, b_{i+1}) containing x; caller ensures range
        self.breakpoints.partition_point(|b| b <= x) - 1
    }

    fn left_limit(&self, x: &BigRational) -> BigRational {
        let first = &self.breakpoints[0];
        let last = self.breakpoints.last().unwrap();
        if x <= first || x > last {
            return BigRational::zero();
        }
        let i = self.breakpoints.partition_point(|b| b < x) - 1;
        eval(&self.segments[i], x)
    }

    fn right_limit(&self, x: &BigRational) -> BigRational {
        let first = &self.breakpoints[0];
        let last = self.breakpoints.last().unwrap();
        if x < first || x >= last {
            return BigRational::zero();
        }
        eval(&self.segments[self.locate(x)], x)
    }

    /// Value at `x`; at a breakpoint, the mean of the one-sided limits.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let left = self.left_limit(x);
        let right = self.right_limit(x);
        if left == right {
            left
        } else {
            (left + right) / BigInt::from(2)
        }
    }

    /// Antiderivative pieces `Q_i`, continuous, with `Q(-∞) = 0`.
    fn antiderivative_pieces(&self) -> &[Polynomial] {
        self.antiderivative.get_or_init(|| self.build_antiderivative())
    }

    fn build_antiderivative(&self) -> Vec<Polynomial> {
        let mut acc = BigRational::zero();
        let mut pieces = Vec::with_capacity(self.segments.len());
        for (i, seg) in self.segments.iter().enumerate() {
            let mut q = antiderivative(seg);
            let offset = acc.clone() - eval(&q, &self.breakpoints[i]);
            if q.is_empty() {
                q.push(BigRational::zero());
            }
            q[0] += offset;
            let q = trim(q);
            acc = eval(&q, &self.breakpoints[i + 1]);
            pieces.push(q);
        }
        pieces
    }

    /// `∫_{-∞}^x` of the spline.
    pub fn integral_to(&self, x: &BigRational) -> BigRational {
        if x <= &self.breakpoints[0] {
            return BigRational::zero();
        }
        let pieces = self.antiderivative_pieces();
        let last = self.breakpoints.last().unwrap();
        if x >= last {
            return eval(pieces.last().unwrap(), last);
        }
        eval(&pieces[self.locate(x)], x)
    }

    /// Total integral over the support.
    pub fn integral(&self) -> BigRational {
        self.integral_to(self.breakpoints.last().unwrap())
    }

    /// Convolution with the box density of half-width `c`:
    /// `g(x) = (P(x + c) - P(x - c)) / (2c)` with `P` the antiderivative.
    pub fn convolve_box(&self, c: &BigRational) -> Self {
        let pieces = self.antiderivative_pieces();
        let first = &self.breakpoints[0];
        let last = self.breakpoints.last().unwrap();
        let total = eval(pieces.last().unwrap(), last);
        let piece_at = |y: &BigRational| -> Polynomial {
            match (y.cmp(first), y.cmp(last)) {
                (Ordering::Less, _) => Vec::new(),
                (_, Ordering::Greater) => vec![total.clone()],
                _ => pieces[self.locate(y)].clone(),
            }
        };

        let mut breakpoints: Vec<BigRational> =
            self.breakpoints.iter().flat_map(|b| [b - c, b + c]).collect();
        breakpoints.sort();
        breakpoints.dedup();

        let two = BigRational::one() + BigRational::one();
        let inv_width = (two.clone() * c).recip();
        let segments = breakpoints
            .windows(2)
            .map(|w| {
                let mid = (&w[0] + &w[1]) / two.clone();
                let upper = shift(&piece_at(&(&mid + c)), c);
                let lower = shift(&piece_at(&(&mid - c)), &-c.clone());
                trim(sub(&upper, &lower).into_iter().map(|v| v * &inv_width).collect())
            })
            .collect();
        PiecewisePolynomial { breakpoints, segments, antiderivative: OnceLock::new() }
    }
}

/// Exact spline of the density of `Σ X_j`, built by convolving one box at a
/// time in descending half-width order.
pub fn convolve_boxes(a: &HalfWidths<BigRational>) -> PiecewisePolynomial {
    let mut widths: Vec<&BigRational> = a.iter().collect();
    widths.sort_by(|x, y| y.cmp(x));
    let mut spline = PiecewisePolynomial::box_density(widths[0]);
    for c in &widths[1..] {
        spline = spline.convolve_box(c);
    }
    spline
}

pub fn spline_eval(p: &PiecewisePolynomial, x: &BigRational) -> BigRational {
    p.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn hw(v: &[(i64, i64)]) -> HalfWidths<BigRational> {
        HalfWidths::new(v.iter().map(|&(p, q)| r(p, q)).collect()).unwrap()
    }

    #[test]
    fn single_box() {
        let s = convolve_boxes(&hw(&[(1, 1)]));
        assert_eq!(s.breakpoints(), &[r(-1, 1), r(1, 1)]);
        assert_eq!(s.segments(), &[vec![r(1, 2)]]);
        assert_eq!(spline_eval(&s, &r(1, 1)), r(1, 4));
        assert_eq!(spline_eval(&s, &r(-1, 1)), r(1, 4));
        assert_eq!(spline_eval(&s, &r(0, 1)), r(1, 2));
        assert_eq!(spline_eval(&s, &r(3, 2)), r(0, 1));
    }

    #[test]
    fn triangle() {
        let s = convolve_boxes(&hw(&[(1, 1), (1, 1)]));
        assert_eq!(s.breakpoints(), &[r(-2, 1), r(0, 1), r(2, 1)]);
        // (x + 2)/4 and (2 - x)/4
        assert_eq!(s.segments(), &[vec![r(1, 2), r(1, 4)], vec![r(1, 2), r(-1, 4)]]);
        assert_eq!(spline_eval(&s, &r(0, 1)), r(1, 2));
        assert_eq!(spline_eval(&s, &r(1, 1)), r(1, 4));
        assert_eq!(spline_eval(&s, &r(5, 1)), r(0, 1));
        assert_eq!(s.integral_to(&r(1, 1)), r(7, 8));
    }

    #[test]
    fn three_unit_boxes_at_zero() {
        let s = convolve_boxes(&hw(&[(1, 1), (1, 1), (1, 1)]));
        assert_eq!(spline_eval(&s, &r(0, 1)), r(3, 8));
        assert_eq!(s.degree(), 2);
        assert_eq!(s.integral(), r(1, 1));
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = vec![r(1, 1), r(-2, 3), r(0, 1), r(5, 7)];
        let c = r(-3, 4);
        let q = shift(&p, &c);
        for x in [r(0, 1), r(1, 2), r(-7, 5)] {
            assert_eq!(eval(&q, &x), eval(&p, &(&x + &c)));
        }
    }

    #[test]
    fn continuous_at_interior_breakpoints() {
        let s = convolve_boxes(&hw(&[(2, 1), (1, 3), (3, 4), (1, 2)]));
        for b in s.breakpoints() {
            assert_eq!(s.left_limit(b), s.right_limit(b));
        }
    }

    #[test]
    fn convolution_order_does_not_matter() {
        let a = hw(&[(1, 2), (3, 1), (2, 5)]);
        let sorted = convolve_boxes(&a);
        let mut forward = PiecewisePolynomial::box_density(&a[0]);
        for c in &a.as_slice()[1..] {
            forward = forward.convolve_box(c);
        }
        for k in -40..=40 {
            let x = r(k, 10);
            assert_eq!(sorted.eval(&x), forward.eval(&x));
        }
    }
}
