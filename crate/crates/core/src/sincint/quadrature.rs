//! Fourier-inversion quadrature for the density, used as an independent check
//! of the closed form:
//!
//! ```text
//! f(x) = (1/π) ∫_0^∞ cos(xt) ∏ sinc(a_j t) dt
//! ```
//!
//! The range is cut at a point `T` chosen so the neglected tail is at most
//! `tol/2`, and `[0, T]` is covered by fixed-order Gauss–Legendre panels that
//! are halved until two successive panel sums differ by less than `tol/2`.
//!
//! Two tail bounds are available. The crude one,
//! `∫_T^∞ ∏|sinc(a_j t)| ≤ ∏(1/a_j) T^{1-n}/(n-1)`, ignores oscillation and
//! needs `T ~ 1/tol` when `n = 2`. The sharper one expands
//! `cos(xt) ∏ sin(a_j t)` into `2^{n+1}` exponentials `c_k e^{iω_k t}`:
//! zero-frequency terms have an exact tail `c_0 T^{1-n}/(n-1)`, and every other
//! term is bounded by `|c_k| min(2/(|ω_k| T^n), T^{1-n}/(n-1))` after one
//! integration by parts. Whichever gives the smaller `T` is used.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::closedform::HalfWidths;
use crate::error::{Error, Result};
use crate::numerics::{sinc, CompensatedSum};

/// Smallest tolerance accepted; below this, rounding in the panel sums
/// dominates.
pub const MIN_TOLERANCE: f64 = 1e-13;

const ORDER: usize = 10;
const MAX_REFINEMENTS: u32 = 8;
const PANEL_BUDGET: u64 = 400_000_000;
const CHUNK: u64 = 4096;
/// Above this many factors the frequency expansion is not enumerated.
const MAX_FREQUENCY_MODEL: usize = 16;

/// Result of [`fourier_density_quadrature`] with its error accounting.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    /// Truncation point of the integral.
    pub cutoff: f64,
    /// Bound on the error from the neglected range `[cutoff, ∞)`.
    pub tail_bound: f64,
    /// Difference between the last two panel refinements.
    pub refinement_delta: f64,
    pub panels: u64,
}

/// Nodes and weights of the `m`-point Gauss–Legendre rule on `[-1, 1]`, `m ≥ 1`.
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(m);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        rule.push((z, 2.0 / ((1.0 - z * z) * dp * dp)));
    }
    rule
}

struct TailModel {
    n: i32,
    scale: f64,
    /// Real coefficient collected from (near-)zero frequencies.
    zero_coefficient: f64,
    /// `|ω|` of near-zero frequencies folded into `zero_coefficient`.
    folded: Vec<f64>,
    /// `(|c|, |ω|)` of the oscillating terms.
    oscillating: Vec<(f64, f64)>,
}

impl TailModel {
    fn new(a: &[f64], x: f64, scale: f64) -> Self {
        let n = a.len();
        let radius: f64 = a.iter().sum::<f64>() + x.abs();
        let threshold = 1e-12 * radius;
        let magnitude = 0.5f64.powi(n as i32 + 1);
        let mut signed_zero = 0i64;
        let mut folded = Vec::new();
        let mut oscillating = Vec::new();
        for bits in 0u64..1 << n {
            let dot: f64 = a.iter().enumerate().map(|(j, &v)| if bits >> j & 1 == 1 { -v } else { v }).sum();
            let parity = if bits.count_ones().is_multiple_of(2) { 1 } else { -1 };
            for omega in [dot + x, dot - x] {
                if omega.abs() <= threshold {
                    signed_zero += parity;
                    if omega != 0.0 {
                        folded.push(omega.abs());
                    }
                } else {
                    oscillating.push((magnitude, omega.abs()));
                }
            }
        }
        // ½ (2i)^{-n} Σ_zero ∏ε is real; it vanishes for odd n.
        let zero_coefficient = if n.is_multiple_of(2) {
            let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * magnitude * signed_zero as f64
        } else {
            0.0
        };
        TailModel { n: n as i32, scale, zero_coefficient, folded, oscillating }
    }

    fn plain_tail(&self, t: f64) -> f64 {
        t.powi(1 - self.n) / f64::from(self.n - 1)
    }

    fn exact_part(&self, t: f64) -> f64 {
        self.scale * self.zero_coefficient * self.plain_tail(t)
    }

    fn bound(&self, t: f64) -> f64 {
        let n = self.n;
        let plain = self.plain_tail(t);
        let osc: f64 = self
            .oscillating
            .iter()
            .map(|&(c, w)| c * (2.0 / (w * t.powi(n))).min(plain))
            .sum();
        // ∫_T^∞ |e^{iωt} - 1| t^{-n} dt for frequencies treated as zero.
        let magnitude = 0.5f64.powi(n + 1);
        let folded: f64 = self
            .folded
            .iter()
            .map(|&w| {
                let b = if n == 2 {
                    if w * t >= 2.0 {
                        2.0 / t
                    } else {
                        w * ((2.0 / (w * t)).ln() + 1.0)
                    }
                } else {
                    w * t.powi(2 - n) / f64::from(n - 2)
                };
                magnitude * b.min(2.0 * plain)
            })
            .sum();
        self.scale * (osc + folded)
    }
}

/// Smallest `t` (to within bisection) with `bound(t) <= target`.
fn solve_cutoff(bound: impl Fn(f64) -> f64, target: f64) -> f64 {
    let mut hi = 1.0;
    while bound(hi) > target {
        hi *= 2.0;
        if hi > 1e18 {
            return f64::INFINITY;
        }
    }
    let mut lo = hi / 2.0;
    if bound(lo) <= target {
        return lo;
    }
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if bound(mid) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Numerically evaluates the density at `x` by Fourier inversion, to within
/// absolute error `tol`.
///
/// Needs `n ≥ 2`: with one factor the integral only converges conditionally.
pub fn fourier_density_quadrature(a: &HalfWidths<f64>, x: f64, tol: f64) -> Result<QuadratureEstimate> {
    let n = a.len();
    if n < 2 {
        return Err(Error::TooFewComponents { op: "fourier_density_quadrature", min: 2, n });
    }
    if !x.is_finite() {
        return Err(Error::NonFinite(x.to_string()));
    }
    if !(tol.is_finite() && tol >= MIN_TOLERANCE) {
        return Err(Error::ToleranceTooSmall(tol));
    }
    let a = a.as_slice();
    let scale = 1.0 / (PI * a.iter().product::<f64>());
    let target = tol / 2.0;

    let crude = |t: f64| scale * t.powi(1 - n as i32) / (n - 1) as f64;
    let mut cutoff = solve_cutoff(crude, target);
    let mut tail_bound = crude(cutoff);
    let mut exact_tail = 0.0;
    if n <= MAX_FREQUENCY_MODEL {
        let model = TailModel::new(a, x, scale);
        let sharp = solve_cutoff(|t| model.bound(t), target);
        if sharp < cutoff {
            cutoff = sharp;
            tail_bound = model.bound(sharp);
            exact_tail = model.exact_part(sharp);
        }
    }

    let a_max = a.iter().copied().fold(0.0, f64::max);
    let width = PI / (4.0 * a_max);
    let mut panels = (cutoff / width).ceil().max(1.0) as u64;
    let rule = gauss_legendre(ORDER);
    let integrand = |t: f64| (x * t).cos() * a.iter().map(|&aj| sinc(aj * t)).product::<f64>() / PI;

    let mut coarse = panel_sum(&integrand, &rule, cutoff, panels)?;
    let mut delta = f64::INFINITY;
    for _ in 0..MAX_REFINEMENTS {
        panels *= 2;
        let fine = panel_sum(&integrand, &rule, cutoff, panels)?;
        delta = (fine - coarse).abs();
        coarse = fine;
        if delta <= target {
            break;
        }
    }
    Ok(QuadratureEstimate {
        value: coarse + exact_tail,
        cutoff,
        tail_bound,
        refinement_delta: delta,
        panels,
    })
}

fn panel_sum(f: &(impl Fn(f64) -> f64 + Sync), rule: &[(f64, f64)], end: f64, panels: u64) -> Result<f64> {
    if panels > PANEL_BUDGET {
        return Err(Error::QuadratureBudget { panels, budget: PANEL_BUDGET });
    }
    let h = end / panels as f64;
    let chunks = panels.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = CompensatedSum::new();
            for p in c * CHUNK..((c + 1) * CHUNK).min(panels) {
                let mid = (p as f64 + 0.5) * h;
                let half = 0.5 * h;
                let s: f64 = rule.iter().map(|&(z, w)| w * f(mid + half * z)).sum();
                acc.add(half * s);
            }
            acc.value()
        })
        .collect();
    Ok(crate::numerics::compensated_sum(partials))
}
