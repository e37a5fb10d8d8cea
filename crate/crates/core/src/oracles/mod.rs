//! Ground truth that does not go through the closed form: exact convolution
//! of box densities, and Monte Carlo simulation of the sum.

mod montecarlo;
mod spline;

pub use montecarlo::{ks_threshold, mc_empirical_cdf, mc_slice_volume, EmpiricalCdf, SHARD_SIZE};
pub use spline::{convolve_boxes, spline_eval, PiecewisePolynomial, Polynomial};
