use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closedform::HalfWidths;
use crate::error::{Error, Result};

/// Samples drawn per generator stream. Sample `i` always comes from stream
/// `i / SHARD_SIZE` of the seeded ChaCha8 generator, so the output does not
/// depend on how shards are spread over threads.
pub const SHARD_SIZE: usize = 1 << 16;

/// Sorted sample of `Σ X_j` with `X_j` uniform on `[-a_j, a_j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    pub sample_count: usize,
    pub sorted_samples: Vec<f64>,
    pub seed: u64,
}

impl EmpiricalCdf {
    /// Fraction of samples `≤ x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted_samples.partition_point(|&s| s <= x) as f64 / self.sample_count as f64
    }

    /// Kolmogorov–Smirnov distance `sup_x |F_N(x) - F(x)|` to a continuous `F`.
    pub fn ks_statistic(&self, cdf: impl Fn(f64) -> f64 + Sync) -> f64 {
        let n = self.sample_count as f64;
        self.sorted_samples
            .par_iter()
            .enumerate()
            .map(|(i, &s)| {
                let f = cdf(s);
                ((i + 1) as f64 / n - f).max(f - i as f64 / n)
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// KS acceptance level `1.95/√N` (about 99.9%).
pub fn ks_threshold(sample_count: usize) -> f64 {
    1.95 / (sample_count as f64).sqrt()
}

fn sharded<T: Send>(count: usize, seed: u64, draw: impl Fn(&mut ChaCha8Rng) -> T + Sync) -> Vec<T> {
    let shards = count.div_ceil(SHARD_SIZE);
    (0..shards)
        .into_par_iter()
        .flat_map_iter(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s as u64);
            let len = SHARD_SIZE.min(count - s * SHARD_SIZE);
            (0..len).map(|_| draw(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

#[inline]
fn uniform(rng: &mut ChaCha8Rng, a: f64) -> f64 {
    let u: f64 = rng.gen();
    a * (2.0 * u - 1.0)
}

pub fn mc_empirical_cdf(a: &HalfWidths<f64>, sample_count: usize, seed: u64) -> Result<EmpiricalCdf> {
    if sample_count == 0 {
        return Err(Error::ZeroSamples);
    }
    let radius = *a.support_radius();
    let mut samples = sharded(sample_count, seed, |rng| {
        let s: f64 = a.iter().map(|&aj| uniform(rng, aj)).sum();
        s.clamp(-radius, radius)
    });
    samples.sort_unstable_by(f64::total_cmp);
    Ok(EmpiricalCdf { sample_count, sorted_samples: samples, seed })
}

/// Hit-or-miss estimate of the slice measure at `x`: draws `x_2, …, x_n`
/// uniformly, solves for `x_1`, and scales the hit rate `|x_1| < a_1` by
/// `∏_{j≥2} 2a_j`.
pub fn mc_slice_volume(a: &HalfWidths<f64>, x: f64, sample_count: usize, seed: u64) -> Result<f64> {
    if a.len() < 2 {
        return Err(Error::TooFewComponents { op: "mc_slice_volume", min: 2, n: a.len() });
    }
    if sample_count == 0 {
        return Err(Error::ZeroSamples);
    }
    if !x.is_finite() {
        return Err(Error::NonFinite(x.to_string()));
    }
    let (a1, rest) = a.as_slice().split_first().unwrap();
    let hits: usize = sharded(sample_count, seed, |rng| {
        let s: f64 = rest.iter().map(|&aj| uniform(rng, aj)).sum();
        usize::from((x - s).abs() < *a1)
    })
    .into_iter()
    .sum();
    let base: f64 = rest.iter().map(|v| 2.0 * v).product();
    Ok(hits as f64 / sample_count as f64 * base)
}
