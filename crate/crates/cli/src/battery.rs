//! Closed form against every independent oracle.

use boxsum::numerics::format_rational;
use boxsum::oracles::{convolve_boxes, mc_slice_volume};
use boxsum::sincint::fourier_density_quadrature;
use boxsum::{density, FloatHalfWidths, Mode, Rational, Value};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::{CliError, Widths};

/// Monte Carlo estimates must land within this many standard errors.
const MC_SIGMAS: f64 = 4.0;
const BATTERY_CASES: usize = 20;

#[derive(Debug, Clone)]
pub struct OracleCase {
    pub a: Widths,
    pub x: Value,
}

/// Twenty rational cases with `n = 2..=6`, drawn from `seed`.
pub fn default_battery(seed: u64, mode: Mode) -> Result<Vec<OracleCase>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..BATTERY_CASES)
        .map(|i| {
            let n = 2 + i % 5;
            let a: Vec<Rational> =
                (0..n).map(|_| Rational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=6).into())).collect();
            let radius: Rational = a.iter().sum();
            let x = radius * Rational::new(rng.gen_range(-15..=15).into(), 16.into());
            let (a, x) = match mode {
                Mode::Exact => (a.into_iter().map(Value::Exact).collect(), Value::Exact(x)),
                Mode::Float => (
                    a.iter().map(|v| Value::Float(v.to_f64().unwrap())).collect(),
                    Value::Float(x.to_f64().unwrap()),
                ),
            };
            Ok(OracleCase { a: Widths::from_values(a, mode)?, x })
        })
        .collect()
}

fn compare(case: &OracleCase, tol: f64, samples: usize, seed: u64) -> Result<(Json, f64, bool), CliError> {
    let (closed, closed_text, convolution, a_float, x_float, echo) = match (&case.a, &case.x) {
        (Widths::Exact(a), Value::Exact(x)) => {
            let closed = density(a, x)?.value;
            let spline = convolve_boxes(a).eval(x);
            let a_float = a.map(|v| v.to_f64().unwrap_or(f64::NAN))?;
            let echo: Vec<String> = a.iter().map(format_rational).collect();
            (
                closed.to_f64().unwrap_or(f64::NAN),
                Json::from(format_rational(&closed)),
                Some(spline == closed),
                a_float,
                x.to_f64().unwrap_or(f64::NAN),
                echo,
            )
        }
        (Widths::Float(a), Value::Float(x)) => {
            let closed = density(a, x)?.value;
            let echo: Vec<String> = a.iter().map(|v| format!("{v:?}")).collect();
            (closed, json!(closed), None, a.clone(), *x, echo)
        }
        _ => return Err(boxsum::Error::MixedModes.into()),
    };
    let mut pass = convolution.unwrap_or(true);
    let mut max_disc: f64 = if pass { 0.0 } else { f64::INFINITY };

    let quadrature = if a_float.len() >= 2 {
        let q = fourier_density_quadrature(&a_float, x_float, tol)?.value;
        let d = (q - closed).abs();
        max_disc = max_disc.max(d);
        pass &= d <= tol;
        Some(q)
    } else {
        None
    };

    let (monte_carlo, sigma) = if a_float.len() >= 2 {
        let (mc, sigma) = mc_density(&a_float, x_float, samples, seed)?;
        let d = (mc - closed).abs();
        max_disc = max_disc.max(d);
        pass &= d <= MC_SIGMAS * sigma + 1e-12;
        (Some(mc), Some(sigma))
    } else {
        (None, None)
    };

    let convolution_json = match (&case.a, &case.x, convolution) {
        (Widths::Exact(a), Value::Exact(x), Some(_)) => Json::from(format_rational(&convolve_boxes(a).eval(x))),
        _ => Json::Null,
    };
    let row = json!({
        "a": echo,
        "x": match &case.x { Value::Exact(q) => Json::from(format_rational(q)), Value::Float(f) => json!(f) },
        "closed_form": closed_text,
        "convolution": convolution_json,
        "quadrature": quadrature,
        "monte_carlo": monte_carlo,
        "monte_carlo_sigma": sigma,
        "max_abs_discrepancy": max_disc,
        "pass": pass,
    });
    Ok((row, max_disc, pass))
}

/// Density estimate from the slice sampler, with its binomial standard error.
fn mc_density(a: &FloatHalfWidths, x: f64, samples: usize, seed: u64) -> Result<(f64, f64), CliError> {
    let slice = mc_slice_volume(a, x, samples, seed)?;
    let base: f64 = a.iter().skip(1).map(|v| 2.0 * v).product();
    let box_volume = 2.0 * a[0] * base;
    let p = slice / base;
    let sigma = (p * (1.0 - p) / samples as f64).sqrt() * base / box_volume;
    Ok((slice / box_volume, sigma))
}

pub(crate) fn compare_all(
    cases: &[OracleCase],
    tol: f64,
    samples: usize,
    seed: u64,
) -> Result<(Vec<Json>, f64, bool), CliError> {
    let mut rows = Vec::with_capacity(cases.len());
    let mut max_disc: f64 = 0.0;
    let mut pass = true;
    for (i, case) in cases.iter().enumerate() {
        let (row, d, ok) = compare(case, tol, samples, seed.wrapping_add(i as u64))?;
        rows.push(row);
        max_disc = max_disc.max(d);
        pass &= ok;
    }
    Ok((rows, max_disc, pass))
}
