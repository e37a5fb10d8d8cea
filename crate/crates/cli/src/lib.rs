//! Command-line driver: argument model, dispatch, and report rendering.
//!
//! Reports are JSON objects of the form
//!
//! ```json
//! {"command": "density", "mode": "exact", "inputs": {"a": ["1", "1"], "x": "0"}, "result": "1/2"}
//! ```
//!
//! Exact values are rendered as `"p/q"` strings, floats as JSON numbers, and
//! multiples of π as `{"pi_coefficient": "p/q"}`. See `docs/report-schema.md`.

mod battery;
mod config;
mod report;

pub use battery::{default_battery, OracleCase};
pub use config::{parse_halfwidths, Cli, CommandKind, OutputFormat, RunConfig, XGrid};
pub use report::{render, Outcome};

use boxsum::numerics::format_rational;
use boxsum::sincint::{borwein_expected, borwein_halfwidths, sinc_integral_exact};
use boxsum::{
    cdf, density, signed_power_sum, signed_power_sum_expected, slice_volume, Error as CoreError,
    ExactHalfWidths, FloatHalfWidths, Mode, Rational, Value,
};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value as Json};
use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const VALIDATION: u8 = 2;
    pub const DISCREPANCY: u8 = 3;
    pub const INTERNAL: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("missing required option --{0}")]
    Missing(&'static str),
    #[error("--{option} is not used by {command}")]
    Unsupported { option: &'static str, command: &'static str },
    #[error("invalid grid {0:?}: expected start:stop:count with count >= 1")]
    BadGrid(String),
    #[error("csv output needs --x-grid")]
    CsvWithoutGrid,
    #[error("--terms must be at least 1")]
    NoTerms,
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => exit::INTERNAL,
            CliError::Core(CoreError::QuadratureBudget { .. }) => exit::INTERNAL,
            _ => exit::VALIDATION,
        }
    }
}

/// Half-widths in the mode the run was requested in.
#[derive(Debug, Clone)]
pub enum Widths {
    Exact(ExactHalfWidths),
    Float(FloatHalfWidths),
}

impl Widths {
    pub fn from_values(values: Vec<Value>, mode: Mode) -> Result<Self, CliError> {
        Ok(match mode {
            Mode::Exact => Widths::Exact(ExactHalfWidths::new(
                values.iter().map(|v| v.as_exact().cloned()).collect::<Result<_, _>>()?,
            )?),
            Mode::Float => Widths::Float(FloatHalfWidths::new(
                values.iter().map(Value::as_float).collect::<Result<_, _>>()?,
            )?),
        })
    }

    pub fn len(&self) -> usize {
        match self {
            Widths::Exact(a) => a.len(),
            Widths::Float(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn echo(&self) -> Json {
        match self {
            Widths::Exact(a) => Json::from(a.iter().map(format_rational).collect::<Vec<_>>()),
            Widths::Float(a) => Json::from(a.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>()),
        }
    }
}

fn scalar_json(v: &Value) -> Json {
    match v {
        Value::Exact(q) => Json::from(format_rational(q)),
        Value::Float(f) => json!(f),
    }
}

fn pi_json(coefficient: &Rational, approx: bool) -> Json {
    let mut m = Map::new();
    m.insert("pi_coefficient".into(), Json::from(format_rational(coefficient)));
    if approx {
        m.insert("approx".into(), json!(coefficient.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI));
    }
    Json::Object(m)
}

fn pointwise(kind: CommandKind, a: &Widths, x: &Value) -> Result<Value, CliError> {
    Ok(match (a, x) {
        (Widths::Exact(a), Value::Exact(x)) => Value::Exact(match kind {
            CommandKind::Density => density(a, x)?.value,
            CommandKind::Cdf => cdf(a, x)?,
            CommandKind::SliceVolume => slice_volume(a, x)?,
            _ => return Err(CliError::Internal(format!("{kind:?} is not pointwise"))),
        }),
        (Widths::Float(a), Value::Float(x)) => Value::Float(match kind {
            CommandKind::Density => density(a, x)?.value,
            CommandKind::Cdf => cdf(a, x)?,
            CommandKind::SliceVolume => slice_volume(a, x)?,
            _ => return Err(CliError::Internal(format!("{kind:?} is not pointwise"))),
        }),
        _ => return Err(CoreError::MixedModes.into()),
    })
}

/// Executes one validated configuration.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    let mut inputs = Map::new();
    let mut report = Map::new();
    report.insert("command".into(), Json::from(config.command.name()));
    report.insert("mode".into(), Json::from(config.mode.to_string()));
    let mut status = exit::SUCCESS;

    match config.command {
        CommandKind::Density | CommandKind::Cdf | CommandKind::SliceVolume => {
            let a = config.widths()?;
            inputs.insert("a".into(), a.echo());
            if let Some(grid) = &config.x_grid {
                inputs.insert("x_grid".into(), Json::from(grid.text.clone()));
                let mut rows = Vec::new();
                for x in grid.points(config.mode)? {
                    let v = pointwise(config.command, &a, &x)?;
                    rows.push(json!({ "x": scalar_json(&x), "value": scalar_json(&v) }));
                }
                report.insert("result".into(), Json::Array(rows));
            } else {
                let x = config.x_value()?;
                inputs.insert("x".into(), scalar_json(&x));
                let v = pointwise(config.command, &a, &x)?;
                report.insert("result".into(), scalar_json(&v));
            }
        }
        CommandKind::Integral => {
            let a = config.widths()?;
            inputs.insert("a".into(), a.echo());
            let result = match &a {
                Widths::Exact(a) => pi_json(sinc_integral_exact(a)?.coefficient(), config.approx),
                Widths::Float(a) => json!(boxsum::sincint::sinc_integral_float(a)?),
            };
            report.insert("result".into(), result);
        }
        CommandKind::IdentityCheck => {
            let a = config.widths()?;
            let x = config.x_value()?;
            let r = config.r.ok_or(CliError::Missing("r"))?;
            inputs.insert("a".into(), a.echo());
            inputs.insert("x".into(), scalar_json(&x));
            inputs.insert("r".into(), Json::from(r));
            let (result, expected, pass) = match (&a, &x) {
                (Widths::Exact(a), Value::Exact(x)) => {
                    let got = signed_power_sum(a, x, r)?;
                    let want = signed_power_sum_expected(a, r)?;
                    let pass = got == want;
                    (Value::Exact(got), Value::Exact(want), pass)
                }
                (Widths::Float(a), Value::Float(x)) => {
                    let got = signed_power_sum(a, x, r)?;
                    let want = signed_power_sum_expected(a, r)?;
                    let scale = (x.abs() + a.support_radius()).powi(r as i32).max(want.abs()).max(1.0);
                    let pass = (got - want).abs() <= 1e-9 * scale;
                    (Value::Float(got), Value::Float(want), pass)
                }
                _ => return Err(CoreError::MixedModes.into()),
            };
            report.insert("result".into(), scalar_json(&result));
            report.insert("expected".into(), scalar_json(&expected));
            report.insert("pass".into(), Json::from(pass));
            if !pass {
                status = exit::DISCREPANCY;
            }
        }
        CommandKind::Borwein => {
            let terms = config.terms.ok_or(CliError::Missing("terms"))?;
            if terms == 0 {
                return Err(CliError::NoTerms);
            }
            inputs.insert("terms".into(), Json::from(terms));
            let exact = borwein_halfwidths(terms)?;
            let expected = borwein_expected(terms);
            match config.mode {
                Mode::Exact => {
                    let got = sinc_integral_exact(&exact)?;
                    report.insert("result".into(), pi_json(got.coefficient(), config.approx));
                    if let Some(want) = &expected {
                        let pass = got.coefficient() == want;
                        report.insert("expected".into(), pi_json(want, false));
                        report.insert("pass".into(), Json::from(pass));
                        if !pass {
                            status = exit::DISCREPANCY;
                        }
                    }
                }
                Mode::Float => {
                    let a = exact.map(|v| v.to_f64().unwrap_or(f64::NAN))?;
                    let got = boxsum::sincint::sinc_integral_float(&a)?;
                    report.insert("result".into(), json!(got));
                    if let Some(want) = &expected {
                        let want = want.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI;
                        let pass = (got - want).abs() <= 1e-12;
                        report.insert("expected".into(), json!(want));
                        report.insert("pass".into(), Json::from(pass));
                        if !pass {
                            status = exit::DISCREPANCY;
                        }
                    }
                }
            }
        }
        CommandKind::CompareOracles => {
            let cases = match &config.a {
                Some(_) => {
                    let a = config.widths()?;
                    let x = match &config.x {
                        Some(_) => config.x_value()?,
                        None => Value::parse("0", config.mode)?,
                    };
                    inputs.insert("a".into(), a.echo());
                    inputs.insert("x".into(), scalar_json(&x));
                    vec![OracleCase { a, x }]
                }
                None => {
                    inputs.insert("battery".into(), Json::from("default"));
                    default_battery(config.seed, config.mode)?
                }
            };
            inputs.insert("tol".into(), json!(config.tol));
            inputs.insert("samples".into(), Json::from(config.samples));
            inputs.insert("seed".into(), Json::from(config.seed));
            let (rows, max_disc, pass) = battery::compare_all(&cases, config.tol, config.samples, config.seed)?;
            report.insert("cases".into(), Json::Array(rows));
            report.insert("max_abs_discrepancy".into(), json!(max_disc));
            report.insert("pass".into(), Json::from(pass));
            if !pass {
                status = exit::DISCREPANCY;
            }
        }
    }
    report.insert("inputs".into(), Json::Object(inputs));
    Ok(Outcome { status, report: Json::Object(report) })
}
