//! Run-time tagged scalars for callers that only learn the mode from input.

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::rational::{format_rational, parse_rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

/// A scalar tagged with its numeric mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
}

impl Value {
    /// Parses `text` for the requested mode.
    ///
    /// Rational syntax is accepted in both modes (converted once in float
    /// mode); decimal syntax only in float mode, so binary rounding is never
    /// silently promoted to an exact value.
    pub fn parse(text: &str, mode: Mode) -> Result<Value> {
        let t = text.trim();
        match parse_rational(t) {
            Ok(q) => Ok(match mode {
                Mode::Exact => Value::Exact(q),
                Mode::Float => Value::Float(q.to_f64().ok_or_else(|| Error::NonFinite(t.to_string()))?),
            }),
            Err(_) => {
                let f: f64 = t.parse().map_err(|_| Error::MalformedNumber(t.to_string()))?;
                if !f.is_finite() {
                    return Err(Error::NonFinite(t.to_string()));
                }
                match mode {
                    Mode::Exact => Err(Error::DecimalInExactMode(t.to_string())),
                    Mode::Float => Ok(Value::Float(f)),
                }
            }
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Value::Exact(_) => Mode::Exact,
            Value::Float(_) => Mode::Float,
        }
    }

    pub fn as_exact(&self) -> Result<&BigRational> {
        match self {
            Value::Exact(q) => Ok(q),
            Value::Float(_) => Err(Error::MixedModes),
        }
    }

    pub fn as_float(&self) -> Result<f64> {
        match self {
            Value::Float(f) => Ok(*f),
            Value::Exact(_) => Err(Error::MixedModes),
        }
    }

    pub fn approx_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Float(f) => *f,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => f.write_str(&format_rational(q)),
            Value::Float(v) => write!(f, "{v:?}"),
        }
    }
}

/// The common mode of `values`, or [`Error::MixedModes`].
pub fn common_mode<'a, I: IntoIterator<Item = &'a Value>>(values: I) -> Result<Option<Mode>> {
    let mut mode = None;
    for v in values {
        match mode {
            None => mode = Some(v.mode()),
            Some(m) if m != v.mode() => return Err(Error::MixedModes),
            _ => {}
        }
    }
    Ok(mode)
}
