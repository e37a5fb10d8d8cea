use boxsum::{Error as CoreError, Mode, Rational, Value};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::{CliError, Widths};

#[derive(Debug, Parser)]
#[command(name = "boxsum", version, about = "Uniform-sum densities, distribution functions and sinc-product integrals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density of the sum at x
    Density(Options),
    /// Distribution function P(sum <= x)
    Cdf(Options),
    /// Integral over (0, inf) of the product of sinc(a_j t)
    Integral(Options),
    /// Signed power sum against its constant value
    IdentityCheck(Options),
    /// Sinc integral for a_j = 1/(2j-1), j = 1..terms
    Borwein(Options),
    /// Measure of the slice {sum x_j = x} of the box
    SliceVolume(Options),
    /// Closed form against the convolution, quadrature and Monte Carlo oracles
    CompareOracles(Options),
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Comma-separated half-widths: integers, p/q, or decimals (float mode only)
    #[arg(long)]
    pub a: Option<String>,
    /// Evaluation point
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Power for identity-check
    #[arg(long)]
    pub r: Option<u32>,
    /// Absolute tolerance for the quadrature oracle
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Monte Carlo sample count
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Seed for Monte Carlo sampling and the default oracle battery
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub output: OutputFormat,
    /// Number of factors for borwein
    #[arg(long)]
    pub terms: Option<usize>,
    /// Append a decimal rendering of π-valued results
    #[arg(long)]
    pub approx: bool,
    /// Evaluate on start:stop:count evenly spaced points
    #[arg(long, allow_hyphen_values = true)]
    pub x_grid: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Density,
    Cdf,
    Integral,
    IdentityCheck,
    Borwein,
    SliceVolume,
    CompareOracles,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Density => "density",
            CommandKind::Cdf => "cdf",
            CommandKind::Integral => "integral",
            CommandKind::IdentityCheck => "identity-check",
            CommandKind::Borwein => "borwein",
            CommandKind::SliceVolume => "slice-volume",
            CommandKind::CompareOracles => "compare-oracles",
        }
    }

    fn is_pointwise(self) -> bool {
        matches!(self, CommandKind::Density | CommandKind::Cdf | CommandKind::SliceVolume)
    }
}

/// `start:stop:count`, evenly spaced and inclusive of both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct XGrid {
    pub text: String,
    start: String,
    stop: String,
    count: usize,
}

impl XGrid {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::BadGrid(text.to_string());
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, count] = parts[..] else { return Err(bad()) };
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        if count == 0 {
            return Err(bad());
        }
        Ok(XGrid { text: text.to_string(), start: start.to_string(), stop: stop.to_string(), count })
    }

    pub fn points(&self, mode: Mode) -> Result<Vec<Value>, CliError> {
        let start = Value::parse(&self.start, mode)?;
        let stop = Value::parse(&self.stop, mode)?;
        let steps = self.count.saturating_sub(1).max(1);
        Ok((0..self.count)
            .map(|i| match (&start, &stop) {
                (Value::Exact(s), Value::Exact(e)) => {
                    Value::Exact(s + (e - s) * Rational::new(i.into(), steps.into()))
                }
                (Value::Float(s), Value::Float(e)) => Value::Float(s + (e - s) * i as f64 / steps as f64),
                _ => unreachable!("both ends parsed in one mode"),
            })
            .collect())
    }
}

/// A fully described run: command plus every option it may read.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub a: Option<String>,
    pub x: Option<String>,
    pub mode: Mode,
    pub r: Option<u32>,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub output: OutputFormat,
    pub terms: Option<usize>,
    pub approx: bool,
    pub x_grid: Option<XGrid>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (command, o) = match cli.command {
            Command::Density(o) => (CommandKind::Density, o),
            Command::Cdf(o) => (CommandKind::Cdf, o),
            Command::Integral(o) => (CommandKind::Integral, o),
            Command::IdentityCheck(o) => (CommandKind::IdentityCheck, o),
            Command::Borwein(o) => (CommandKind::Borwein, o),
            Command::SliceVolume(o) => (CommandKind::SliceVolume, o),
            Command::CompareOracles(o) => (CommandKind::CompareOracles, o),
        };
        Ok(RunConfig {
            command,
            a: o.a,
            x: o.x,
            mode: match o.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Float => Mode::Float,
            },
            r: o.r,
            tol: o.tol,
            samples: o.samples,
            seed: o.seed,
            output: o.output,
            terms: o.terms,
            approx: o.approx,
            x_grid: o.x_grid.as_deref().map(XGrid::parse).transpose()?,
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let name = self.command.name();
        let unsupported = |option| Err(CliError::Unsupported { option, command: name });
        if self.r.is_some() && self.command != CommandKind::IdentityCheck {
            return unsupported("r");
        }
        if self.terms.is_some() && self.command != CommandKind::Borwein {
            return unsupported("terms");
        }
        if self.command == CommandKind::Borwein && self.a.is_some() {
            return unsupported("a");
        }
        if self.x_grid.is_some() {
            if !self.command.is_pointwise() {
                return unsupported("x-grid");
            }
            if self.x.is_some() {
                return unsupported("x");
            }
        }
        if self.output == OutputFormat::Csv && self.x_grid.is_none() {
            return Err(CliError::CsvWithoutGrid);
        }
        match self.command {
            CommandKind::Borwein | CommandKind::CompareOracles => {}
            _ if self.a.is_none() => return Err(CliError::Missing("a")),
            _ => {}
        }
        if self.command.is_pointwise() && self.x.is_none() && self.x_grid.is_none() {
            return Err(CliError::Missing("x"));
        }
        if self.command == CommandKind::IdentityCheck && self.x.is_none() {
            return Err(CliError::Missing("x"));
        }
        Ok(())
    }

    pub fn widths(&self) -> Result<Widths, CliError> {
        parse_halfwidths(self.a.as_deref().ok_or(CliError::Missing("a"))?, self.mode)
    }

    pub fn x_value(&self) -> Result<Value, CliError> {
        Ok(Value::parse(self.x.as_deref().ok_or(CliError::Missing("x"))?, self.mode)?)
    }
}

/// Parses a comma-separated half-width list in the given mode.
pub fn parse_halfwidths(text: &str, mode: Mode) -> Result<Widths, CliError> {
    if text.trim().is_empty() {
        return Err(CoreError::EmptyHalfWidths.into());
    }
    let values = text.split(',').map(|t| Value::parse(t, mode)).collect::<Result<Vec<_>, _>>()?;
    Widths::from_values(values, mode)
}
