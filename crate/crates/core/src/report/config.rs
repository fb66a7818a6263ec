use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{SearchOptions, DEFAULT_MAX_LEVEL};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::InvalidArgument(format!("unknown output format '{other}'"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Text => "text",
        })
    }
}

/// Numerical and output settings shared by every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    /// Absolute error target for each centered moment.
    pub tolerance: f64,
    pub max_doublings: u32,
    pub truncation_radius: f64,
    pub output_format: OutputFormat,
    /// Worker threads; 0 picks the number of cores.
    pub parallelism: usize,
    pub max_level: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: 1e-8,
            max_doublings: 22,
            truncation_radius: 500.0,
            output_format: OutputFormat::Csv,
            parallelism: 0,
            max_level: DEFAULT_MAX_LEVEL,
        }
    }
}

/// Settings that may come from a file or the command line; `None` leaves
/// the lower-priority value alone.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub tolerance: Option<f64>,
    pub max_doublings: Option<u32>,
    pub truncation_radius: Option<f64>,
    pub output_format: Option<OutputFormat>,
    pub parallelism: Option<usize>,
    pub max_level: Option<u32>,
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad value '{value}' for '{key}'")))
}

impl ConfigOverrides {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<ConfigOverrides> {
        let mut out = ConfigOverrides::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("config line {}: expected key = value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "tolerance" | "tol" => out.tolerance = Some(parse_value(key, value)?),
                "max_doublings" => out.max_doublings = Some(parse_value(key, value)?),
                "truncation_radius" => out.truncation_radius = Some(parse_value(key, value)?),
                "format" | "output_format" => out.output_format = Some(value.parse()?),
                "jobs" | "parallelism" => out.parallelism = Some(parse_value(key, value)?),
                "max_level" => out.max_level = Some(parse_value(key, value)?),
                other => return Err(Error::InvalidArgument(format!("config line {}: unknown key '{other}'", n + 1))),
            }
        }
        Ok(out)
    }
}

impl RunConfig {
    pub fn apply(&mut self, o: &ConfigOverrides) {
        if let Some(v) = o.tolerance {
            self.tolerance = v;
        }
        if let Some(v) = o.max_doublings {
            self.max_doublings = v;
        }
        if let Some(v) = o.truncation_radius {
            self.truncation_radius = v;
        }
        if let Some(v) = o.output_format {
            self.output_format = v;
        }
        if let Some(v) = o.parallelism {
            self.parallelism = v;
        }
        if let Some(v) = o.max_level {
            self.max_level = v;
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.max_level < 2 {
            return Err(Error::InvalidArgument(format!("max level must be at least 2, got {}", self.max_level)));
        }
        self.quad_spec().validate()
    }

    pub fn quad_spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            tol: self.tolerance,
            max_doublings: self.max_doublings,
            truncation_radius: self.truncation_radius,
            ..QuadratureSpec::default()
        }
    }

    pub fn search_options(&self) -> SearchOptions {
        SearchOptions { max_level: self.max_level }
    }

    /// Runs `f` on a pool sized by `parallelism`.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallelism)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(f))
    }
}
