use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::config::{OutputFormat, RunConfig};
use crate::bounds::BoundResult;
use crate::error::{Error, Result};
use crate::group::SymmetryGroup;

/// One CSV line of a bound table. Numbers are kept as formatted text so a
/// parsed file re-serializes to identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub rank: u32,
    pub level: String,
    pub bound: String,
    pub valid: bool,
    pub est_error: String,
    pub bound_full: String,
    pub tf: String,
}

/// Nine significant digits.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// Shortest representation that parses back to the same `f64`.
pub fn full(x: f64) -> String {
    format!("{x:e}")
}

pub fn level_label(level: Option<u32>) -> String {
    level.map_or_else(|| "N/A".to_string(), |n| n.to_string())
}

impl From<&BoundResult> for CsvRow {
    fn from(r: &BoundResult) -> Self {
        CsvRow {
            rank: r.rank,
            level: level_label(r.level),
            bound: sig9(r.bound),
            valid: r.valid,
            est_error: format!("{:.2e}", r.est_error),
            bound_full: full(r.bound),
            tf: r.tf_kind.name().to_string(),
        }
    }
}

impl CsvRow {
    /// Rebuilds the row from its numeric content, checking that the text
    /// columns agree with it.
    pub fn normalized(&self) -> Result<CsvRow> {
        let bound: f64 = self
            .bound_full
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad bound_full '{}'", self.bound_full)))?;
        let est: f64 = self
            .est_error
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad est_error '{}'", self.est_error)))?;
        Ok(CsvRow {
            bound: sig9(bound),
            est_error: format!("{est:.2e}"),
            bound_full: full(bound),
            ..self.clone()
        })
    }
}

pub fn rows_to_csv(rows: &[BoundResult]) -> Result<String> {
    write_csv(rows.iter().map(CsvRow::from))
}

pub fn write_csv<I: IntoIterator<Item = CsvRow>>(rows: I) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::InvalidArgument(e.to_string())))
        .collect()
}

#[derive(Serialize)]
struct Meta<'a> {
    command: &'a str,
    group: SymmetryGroup,
    version: &'static str,
    config: &'a RunConfig,
    moment_support: &'static str,
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    meta: Meta<'a>,
    rows: &'a [T],
}

pub fn json_document<T: Serialize>(command: &str, group: SymmetryGroup, rows: &[T], config: &RunConfig) -> Result<String> {
    let doc = Document {
        meta: Meta {
            command,
            group,
            version: env!("CARGO_PKG_VERSION"),
            config,
            moment_support: "level n evaluated at support 2/n",
        },
        rows,
    };
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn rows_to_text(rows: &[BoundResult]) -> String {
    let mut out = format!("{:>5} {:>5} {:>13} {:<13} {:>6} {:>9}\n", "rank", "level", "bound", "tf", "valid", "est_error");
    for r in rows {
        let _ = writeln!(
            out,
            "{:>5} {:>5} {:>13} {:<13} {:>6} {:>9.2e}",
            r.rank,
            level_label(r.level),
            format!("{:.6e}", r.bound),
            r.tf_kind.name(),
            r.valid,
            r.est_error
        );
    }
    out
}

pub fn render_rows(command: &str, group: SymmetryGroup, rows: &[BoundResult], config: &RunConfig) -> Result<String> {
    match config.output_format {
        OutputFormat::Csv => rows_to_csv(rows),
        OutputFormat::Json => json_document(command, group, rows, config),
        OutputFormat::Text => Ok(rows_to_text(rows)),
    }
}
