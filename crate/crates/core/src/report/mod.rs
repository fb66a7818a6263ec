//! Command implementations behind the `vanishing` binary: single bounds,
//! grids, best-level tables, reproduction reports and figure data.
//!
//! Every command returns its rendered output together with a process exit
//! code, so the binary only parses arguments and writes bytes.

mod config;
mod render;
mod repro;

pub use config::{ConfigOverrides, OutputFormat, RunConfig};
pub use render::{full, level_label, parse_csv, render_rows, rows_to_csv, sig9, write_csv, CsvRow};
pub use repro::{
    parse_printed, reproduce, ReproCell, ReproReport, ReproTarget, Tolerance, FLAGGED_CELL, SO_EVEN_BEST,
    SO_EVEN_ONE_LEVEL, SO_ODD_BEST, SO_ODD_ONE_LEVEL,
};

use crate::bounds::{best_level_table, grid, moment_bound, one_level_bound};
use crate::error::{Error, Result};
use crate::group::SymmetryGroup;
use crate::test_functions::{TestFunction, TfChoice, TfKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REPRO_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        CommandOutput { text, exit_code: EXIT_OK }
    }
}

/// Inclusive integer range `a..b` with an optional `:step`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub start: u32,
    pub end: u32,
    pub step: u32,
}

impl std::str::FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected a..b[:step] or a single integer, got '{s}'"));
        let (body, step) = match s.split_once(':') {
            Some((b, st)) => (b, st.trim().parse::<u32>().map_err(|_| bad())?),
            None => (s, 1),
        };
        let (start, end) = match body.split_once("..") {
            Some((a, b)) => (
                a.trim().parse::<u32>().map_err(|_| bad())?,
                b.trim().trim_start_matches('=').parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let v = body.trim().parse::<u32>().map_err(|_| bad())?;
                (v, v)
            }
        };
        if step == 0 || start > end {
            return Err(bad());
        }
        Ok(IntRange { start, end, step })
    }
}

impl IntRange {
    pub fn values(&self) -> impl Iterator<Item = u32> {
        (self.start..=self.end).step_by(self.step as usize)
    }

    /// Ranks in the range that occur in the family (parity of the root number).
    pub fn ranks_for(&self, group: SymmetryGroup) -> Result<Vec<u32>> {
        let ranks: Vec<u32> = self.values().filter(|&r| r >= 1 && group.admits_rank(r)).collect();
        if ranks.is_empty() {
            return Err(Error::InvalidArgument(format!("no ranks of the right parity for {group} in the range")));
        }
        Ok(ranks)
    }

    /// Level 1 and the even levels in the range.
    pub fn levels(&self) -> Result<Vec<u32>> {
        let levels: Vec<u32> = self.values().filter(|&n| n == 1 || (n >= 2 && n % 2 == 0)).collect();
        if levels.is_empty() {
            return Err(Error::InvalidArgument("no usable levels (1 or even) in the range".into()));
        }
        Ok(levels)
    }
}

fn prepare(config: &RunConfig) -> Result<()> {
    config.validate()
}

fn resolve_kind(group: SymmetryGroup, choice: TfChoice) -> Result<TfKind> {
    match (group, choice) {
        (SymmetryGroup::O, TfChoice::Naive) => Ok(TfKind::Naive),
        (g, c) => c.resolve(g),
    }
}

/// A single bound at one level.
pub fn cmd_bound(group: SymmetryGroup, rank: u32, level: u32, choice: TfChoice, config: &RunConfig) -> Result<CommandOutput> {
    prepare(config)?;
    let kind = resolve_kind(group, choice)?;
    let quad = config.quad_spec();
    let row = config.install(|| {
        if level == 1 {
            one_level_bound(group, rank, &TestFunction::new(kind, 2.0)?)
        } else {
            if level % 2 == 1 {
                return Err(Error::InvalidArgument(format!("level must be 1 or even, got {level}")));
            }
            moment_bound(group, rank, level, &TestFunction::new(kind, 2.0 / level as f64)?, &quad)
        }
    })??;
    Ok(CommandOutput::ok(render_rows("bound", group, &[row], config)?))
}

/// The (rank × level) grid, ordered by rank then level.
pub fn cmd_table(
    group: SymmetryGroup,
    ranks: IntRange,
    levels: IntRange,
    choice: TfChoice,
    config: &RunConfig,
) -> Result<CommandOutput> {
    prepare(config)?;
    let ranks = ranks.ranks_for(group)?;
    let levels = levels.levels()?;
    let quad = config.quad_spec();
    let rows = config.install(|| grid(group, &ranks, &levels, choice, &quad))??;
    Ok(CommandOutput::ok(render_rows("table", group, &rows, config)?))
}

/// Lowest bound per rank over all admissible levels.
pub fn cmd_best(group: SymmetryGroup, ranks: IntRange, choice: TfChoice, config: &RunConfig) -> Result<CommandOutput> {
    prepare(config)?;
    let ranks = ranks.ranks_for(group)?;
    let quad = config.quad_spec();
    let rows = config.install(|| best_level_table(group, &ranks, choice, config.search_options(), &quad))??;
    Ok(CommandOutput::ok(render_rows("best", group, &rows, config)?))
}

/// Recomputes the published tables; exit code 1 if a non-flagged cell fails.
pub fn cmd_reproduce(target: ReproTarget, config: &RunConfig) -> Result<(ReproReport, CommandOutput)> {
    prepare(config)?;
    let report = config.install(|| reproduce(target, config))??;
    let text = report.render(config)?;
    let exit_code = if report.pass { EXIT_OK } else { EXIT_REPRO_FAILURE };
    Ok((report, CommandOutput { text, exit_code }))
}

/// Parameters of one figure's data set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureSpec {
    pub id: u32,
    pub group: SymmetryGroup,
    pub choice: TfChoice,
    pub ranks: IntRange,
    pub levels: IntRange,
}

/// Figures 5 to 12: SO(even) then SO(odd), levels 1..10 then 12..20, naive
/// test function for 5-8 and optimal for 9-12.
pub fn figure(id: u32) -> Result<FigureSpec> {
    if !(5..=12).contains(&id) {
        return Err(Error::InvalidArgument(format!("figure id must be in 5..12, got {id}")));
    }
    let k = id - 5;
    let choice = if k < 4 { TfChoice::Naive } else { TfChoice::Optimal };
    let (group, ranks) = if k % 4 < 2 {
        (SymmetryGroup::SOEven, IntRange { start: 2, end: 20, step: 2 })
    } else {
        (SymmetryGroup::SOOdd, IntRange { start: 1, end: 21, step: 2 })
    };
    let levels = if k % 2 == 0 {
        IntRange { start: 1, end: 10, step: 1 }
    } else {
        IntRange { start: 12, end: 20, step: 1 }
    };
    Ok(FigureSpec { id, group, choice, ranks, levels })
}

/// CSV grid behind one figure.
pub fn cmd_plotdata(id: u32, config: &RunConfig) -> Result<CommandOutput> {
    let f = figure(id)?;
    let csv = RunConfig { output_format: OutputFormat::Csv, ..config.clone() };
    cmd_table(f.group, f.ranks, f.levels, f.choice, &csv)
}
