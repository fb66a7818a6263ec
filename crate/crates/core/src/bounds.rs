//! Order-of-vanishing bounds from the one-level density and from centered
//! moments of the n-level density, plus the search over levels.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::SymmetryGroup;
use crate::moments::{centered_moment, MomentValue};
use crate::quadrature::QuadratureSpec;
use crate::test_functions::{TestFunction, TfChoice, TfKind};

/// Highest moment level tried by [`bound_at_least`] unless overridden.
pub const DEFAULT_MAX_LEVEL: u32 = 20;

const SUPPORT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    pub group: SymmetryGroup,
    pub rank: u32,
    /// `None` when no level improves on the trivial bound 1.
    pub level: Option<u32>,
    pub tf_kind: TfKind,
    pub support: f64,
    pub bound: f64,
    pub valid: bool,
    pub numerator: f64,
    pub denom_base: f64,
    pub est_error: f64,
}

/// `μ = φ̂(0) + ½ ∫_{-1}^{1} φ̂`, the main term of the one-level mean.
pub fn mean_mu(tf: &TestFunction) -> Result<f64> {
    let v = tf.support();
    if v > 1.0 * (1.0 + SUPPORT_SLACK) {
        return Err(Error::SupportTooWide { support: v, limit: 1.0 });
    }
    Ok(match tf.kind() {
        TfKind::Naive => 1.0 / v + 0.5,
        _ => tf.phi_hat(0.0) + 0.5 * tf.hat_mass(1.0),
    })
}

/// `g = ∫ φ̂ Ŵ_G`, with `Ŵ_G` given by the group's kernel constants.
pub fn g_one_level(group: SymmetryGroup, tf: &TestFunction) -> f64 {
    let k = group.kernel();
    k.delta * tf.phi_hat(0.0) + k.box_coefficient * tf.hat_mass(1.0) + k.constant * tf.phi_zero()
}

pub fn one_level_bound(group: SymmetryGroup, rank: u32, tf: &TestFunction) -> Result<BoundResult> {
    check_rank(rank)?;
    let g = g_one_level(group, tf);
    let denom = rank as f64 * tf.phi_zero();
    Ok(BoundResult {
        group,
        rank,
        level: Some(1),
        tf_kind: tf.kind(),
        support: tf.support(),
        bound: g / denom,
        valid: true,
        numerator: g,
        denom_base: denom,
        est_error: 0.0,
    })
}

fn check_rank(rank: u32) -> Result<()> {
    if rank == 0 {
        return Err(Error::InvalidArgument("rank must be at least 1".into()));
    }
    Ok(())
}

fn check_moment_level(level: u32) -> Result<()> {
    if level < 2 || level % 2 != 0 {
        return Err(Error::InvalidArgument(format!("moment levels are even and at least 2, got {level}")));
    }
    Ok(())
}

/// Everything a moment bound needs that does not depend on the rank.
#[derive(Debug, Clone)]
pub struct LevelData {
    pub group: SymmetryGroup,
    pub level: u32,
    pub tf: TestFunction,
    pub mu: f64,
    pub moment: MomentValue,
}

impl LevelData {
    /// Computes the level-`n` moment for `kind` dilated to support `2/n`.
    pub fn compute(group: SymmetryGroup, kind: TfKind, level: u32, quad: &QuadratureSpec) -> Result<LevelData> {
        check_moment_level(level)?;
        let tf = TestFunction::new(kind, 2.0 / level as f64)?;
        LevelData::for_function(group, level, &tf, quad)
    }

    pub fn for_function(group: SymmetryGroup, level: u32, tf: &TestFunction, quad: &QuadratureSpec) -> Result<LevelData> {
        check_moment_level(level)?;
        let expected = 2.0 / level as f64;
        if (tf.support() - expected).abs() > SUPPORT_SLACK * expected {
            return Err(Error::SupportMismatch { support: tf.support(), expected });
        }
        let moment = centered_moment(level, tf, group, quad)?;
        Ok(LevelData { group, level, mu: mean_mu(tf)?, tf: tf.clone(), moment })
    }

    /// Whether `rank` passes the precondition `r φ(0) > μ`.
    pub fn admits(&self, rank: u32) -> bool {
        rank as f64 * self.tf.phi_zero() - self.mu > 0.0
    }

    pub fn bound(&self, rank: u32) -> BoundResult {
        let denom_base = rank as f64 * self.tf.phi_zero() - self.mu;
        let scale = denom_base.powi(self.level as i32);
        BoundResult {
            group: self.group,
            rank,
            level: Some(self.level),
            tf_kind: self.tf.kind(),
            support: self.tf.support(),
            bound: self.moment.total / scale,
            valid: denom_base > 0.0,
            numerator: self.moment.total,
            denom_base,
            est_error: self.moment.est_error / scale.abs(),
        }
    }
}

/// `((n-1)!! σ^n ± S(n, n/2)) / (r φ(0) - μ)^n` for `tf` at support `2/n`.
/// Ranks failing `r φ(0) > μ` come back with `valid = false`.
pub fn moment_bound(
    group: SymmetryGroup,
    rank: u32,
    level: u32,
    tf: &TestFunction,
    quad: &QuadratureSpec,
) -> Result<BoundResult> {
    check_rank(rank)?;
    Ok(LevelData::for_function(group, level, tf, quad)?.bound(rank))
}

/// Options for the level search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub max_level: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_level: DEFAULT_MAX_LEVEL }
    }
}

/// Both level-1 candidates (naive and the group's optimal, at support 2).
fn level_one_candidates(group: SymmetryGroup, rank: u32) -> Result<Vec<BoundResult>> {
    let mut out = vec![one_level_bound(group, rank, &TestFunction::naive(2.0)?)?];
    if group != SymmetryGroup::O {
        out.push(one_level_bound(group, rank, &TestFunction::optimal(group)?)?);
    }
    Ok(out)
}

fn trivial(group: SymmetryGroup, rank: u32, kind: TfKind) -> BoundResult {
    BoundResult {
        group,
        rank,
        level: None,
        tf_kind: kind,
        support: 0.0,
        bound: 1.0,
        valid: false,
        numerator: 1.0,
        denom_base: 1.0,
        est_error: 0.0,
    }
}

/// Picks the smallest valid candidate; ties keep the earlier (lower) level.
fn minimum(group: SymmetryGroup, rank: u32, kind: TfKind, candidates: Vec<BoundResult>) -> BoundResult {
    let best = candidates
        .into_iter()
        .filter(|c| c.valid)
        .fold(None::<BoundResult>, |acc, c| match acc {
            Some(a) if a.bound <= c.bound => Some(a),
            _ => Some(c),
        });
    match best {
        Some(b) if b.bound < 1.0 => b,
        _ => trivial(group, rank, kind),
    }
}

/// Moment levels worth computing for `ranks`: even `n <= max_level` admitted
/// by at least one rank.
fn search_levels(group: SymmetryGroup, kind: TfKind, ranks: &[u32], options: SearchOptions) -> Result<Vec<u32>> {
    if group == SymmetryGroup::O {
        return Ok(Vec::new());
    }
    let top = ranks.iter().copied().max().unwrap_or(0);
    let mut levels = Vec::new();
    for n in (2..=options.max_level).step_by(2) {
        let tf = TestFunction::new(kind, 2.0 / n as f64)?;
        if top as f64 * tf.phi_zero() > mean_mu(&tf)? {
            levels.push(n);
        }
    }
    Ok(levels)
}

fn compute_levels(group: SymmetryGroup, kind: TfKind, levels: &[u32], quad: &QuadratureSpec) -> Result<Vec<LevelData>> {
    levels.par_iter().map(|&n| LevelData::compute(group, kind, n, quad)).collect()
}

/// Bound on the proportion vanishing to order at least `rank`, minimized over
/// level 1 (naive and optimal) and the admissible even levels for `choice`.
/// Returns the trivial bound 1 with `level = None` when nothing beats it.
pub fn bound_at_least(
    group: SymmetryGroup,
    rank: u32,
    choice: TfChoice,
    options: SearchOptions,
    quad: &QuadratureSpec,
) -> Result<BoundResult> {
    Ok(best_level_table(group, &[rank], choice, options, quad)?.remove(0))
}

/// One [`bound_at_least`] row per rank, sharing the moment computations.
pub fn best_level_table(
    group: SymmetryGroup,
    ranks: &[u32],
    choice: TfChoice,
    options: SearchOptions,
    quad: &QuadratureSpec,
) -> Result<Vec<BoundResult>> {
    if ranks.is_empty() {
        return Err(Error::InvalidArgument("rank list is empty".into()));
    }
    for &r in ranks {
        check_rank(r)?;
    }
    let kind = match group {
        SymmetryGroup::O => TfKind::Naive,
        g => choice.resolve(g)?,
    };
    let levels = search_levels(group, kind, ranks, options)?;
    let data = compute_levels(group, kind, &levels, quad)?;
    ranks
        .iter()
        .map(|&r| {
            let mut candidates = level_one_candidates(group, r)?;
            candidates.extend(data.iter().filter(|d| d.admits(r)).map(|d| d.bound(r)));
            Ok(minimum(group, r, kind, candidates))
        })
        .collect()
}

/// The full (rank × level) grid, ordered by rank then level. Level 1 uses the
/// chosen family at support 2; invalid cells are kept with `valid = false`.
pub fn grid(
    group: SymmetryGroup,
    ranks: &[u32],
    levels: &[u32],
    choice: TfChoice,
    quad: &QuadratureSpec,
) -> Result<Vec<BoundResult>> {
    for &r in ranks {
        check_rank(r)?;
    }
    let kind = match group {
        SymmetryGroup::O => TfKind::Naive,
        g => choice.resolve(g)?,
    };
    let moment_levels: Vec<u32> = levels.iter().copied().filter(|&n| n != 1).collect();
    for &n in &moment_levels {
        check_moment_level(n)?;
    }
    if group == SymmetryGroup::O && !moment_levels.is_empty() {
        return Err(Error::UnsupportedGroup { operation: "moment bound", group: "O" });
    }
    let data = compute_levels(group, kind, &moment_levels, quad)?;
    let level_one = TestFunction::new(kind, 2.0)?;
    let mut rows = Vec::with_capacity(ranks.len() * levels.len());
    for &r in ranks {
        for &n in levels {
            if n == 1 {
                rows.push(one_level_bound(group, r, &level_one)?);
            } else {
                let d = data.iter().find(|d| d.level == n).expect("level computed above");
                rows.push(d.bound(r));
            }
        }
    }
    Ok(rows)
}
