//! Composite Simpson integration.
//!
//! Everything here runs on fixed, uniformly spaced grids and accumulates with
//! Neumaier-compensated sums, so a given integrand and [`QuadratureSpec`]
//! always produce bit-identical results no matter how callers schedule the
//! work across threads.
//!
//! The composite rule on `s` panels of width `h = (b - a) / s` is
//!
//! ```text
//! (h / 3) [f(x0) + 4 f(x1) + 2 f(x2) + ... + 4 f(x_{s-1}) + f(x_s)]
//! ```
//!
//! with error at most `h^4 / 180 * (b - a) * max |f''''|`.
//! [`adaptive_simpson`] doubles the panel count (reusing every previous
//! sample) until two successive estimates agree, and [`integrate_decaying`]
//! handles infinite ranges by truncating at a radius `X` and bounding the tail
//! from a sampled decay envelope.

use std::ops::AddAssign;

use crate::error::{Error, Result};

/// Numeric policy shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Initial (even) panel count.
    pub panels: usize,
    /// Absolute tolerance target.
    pub tol: f64,
    pub max_doublings: u32,
    /// Smallest radius `X` at which infinite-range integrals are truncated.
    pub truncation_radius: f64,
    /// Algebraic decay exponent `p` assumed beyond the truncation radius.
    pub decay_exponent: f64,
    /// Below this magnitude, closed forms with removable singularities are
    /// replaced by their Taylor series.
    pub small_arg_threshold: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panels: 64,
            tol: 1e-10,
            max_doublings: 22,
            truncation_radius: 500.0,
            decay_exponent: 2.0,
            small_arg_threshold: crate::test_functions::SERIES_THRESHOLD,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.panels < 2 || self.panels % 2 != 0 {
            return Err(Error::OddPanels(self.panels));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tol)));
        }
        if !(self.truncation_radius > 0.0 && self.truncation_radius.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "truncation radius must be positive, got {}",
                self.truncation_radius
            )));
        }
        if !(self.decay_exponent >= 2.0) {
            return Err(Error::InvalidArgument(format!(
                "decay exponent must be at least 2, got {}",
                self.decay_exponent
            )));
        }
        if !(self.small_arg_threshold > 0.0) {
            return Err(Error::InvalidArgument("small-argument threshold must be positive".into()));
        }
        Ok(())
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_decay(mut self, exponent: f64) -> Self {
        self.decay_exponent = exponent;
        self
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.truncation_radius = radius;
        self
    }

    pub fn with_panels(mut self, panels: usize) -> Self {
        self.panels = panels;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub est_error: f64,
    pub panels_used: usize,
}

/// Kahan–Babuška (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::InvalidInterval { a, b });
    }
    Ok(())
}

fn sample<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite { x })
    }
}

#[inline]
fn node(a: f64, b: f64, j: usize, s: usize) -> f64 {
    // Endpoints land exactly on a and b, and symmetric grids stay symmetric.
    if j == s {
        b
    } else {
        a + (b - a) * (j as f64 / s as f64)
    }
}

/// Composite Simpson rule on `s` equal panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, s: usize) -> Result<f64> {
    if s < 2 || s % 2 != 0 {
        return Err(Error::OddPanels(s));
    }
    check_interval(a, b)?;
    let h = (b - a) / s as f64;
    let mut ends = CompensatedSum::new();
    ends += sample(&f, a)?;
    ends += sample(&f, b)?;
    let mut odd = CompensatedSum::new();
    let mut even = CompensatedSum::new();
    for j in 1..s {
        let y = sample(&f, node(a, b, j, s))?;
        if j % 2 == 1 {
            odd += y;
        } else {
            even += y;
        }
    }
    Ok(h / 3.0 * (ends.value() + 4.0 * odd.value() + 2.0 * even.value()))
}

/// Simpson weights (without the `h / 3` factor) for `s` panels: 1, 4, 2, ..., 4, 1.
pub fn simpson_weights(s: usize) -> Result<Vec<f64>> {
    if s < 2 || s % 2 != 0 {
        return Err(Error::OddPanels(s));
    }
    Ok((0..=s)
        .map(|j| {
            if j == 0 || j == s {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            }
        })
        .collect())
}

/// Running state of a composite Simpson rule that can be refined in place.
struct SimpsonState {
    a: f64,
    b: f64,
    panels: usize,
    ends: CompensatedSum,
    odd: CompensatedSum,
    even: CompensatedSum,
    abs_total: CompensatedSum,
}

impl SimpsonState {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> Result<Self> {
        let mut state = SimpsonState {
            a,
            b,
            panels,
            ends: CompensatedSum::new(),
            odd: CompensatedSum::new(),
            even: CompensatedSum::new(),
            abs_total: CompensatedSum::new(),
        };
        for x in [a, b] {
            let y = sample(f, x)?;
            state.ends += y;
            state.abs_total += y.abs();
        }
        for j in 1..panels {
            let y = sample(f, node(a, b, j, panels))?;
            if j % 2 == 1 {
                state.odd += y;
            } else {
                state.even += y;
            }
            state.abs_total += y.abs();
        }
        Ok(state)
    }

    fn estimate(&self) -> f64 {
        let h = (self.b - self.a) / self.panels as f64;
        h / 3.0 * (self.ends.value() + 4.0 * self.odd.value() + 2.0 * self.even.value())
    }

    /// Magnitude below which successive estimates cannot be told apart in f64.
    fn rounding_floor(&self) -> f64 {
        let h = (self.b - self.a) / self.panels as f64;
        64.0 * f64::EPSILON * h * self.abs_total.value()
    }

    fn refine<F: Fn(f64) -> f64>(&mut self, f: &F) -> Result<()> {
        let panels = self.panels * 2;
        let mut fresh = CompensatedSum::new();
        let mut fresh_abs = CompensatedSum::new();
        for j in (1..panels).step_by(2) {
            let y = sample(f, node(self.a, self.b, j, panels))?;
            fresh += y;
            fresh_abs += y.abs();
        }
        let mut even = self.even;
        even.merge(&self.odd);
        self.even = even;
        self.odd = fresh;
        // abs_total is only a scale for the rounding floor; doubling it with
        // the new half-grid keeps it comparable to h * sum|f|.
        self.abs_total.merge(&fresh_abs);
        self.panels = panels;
        Ok(())
    }
}

/// Doubles the panel count until two successive Simpson estimates agree to
/// `spec.tol` (or to within floating-point rounding of the sum).
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    check_interval(a, b)?;
    adaptive_from(&f, a, b, spec.panels, spec)
}

fn adaptive_from<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, spec: &QuadratureSpec) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult { value: 0.0, est_error: 0.0, panels_used: panels });
    }
    let mut state = SimpsonState::new(f, a, b, panels)?;
    let mut previous = state.estimate();
    let mut diff = f64::INFINITY;
    for _ in 0..spec.max_doublings {
        state.refine(f)?;
        let current = state.estimate();
        diff = (current - previous).abs();
        if diff <= spec.tol || diff <= state.rounding_floor() {
            return Ok(QuadResult { value: current, est_error: diff, panels_used: state.panels });
        }
        previous = current;
    }
    Err(Error::ToleranceNotReached {
        value: previous,
        est_error: diff,
        panels: state.panels,
        tol: spec.tol,
    })
}

/// Adaptive Simpson on each consecutive pair of `breaks`, with the tolerance
/// split evenly across the pieces. Use this when the integrand has kinks.
pub fn adaptive_simpson_pieces<F: Fn(f64) -> f64>(f: F, breaks: &[f64], spec: &QuadratureSpec) -> Result<QuadResult> {
    if breaks.len() < 2 {
        return Err(Error::InvalidArgument("need at least two break points".into()));
    }
    let pieces = (breaks.len() - 1) as f64;
    let piece_spec = spec.with_tol(spec.tol / pieces);
    let mut value = CompensatedSum::new();
    let mut est_error = 0.0;
    let mut panels_used = 0;
    for w in breaks.windows(2) {
        let r = adaptive_simpson(&f, w[0], w[1], &piece_spec)?;
        value += r.value;
        est_error += r.est_error;
        panels_used += r.panels_used;
    }
    Ok(QuadResult { value: value.value(), est_error, panels_used })
}

/// Largest value of `|f(±x)| * x^p` over a window of width 32 starting at
/// `radius`, sampled on the same 1/16 grid the integrals use so that slow
/// oscillations (periods up to the window width) cannot alias.
fn envelope_constant<F: Fn(f64) -> f64>(f: &F, radius: f64, exponent: f64, both_sides: bool) -> Result<f64> {
    const WIDTH: f64 = 32.0;
    const SAMPLES: usize = 512;
    let mut c: f64 = 0.0;
    for k in 0..=SAMPLES {
        let x = radius + WIDTH * k as f64 / SAMPLES as f64;
        let mut y = sample(f, x)?.abs();
        if both_sides {
            y = y.max(sample(f, -x)?.abs());
        }
        c = c.max(y * x.powf(exponent));
    }
    Ok(c)
}

/// Tail constant `C` with `|f(x)| <= C |x|^-p` beyond the truncation radius,
/// estimated at `X`, `2X` and `4X`.
fn tail_constant<F: Fn(f64) -> f64>(f: &F, spec: &QuadratureSpec, both_sides: bool) -> Result<f64> {
    let radius = spec.truncation_radius;
    let p = spec.decay_exponent;
    let c1 = envelope_constant(f, radius, p, both_sides)?;
    let c2 = envelope_constant(f, 2.0 * radius, p, both_sides)?;
    let c4 = envelope_constant(f, 4.0 * radius, p, both_sides)?;
    // The scaled envelope must not grow; allow sampling jitter and values at
    // the level of rounding noise.
    let slack = |c: f64| 2.0 * c + 1e-300;
    if c2 > slack(c1) || c4 > slack(c2) {
        return Err(Error::DecayCheckFailed { radius, exponent: p });
    }
    Ok(c1.max(c2).max(c4))
}

/// Initial panels for a truncated range: at least 16 per unit length, which
/// resolves every oscillation frequency that occurs in the moment integrands.
fn truncated_panels(spec: &QuadratureSpec, length: f64) -> usize {
    let dense = (16.0 * length).ceil() as usize;
    let panels = spec.panels.max(dense);
    panels + panels % 2
}

/// How far past `spec.truncation_radius` a truncated integral may reach.
pub const MAX_RADIUS_GROWTH: f64 = 16.0;

/// Truncation radius and tail bound `2 C X^(1-p) / (p - 1)`. The radius grows
/// from `spec.truncation_radius` (up to [`MAX_RADIUS_GROWTH`] times) until
/// the tail bound fits in half the tolerance.
fn truncation(c: f64, spec: &QuadratureSpec) -> (f64, f64) {
    let p = spec.decay_exponent;
    let tail_at = |x: f64| 2.0 * c * x.powf(1.0 - p) / (p - 1.0);
    let base = spec.truncation_radius;
    let target = 0.5 * spec.tol;
    if tail_at(base) <= target {
        return (base, tail_at(base));
    }
    let needed = (2.0 * c / ((p - 1.0) * target)).powf(1.0 / (p - 1.0));
    let radius = needed.min(MAX_RADIUS_GROWTH * base).ceil();
    (radius, tail_at(radius))
}

fn finish_truncated(inner: QuadResult, tail: f64, scale: f64, spec: &QuadratureSpec, factor: f64) -> Result<QuadResult> {
    let est_error = factor * inner.est_error + tail;
    let floor = 64.0 * f64::EPSILON * scale;
    if tail > spec.tol.max(floor) {
        return Err(Error::ToleranceNotReached {
            value: factor * inner.value,
            est_error,
            panels: inner.panels_used,
            tol: spec.tol,
        });
    }
    Ok(QuadResult { value: factor * inner.value, est_error, panels_used: inner.panels_used })
}

/// Integral over the whole real line of an integrand with
/// `|f(x)| <= C |x|^-p` beyond `spec.truncation_radius`.
///
/// The returned error estimate adds the refinement difference on `[-X, X]`
/// and the tail bound `2 C X^(1-p) / (p - 1)`. `X` starts at the configured
/// radius and grows when the tail bound alone would exceed the tolerance.
pub fn integrate_decaying<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    let c = tail_constant(&f, spec, true)?;
    let (radius, tail) = truncation(c, spec);
    let inner_spec = spec.with_tol((spec.tol - tail).max(0.5 * spec.tol));
    let inner = adaptive_from(&f, -radius, radius, truncated_panels(spec, 2.0 * radius), &inner_spec)?;
    finish_truncated(inner, tail, inner.value.abs().max(1.0), spec, 1.0)
}

/// As [`integrate_decaying`] for an even integrand: integrates `[0, X]` and
/// doubles, which halves the work.
pub fn integrate_decaying_even<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    let c = tail_constant(&f, spec, false)?;
    let (radius, tail) = truncation(c, spec);
    let half_tol = 0.5 * (spec.tol - tail).max(0.5 * spec.tol);
    let inner_spec = spec.with_tol(half_tol);
    let inner = adaptive_from(&f, 0.0, radius, truncated_panels(spec, radius), &inner_spec)?;
    finish_truncated(inner, tail, inner.value.abs().max(1.0), spec, 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_exact_on_cubic() {
        let v = simpson(|x| x * x * x, 0.0, 1.0, 2).unwrap();
        assert!((v - 0.25).abs() <= 1e-15);
    }

    #[test]
    fn simpson_constant() {
        assert_eq!(simpson(|_| 1.0, -3.0, 5.0, 8).unwrap(), 8.0);
    }

    #[test]
    fn simpson_quartic_error_bound() {
        let s = 4;
        let h: f64 = 1.0 / s as f64;
        let v = simpson(|x| x.powi(4), 0.0, 1.0, s).unwrap();
        let bound = h.powi(4) / 180.0 * 1.0 * 24.0;
        assert!((v - 0.2).abs() <= bound, "{} vs bound {}", (v - 0.2).abs(), bound);
    }

    #[test]
    fn simpson_rejects_odd_panels() {
        assert_eq!(simpson(|x| x, 0.0, 1.0, 3), Err(Error::OddPanels(3)));
        assert_eq!(simpson(|x| x, 0.0, 1.0, 0), Err(Error::OddPanels(0)));
    }

    #[test]
    fn simpson_rejects_non_finite() {
        let r = simpson(|x| 1.0 / x, 0.0, 1.0, 2);
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn adaptive_sine() {
        let spec = QuadratureSpec::default().with_tol(1e-10);
        let r = adaptive_simpson(f64::sin, 0.0, PI, &spec).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10);
        assert!(r.est_error <= 1e-10);
    }

    #[test]
    fn adaptive_cubic_converges_immediately() {
        let spec = QuadratureSpec::default().with_panels(2);
        let r = adaptive_simpson(|x| x * x * x - 2.0 * x, -1.5, 2.5, &spec).unwrap();
        assert_eq!(r.panels_used, 4);
        let exact = (2.5f64.powi(4) - 1.5f64.powi(4)) / 4.0 - (2.5f64.powi(2) - 1.5f64.powi(2));
        assert!((r.value - exact).abs() < 1e-13);
    }

    #[test]
    fn adaptive_reports_exhaustion() {
        let spec = QuadratureSpec { max_doublings: 1, panels: 2, tol: 1e-14, ..Default::default() };
        match adaptive_simpson(|x: f64| (40.0 * x).sin(), 0.0, 3.0, &spec) {
            Err(Error::ToleranceNotReached { panels, .. }) => assert_eq!(panels, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut acc = CompensatedSum::new();
        let mut naive = 0.0;
        acc += 1.0;
        naive += 1.0;
        for _ in 0..1_000_000 {
            acc += 1e-16;
            naive += 1e-16;
        }
        assert_eq!(naive, 1.0);
        assert!((acc.value() - (1.0 + 1e-10)).abs() < 1e-22);
    }

    #[test]
    fn decaying_lorentzian_squared() {
        let spec = QuadratureSpec::default().with_radius(200.0).with_decay(4.0).with_tol(1e-6);
        let r = integrate_decaying(|x| 1.0 / (1.0 + x * x).powi(2), &spec).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-6);
    }

    #[test]
    fn decaying_compact_support_has_no_tail() {
        let spec = QuadratureSpec::default().with_radius(10.0).with_decay(4.0);
        let f = |x: f64| if x.abs() < 1.0 { 1.0 - x.abs() } else { 0.0 };
        let r = integrate_decaying(f, &spec).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
        assert!(r.est_error < 1e-10);
    }

    #[test]
    fn decay_check_rejects_slow_decay() {
        let spec = QuadratureSpec::default().with_radius(50.0).with_decay(4.0);
        let r = integrate_decaying(|x| 1.0 / (1.0 + x * x), &spec);
        assert!(matches!(r, Err(Error::DecayCheckFailed { .. })));
    }

    #[test]
    fn even_variant_matches_full_range() {
        let spec = QuadratureSpec::default().with_radius(100.0).with_decay(4.0).with_tol(1e-5);
        let f = |x: f64| (x.cos() + 2.0) / (1.0 + x * x).powi(2);
        let full = integrate_decaying(f, &spec).unwrap();
        let half = integrate_decaying_even(f, &spec).unwrap();
        assert!((full.value - half.value).abs() < 1e-9);
    }
}
