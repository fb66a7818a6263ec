//! Test-function Fourier pairs.
//!
//! Two families are provided, both with `φ >= 0`, `φ` even and `φ̂` supported
//! in `[-v, v]`:
//!
//! * the naive pair `φ(x) = (sin(πvx) / (πvx))^2`, `φ̂(y) = (1/v)(1 - |y|/v)`;
//! * the optimal one-level pair of each sign-split group, `φ̂ = f0 * f0` with
//!   `f0(t) = cos(|t|/2 - a) / b` on `[-1, 1]`, so `φ = (f̂0)^2`. Its native
//!   support is `v = 2`; other supports are reached by dilation
//!   `φ_v(x) = φ(vx/2)`, `φ̂_v(y) = (2/v) φ̂(2y/v)`, which keeps `φ(0)`.
//!
//! [`TestFunction`] evaluates both through exact closed forms. The free
//! functions [`optimal_phi_hat`] and [`optimal_phi`] evaluate the defining
//! convolution and Fourier integrals by quadrature instead and serve as the
//! reference definitions the closed forms are checked against.

mod arc;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::SymmetryGroup;
use crate::quadrature::{adaptive_simpson, adaptive_simpson_pieces, QuadratureSpec};

pub(crate) use arc::OptimalProfile;

/// Switch-over magnitude between Taylor series and closed forms for
/// expressions like `(u - sin u) / u^2`.
pub const SERIES_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TfKind {
    Naive,
    OptimalEven,
    OptimalOdd,
}

impl TfKind {
    /// The optimal one-level kind for a sign-split group.
    pub fn optimal_for(group: SymmetryGroup) -> Result<TfKind> {
        match group {
            SymmetryGroup::SOEven => Ok(TfKind::OptimalEven),
            SymmetryGroup::SOOdd => Ok(TfKind::OptimalOdd),
            SymmetryGroup::O => Err(Error::UnsupportedGroup { operation: "optimal test function", group: "O" }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TfKind::Naive => "naive",
            TfKind::OptimalEven => "optimal-even",
            TfKind::OptimalOdd => "optimal-odd",
        }
    }
}

impl fmt::Display for TfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which test-function family a command uses; the optimal choice resolves to
/// the group's own [`TfKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TfChoice {
    Naive,
    Optimal,
}

impl TfChoice {
    pub fn resolve(self, group: SymmetryGroup) -> Result<TfKind> {
        match self {
            TfChoice::Naive => Ok(TfKind::Naive),
            TfChoice::Optimal => TfKind::optimal_for(group),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TfChoice::Naive => "naive",
            TfChoice::Optimal => "optimal",
        }
    }
}

impl FromStr for TfChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(TfChoice::Naive),
            "optimal" => Ok(TfChoice::Optimal),
            other => Err(Error::InvalidArgument(format!("unknown test function '{other}'"))),
        }
    }
}

/// Cosine-arc parameters of the optimal `f0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F0Params {
    /// Phase shift in radians.
    pub a: f64,
    /// Normalizing denominator.
    pub b: f64,
}

impl F0Params {
    pub fn for_group(group: SymmetryGroup) -> Result<F0Params> {
        match group {
            SymmetryGroup::SOEven => Ok(F0Params {
                a: (PI + 1.0) / 4.0,
                b: 2f64.sqrt() * 0.25f64.sin() + ((PI + 1.0) / 4.0).sin(),
            }),
            SymmetryGroup::SOOdd => Ok(F0Params {
                a: -(PI - 1.0) / 4.0,
                b: 3.0 * ((PI + 1.0) / 4.0).sin() - 2.0 * ((PI - 1.0) / 4.0).sin(),
            }),
            SymmetryGroup::O => Err(Error::UnsupportedGroup { operation: "f0", group: "O" }),
        }
    }

    fn for_kind(kind: TfKind) -> Option<F0Params> {
        match kind {
            TfKind::Naive => None,
            TfKind::OptimalEven => F0Params::for_group(SymmetryGroup::SOEven).ok(),
            TfKind::OptimalOdd => F0Params::for_group(SymmetryGroup::SOOdd).ok(),
        }
    }
}

/// A test-function pair `(φ, φ̂)` with `φ̂` supported in `[-v, v]`.
#[derive(Debug, Clone)]
pub struct TestFunction {
    kind: TfKind,
    support: f64,
    phi_zero: f64,
    profile: Option<Arc<Optimal>>,
}

#[derive(Debug)]
struct Optimal {
    profile: OptimalProfile,
    /// `2 ∫_0^2 y φ̂(y) dy` at the native support.
    first_moment: f64,
}

impl TestFunction {
    pub fn new(kind: TfKind, support: f64) -> Result<TestFunction> {
        if !(support > 0.0 && support.is_finite()) {
            return Err(Error::InvalidArgument(format!("support must be positive, got {support}")));
        }
        match F0Params::for_kind(kind) {
            None => Ok(TestFunction { kind, support, phi_zero: 1.0, profile: None }),
            Some(params) => {
                let profile = OptimalProfile::new(params.a, params.b);
                let spec = QuadratureSpec { tol: 1e-15, ..QuadratureSpec::default() };
                let first_moment = 2.0
                    * adaptive_simpson_pieces(|y| y * profile.phi_hat(y), &[0.0, 1.0, 2.0], &spec)?.value;
                let phi_zero = profile.phi(0.0);
                Ok(TestFunction {
                    kind,
                    support,
                    phi_zero,
                    profile: Some(Arc::new(Optimal { profile, first_moment })),
                })
            }
        }
    }

    pub fn naive(support: f64) -> Result<TestFunction> {
        TestFunction::new(TfKind::Naive, support)
    }

    /// Optimal pair of `group` at its native support 2.
    pub fn optimal(group: SymmetryGroup) -> Result<TestFunction> {
        TestFunction::new(TfKind::optimal_for(group)?, 2.0)
    }

    pub fn kind(&self) -> TfKind {
        self.kind
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn phi_zero(&self) -> f64 {
        self.phi_zero
    }

    /// Same family, different support.
    pub fn with_support(&self, support: f64) -> Result<TestFunction> {
        if !(support > 0.0 && support.is_finite()) {
            return Err(Error::InvalidArgument(format!("support must be positive, got {support}")));
        }
        Ok(TestFunction { support, ..self.clone() })
    }

    fn dilation(&self) -> f64 {
        0.5 * self.support
    }

    pub fn phi(&self, x: f64) -> f64 {
        match &self.profile {
            None => naive_phi(x, self.support),
            Some(opt) => opt.profile.phi(x * self.dilation()),
        }
    }

    pub fn phi_hat(&self, y: f64) -> f64 {
        match &self.profile {
            None => naive_phi_hat(y, self.support),
            Some(opt) => opt.profile.phi_hat(y / self.dilation()) / self.dilation(),
        }
    }

    /// `∫_{-c}^{c} φ̂(y) dy`, exact.
    pub fn hat_mass(&self, c: f64) -> f64 {
        let c = c.max(0.0);
        match &self.profile {
            None => {
                let t = (1.0 - c / self.support).max(0.0);
                1.0 - t * t
            }
            Some(opt) => 2.0 * opt.profile.hat_integral(0.0, (c / self.dilation()).min(2.0)),
        }
    }

    /// `I1(x) = 2 ∫_0^v φ̂(y) e^{2πixy} dy`, evaluated in closed form.
    pub fn inner_transform(&self, x: f64) -> Complex64 {
        match &self.profile {
            None => naive_inner_transform(x, self.support, SERIES_THRESHOLD),
            Some(opt) => opt.profile.inner_transform(x * self.dilation()),
        }
    }

    /// `2 ∫_0^v y φ̂(y) dy`, the slope of `Im I1` at the origin over `2π`.
    pub fn hat_first_moment(&self) -> f64 {
        match &self.profile {
            None => self.support / 3.0,
            Some(opt) => opt.first_moment * self.dilation(),
        }
    }

    /// Cosine-arc parameters of an optimal pair; `None` for the naive pair.
    pub fn f0_params(&self) -> Option<F0Params> {
        self.profile.as_ref().map(|o| F0Params { a: o.profile.a, b: o.profile.b })
    }
}

/// `(sin(πvx) / (πvx))^2`.
pub fn naive_phi(x: f64, v: f64) -> f64 {
    let u = PI * v * x;
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 3.0 + 2.0 * u2 * u2 / 45.0
    } else {
        let s = u.sin() / u;
        s * s
    }
}

/// Triangle `(1/v)(1 - |y|/v)` on `|y| < v`, zero outside.
pub fn naive_phi_hat(y: f64, v: f64) -> f64 {
    let y = y.abs();
    if y >= v {
        0.0
    } else {
        (1.0 - y / v) / v
    }
}

/// Closed form of `2 ∫_0^v φ̂(y) e^{2πixy} dy` for the naive pair,
/// `(2iπvx - e^{2iπvx} + 1) / (2π²v²x²)`.
///
/// The real part is evaluated as `(sin(u/2) / (u/2))^2` with `u = 2πvx` and
/// the imaginary part `2(u - sin u)/u^2` switches to its series below
/// `threshold`.
pub fn naive_inner_transform(x: f64, v: f64, threshold: f64) -> Complex64 {
    let u = 2.0 * PI * v * x;
    let half = 0.5 * u;
    let re = if half.abs() < 1e-4 {
        let h2 = half * half;
        1.0 - h2 / 3.0 + 2.0 * h2 * h2 / 45.0
    } else {
        let s = half.sin() / half;
        s * s
    };
    let im = if u.abs() < threshold.min(1.0) {
        // 2 sum_{k odd} (-1)^((k-1)/2) u^k / (k+2)!
        let u2 = u * u;
        let mut term = u / 3.0; // 2 u / 3!
        let mut acc = term;
        let mut k = 1.0;
        while term.abs() > 1e-18 * acc.abs() && k < 40.0 {
            term *= -u2 / ((k + 3.0) * (k + 4.0));
            acc += term;
            k += 2.0;
        }
        acc
    } else {
        2.0 * (u - u.sin()) / (u * u)
    };
    Complex64::new(re, im)
}

/// `f0(x) = cos(|x|/2 - a) / b` on `|x| <= 1`, zero outside.
pub fn f0(group: SymmetryGroup, x: f64) -> Result<f64> {
    let params = F0Params::for_group(group)?;
    Ok(if x.abs() <= 1.0 { (0.5 * x.abs() - params.a).cos() / params.b } else { 0.0 })
}

/// `(f0 * f0)(y)` by quadrature of the defining convolution.
pub fn optimal_phi_hat(group: SymmetryGroup, y: f64, quad: &QuadratureSpec) -> Result<f64> {
    F0Params::for_group(group)?;
    let y = y.abs();
    if y >= 2.0 {
        return Ok(0.0);
    }
    let lo = y - 1.0;
    let mut breaks = vec![lo];
    for k in [0.0, y] {
        if k > lo && k < 1.0 && !breaks.contains(&k) {
            breaks.push(k);
        }
    }
    breaks.push(1.0);
    breaks.sort_by(f64::total_cmp);
    let f = |t: f64| f0(group, t).unwrap_or(0.0) * f0(group, y - t).unwrap_or(0.0);
    Ok(adaptive_simpson_pieces(f, &breaks, quad)?.value)
}

/// `φ(x) = (f̂0(x))^2` with `f̂0(x) = ∫_{-1}^{1} f0(t) cos(2πxt) dt` by quadrature.
pub fn optimal_phi(group: SymmetryGroup, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    F0Params::for_group(group)?;
    let w = 2.0 * PI * x;
    let half = adaptive_simpson(|t| f0(group, t).unwrap_or(0.0) * (w * t).cos(), 0.0, 1.0, quad)?;
    let transform = 2.0 * half.value;
    Ok(transform * transform)
}

/// `σ² = 2 ∫ |y| φ̂(y)^2 dy`.
pub fn sigma_sq(tf: &TestFunction, quad: &QuadratureSpec) -> Result<f64> {
    match tf.kind() {
        TfKind::Naive => Ok(1.0 / 3.0),
        _ => {
            let v = tf.support();
            let r = adaptive_simpson_pieces(
                |y| {
                    let h = tf.phi_hat(y);
                    y * h * h
                },
                &[0.0, 0.5 * v, v],
                quad,
            )?;
            Ok(4.0 * r.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad() -> QuadratureSpec {
        QuadratureSpec { tol: 1e-13, ..QuadratureSpec::default() }
    }

    #[test]
    fn naive_phi_examples() {
        assert_eq!(naive_phi(0.0, 1.0), 1.0);
        assert!(naive_phi(1.0, 1.0).abs() < 1e-30);
        // (sin(π/4)/(π/4))^2 = 8 / π^2
        assert!((naive_phi(0.25, 1.0) - 8.0 / (PI * PI)).abs() < 1e-12);
    }

    #[test]
    fn naive_phi_hat_examples() {
        assert_eq!(naive_phi_hat(0.0, 0.5), 2.0);
        assert_eq!(naive_phi_hat(1.0, 1.0), 0.0);
        assert_eq!(naive_phi_hat(0.5, 1.0), 0.5);
        assert_eq!(naive_phi_hat(-0.5, 1.0), 0.5);
    }

    #[test]
    fn f0_examples() {
        let even = F0Params::for_group(SymmetryGroup::SOEven).unwrap();
        let odd = F0Params::for_group(SymmetryGroup::SOOdd).unwrap();
        let e0 = f0(SymmetryGroup::SOEven, 0.0).unwrap();
        assert!((e0 - ((PI + 1.0) / 4.0).cos() / even.b).abs() < 1e-15);
        assert_eq!(f0(SymmetryGroup::SOEven, 1.5).unwrap(), 0.0);
        let o0 = f0(SymmetryGroup::SOOdd, 0.0).unwrap();
        assert!((o0 - ((PI - 1.0) / 4.0).cos() / odd.b).abs() < 1e-15);
        // closed support
        assert!(f0(SymmetryGroup::SOOdd, 1.0).unwrap() > 0.0);
        assert!(matches!(f0(SymmetryGroup::O, 0.0), Err(Error::UnsupportedGroup { .. })));
    }

    #[test]
    fn optimal_requires_sign_split_group() {
        assert!(optimal_phi(SymmetryGroup::O, 0.0, &quad()).is_err());
        assert!(optimal_phi_hat(SymmetryGroup::O, 0.0, &quad()).is_err());
        assert!(TestFunction::optimal(SymmetryGroup::O).is_err());
    }

    #[test]
    fn optimal_phi_hat_edges_and_symmetry() {
        let q = quad();
        assert_eq!(optimal_phi_hat(SymmetryGroup::SOEven, 2.0, &q).unwrap(), 0.0);
        let a = optimal_phi_hat(SymmetryGroup::SOEven, -0.3, &q).unwrap();
        let b = optimal_phi_hat(SymmetryGroup::SOEven, 0.3, &q).unwrap();
        assert_eq!(a, b);
        let sq = adaptive_simpson(|t| f0(SymmetryGroup::SOOdd, t).unwrap().powi(2), 0.0, 1.0, &q).unwrap();
        let at0 = optimal_phi_hat(SymmetryGroup::SOOdd, 0.0, &q).unwrap();
        assert!((at0 - 2.0 * sq.value).abs() < 1e-12);
    }

    #[test]
    fn closed_form_autocorrelation_matches_quadrature() {
        let q = quad();
        for group in [SymmetryGroup::SOEven, SymmetryGroup::SOOdd] {
            let tf = TestFunction::optimal(group).unwrap();
            for k in 0..=40 {
                let y = -2.0 + 0.1 * k as f64;
                let quadrature = optimal_phi_hat(group, y, &q).unwrap();
                assert!((tf.phi_hat(y) - quadrature).abs() < 1e-12, "{group} y={y}");
            }
        }
    }

    #[test]
    fn closed_form_transform_matches_quadrature() {
        let q = quad();
        for group in [SymmetryGroup::SOEven, SymmetryGroup::SOOdd] {
            let tf = TestFunction::optimal(group).unwrap();
            // includes the removable singularity 16π²x² = 1
            for &x in &[0.0, 0.05, 1.0 / (4.0 * PI), 0.3, 1.7, -2.2, 9.4] {
                let quadrature = optimal_phi(group, x, &q).unwrap();
                assert!((tf.phi(x) - quadrature).abs() < 1e-12, "{group} x={x}");
            }
        }
    }

    #[test]
    fn optimal_phi_at_zero_is_squared_mass() {
        let q = quad();
        let mass = adaptive_simpson(|t| f0(SymmetryGroup::SOOdd, t).unwrap(), -1.0, 1.0, &q).unwrap();
        let phi0 = optimal_phi(SymmetryGroup::SOOdd, 0.0, &q).unwrap();
        assert!((phi0 - mass.value * mass.value).abs() < 1e-12);
    }

    #[test]
    fn dilation_preserves_phi_zero_and_mass() {
        let native = TestFunction::optimal(SymmetryGroup::SOEven).unwrap();
        let narrow = native.with_support(0.5).unwrap();
        assert_eq!(native.phi_zero(), narrow.phi_zero());
        assert!((narrow.hat_mass(10.0) - native.phi_zero()).abs() < 1e-13);
        assert!(narrow.phi_hat(0.5).abs() < 1e-15);
        assert!((narrow.phi(4.0) - native.phi(1.0)).abs() < 1e-15);
    }

    #[test]
    fn naive_inner_transform_is_continuous_across_threshold() {
        for &u in &[0.499, 0.4999999, 0.5, 0.5000001, 0.7] {
            let x = u / (2.0 * PI);
            let series = naive_inner_transform(x, 1.0, 10.0);
            let closed = naive_inner_transform(x, 1.0, 1e-9);
            assert!((series - closed).norm() < 2e-15, "u={u}");
        }
        assert_eq!(naive_inner_transform(0.0, 1.0, SERIES_THRESHOLD), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn sigma_sq_naive_is_one_third() {
        let tf = TestFunction::naive(1.0).unwrap();
        assert_eq!(sigma_sq(&tf, &quad()).unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn sigma_sq_optimal_is_dilation_invariant() {
        let q = quad();
        let native = TestFunction::optimal(SymmetryGroup::SOOdd).unwrap();
        let narrow = native.with_support(2.0 / 6.0).unwrap();
        let a = sigma_sq(&native, &q).unwrap();
        let b = sigma_sq(&narrow, &q).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
