//! Centered moments of the n-level density for support up to `2/n`.
//!
//! For even `n` the limiting n-th centered moment of a sign-split family is
//!
//! ```text
//! (n-1)!! σ^n ± S(n, a; φ)
//! S(n, a; φ) = Σ_{l=0}^{⌊(a-1)/2⌋} n! / ((n-2l)! l!) R(n-2l, a-2l; φ) (σ²/2)^l
//! R(m, i; φ) = 2^{m-1} (-1)^{m+1} Σ_{l=0}^{i-1} (-1)^l C(m, l) (-φ(0)^m / 2 + T_l)
//! ```
//!
//! where `T_l` is an `(l+1)`-dimensional oscillatory integral. Writing the
//! sine as exponentials and integrating out the outer variables turns it into
//!
//! ```text
//! T_l = ∫ φ(x)^{m-l} Im(I1(x)^l e^{2πix}) / (2πx) dx,   I1(x) = 2 ∫_0^v φ̂(y) e^{2πixy} dy,
//! ```
//!
//! which [`r_reduced`] evaluates. [`r_bruteforce`] integrates the original
//! nested form directly for `i <= 3` and is the independent check on it.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::SymmetryGroup;
use crate::quadrature::{
    adaptive_simpson_pieces, compensated_sum, integrate_decaying_even, simpson_weights, QuadratureSpec,
};
use crate::test_functions::{naive_inner_transform, sigma_sq, TestFunction, TfKind};

/// Relative slack when comparing a support against `2/n`.
const SUPPORT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentValue {
    pub level: u32,
    pub sigma_sq: f64,
    #[serde(rename = "S")]
    pub s_value: f64,
    pub total: f64,
    pub group_sign: f64,
    pub est_error: f64,
}

impl MomentValue {
    /// Assembles `(n-1)!! (σ²)^{n/2} 1{n even} + sign * S`.
    pub fn from_parts(level: u32, sigma_sq: f64, s: Estimate, group_sign: f64) -> Result<MomentValue> {
        let main = main_term(level, sigma_sq)?;
        Ok(MomentValue {
            level,
            sigma_sq,
            s_value: s.value,
            total: main + group_sign * s.value,
            group_sign,
            est_error: s.est_error,
        })
    }

    pub fn main_term(&self) -> f64 {
        self.total - self.group_sign * self.s_value
    }
}

/// A value together with its accumulated error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub est_error: f64,
}

/// `n!!`, with `0!! = 1`.
pub fn double_factorial(n: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    let mut k = n;
    while k > 1 {
        acc = acc.checked_mul(k as u64).ok_or(Error::Overflow(n))?;
        k -= 2;
    }
    Ok(acc)
}

fn main_term(level: u32, sigma_sq: f64) -> Result<f64> {
    if level % 2 == 1 {
        return Ok(0.0);
    }
    Ok(double_factorial(level - 1)? as f64 * sigma_sq.powi((level / 2) as i32))
}

fn binomial(m: u32, l: u32) -> f64 {
    (0..l).fold(1.0, |acc, j| acc * (m - j) as f64 / (j + 1) as f64)
}

/// `n! / ((n - 2l)! l!)`.
fn pairing_coefficient(n: u32, l: u32) -> f64 {
    let falling: f64 = ((n - 2 * l + 1)..=n).map(|j| j as f64).product();
    let l_fact: f64 = (1..=l).map(|j| j as f64).product();
    falling / l_fact
}

/// `2 ∫_0^v φ̂(y) e^{2πixy} dy`.
///
/// The naive pair uses its closed form (with the series fallback below
/// `quad.small_arg_threshold`); the optimal pairs integrate numerically.
pub fn inner_transform(tf: &TestFunction, x: f64, quad: &QuadratureSpec) -> Result<Complex64> {
    let v = tf.support();
    match tf.kind() {
        TfKind::Naive => Ok(naive_inner_transform(x, v, quad.small_arg_threshold)),
        _ => {
            let w = 2.0 * std::f64::consts::PI * x;
            let breaks = [0.0, 0.5 * v, v];
            let re = adaptive_simpson_pieces(|y| tf.phi_hat(y) * (w * y).cos(), &breaks, quad)?;
            let im = adaptive_simpson_pieces(|y| tf.phi_hat(y) * (w * y).sin(), &breaks, quad)?;
            Ok(Complex64::new(2.0 * re.value, 2.0 * im.value))
        }
    }
}

/// Integrand of `T_l`: `φ(x)^k Im(I1(x)^l e^{2πix}) / (2πx)`, with `k = m - l`.
/// Even in `x`; its value at 0 is `φ(0)^k (φ(0)^l + l φ(0)^{l-1} M1)` where
/// `M1 = 2 ∫_0^v y φ̂`.
pub fn reduced_integrand(tf: &TestFunction, k: u32, l: u32) -> impl Fn(f64) -> f64 + Sync + '_ {
    let phi0 = tf.phi_zero();
    let at_zero = phi0.powi(k as i32)
        * (phi0.powi(l as i32) + l as f64 * phi0.powi(l as i32 - 1) * tf.hat_first_moment());
    move |x: f64| {
        if x == 0.0 {
            return at_zero;
        }
        let theta = 2.0 * std::f64::consts::PI * x;
        let rotated = tf.inner_transform(x).powu(l) * Complex64::from_polar(1.0, theta);
        tf.phi(x).powi(k as i32) * rotated.im / theta
    }
}

fn check_indices(m: u32, i: u32) -> Result<()> {
    if m == 0 || i == 0 || i > m {
        return Err(Error::InvalidArgument(format!("R(m, i) needs 1 <= i <= m, got m = {m}, i = {i}")));
    }
    Ok(())
}

fn r_prefactor(m: u32) -> f64 {
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    sign * 2f64.powi(m as i32 - 1)
}

/// Per-term tolerance so the weighted sum meets `tol` on `R(m, i)`.
fn term_tolerance(m: u32, i: u32, l: u32, tol: f64) -> f64 {
    tol / (2f64.powi(m as i32 - 1) * binomial(m, l) * i as f64)
}

/// Combines per-`l` values of `T_l` (with their errors) into `R(m, i)`.
fn assemble_r(m: u32, tf: &TestFunction, terms: &[Estimate]) -> Estimate {
    let half_phi = 0.5 * tf.phi_zero().powi(m as i32);
    let prefactor = r_prefactor(m);
    let value = compensated_sum(terms.iter().enumerate().map(|(l, t)| {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        sign * binomial(m, l as u32) * (t.value - half_phi)
    }));
    let err: f64 = terms
        .iter()
        .enumerate()
        .map(|(l, t)| binomial(m, l as u32) * t.est_error)
        .sum();
    Estimate { value: prefactor * value, est_error: prefactor.abs() * err }
}

/// `T_l` for `R(m, ·)` through the one-dimensional reduction.
pub fn t_reduced(m: u32, l: u32, tf: &TestFunction, quad: &QuadratureSpec) -> Result<Estimate> {
    let k = m - l;
    let spec = quad.with_decay((2 * k + 1) as f64);
    let r = integrate_decaying_even(reduced_integrand(tf, k, l), &spec)?;
    Ok(Estimate { value: r.value, est_error: r.est_error })
}

/// `R(m, i; φ)` via the one-dimensional reduction; `quad.tol` targets the
/// error of the result.
pub fn r_reduced(m: u32, i: u32, tf: &TestFunction, quad: &QuadratureSpec) -> Result<Estimate> {
    check_indices(m, i)?;
    let terms = (0..i)
        .into_par_iter()
        .map(|l| t_reduced(m, l, tf, &quad.with_tol(term_tolerance(m, i, l, quad.tol))))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_r(m, tf, &terms))
}

/// `sin(2πxs) / (2πx)`, equal to `s` at the origin.
fn sine_kernel(x: f64, s: f64) -> f64 {
    let t = 2.0 * std::f64::consts::PI * x * s;
    if t.abs() < 1e-4 {
        s * (1.0 - t * t / 6.0)
    } else {
        t.sin() / (2.0 * std::f64::consts::PI * x)
    }
}

/// Outer panels per smooth piece of `φ̂` in [`r_bruteforce`], by the number
/// of outer dimensions. The tensor rule costs `panels^l` inner integrals.
pub fn bruteforce_outer_panels(l: u32) -> usize {
    match l {
        0 | 1 => 128,
        _ => 32,
    }
}

/// Composite Simpson nodes and weights over `[0, v]`, split where `φ̂` has
/// kinks. The coarse rule (half the panels) reuses every other node; its
/// weights are returned alongside for the error estimate.
fn outer_rule(tf: &TestFunction, panels: usize) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let v = tf.support();
    let breaks: Vec<f64> = match tf.kind() {
        TfKind::Naive => vec![0.0, v],
        _ => vec![0.0, 0.5 * v, v],
    };
    let fine = simpson_weights(panels)?;
    let coarse = simpson_weights(panels / 2)?;
    let mut nodes = Vec::new();
    let mut w_fine = Vec::new();
    let mut w_coarse = Vec::new();
    for (piece, w) in breaks.windows(2).enumerate() {
        let h = (w[1] - w[0]) / panels as f64;
        for j in 0..=panels {
            // Shared endpoints between pieces accumulate into one node.
            let x = w[0] + (w[1] - w[0]) * (j as f64 / panels as f64);
            let wf = h / 3.0 * fine[j];
            let wc = if j % 2 == 0 { 2.0 * h / 3.0 * coarse[j / 2] } else { 0.0 };
            if piece > 0 && j == 0 {
                *w_fine.last_mut().unwrap() += wf;
                *w_coarse.last_mut().unwrap() += wc;
            } else {
                nodes.push(x);
                w_fine.push(wf);
                w_coarse.push(wc);
            }
        }
    }
    Ok((nodes, w_fine, w_coarse))
}

/// `T_l` from the nested definition: tensor-product Simpson over `[0, v]^l`
/// (positive orthant, weight `2^l`) around a truncated inner integral in `x1`.
pub fn t_bruteforce(m: u32, l: u32, tf: &TestFunction, quad: &QuadratureSpec) -> Result<Estimate> {
    let k = m - l;
    let spec = quad.with_decay((2 * k + 1) as f64);
    let inner = |s: f64| -> Result<Estimate> {
        let r = integrate_decaying_even(|x| tf.phi(x).powi(k as i32) * sine_kernel(x, s), &spec)?;
        Ok(Estimate { value: r.value, est_error: r.est_error })
    };
    if l == 0 {
        return inner(1.0);
    }
    let (nodes, w_fine, w_coarse) = outer_rule(tf, bruteforce_outer_panels(l))?;
    let hat: Vec<f64> = nodes.iter().map(|&y| tf.phi_hat(y)).collect();
    let count = nodes.len();
    let total = count.pow(l);
    let samples = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut idx = flat;
            let mut s = 1.0;
            let mut weight_fine = 1.0;
            let mut weight_coarse = 1.0;
            for _ in 0..l {
                let j = idx % count;
                idx /= count;
                s += nodes[j];
                weight_fine *= w_fine[j] * hat[j];
                weight_coarse *= w_coarse[j] * hat[j];
            }
            if weight_fine == 0.0 && weight_coarse == 0.0 {
                return Ok((0.0, 0.0, 0.0));
            }
            let j = inner(s)?;
            Ok((weight_fine * j.value, weight_coarse * j.value, weight_fine.abs() * j.est_error))
        })
        .collect::<Result<Vec<_>>>()?;
    let scale = 2f64.powi(l as i32);
    let fine = compensated_sum(samples.iter().map(|t| t.0));
    let coarse = compensated_sum(samples.iter().map(|t| t.1));
    let inner_err: f64 = samples.iter().map(|t| t.2).sum();
    Ok(Estimate { value: scale * fine, est_error: scale * ((fine - coarse).abs() + inner_err) })
}

/// `R(m, i; φ)` from the nested multi-dimensional definition. Limited to
/// `i <= 3`, i.e. at most three nested integrals.
pub fn r_bruteforce(m: u32, i: u32, tf: &TestFunction, quad: &QuadratureSpec) -> Result<Estimate> {
    check_indices(m, i)?;
    if i > 3 {
        return Err(Error::DimensionTooLarge(i));
    }
    let terms = (0..i)
        .map(|l| t_bruteforce(m, l, tf, &quad.with_tol(term_tolerance(m, i, l, quad.tol))))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_r(m, tf, &terms))
}

/// The `(n - 2l, a - 2l)` index pairs of `S(n, a)` with their coefficients
/// `n! / ((n-2l)! l!) (σ²/2)^l`.
pub fn s_terms(n: u32, a: u32, sigma_sq: f64) -> Vec<(u32, u32, f64)> {
    (0..=(a - 1) / 2)
        .map(|l| (n - 2 * l, a - 2 * l, pairing_coefficient(n, l) * (0.5 * sigma_sq).powi(l as i32)))
        .collect()
}

/// `S(n, a; φ)` using [`r_reduced`] for every `R`; `quad.tol` targets the
/// error of the result.
pub fn s_value(n: u32, a: u32, tf: &TestFunction, quad: &QuadratureSpec) -> Result<Estimate> {
    if n == 0 || a == 0 || a > n {
        return Err(Error::InvalidArgument(format!("S(n, a) needs 1 <= a <= n, got n = {n}, a = {a}")));
    }
    let sigma = sigma_sq(tf, quad)?;
    let terms = s_terms(n, a, sigma);
    let count = terms.len() as f64;
    let parts = terms
        .par_iter()
        .map(|&(m, i, coef)| {
            let r = r_reduced(m, i, tf, &quad.with_tol(quad.tol / (count * coef.abs().max(1.0))))?;
            Ok((coef * r.value, coef.abs() * r.est_error))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Estimate {
        value: compensated_sum(parts.iter().map(|p| p.0)),
        est_error: parts.iter().map(|p| p.1).sum(),
    })
}

fn check_support(n: u32, tf: &TestFunction) -> Result<()> {
    let limit = 2.0 / n as f64;
    if tf.support() > limit * (1.0 + SUPPORT_SLACK) {
        return Err(Error::SupportTooWide { support: tf.support(), limit });
    }
    Ok(())
}

/// n-th centered moment for a sign-split group with `a = n/2`.
pub fn centered_moment(n: u32, tf: &TestFunction, group: SymmetryGroup, quad: &QuadratureSpec) -> Result<MomentValue> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("centered moments are taken at even n >= 2, got {n}")));
    }
    centered_moment_with(n, n / 2, tf, group, quad)
}

/// Centered moment with an explicit `a`. Odd `n` is accepted for
/// diagnostics; its main term vanishes.
pub fn centered_moment_with(
    n: u32,
    a: u32,
    tf: &TestFunction,
    group: SymmetryGroup,
    quad: &QuadratureSpec,
) -> Result<MomentValue> {
    let sign = group
        .moment_sign()
        .ok_or(Error::UnsupportedGroup { operation: "centered moment", group: "O" })?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("centered moments need n >= 2, got {n}")));
    }
    check_support(n, tf)?;
    let s = s_value(n, a, tf, quad)?;
    MomentValue::from_parts(n, sigma_sq(tf, quad)?, s, sign)
}
