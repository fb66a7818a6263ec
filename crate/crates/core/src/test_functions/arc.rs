//! Exact evaluation of the optimal Fourier pair.
//!
//! `f0(t) = cos(|t|/2 - a) / b` on `[-1, 1]`. Its autocorrelation is, on each
//! of `[0, 1]` and `[1, 2]`, a finite sum of terms `(p + q y) cos(y/2 + c)`,
//! so every integral of it against `e^{i w y}` has an elementary antiderivative.
//! The antiderivatives are evaluated through `(e^z - 1)/z` and
//! `(z e^z - e^z + 1)/z^2`, switching to their power series near `z = 0`
//! where the closed forms cancel.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::SERIES_THRESHOLD;

/// `∫_0^1 e^{z s} ds = (e^z - 1) / z`.
pub(crate) fn exp_ratio(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_THRESHOLD {
        // sum z^n / (n + 1)!
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for n in 1..24 {
            term = term * z / (n as f64 + 1.0);
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `∫_0^1 s e^{z s} ds = (z e^z - e^z + 1) / z^2`.
pub(crate) fn ramp_exp_ratio(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_THRESHOLD {
        // sum z^n / (n! (n + 2))
        let mut power = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.5, 0.0);
        for n in 1..24 {
            power = power * z / n as f64;
            acc += power / (n as f64 + 2.0);
        }
        acc
    } else {
        let e = z.exp();
        (z * e - e + 1.0) / (z * z)
    }
}

/// `∫_lo^hi (p + q y) e^{i k y} dy`.
pub(crate) fn linear_exp_integral(p: f64, q: f64, k: f64, lo: f64, hi: f64) -> Complex64 {
    let len = hi - lo;
    if len == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let z = Complex64::new(0.0, k * len);
    let phase = Complex64::from_polar(1.0, k * lo);
    phase * len * ((p + q * lo) * exp_ratio(z) + q * len * ramp_exp_ratio(z))
}

/// `(p + q y) cos(y / 2 + c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CosTerm {
    pub p: f64,
    pub q: f64,
    pub c: f64,
}

impl CosTerm {
    fn eval(&self, y: f64) -> f64 {
        (self.p + self.q * y) * (0.5 * y + self.c).cos()
    }

    /// `∫_lo^hi term(y) e^{i w y} dy`.
    fn fourier(&self, w: f64, lo: f64, hi: f64) -> Complex64 {
        let plus = Complex64::from_polar(1.0, self.c) * linear_exp_integral(self.p, self.q, w + 0.5, lo, hi);
        let minus = Complex64::from_polar(1.0, -self.c) * linear_exp_integral(self.p, self.q, w - 0.5, lo, hi);
        0.5 * (plus + minus)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Piece {
    lo: f64,
    hi: f64,
    terms: Vec<CosTerm>,
}

/// The optimal pair at its native support 2, with the cosine-arc parameters
/// `(a, b)` of one symmetry group.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct OptimalProfile {
    pub a: f64,
    pub b: f64,
    pieces: [Piece; 2],
}

impl OptimalProfile {
    pub fn new(a: f64, b: f64) -> Self {
        let s = 1.0 / (b * b);
        // Autocorrelation of f0, derived by splitting the convolution at the
        // kinks t = 0 and t = y:
        //   [0,1]: (1-y) cos(y/2) + 2 cos(2a - 1/2) sin((1-y)/2)
        //          + (y/2) cos(y/2 - 2a) + sin(y/2)
        //   [1,2]: (1 - y/2) cos(y/2 - 2a) + sin(1 - y/2)
        // with sin(θ) written as cos(θ - π/2).
        let inner = Piece {
            lo: 0.0,
            hi: 1.0,
            terms: vec![
                CosTerm { p: s, q: -s, c: 0.0 },
                CosTerm { p: 2.0 * s * (2.0 * a - 0.5).cos(), q: 0.0, c: FRAC_PI_2 - 0.5 },
                CosTerm { p: 0.0, q: 0.5 * s, c: -2.0 * a },
                CosTerm { p: s, q: 0.0, c: -FRAC_PI_2 },
            ],
        };
        let outer = Piece {
            lo: 1.0,
            hi: 2.0,
            terms: vec![
                CosTerm { p: s, q: -0.5 * s, c: -2.0 * a },
                CosTerm { p: s, q: 0.0, c: FRAC_PI_2 - 1.0 },
            ],
        };
        OptimalProfile { a, b, pieces: [inner, outer] }
    }

    /// `∫_{-1}^{1} f0(t) e^{-2πixt} dt`, real because f0 is even.
    pub fn f0_hat(&self, x: f64) -> f64 {
        let w = 2.0 * PI * x;
        let rot = Complex64::from_polar(1.0, -self.a);
        let sum = rot * (exp_ratio(Complex64::new(0.0, 0.5 + w)) + exp_ratio(Complex64::new(0.0, 0.5 - w)));
        sum.re / self.b
    }

    pub fn phi(&self, x: f64) -> f64 {
        let t = self.f0_hat(x);
        t * t
    }

    pub fn phi_hat(&self, y: f64) -> f64 {
        let y = y.abs();
        self.pieces
            .iter()
            .find(|p| y >= p.lo && y <= p.hi)
            .map(|p| p.terms.iter().map(|t| t.eval(y)).sum())
            .unwrap_or(0.0)
    }

    /// `2 ∫_0^2 φ̂(y) e^{2πixy} dy`.
    pub fn inner_transform(&self, x: f64) -> Complex64 {
        let w = 2.0 * PI * x;
        let mut acc = Complex64::new(0.0, 0.0);
        for piece in &self.pieces {
            for term in &piece.terms {
                acc += term.fourier(w, piece.lo, piece.hi);
            }
        }
        2.0 * acc
    }

    /// `∫_lo^hi φ̂(y) dy` for `0 <= lo <= hi`.
    pub fn hat_integral(&self, lo: f64, hi: f64) -> f64 {
        let mut acc = 0.0;
        for piece in &self.pieces {
            let l = lo.max(piece.lo);
            let h = hi.min(piece.hi);
            if l < h {
                for term in &piece.terms {
                    acc += term.fourier(0.0, l, h).re;
                }
            }
        }
        acc
    }
}
