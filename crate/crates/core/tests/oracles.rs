//! Worked examples for each operation, checked against independent values:
//! exact closed forms, direct quadrature of defining integrals, or a second
//! evaluation path.

use std::f64::consts::PI;

use num_complex::Complex64;
use vanishing_bounds::bounds::{
    bound_at_least, g_one_level, mean_mu, moment_bound, one_level_bound, SearchOptions,
};
use vanishing_bounds::moments::{
    centered_moment, double_factorial, inner_transform, r_bruteforce, r_reduced, s_value, t_reduced,
};
use vanishing_bounds::quadrature::{adaptive_simpson, integrate_decaying, simpson};
use vanishing_bounds::test_functions::{
    f0, naive_phi, naive_phi_hat, optimal_phi, optimal_phi_hat, sigma_sq, F0Params,
};
use vanishing_bounds::{Error, QuadratureSpec, SymmetryGroup, TestFunction, TfChoice, TfKind};

fn quad(tol: f64) -> QuadratureSpec {
    QuadratureSpec::default().with_tol(tol)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

// test functions

#[test]
fn naive_phi_values() {
    assert_eq!(naive_phi(0.0, 1.0), 1.0);
    assert!(naive_phi(1.0, 1.0).abs() < 1e-30);
    // (sin(π/4) / (π/4))² = 8/π²
    assert!(close(naive_phi(0.25, 1.0), 8.0 / (PI * PI), 1e-12));
}

#[test]
fn naive_phi_hat_values() {
    assert_eq!(naive_phi_hat(0.0, 0.5), 2.0);
    assert_eq!(naive_phi_hat(1.0, 1.0), 0.0);
    assert_eq!(naive_phi_hat(0.5, 1.0), 0.5);
}

#[test]
fn f0_values() {
    let even = F0Params::for_group(SymmetryGroup::SOEven).unwrap();
    let b_even = 2f64.sqrt() * 0.25f64.sin() + ((PI + 1.0) / 4.0).sin();
    assert!(close(even.b, b_even, 1e-15));
    assert!(close(f0(SymmetryGroup::SOEven, 0.0).unwrap(), ((PI + 1.0) / 4.0).cos() / b_even, 1e-15));
    assert_eq!(f0(SymmetryGroup::SOEven, 1.5).unwrap(), 0.0);
    let b_odd = 3.0 * ((PI + 1.0) / 4.0).sin() - 2.0 * ((PI - 1.0) / 4.0).sin();
    assert!(close(f0(SymmetryGroup::SOOdd, 0.0).unwrap(), ((PI - 1.0) / 4.0).cos() / b_odd, 1e-15));
    assert!(f0(SymmetryGroup::O, 0.0).is_err());
}

#[test]
fn optimal_phi_hat_values() {
    let q = quad(1e-12);
    assert_eq!(optimal_phi_hat(SymmetryGroup::SOEven, 2.0, &q).unwrap(), 0.0);
    let a = optimal_phi_hat(SymmetryGroup::SOEven, -0.3, &q).unwrap();
    let b = optimal_phi_hat(SymmetryGroup::SOEven, 0.3, &q).unwrap();
    assert_eq!(a, b);
    let energy = adaptive_simpson(|t| f0(SymmetryGroup::SOOdd, t).unwrap().powi(2), -1.0, 1.0, &q).unwrap();
    assert!(close(optimal_phi_hat(SymmetryGroup::SOOdd, 0.0, &q).unwrap(), energy.value, 1e-11));
    assert!(optimal_phi_hat(SymmetryGroup::O, 0.0, &q).is_err());
}

#[test]
fn optimal_closed_form_matches_convolution_on_grid() {
    let q = quad(1e-12);
    for group in [SymmetryGroup::SOEven, SymmetryGroup::SOOdd] {
        let tf = TestFunction::optimal(group).unwrap();
        for k in 0..=400 {
            let y = -2.0 + 4.0 * k as f64 / 400.0;
            let direct = optimal_phi_hat(group, y, &q).unwrap();
            assert!(close(tf.phi_hat(y), direct, 1e-8), "{group} y = {y}");
        }
    }
}

#[test]
fn optimal_hat_mass_is_squared_f0_mass() {
    let q = quad(1e-12);
    for group in [SymmetryGroup::SOEven, SymmetryGroup::SOOdd] {
        let tf = TestFunction::optimal(group).unwrap();
        let mass = adaptive_simpson(|t| f0(group, t).unwrap(), -1.0, 1.0, &q).unwrap().value;
        let hat = adaptive_simpson(|y| tf.phi_hat(y), -2.0, 2.0, &q).unwrap().value;
        assert!(close(hat, mass * mass, 1e-8));
        assert!(close(tf.hat_mass(2.0), mass * mass, 1e-12));
    }
}

#[test]
fn optimal_phi_values() {
    let q = quad(1e-12);
    let tf = TestFunction::optimal(SymmetryGroup::SOEven).unwrap();
    assert_eq!(optimal_phi(SymmetryGroup::SOEven, -0.7, &q).unwrap(), optimal_phi(SymmetryGroup::SOEven, 0.7, &q).unwrap());
    // f0 jumps at ±1, so its transform decays like 1/x and φ like 1/x².
    let fit = (0..=100).map(|k| 20.0 + 0.1 * k as f64).map(|x| tf.phi(x) * x * x).fold(0.0, f64::max);
    for k in 0..=100 {
        let x = 50.0 + 0.1 * k as f64;
        assert!(tf.phi(x) <= 1.01 * fit / (x * x), "x = {x}");
    }
    let mass = adaptive_simpson(|t| f0(SymmetryGroup::SOOdd, t).unwrap(), -1.0, 1.0, &q).unwrap().value;
    assert!(close(optimal_phi(SymmetryGroup::SOOdd, 0.0, &q).unwrap(), mass * mass, 1e-11));
}

#[test]
fn printed_transform_display_is_the_square_of_f0_hat() {
    // 16 (sin a + sin(½ - a) cos ω - 2ω cos(½ - a) sin ω)² / (b - 16 b π² x²)², ω = 2πx,
    // which is φ = f̂0². Its removable singularities sit at 16π²x² = 1.
    for group in [SymmetryGroup::SOEven, SymmetryGroup::SOOdd] {
        let tf = TestFunction::optimal(group).unwrap();
        let F0Params { a, b } = tf.f0_params().unwrap();
        for &x in &[0.0, 0.05, 0.3, 0.9, 1.7, 4.2] {
            let w = 2.0 * PI * x;
            let num = a.sin() + (0.5 - a).sin() * w.cos() - 2.0 * w * (0.5 - a).cos() * w.sin();
            let den = b - 16.0 * b * PI * PI * x * x;
            assert!(close(tf.phi(x), 16.0 * num * num / (den * den), 1e-12), "{group} x = {x}");
        }
    }
}

#[test]
fn sigma_sq_values() {
    let q = quad(1e-12);
    for v in [1.0, 1.0 / 3.0] {
        assert!(close(sigma_sq(&TestFunction::naive(v).unwrap(), &q).unwrap(), 1.0 / 3.0, 1e-15));
    }
    // Simpson oracle for the naive closed form.
    let simpson_value = 4.0 * adaptive_simpson(|y| y * naive_phi_hat(y, 1.0).powi(2), 0.0, 1.0, &q).unwrap().value;
    assert!(close(simpson_value, 1.0 / 3.0, 1e-12));
    let tf = TestFunction::optimal(SymmetryGroup::SOEven).unwrap();
    let a = sigma_sq(&tf, &quad(1e-10)).unwrap();
    let b = sigma_sq(&tf, &quad(1e-10).with_panels(128)).unwrap();
    assert!(close(a, b, 1e-8));
}

// quadrature

#[test]
fn simpson_values() {
    assert!(close(simpson(|x| x * x * x, 0.0, 1.0, 2).unwrap(), 0.25, 1e-15));
    assert_eq!(simpson(|_| 1.0, -3.0, 5.0, 8).unwrap(), 8.0);
    let h: f64 = 0.25;
    let err = (simpson(|x| x.powi(4), 0.0, 1.0, 4).unwrap() - 0.2).abs();
    assert!(err <= h.powi(4) / 180.0 * 24.0);
    assert_eq!(simpson(|x| x, 0.0, 1.0, 5), Err(Error::OddPanels(5)));
}

#[test]
fn adaptive_simpson_values() {
    let r = adaptive_simpson(f64::sin, 0.0, PI, &quad(1e-10)).unwrap();
    assert!(close(r.value, 2.0, 1e-10));
    let r = adaptive_simpson(|x| x * x * x, -0.3, 1.9, &quad(1e-10).with_panels(2)).unwrap();
    assert_eq!(r.panels_used, 4);
    let f = |x: f64| naive_phi(x, 1.0).powi(2);
    let r = adaptive_simpson(f, 0.0, 1.0, &quad(1e-10)).unwrap();
    let reference = simpson(f, 0.0, 1.0, 1_000_000).unwrap();
    assert!(close(r.value, reference, 1e-9));
}

#[test]
fn integrate_decaying_values() {
    let spec = quad(1e-5).with_radius(200.0).with_decay(4.0);
    let r = integrate_decaying(|x| 1.0 / (1.0 + x * x).powi(2), &spec).unwrap();
    assert!(close(r.value, PI / 2.0, 1e-6));

    let bump = |x: f64| if x.abs() < 3.0 { (9.0 - x * x).powi(2) } else { 0.0 };
    let r = integrate_decaying(bump, &quad(1e-10).with_radius(10.0)).unwrap();
    assert!(close(r.value, 2.0 * (243.0 - 162.0 + 243.0 / 5.0), 1e-9));
    assert!(r.est_error < 1e-10);

    let f = |x: f64| {
        let t = 2.0 * PI * x;
        naive_phi(x, 1.0) * if x == 0.0 { 1.0 } else { t.sin() / t }
    };
    let spec = quad(1e-7).with_decay(3.0);
    let a = integrate_decaying(f, &spec).unwrap();
    let b = integrate_decaying(f, &spec.with_radius(1000.0)).unwrap();
    assert!(close(a.value, b.value, 1e-7));
}

// moments

#[test]
fn double_factorial_values() {
    assert_eq!(double_factorial(5).unwrap(), 15);
    assert_eq!(double_factorial(6).unwrap(), 48);
    assert_eq!(double_factorial(1).unwrap(), 1);
}

#[test]
fn inner_transform_values() {
    let q = quad(1e-12);
    let tf = TestFunction::naive(1.0).unwrap();
    assert_eq!(inner_transform(&tf, 0.0, &q).unwrap(), Complex64::new(1.0, 0.0));
    let half = TestFunction::naive(0.5).unwrap();
    let x = 0.7;
    let closed = inner_transform(&half, x, &q).unwrap();
    let w = 2.0 * PI * x;
    let re = adaptive_simpson(|y| naive_phi_hat(y, 0.5) * (w * y).cos(), 0.0, 0.5, &q).unwrap().value;
    let im = adaptive_simpson(|y| naive_phi_hat(y, 0.5) * (w * y).sin(), 0.0, 0.5, &q).unwrap().value;
    assert!(close(closed.re, 2.0 * re, 1e-10) && close(closed.im, 2.0 * im, 1e-10));
    // e^{-2πixy} in the defining integral gives the conjugate.
    let im_neg = adaptive_simpson(|y| -naive_phi_hat(y, 0.5) * (w * y).sin(), 0.0, 0.5, &q).unwrap().value;
    assert!(close(closed.conj().im, 2.0 * im_neg, 1e-10));
    // Optimal kinds go through quadrature; compare with the exact transform.
    let opt = TestFunction::optimal(SymmetryGroup::SOOdd).unwrap().with_support(0.5).unwrap();
    let a = inner_transform(&opt, 1.3, &q).unwrap();
    assert!((a - opt.inner_transform(1.3)).norm() < 1e-10);
}

#[test]
fn r_reduced_values() {
    let q = quad(1e-10);
    let tf = TestFunction::naive(1.0).unwrap();
    let r = r_reduced(2, 1, &tf, &q).unwrap();
    assert!(close(r.value, 1.0 / 12.0, 1e-10));
    // Plain Simpson of 1 - 2 ∫ φ² sin(2πx)/(2πx) dx over a long range.
    let f = |x: f64| {
        let t = 2.0 * PI * x;
        naive_phi(x, 1.0).powi(2) * if x == 0.0 { 1.0 } else { t.sin() / t }
    };
    let direct = 1.0 - 2.0 * 2.0 * simpson(f, 0.0, 400.0, 400_000).unwrap();
    assert!(close(direct, 1.0 / 12.0, 1e-8));

    for v in [1.0, 0.5] {
        let tf = TestFunction::naive(v).unwrap();
        let a = r_reduced(1, 1, &tf, &quad(1e-9)).unwrap();
        let b = r_bruteforce(1, 1, &tf, &quad(1e-9)).unwrap();
        assert!(close(a.value, b.value, 1e-8));
    }
    // The l = 0 term alone is the i = 1 sum.
    let tf = TestFunction::naive(0.5).unwrap();
    let t0 = t_reduced(4, 0, &tf, &q).unwrap().value;
    let r41 = r_reduced(4, 1, &tf, &q).unwrap().value;
    assert!(close(r41, -8.0 * (t0 - 0.5), 1e-12));
}

#[test]
fn r_bruteforce_values() {
    let q = quad(1e-9);
    for (m, i, v) in [(2, 1, 1.0), (3, 2, 0.5), (4, 2, 0.5)] {
        let tf = TestFunction::naive(v).unwrap();
        let a = r_reduced(m, i, &tf, &q).unwrap();
        let b = r_bruteforce(m, i, &tf, &q).unwrap();
        assert!(close(a.value, b.value, 1e-6), "R({m},{i}) at v = {v}: {} vs {}", a.value, b.value);
    }
    let tf = TestFunction::naive(0.5).unwrap();
    assert_eq!(r_bruteforce(6, 4, &tf, &q), Err(Error::DimensionTooLarge(4)));
}

#[test]
fn s_value_values() {
    let q = quad(1e-10);
    let s = s_value(2, 1, &TestFunction::naive(1.0).unwrap(), &q).unwrap();
    assert!(close(s.value, 1.0 / 12.0, 1e-10));
    let half = TestFunction::naive(0.5).unwrap();
    let s = s_value(4, 2, &half, &q).unwrap().value;
    assert!(close(s, r_reduced(4, 2, &half, &q).unwrap().value, 1e-12));
    let third = TestFunction::naive(1.0 / 3.0).unwrap();
    let s = s_value(6, 3, &third, &q).unwrap().value;
    let by_terms = r_reduced(6, 3, &third, &q).unwrap().value
        + 30.0 * r_reduced(4, 1, &third, &q).unwrap().value * (1.0 / 3.0) / 2.0;
    assert!(close(s, by_terms, 1e-9));
}

#[test]
fn s_four_two_matches_independent_plancherel_value() {
    // Independent value from the Fourier side: 0.038095238... (= 4/105).
    let s = s_value(4, 2, &TestFunction::naive(0.5).unwrap(), &quad(1e-11)).unwrap();
    assert!(close(s.value, 4.0 / 105.0, 1e-9), "{}", s.value);
}

#[test]
fn centered_moment_values() {
    let q = quad(1e-10);
    let tf = TestFunction::naive(1.0).unwrap();
    let even = centered_moment(2, &tf, SymmetryGroup::SOEven, &q).unwrap();
    assert!(close(even.total, 5.0 / 12.0, 1e-10));
    let odd = centered_moment(2, &tf, SymmetryGroup::SOOdd, &q).unwrap();
    assert!(close(odd.total, 0.25, 1e-10));
    let half = TestFunction::naive(0.5).unwrap();
    let m4 = centered_moment(4, &half, SymmetryGroup::SOEven, &q).unwrap();
    let via_brute = r_bruteforce(4, 2, &half, &q).unwrap();
    assert!(close(m4.total, 3.0 / 9.0 + via_brute.value, 1e-6));
    assert!(matches!(centered_moment(4, &tf, SymmetryGroup::SOEven, &q), Err(Error::SupportTooWide { .. })));
}

// bounds

#[test]
fn mean_mu_values() {
    assert_eq!(mean_mu(&TestFunction::naive(1.0).unwrap()).unwrap(), 1.5);
    assert_eq!(mean_mu(&TestFunction::naive(0.5).unwrap()).unwrap(), 2.5);
    assert!(matches!(mean_mu(&TestFunction::naive(2.0).unwrap()), Err(Error::SupportTooWide { .. })));
    // Optimal kinds: exact pieces against quadrature of the definition.
    let q = quad(1e-12);
    let tf = TestFunction::optimal(SymmetryGroup::SOEven).unwrap().with_support(0.5).unwrap();
    let mass = adaptive_simpson(|y| tf.phi_hat(y), -0.5, 0.5, &q).unwrap().value;
    assert!(close(mean_mu(&tf).unwrap(), tf.phi_hat(0.0) + 0.5 * mass, 1e-11));
}

#[test]
fn g_values() {
    let tf = TestFunction::naive(2.0).unwrap();
    assert!(close(g_one_level(SymmetryGroup::SOEven, &tf), 7.0 / 8.0, 1e-15));
    assert!(close(g_one_level(SymmetryGroup::SOOdd, &tf), 9.0 / 8.0, 1e-15));
    assert!(close(g_one_level(SymmetryGroup::O, &tf), 1.0, 1e-15));
}

#[test]
fn one_level_values() {
    let naive = TestFunction::naive(2.0).unwrap();
    assert!(close(one_level_bound(SymmetryGroup::SOEven, 2, &naive).unwrap().bound, 0.4375, 1e-15));
    let odd = TestFunction::optimal(SymmetryGroup::SOOdd).unwrap();
    assert!(close(one_level_bound(SymmetryGroup::SOOdd, 9, &odd).unwrap().bound, 0.12383838, 5e-4));
    let even = TestFunction::optimal(SymmetryGroup::SOEven).unwrap();
    let b = one_level_bound(SymmetryGroup::SOEven, 2, &even).unwrap();
    assert!(close(b.bound, 0.43231300, 5e-4));
    assert!(close(2.0 * b.bound, 0.8645, 5e-4));
}

#[test]
fn moment_bound_values() {
    let q = quad(1e-10);
    let tf = TestFunction::naive(1.0).unwrap();
    let b = moment_bound(SymmetryGroup::SOOdd, 3, 2, &tf, &q).unwrap();
    assert!(close(b.numerator, 0.25, 1e-10) && b.denom_base == 1.5);
    assert!(close(b.bound, 1.0 / 9.0, 1e-10));
    let b = moment_bound(SymmetryGroup::SOEven, 4, 2, &tf, &q).unwrap();
    assert!(close(b.numerator, 5.0 / 12.0, 1e-10) && b.denom_base == 2.5);
    assert!(close(b.bound, 1.0 / 15.0, 1e-10));
    let b = moment_bound(SymmetryGroup::SOOdd, 5, 2, &tf, &q).unwrap();
    assert!(close(b.bound, 1.0 / 49.0, 1e-10));
    assert!((b.bound - 0.020408300).abs() / 0.020408300 < 1e-5);
}

#[test]
fn bound_at_least_values() {
    let q = quad(1e-8);
    let opts = SearchOptions::default();
    let b = bound_at_least(SymmetryGroup::SOOdd, 7, TfChoice::Naive, opts, &q).unwrap();
    assert_eq!(b.level, Some(6));
    assert!((b.bound - 0.000292790).abs() / 0.000292790 < 0.01);
    let b = bound_at_least(SymmetryGroup::SOOdd, 1, TfChoice::Naive, opts, &q).unwrap();
    assert_eq!((b.level, b.bound), (None, 1.0));
    // The printed rank-6 SO(even) value reads 0.003346510; the search gives
    // level 6 with 0.0023465..., one leading digit apart.
    let b = bound_at_least(SymmetryGroup::SOEven, 6, TfChoice::Naive, opts, &q).unwrap();
    assert_eq!(b.level, Some(6));
    assert!((b.bound - 0.0023465074).abs() < 1e-9);
    assert_eq!(b.tf_kind, TfKind::Naive);
}
