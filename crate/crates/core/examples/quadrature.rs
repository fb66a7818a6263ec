//! Adaptive Simpson on finite intervals and truncated infinite ranges.

use vanishing_bounds::quadrature::{adaptive_simpson, integrate_decaying, CompensatedSum};
use vanishing_bounds::QuadratureSpec;

fn main() -> vanishing_bounds::Result<()> {
    let spec = QuadratureSpec::default().with_tol(1e-12);
    let r = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, &spec)?;
    println!("int_0^pi sin = {:.15} (err {:.1e}, {} panels)", r.value, r.est_error, r.panels_used);

    // (sin(pi x) / (pi x))^2 over the line has integral 1 and decays like x^-2.
    let sinc2 = |x: f64| {
        let u = std::f64::consts::PI * x;
        if u == 0.0 { 1.0 } else { (u.sin() / u).powi(2) }
    };
    let r = integrate_decaying(sinc2, &spec.with_tol(1e-3).with_decay(2.0))?;
    println!("int sinc^2 = {:.10} (err {:.1e}, truncated at {})", r.value, r.est_error, spec.truncation_radius);

    let r = integrate_decaying(|x| sinc2(x).powi(2), &spec.with_tol(1e-9).with_decay(4.0))?;
    println!("int sinc^4 = {:.12}, exact 2/3", r.value);

    let mut acc = CompensatedSum::new();
    let mut plain = 0.0;
    for k in 1..=1_000_000u32 {
        let t = 1.0 / (k as f64 * k as f64);
        acc += t;
        plain += t;
    }
    let exact = std::f64::consts::PI.powi(2) / 6.0 - 1.0 / 1_000_000.5;
    println!("sum 1/k^2: compensated err {:.1e}, plain err {:.1e}", acc.value() - exact, plain - exact);
    Ok(())
}
