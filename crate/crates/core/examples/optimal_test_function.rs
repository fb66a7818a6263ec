//! The optimal Fourier pair: closed forms checked against direct quadrature
//! of the defining convolution and transform.

use vanishing_bounds::test_functions::{f0, optimal_phi, optimal_phi_hat, sigma_sq};
use vanishing_bounds::{QuadratureSpec, SymmetryGroup, TestFunction};

fn main() -> vanishing_bounds::Result<()> {
    let quad = QuadratureSpec::default().with_tol(1e-12);
    for group in [SymmetryGroup::SOEven, SymmetryGroup::SOOdd] {
        let tf = TestFunction::optimal(group)?;
        let p = tf.f0_params().expect("optimal pair");
        println!("{group}: a = {:.10}, b = {:.10}", p.a, p.b);
        println!("  f0(0) = {:.10}, f0(1) = {:.10}", f0(group, 0.0)?, f0(group, 1.0)?);
        println!("  phi(0) = {:.10}, phi_hat(0) = {:.10}", tf.phi_zero(), tf.phi_hat(0.0));
        println!("  sigma^2 = {:.10}", sigma_sq(&tf, &quad)?);
        println!("  {:>6} {:>16} {:>10}   {:>6} {:>16} {:>10}", "y", "phi_hat", "diff", "x", "phi", "diff");
        for k in 0..=8 {
            let y = 0.25 * k as f64;
            let x = 0.2 * k as f64;
            let dy = tf.phi_hat(y) - optimal_phi_hat(group, y, &quad)?;
            let dx = tf.phi(x) - optimal_phi(group, x, &quad)?;
            println!("  {y:>6.2} {:>16.12} {dy:>10.1e}   {x:>6.2} {:>16.12} {dx:>10.1e}", tf.phi_hat(y), tf.phi(x));
        }
        let narrow = tf.with_support(0.5)?;
        println!("  dilated to support 0.5: phi(0) = {:.10}, mass = {:.10}\n", narrow.phi_zero(), narrow.hat_mass(1.0));
    }
    Ok(())
}
