//! Centered moments of the n-level density at support 2/n.
//!
//! Pass `optimal` to use the optimal pair instead of the naive one.

use vanishing_bounds::moments::centered_moment;
use vanishing_bounds::{QuadratureSpec, SymmetryGroup, TestFunction, TfKind};

fn main() -> vanishing_bounds::Result<()> {
    let optimal = std::env::args().nth(1).as_deref() == Some("optimal");
    let quad = QuadratureSpec::default().with_tol(1e-8);
    println!("{:>3} {:>14} {:>14} {:>16} {:>16} {:>9}", "n", "sigma^2", "S(n,n/2)", "SO(even)", "SO(odd)", "err");
    for n in (2..=20).step_by(2) {
        let kind = if optimal { TfKind::OptimalEven } else { TfKind::Naive };
        let even_tf = TestFunction::new(kind, 2.0 / n as f64)?;
        let even = centered_moment(n, &even_tf, SymmetryGroup::SOEven, &quad)?;
        let kind = if optimal { TfKind::OptimalOdd } else { TfKind::Naive };
        let odd_tf = TestFunction::new(kind, 2.0 / n as f64)?;
        let odd = centered_moment(n, &odd_tf, SymmetryGroup::SOOdd, &quad)?;
        println!(
            "{n:>3} {:>14.10} {:>14.6e} {:>16.9e} {:>16.9e} {:>9.1e}",
            even.sigma_sq, even.s_value, even.total, odd.total, even.est_error.max(odd.est_error)
        );
    }
    Ok(())
}
