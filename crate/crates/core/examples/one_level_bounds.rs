//! One-level density bounds for every rank, naive against optimal.
//!
//! ```text
//! cargo run --example one_level_bounds
//! ```

use vanishing_bounds::bounds::{g_one_level, one_level_bound};
use vanishing_bounds::{SymmetryGroup, TestFunction};

fn main() -> vanishing_bounds::Result<()> {
    let naive = TestFunction::naive(2.0)?;
    for group in [SymmetryGroup::SOEven, SymmetryGroup::SOOdd] {
        let optimal = TestFunction::optimal(group)?;
        println!(
            "{group}: g/phi(0) naive {:.7}, optimal {:.7}",
            g_one_level(group, &naive) / naive.phi_zero(),
            g_one_level(group, &optimal) / optimal.phi_zero()
        );
        println!("{:>5} {:>12} {:>12}", "rank", "naive", "optimal");
        for rank in (1..=21).filter(|&r| group.admits_rank(r)) {
            let a = one_level_bound(group, rank, &naive)?;
            let b = one_level_bound(group, rank, &optimal)?;
            println!("{rank:>5} {:>12.8} {:>12.8}", a.bound, b.bound);
        }
        println!();
    }
    let o = one_level_bound(SymmetryGroup::O, 3, &naive)?;
    println!("O, rank 3: {:.8}", o.bound);
    Ok(())
}
