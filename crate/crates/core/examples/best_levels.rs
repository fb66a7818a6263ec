//! Lowest bound for each rank, searching level 1 and the even levels up to 20.

use vanishing_bounds::bounds::{best_level_table, SearchOptions};
use vanishing_bounds::report::level_label;
use vanishing_bounds::{QuadratureSpec, SymmetryGroup, TfChoice};

fn main() -> vanishing_bounds::Result<()> {
    let quad = QuadratureSpec::default().with_tol(1e-8);
    for choice in [TfChoice::Naive, TfChoice::Optimal] {
        for (group, ranks) in [
            (SymmetryGroup::SOEven, (2..=20).step_by(2).collect::<Vec<u32>>()),
            (SymmetryGroup::SOOdd, (1..=21).step_by(2).collect()),
        ] {
            println!("{group}, {} moments", choice.name());
            for row in best_level_table(group, &ranks, choice, SearchOptions::default(), &quad)? {
                println!("{:>5} {:>5} {:>16.8e}  {}", row.rank, level_label(row.level), row.bound, row.tf_kind);
            }
            println!();
        }
    }
    Ok(())
}
