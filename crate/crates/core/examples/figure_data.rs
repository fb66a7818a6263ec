//! Writes the rank × level grids behind figures 5 to 12 as CSV files.
//!
//! ```text
//! cargo run --example figure_data -- out/
//! ```

use std::path::PathBuf;

use vanishing_bounds::report::{cmd_plotdata, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figure-data".into()));
    std::fs::create_dir_all(&dir)?;
    let config = RunConfig::default();
    for id in 5..=12 {
        let out = cmd_plotdata(id, &config)?;
        let path = dir.join(format!("figure{id}.csv"));
        std::fs::write(&path, &out.text)?;
        println!("{} ({} rows)", path.display(), out.text.lines().count() - 1);
    }
    Ok(())
}
