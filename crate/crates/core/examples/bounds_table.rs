//! Checks every row of the bounds table and prints it.
//!
//! Usage: `cargo run --release --example bounds_table -- [seed]`.

use treeprobe::harness::{verify_bounds_table, BoundsConfig};

fn main() -> treeprobe::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map_or(0, |s| s.parse().expect("seed is a number"));
    let report = verify_bounds_table(&BoundsConfig {
        seed,
        ..BoundsConfig::default()
    })?;
    print!("{report}");
    println!("{} rows, {} failing", report.rows.len(), report.failures().count());
    Ok(())
}
