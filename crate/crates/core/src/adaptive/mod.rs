//! Adaptive questioners: each drives a [`DistanceOracle`](crate::session::DistanceOracle)
//! and reports its result with the number of distinct queries it spent.
//!
//! Every arbitrary choice (the start vertex, which neighbor to skip, scan
//! order) resolves to the smallest index, so runs are reproducible.

mod diameter;
mod reconstruct;
mod spider;

pub use diameter::{find_diameter_pair, DiameterResult};
pub use reconstruct::{reconstruct_tree, reconstruction_ceiling, ReconstructionResult};
pub use spider::{identify_spider, spider_ceiling};

/// Query ceiling of [`find_diameter_pair`]: `2n - 4` for `n >= 4`, else `n - 1`.
pub fn diameter_ceiling(n: usize) -> usize {
    if n >= 4 {
        2 * n - 4
    } else {
        n.saturating_sub(1)
    }
}
