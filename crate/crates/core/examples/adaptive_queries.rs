//! Finds a maximum-distance pair and then the whole tree, on one random tree.
//!
//! Usage: `cargo run --example adaptive_queries -- [n] [seed]` (defaults: `30 0`).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treeprobe::adaptive::{diameter_ceiling, find_diameter_pair, reconstruct_tree, reconstruction_ceiling};
use treeprobe::tree::random_tree;
use treeprobe::QuerySession;

fn main() -> treeprobe::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(30, |s| s.parse().expect("n is a number"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed is a number"));
    let hidden = random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed));

    let mut session = QuerySession::new(hidden.clone(), None);
    let d = find_diameter_pair(&mut session)?;
    println!(
        "maximum pair {:?} at distance {} after {} queries (ceiling {})",
        d.pair,
        d.distance,
        d.queries_used,
        diameter_ceiling(n)
    );

    let mut session = QuerySession::new(hidden.clone(), None);
    let r = reconstruct_tree(&mut session)?;
    println!(
        "reconstructed {} edges after {} queries (ceiling {}); matches: {}",
        r.tree.edges().len(),
        r.queries_used,
        reconstruction_ceiling(n),
        r.tree == hidden
    );
    Ok(())
}
