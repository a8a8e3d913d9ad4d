//! Asks a fixed set of pairs up front, then decodes the tree, its shape and a maximum pair.
//!
//! Usage: `cargo run --example nonadaptive_decode -- [n] [seed]` (defaults: `14 0`; `n >= 13`).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treeprobe::nonadaptive::*;
use treeprobe::tree::random_tree;

fn main() -> treeprobe::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(14, |s| s.parse().expect("n is a number"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed is a number"));
    let hidden = random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed));

    let exact = build_reconstruction_query_graph(n)?;
    let tree = decode_exact(&exact, &exact.answers_from(&hidden)?)?;
    println!(
        "exact: {} of {} pairs asked, recovered: {}",
        exact.query_count(),
        n * (n - 1) / 2,
        tree == hidden
    );

    let sparse = build_min_degree_query_graph(n)?;
    let answers = sparse.answers_from(&hidden)?;
    let set = complete_missing_distances(&sparse, &answers, usize::MAX)?;
    let code = decode_isomorphism(&sparse, &answers)?;
    let (a, b, d) = find_max_distance_pair_nonadaptive(&sparse, &answers)?;
    println!(
        "shape: {} pairs asked, {} completions",
        sparse.query_count(),
        set.completions.len()
    );
    println!("  isomorphism class recovered: {}", code == hidden.canonical_code());
    println!(
        "  maximum pair ({a},{b}) at distance {d}; true diameter {}",
        hidden.distance_matrix().diameter()
    );
    Ok(())
}
