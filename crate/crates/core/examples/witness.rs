//! Two trees that answer a sparse query graph identically but have different diameters.
//!
//! Usage: `cargo run --example witness -- [v] [a] [b] [c]`: vertex `v` of 13 misses
//! queries to `a`, `b`, `c` (defaults: `0 1 2 3`).

use treeprobe::nonadaptive::{lemi_witness, QueryGraphSpec};

fn main() -> treeprobe::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|s| s.parse().expect("a vertex")).collect();
    let [v, a, b, c] = <[usize; 4]>::try_from(args).unwrap_or([0, 1, 2, 3]);
    let spec = QueryGraphSpec::new(13, [(v, a), (v, b), (v, c)])?;
    let (t, t2) = lemi_witness(&spec)?;
    println!("T  = {:?}", t.edges());
    println!("T' = {:?}", t2.edges());
    println!(
        "same answers on all {} queried pairs: {}",
        spec.query_count(),
        spec.answers_from(&t)? == spec.answers_from(&t2)?
    );
    println!(
        "diameters {} and {}",
        t.distance_matrix().diameter(),
        t2.distance_matrix().diameter()
    );
    Ok(())
}
