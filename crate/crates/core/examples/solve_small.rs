//! Exact adaptive and non-adaptive values for tiny trees.
//!
//! Usage: `cargo run --release --example solve_small -- [max_n]` (default 5).

use std::time::Instant;

use treeprobe::solver::{solve_adaptive, solve_nonadaptive, Goal};

fn main() -> treeprobe::Result<()> {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    println!(
        "{:>3} {:>8} {:>6} {:>6} {:>9}",
        "n", "goal", "adapt", "nonad", "seconds"
    );
    for n in 2..=max_n {
        for goal in Goal::ALL {
            let start = Instant::now();
            let a = solve_adaptive(n, goal)?;
            let na = solve_nonadaptive(n, goal)?;
            println!(
                "{n:>3} {:>8} {a:>6} {na:>6} {:>9.2}",
                goal.name(),
                start.elapsed().as_secs_f64()
            );
        }
    }
    Ok(())
}
