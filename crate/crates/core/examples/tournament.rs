//! Plays a questioner against an adversary and prints the forcing-bound rows.
//!
//! Usage: `cargo run --release --example tournament -- [adversary] [questioner] [n] [games] [seed]`
//! (defaults: `doublestar random 20 100 0`).

use std::time::Instant;

use treeprobe::harness::{run_tournament, AdversaryId, QuestionerId};

fn main() -> treeprobe::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let adversary: AdversaryId = arg(0, "doublestar").parse()?;
    let questioner: QuestionerId = arg(1, "random").parse()?;
    let n: usize = arg(2, "20").parse().expect("n is a number");
    let games: usize = arg(3, "100").parse().expect("games is a number");
    let seed: u64 = arg(4, "0").parse().expect("seed is a number");

    let start = Instant::now();
    let report = run_tournament(adversary, questioner, n, games, seed)?;
    print!("{report}");
    println!("{games} games in {:.2}s", start.elapsed().as_secs_f64());
    Ok(())
}
