//! Identifies a spider hidden by the spider adversary and audits the transcript.
//!
//! Usage: `cargo run --example spider -- [n]` (default 13).

use treeprobe::adaptive::{identify_spider, spider_ceiling};
use treeprobe::adversary::{pairwise_coverage_audit, spider_forcing_bound, AdversaryGame, SpiderAdversary};

fn main() -> treeprobe::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(13, |s| s.parse().expect("n is a number"));
    let mut game = AdversaryGame::new(SpiderAdversary::new(n, true)?);
    let r = identify_spider(&mut game)?;
    let (adversary, transcript, _) = game.into_parts();
    let roles = adversary.roles();
    println!("legs {:?}", roles.legs);
    println!("queries {} (ceiling {})", r.queries_used, spider_ceiling(n));
    println!(
        "middle-leaf answers of 3 before the spider was pinned down: {} (forced at least {})",
        adversary.cross_at_resolution().unwrap_or(0),
        spider_forcing_bound(n)
    );
    println!("identified correctly: {}", r.tree == roles.to_tree());
    println!(
        "every two legs met by a query: {}",
        pairwise_coverage_audit(&transcript, &roles)
    );
    Ok(())
}
