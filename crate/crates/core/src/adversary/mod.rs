//! Answering strategies that force questioners to spend many queries.
//!
//! Each strategy implements [`Adversary`]. [`AdversaryGame`] wraps one into a
//! [`DistanceOracle`], so the questioners in [`crate::adaptive`] play against
//! it unchanged. Free information (declarations, role partitions, revealed
//! pairs) travels next to the answers and never counts as a query.

mod audit;
mod augment;
mod double_star;
mod dsu;
mod layered;
mod matching;
mod spider;

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{ProbeError, Result};
use crate::session::{AnsweredQueryGraph, DistanceOracle};
use crate::tree::{LabeledTree, Vertex};

pub use audit::pairwise_coverage_audit;
pub use augment::{three_components_augment, AugmentCase, Augmentation};
pub use double_star::{side_distance, DoubleStarAdversary};
pub use layered::{layered_forcing_bound, LayeredAdversary};
pub use matching::{leaf_saturating_matching, Bipartite};
pub use spider::{spider_forcing_bound, SpiderAdversary};

/// Information handed to the questioner for free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FreeInfo {
    /// The hidden tree is a double star with these adjacent centers, or a real caterpillar.
    Declaration { centers: (Vertex, Vertex) },
    /// The hidden tree has this center, these middles and these leaves.
    RolePartition {
        center: Vertex,
        middles: Vec<Vertex>,
        leaves: Vec<Vertex>,
    },
    /// Pairs whose answers are given away, as `(a, b, distance)`.
    Revealed { pairs: Vec<(Vertex, Vertex, u32)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reply {
    pub distance: u32,
    pub free_info: Option<FreeInfo>,
}

impl Reply {
    fn plain(distance: u32) -> Self {
        Self {
            distance,
            free_info: None,
        }
    }
}

/// One answering strategy.
pub trait Adversary {
    fn n(&self) -> usize;

    /// Free information announced before the first query.
    fn opening(&self) -> Option<FreeInfo> {
        None
    }

    /// Answers a fresh pair. Callers deduplicate repeated pairs.
    fn answer(&mut self, x: Vertex, y: Vertex) -> Result<Reply>;

    /// True once the strategy's game is decided: for the double-star
    /// strategy, no real caterpillar is consistent any more; for the others,
    /// only one tree of the announced family remains.
    fn resolved(&self) -> bool;

    /// A tree consistent with every answer and every piece of free information so far.
    fn witness(&self) -> LabeledTree;
}

/// One logged query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameEvent {
    pub pair: (Vertex, Vertex),
    pub answer: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub free_info: Option<FreeInfo>,
    /// Distinct queries asked so far, this one included.
    pub count: usize,
}

/// An adversary seen as a distance oracle, with a transcript and an event log.
#[derive(Debug, Clone)]
pub struct AdversaryGame<A> {
    adversary: A,
    transcript: AnsweredQueryGraph,
    log: Vec<GameEvent>,
    resolved_at: Option<usize>,
}

impl<A: Adversary> AdversaryGame<A> {
    pub fn new(adversary: A) -> Self {
        let transcript = AnsweredQueryGraph::new(adversary.n());
        let resolved_at = adversary.resolved().then_some(0);
        Self {
            adversary,
            transcript,
            log: Vec::new(),
            resolved_at,
        }
    }

    pub fn adversary(&self) -> &A {
        &self.adversary
    }

    pub fn opening(&self) -> Option<FreeInfo> {
        self.adversary.opening()
    }

    pub fn log(&self) -> &[GameEvent] {
        &self.log
    }

    pub fn resolved(&self) -> bool {
        self.resolved_at.is_some()
    }

    /// Query count at which the adversary first reported the game decided.
    pub fn resolved_at(&self) -> Option<usize> {
        self.resolved_at
    }

    /// Writes the event log as JSON lines.
    pub fn write_log<W: Write>(&self, mut out: W) -> Result<()> {
        for event in &self.log {
            serde_json::to_writer(&mut out, event)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn into_parts(self) -> (A, AnsweredQueryGraph, Vec<GameEvent>) {
        (self.adversary, self.transcript, self.log)
    }
}

impl<A: Adversary> DistanceOracle for AdversaryGame<A> {
    fn n(&self) -> usize {
        self.adversary.n()
    }

    fn ask(&mut self, x: Vertex, y: Vertex) -> Result<u32> {
        check_pair(self.n(), x, y)?;
        if let Some(d) = self.transcript.get(x, y) {
            return Ok(d);
        }
        let reply = self.adversary.answer(x, y)?;
        self.transcript.insert(x, y, reply.distance)?;
        let count = self.transcript.len();
        self.log.push(GameEvent {
            pair: (x, y),
            answer: reply.distance,
            free_info: reply.free_info,
            count,
        });
        if self.resolved_at.is_none() && self.adversary.resolved() {
            self.resolved_at = Some(count);
        }
        Ok(reply.distance)
    }

    fn queries_used(&self) -> usize {
        self.transcript.len()
    }

    fn transcript(&self) -> &AnsweredQueryGraph {
        &self.transcript
    }
}

fn check_pair(n: usize, x: Vertex, y: Vertex) -> Result<()> {
    for v in [x, y] {
        if v >= n {
            return Err(ProbeError::OutOfRange { vertex: v, n });
        }
    }
    if x == y {
        return Err(ProbeError::Domain(format!("query ({x},{x}) names one vertex twice")));
    }
    Ok(())
}

/// Role of a vertex in the center/middle/leaf families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Center,
    Middle(usize),
    Leaf(usize),
}

/// Splits `placement` into center, `k` middles and the remaining leaves.
fn split_roles(n: usize, placement: &[Vertex], k: usize) -> Result<(Vertex, Vec<Vertex>, Vec<Vertex>, Vec<Role>)> {
    let mut seen = vec![false; n];
    if placement.len() != n
        || placement
            .iter()
            .any(|&v| v >= n || std::mem::replace(&mut seen[v], true))
    {
        return Err(ProbeError::Domain(format!("placement must be a permutation of 0..{n}")));
    }
    let center = placement[0];
    let middles = placement[1..=k].to_vec();
    let leaves = placement[k + 1..].to_vec();
    let mut role = vec![Role::Center; n];
    for (i, &m) in middles.iter().enumerate() {
        role[m] = Role::Middle(i);
    }
    for (j, &w) in leaves.iter().enumerate() {
        role[w] = Role::Leaf(j);
    }
    Ok((center, middles, leaves, role))
}
