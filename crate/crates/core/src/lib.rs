//! Distance-query games on a hidden tree.
//!
//! A questioner asks for the hop distance between two vertices of an unknown
//! tree on `n` labeled vertices; an adversary answers. This crate provides
//! both sides of the game:
//!
//! * [`adaptive`]: questioner algorithms that find a maximum-distance pair,
//!   reconstruct the tree, or identify a hidden spider.
//! * [`adversary`]: answering strategies that force those algorithms to spend
//!   many queries, each with checkable internal invariants.
//! * [`nonadaptive`]: fixed query graphs together with their decoders and
//!   the lower-bound witness pair.
//! * [`solver`]: exact minimax values for tiny `n`.
//! * [`harness`]: exhaustive sweeps, tournaments and the bounds table.
//!
//! The substrate lives in [`tree`] (labeled trees, metrics, Prüfer
//! enumeration, canonical codes) and [`session`] (oracles and transcripts).

pub mod adaptive;
pub mod adversary;
pub mod error;
pub mod harness;
pub mod nonadaptive;
pub mod session;
pub mod solver;
pub mod tree;

pub use error::{ProbeError, Result};
pub use session::{check_consistency, AnsweredQueryGraph, DistanceOracle, QuerySession};
pub use tree::{LabeledTree, Vertex};
