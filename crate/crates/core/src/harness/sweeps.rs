use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{BoundRow, BoundsReport, Direction};
use crate::adaptive::{
    diameter_ceiling, find_diameter_pair, identify_spider, reconstruct_tree, reconstruction_ceiling, spider_ceiling,
};
use crate::error::{ProbeError, Result};
use crate::nonadaptive::{
    build_min_degree_query_graph, build_reconstruction_query_graph, complete_missing_distances, decode_exact,
    QueryGraphSpec, DEFAULT_MAX_SOLUTIONS,
};
use crate::session::QuerySession;
use crate::tree::{random_spider, random_tree, tree_at_index, tree_count, LabeledTree, SpiderRoles};

/// Algorithms the sweeps can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmId {
    Diameter,
    Reconstruct,
    Spider,
    DecodeExact,
    /// Isomorphism class and maximum-distance pair from the min-degree query graph.
    DecodeIso,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 5] = [
        AlgorithmId::Diameter,
        AlgorithmId::Reconstruct,
        AlgorithmId::Spider,
        AlgorithmId::DecodeExact,
        AlgorithmId::DecodeIso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Diameter => "diameter",
            AlgorithmId::Reconstruct => "reconstruct",
            AlgorithmId::Spider => "spider",
            AlgorithmId::DecodeExact => "decode-exact",
            AlgorithmId::DecodeIso => "decode-iso",
        }
    }

    fn min_n(self) -> usize {
        match self {
            AlgorithmId::Diameter | AlgorithmId::Reconstruct => 2,
            AlgorithmId::Spider => 7,
            AlgorithmId::DecodeExact => 5,
            AlgorithmId::DecodeIso => 13,
        }
    }

    /// Query-count bound and its expression; non-adaptive graphs have an exact size.
    fn ceiling(self, n: usize) -> (u64, &'static str, Direction) {
        match self {
            AlgorithmId::Diameter => (diameter_ceiling(n) as u64, "2n-4", Direction::AtMost),
            AlgorithmId::Reconstruct => (
                reconstruction_ceiling(n) as u64,
                "(n-1)+floor((n-1)^2/4)",
                Direction::AtMost,
            ),
            AlgorithmId::Spider => (spider_ceiling(n) as u64, "C(n-floor(n/2),2)+5n", Direction::AtMost),
            AlgorithmId::DecodeExact => ((n * (n - 2)).div_ceil(2) as u64, "ceil(n(n-2)/2)", Direction::Exactly),
            AlgorithmId::DecodeIso => ((n * (n - 3) / 2) as u64, "n(n-3)/2", Direction::Exactly),
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = ProbeError;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| ProbeError::Domain(format!("unknown algorithm {s:?}")))
    }
}

/// Outcome of one run on one tree.
#[derive(Debug, Clone, Copy)]
struct Run {
    correct: bool,
    queries: usize,
}

/// Order-independent aggregate of runs.
#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    trees: u64,
    correct: u64,
    max_queries: u64,
    total_queries: u64,
}

impl Tally {
    fn of(run: Run) -> Self {
        Self {
            trees: 1,
            correct: run.correct as u64,
            max_queries: run.queries as u64,
            total_queries: run.queries as u64,
        }
    }

    fn merge(self, o: Self) -> Self {
        Self {
            trees: self.trees + o.trees,
            correct: self.correct + o.correct,
            max_queries: self.max_queries.max(o.max_queries),
            total_queries: self.total_queries + o.total_queries,
        }
    }

    fn rows(&self, n: usize, algo: AlgorithmId, population: &str) -> [BoundRow; 2] {
        let (bound, anchor, direction) = algo.ceiling(n);
        let mean = self.total_queries as f64 / self.trees.max(1) as f64;
        [
            BoundRow::new(
                n,
                format!("{algo}.correct"),
                self.correct,
                population,
                self.trees,
                Direction::Exactly,
            ),
            BoundRow::new(
                n,
                format!("{algo}.max_queries"),
                self.max_queries,
                anchor,
                bound,
                direction,
            )
            .with_detail(format!("trees={} mean={mean:.2}", self.trees)),
        ]
    }
}

/// Per-n state shared by all trees of one size.
enum Prepared {
    Adaptive(AlgorithmId),
    Exact(QueryGraphSpec),
    Iso(QueryGraphSpec),
}

impl Prepared {
    fn new(n: usize, algo: AlgorithmId) -> Result<Self> {
        if n < algo.min_n() {
            return Err(ProbeError::Domain(format!(
                "{algo} needs n >= {}, got {n}",
                algo.min_n()
            )));
        }
        Ok(match algo {
            AlgorithmId::DecodeExact => Prepared::Exact(build_reconstruction_query_graph(n)?),
            AlgorithmId::DecodeIso => Prepared::Iso(build_min_degree_query_graph(n)?),
            other => Prepared::Adaptive(other),
        })
    }

    fn run(&self, tree: &LabeledTree) -> Result<Run> {
        match self {
            Prepared::Adaptive(algo) => {
                let mut s = QuerySession::new(tree.clone(), None);
                match algo {
                    AlgorithmId::Diameter => {
                        let r = find_diameter_pair(&mut s)?;
                        let m = tree.distance_matrix();
                        let (a, b) = r.pair;
                        Ok(Run {
                            correct: m.get(a, b) == m.diameter() && r.distance == m.diameter(),
                            queries: r.queries_used,
                        })
                    }
                    AlgorithmId::Reconstruct | AlgorithmId::Spider => {
                        let r = if *algo == AlgorithmId::Spider {
                            identify_spider(&mut s)?
                        } else {
                            reconstruct_tree(&mut s)?
                        };
                        Ok(Run {
                            correct: r.tree == *tree,
                            queries: r.queries_used,
                        })
                    }
                    _ => unreachable!("non-adaptive ids are prepared separately"),
                }
            }
            Prepared::Exact(spec) => {
                let answers = spec.answers_from(tree)?;
                Ok(Run {
                    correct: decode_exact(spec, &answers).ok().as_ref() == Some(tree),
                    queries: spec.query_count(),
                })
            }
            Prepared::Iso(spec) => {
                let answers = spec.answers_from(tree)?;
                let correct = complete_missing_distances(spec, &answers, DEFAULT_MAX_SOLUTIONS)
                    .and_then(|set| {
                        let code = set.isomorphism_class()?;
                        let (a, b, d) = set.max_distance_pair(&answers)?;
                        let m = tree.distance_matrix();
                        Ok(code == tree.canonical_code() && m.get(a, b) == m.diameter() && d == m.diameter())
                    })
                    .unwrap_or(false);
                Ok(Run {
                    correct,
                    queries: spec.query_count(),
                })
            }
        }
    }
}

/// Runs `algo` on every labeled tree with `n` in `range` (every spider, for the
/// spider algorithm) and reports correctness and the worst query count per `n`.
pub fn run_exhaustive(range: RangeInclusive<usize>, algo: AlgorithmId, cap: usize) -> Result<BoundsReport> {
    let mut report = BoundsReport::new();
    for n in range {
        if n > cap {
            return Err(ProbeError::CapExceeded { n, cap });
        }
        let prepared = Prepared::new(n, algo)?;
        let tally = (0..tree_count(n))
            .into_par_iter()
            .map(|i| {
                let t = tree_at_index(n, i);
                if algo == AlgorithmId::Spider && SpiderRoles::from_tree(&t).is_none() {
                    return Ok(Tally::default());
                }
                prepared.run(&t).map(Tally::of)
            })
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
        let population = if algo == AlgorithmId::Spider {
            "every labeled spider"
        } else {
            "every labeled tree"
        };
        report.rows.extend(tally.rows(n, algo, population));
    }
    Ok(report)
}

/// Runs `algo` on `trials` uniformly random trees (random spiders for the
/// spider algorithm) per `n`. The trees depend only on `seed`, `n` and `algo`.
pub fn run_random(ns: &[usize], trials: usize, algo: AlgorithmId, seed: u64) -> Result<BoundsReport> {
    let mut report = BoundsReport::new();
    for &n in ns {
        let prepared = Prepared::new(n, algo)?;
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, n, algo.name()));
        let trees: Vec<LabeledTree> = (0..trials)
            .map(|_| match algo {
                AlgorithmId::Spider => random_spider(n, &mut rng).to_tree(),
                _ => random_tree(n, &mut rng),
            })
            .collect();
        let tally = trees
            .par_iter()
            .map(|t| prepared.run(t).map(Tally::of))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
        let population = if algo == AlgorithmId::Spider {
            "random spiders"
        } else {
            "random trees"
        };
        report.rows.extend(tally.rows(n, algo, population));
    }
    Ok(report)
}

/// Seed for one `(n, label)` cell, so cells do not share random streams.
pub(crate) fn sub_seed(seed: u64, n: usize, label: &str) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in label.bytes().chain((n as u64).to_le_bytes()) {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    h
}
