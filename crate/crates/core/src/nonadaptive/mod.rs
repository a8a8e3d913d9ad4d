//! Non-adaptive play: the query graph is fixed before any answer arrives.
//!
//! A [`QueryGraphSpec`] lists the pairs that are *not* asked. Two
//! constructions are provided, one for exact reconstruction (a perfect or
//! near-perfect matching left out) and one for isomorphism and
//! maximum-distance goals (a Hamiltonian cycle left out). Decoders turn the
//! answers back into a tree, an isomorphism class, or a maximum-distance pair.

mod complete;
mod decode;
mod witness;

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{ProbeError, Result};
use crate::session::AnsweredQueryGraph;
use crate::tree::{ordered, LabeledTree, Vertex};

pub use complete::{
    complete_missing_distances, decode_isomorphism, find_max_distance_pair_nonadaptive, CompletionSet,
    DEFAULT_MAX_SOLUTIONS,
};
pub use decode::decode_exact;
pub use witness::lemi_witness;

/// A non-adaptive query graph on `0..n`, stored as the pairs left unqueried.
///
/// JSON form: `{"n": int, "missing": [[a, b], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecFile", into = "SpecFile")]
pub struct QueryGraphSpec {
    n: usize,
    missing: BTreeSet<(Vertex, Vertex)>,
}

#[derive(Serialize, Deserialize)]
struct SpecFile {
    n: usize,
    missing: Vec<[Vertex; 2]>,
}

impl TryFrom<SpecFile> for QueryGraphSpec {
    type Error = ProbeError;

    fn try_from(f: SpecFile) -> Result<Self> {
        QueryGraphSpec::new(f.n, f.missing.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<QueryGraphSpec> for SpecFile {
    fn from(s: QueryGraphSpec) -> Self {
        SpecFile {
            n: s.n,
            missing: s.missing.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl QueryGraphSpec {
    /// Validates range and loops; duplicate pairs collapse.
    pub fn new(n: usize, missing: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in missing {
            for v in [a, b] {
                if v >= n {
                    return Err(ProbeError::OutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(ProbeError::Domain(format!("missing pair ({a},{a}) is a loop")));
            }
            set.insert(ordered(a, b));
        }
        Ok(Self { n, missing: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn missing(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.missing.iter().copied()
    }

    pub fn missing_count(&self) -> usize {
        self.missing.len()
    }

    pub fn is_queried(&self, a: Vertex, b: Vertex) -> bool {
        a != b && a < self.n && b < self.n && !self.missing.contains(&ordered(a, b))
    }

    /// Queried pairs `(a, b)` with `a < b`, lexicographic.
    pub fn queried(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
            .filter(|p| !self.missing.contains(p))
    }

    pub fn query_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.missing.len()
    }

    /// Number of vertices `v` is queried with.
    pub fn degree(&self, v: Vertex) -> usize {
        self.n - 1 - self.missing_partners(v).len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Partners of `v` among the missing pairs, ascending.
    pub fn missing_partners(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .missing
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// `(degree, how many vertices have it)`, ascending by degree.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut h = std::collections::BTreeMap::new();
        for v in 0..self.n {
            *h.entry(self.degree(v)).or_insert(0) += 1;
        }
        h.into_iter().collect()
    }

    /// The answers `tree` gives on every queried pair.
    pub fn answers_from(&self, tree: &LabeledTree) -> Result<AnsweredQueryGraph> {
        if tree.n() != self.n {
            return Err(ProbeError::Domain(format!(
                "tree has {} vertices, query graph {}",
                tree.n(),
                self.n
            )));
        }
        Ok(AnsweredQueryGraph::from_tree_on_pairs(tree, self.queried()))
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Complete graph minus the matching `{(0,1), (2,3), ...}`: `ceil(n(n-2)/2)` queries.
pub fn build_reconstruction_query_graph(n: usize) -> Result<QueryGraphSpec> {
    if n < 5 {
        return Err(ProbeError::Domain(format!(
            "the reconstruction query graph needs n >= 5, got {n}"
        )));
    }
    QueryGraphSpec::new(n, (0..n / 2).map(|i| (2 * i, 2 * i + 1)))
}

/// Complete graph minus the Hamiltonian cycle `0-1-...-(n-1)-0`: `n(n-3)/2` queries,
/// every vertex of degree `n - 3`.
pub fn build_min_degree_query_graph(n: usize) -> Result<QueryGraphSpec> {
    if n < 13 {
        return Err(ProbeError::Domain(format!(
            "the min-degree query graph needs n >= 13, got {n}"
        )));
    }
    QueryGraphSpec::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// True iff every four vertices have a common neighbor in the query graph.
pub fn common_neighbor_audit(spec: &QueryGraphSpec) -> bool {
    let n = spec.n();
    if n < 4 {
        return true;
    }
    let words = n.div_ceil(64);
    let mut rows = vec![vec![0u64; words]; n];
    for (a, b) in spec.queried() {
        rows[a][b / 64] |= 1 << (b % 64);
        rows[b][a / 64] |= 1 << (a % 64);
    }
    let mut ab = vec![0u64; words];
    let mut abc = vec![0u64; words];
    for a in 0..n {
        for b in a + 1..n {
            for w in 0..words {
                ab[w] = rows[a][w] & rows[b][w];
            }
            for c in b + 1..n {
                for w in 0..words {
                    abc[w] = ab[w] & rows[c][w];
                }
                for d in c + 1..n {
                    if (0..words).all(|w| abc[w] & rows[d][w] == 0) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
