//! Labeled trees on vertices `0..n` and everything computed from them.
//!
//! Vertices are dense indices. Named roles (centers, legs, spine vertices)
//! are held by callers as plain indices.

mod canon;
mod metric;
mod prufer;
mod random;
mod shape;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ProbeError, Result};

pub use canon::{canonical_code, CanonicalCode};
pub(crate) use metric::four_point_holds;
pub use metric::{all_pairs_distance, diameter_pair, DistanceMatrix};
pub use prufer::{
    enumerate_trees, enumerate_trees_capped, prufer_decode, prufer_encode, tree_at_index, tree_count, TreeEnumerator,
    DEFAULT_ENUMERATION_CAP,
};
pub use random::{random_permutation, random_spider, random_tree};
pub use shape::{classify_shape, SpiderRoles, TreeShape};

/// Vertex index.
pub type Vertex = usize;

/// Normalizes an unordered pair so that the smaller index comes first.
#[inline]
pub fn ordered(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A tree on the vertex set `0..n`.
///
/// Edges are stored normalized (`a < b`) and sorted, so two trees compare
/// equal exactly when their edge sets are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl LabeledTree {
    /// Builds a tree, validating edge count, range, loops, duplicates and connectivity.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        if n == 0 {
            return Err(ProbeError::InvalidTree("a tree needs at least one vertex".into()));
        }
        let mut list: Vec<(Vertex, Vertex)> = Vec::with_capacity(n - 1);
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(ProbeError::OutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(ProbeError::InvalidTree(format!("self-loop at {a}")));
            }
            list.push(ordered(a, b));
        }
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(ProbeError::InvalidTree("repeated edge".into()));
        }
        if list.len() != n - 1 {
            return Err(ProbeError::InvalidTree(format!(
                "expected {} edges, found {}",
                n - 1,
                list.len()
            )));
        }
        let tree = Self::from_sorted_unchecked(n, list);
        if tree.distances_from(0).contains(&u32::MAX) {
            return Err(ProbeError::InvalidTree("graph is not connected".into()));
        }
        Ok(tree)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is a tree")
    }

    /// Star with the given center.
    pub fn star(n: usize, center: Vertex) -> Self {
        Self::new(n, (0..n).filter(|&v| v != center).map(|v| (center, v))).expect("star is a tree")
    }

    /// Double star with adjacent centers `u`, `v`; vertices in `u_leaves` hang off `u`,
    /// every other vertex hangs off `v`.
    pub fn double_star(n: usize, u: Vertex, v: Vertex, u_leaves: &[Vertex]) -> Result<Self> {
        let mut edges = vec![(u, v)];
        for w in 0..n {
            if w == u || w == v {
                continue;
            }
            if u_leaves.contains(&w) {
                edges.push((u, w));
            } else {
                edges.push((v, w));
            }
        }
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges.binary_search(&ordered(a, b)).is_ok()
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(|&v| self.degree(v) == 1)
    }

    /// Maps every vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut edges: Vec<_> = self.edges.iter().map(|&(a, b)| ordered(perm[a], perm[b])).collect();
        edges.sort_unstable();
        Self::from_sorted_unchecked(self.n, edges)
    }

    /// BFS hop counts from `src`; unreachable vertices get `u32::MAX`.
    pub fn distances_from(&self, src: Vertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[src] = 0;
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        all_pairs_distance(self)
    }

    pub fn shape(&self) -> TreeShape {
        classify_shape(self)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canonical_code(self)
    }

    pub fn to_file(&self) -> TreeFile {
        TreeFile::Edges {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl fmt::Debug for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledTree(n={}, edges={:?})", self.n, self.edges)
    }
}

/// On-disk tree: either an explicit edge list or a Prüfer sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TreeFile {
    Edges { n: usize, edges: Vec<[Vertex; 2]> },
    Prufer { n: usize, prufer: Vec<Vertex> },
}

impl TreeFile {
    pub fn into_tree(self) -> Result<LabeledTree> {
        match self {
            TreeFile::Edges { n, edges } => LabeledTree::new(n, edges.into_iter().map(|[a, b]| (a, b))),
            TreeFile::Prufer { n, prufer } => prufer_decode(&prufer, n),
        }
    }
}

impl Serialize for LabeledTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TreeFile::deserialize(d)?.into_tree().map_err(serde::de::Error::custom)
    }
}
