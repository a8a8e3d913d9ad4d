use super::{ordered, LabeledTree, Vertex};
use crate::error::{ProbeError, Result};

/// Symmetric matrix of hop distances.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// Wraps a row-major `n x n` matrix without validating it.
    pub fn from_raw(n: usize, d: Vec<u32>) -> Self {
        assert_eq!(d.len(), n * n);
        Self { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: Vertex, b: Vertex) -> u32 {
        self.d[a * self.n + b]
    }

    #[inline]
    pub fn row(&self, a: Vertex) -> &[u32] {
        &self.d[a * self.n..(a + 1) * self.n]
    }

    /// Largest entry and the lexicographically smallest pair attaining it.
    pub fn diameter_pair(&self) -> Option<(Vertex, Vertex, u32)> {
        let mut best: Option<(Vertex, Vertex, u32)> = None;
        for a in 0..self.n {
            for b in a + 1..self.n {
                let d = self.get(a, b);
                if best.is_none_or(|(_, _, bd)| d > bd) {
                    best = Some((a, b, d));
                }
            }
        }
        best
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// Zero diagonal, symmetry, and off-diagonal entries in `1..n`.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            self.get(a, a) == 0
                && (a + 1..n).all(|b| {
                    let d = self.get(a, b);
                    d == self.get(b, a) && d >= 1 && (d as usize) < n
                })
        })
    }

    /// For all quadruples, the two largest of the three pairings sums are equal.
    pub fn satisfies_four_point(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if !four_point_holds(
                            self.get(a, b) + self.get(c, d),
                            self.get(a, c) + self.get(b, d),
                            self.get(a, d) + self.get(b, c),
                        ) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The unique tree whose metric is this matrix, if there is one.
    ///
    /// Edges are the pairs at distance 1; the result is accepted only when they
    /// form a spanning tree whose BFS metric reproduces every entry.
    pub fn realize(&self) -> Option<LabeledTree> {
        let n = self.n;
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for a in 0..n {
            for b in a + 1..n {
                if self.get(a, b) == 1 {
                    if edges.len() == n - 1 {
                        return None;
                    }
                    edges.push(ordered(a, b));
                }
            }
        }
        let tree = LabeledTree::new(n, edges).ok()?;
        (all_pairs_distance(&tree) == *self).then_some(tree)
    }
}

impl std::fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "DistanceMatrix(n={})", self.n)?;
        for a in 0..self.n {
            writeln!(f, "  {:?}", self.row(a))?;
        }
        Ok(())
    }
}

/// Four-point condition on the three pairing sums of one quadruple.
#[inline]
pub(crate) fn four_point_holds(s1: u32, s2: u32, s3: u32) -> bool {
    let mut s = [s1, s2, s3];
    s.sort_unstable();
    s[1] == s[2]
}

/// Exact hop distances by one BFS per vertex.
pub fn all_pairs_distance(tree: &LabeledTree) -> DistanceMatrix {
    let n = tree.n();
    let mut d = Vec::with_capacity(n * n);
    for v in 0..n {
        d.extend(tree.distances_from(v));
    }
    DistanceMatrix { n, d }
}

/// Pair at maximum distance, ties broken by the lexicographically smallest pair.
pub fn diameter_pair(tree: &LabeledTree) -> Result<(Vertex, Vertex, u32)> {
    if tree.n() < 2 {
        return Err(ProbeError::Domain("a single vertex has no pair".into()));
    }
    Ok(all_pairs_distance(tree).diameter_pair().expect("n >= 2 has a pair"))
}
