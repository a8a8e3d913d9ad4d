use serde::{Deserialize, Serialize};

use super::{LabeledTree, Vertex};
use crate::error::{ProbeError, Result};

/// Coarse shape families that the strategies in this crate single out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TreeShape {
    /// Exactly one non-leaf vertex.
    Star,
    /// Exactly two non-leaf vertices (diameter 3).
    DoubleStar,
    /// Exactly three vertices of degree at least two (diameter 4).
    RealCaterpillar,
    /// A center joined to `n/2` middle vertices, each carrying at most one leaf.
    Spider,
    Path,
    Other,
}

/// Tags a tree by its degree sequence. Checks run in declaration order, so a
/// path on four vertices is a `DoubleStar` and a path on five a `RealCaterpillar`.
pub fn classify_shape(tree: &LabeledTree) -> TreeShape {
    let n = tree.n();
    if n <= 2 {
        return TreeShape::Path;
    }
    let inner = (0..n).filter(|&v| tree.degree(v) >= 2).count();
    match inner {
        1 => TreeShape::Star,
        2 => TreeShape::DoubleStar,
        3 => TreeShape::RealCaterpillar,
        _ if SpiderRoles::from_tree(tree).is_some() => TreeShape::Spider,
        _ if (0..n).all(|v| tree.degree(v) <= 2) => TreeShape::Path,
        _ => TreeShape::Other,
    }
}

/// Role assignment of a spider: center, and one entry per leg.
///
/// Legs are `(middle, leaf)` pairs; for even `n` exactly one middle has no leaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiderRoles {
    pub n: usize,
    pub center: Vertex,
    pub legs: Vec<(Vertex, Option<Vertex>)>,
}

impl SpiderRoles {
    /// Number of middles, `floor(n/2)`.
    pub fn middle_count(n: usize) -> usize {
        n / 2
    }

    /// Number of leaves, `n - floor(n/2) - 1`.
    pub fn leaf_count(n: usize) -> usize {
        n - n / 2 - 1
    }

    /// Roles laid out as `center = 0`, middles `1..=k`, leaf of middle `i` at `k + i`.
    pub fn canonical(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(ProbeError::Domain(format!("a spider needs n >= 3, got {n}")));
        }
        let k = Self::middle_count(n);
        let l = Self::leaf_count(n);
        let legs = (1..=k).map(|i| (i, (i <= l).then_some(k + i))).collect();
        Ok(Self { n, center: 0, legs })
    }

    /// Relabels every role through `perm`.
    pub fn relabel(&self, perm: &[Vertex]) -> Self {
        Self {
            n: self.n,
            center: perm[self.center],
            legs: self.legs.iter().map(|&(m, w)| (perm[m], w.map(|w| perm[w]))).collect(),
        }
    }

    pub fn middles(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.legs.iter().map(|&(m, _)| m)
    }

    pub fn leaves(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.legs.iter().filter_map(|&(_, w)| w)
    }

    pub fn to_tree(&self) -> LabeledTree {
        let mut edges = Vec::with_capacity(self.n - 1);
        for &(m, w) in &self.legs {
            edges.push((self.center, m));
            if let Some(w) = w {
                edges.push((m, w));
            }
        }
        LabeledTree::new(self.n, edges).expect("spider roles describe a tree")
    }

    /// Recovers roles from a tree, or `None` if it is not a spider.
    pub fn from_tree(tree: &LabeledTree) -> Option<Self> {
        let n = tree.n();
        let k = Self::middle_count(n);
        if n < 3 {
            return None;
        }
        let centers: Vec<Vertex> = (0..n)
            .filter(|&c| tree.degree(c) == k)
            .filter(|&c| tree.neighbors(c).iter().all(|&m| tree.degree(m) <= 2))
            .collect();
        for center in centers {
            let mut legs = Vec::with_capacity(k);
            let mut ok = true;
            for &m in tree.neighbors(center) {
                let leaf = tree.neighbors(m).iter().copied().find(|&w| w != center);
                if let Some(w) = leaf {
                    if tree.degree(w) != 1 {
                        ok = false;
                        break;
                    }
                }
                legs.push((m, leaf));
            }
            // every vertex is the center, a middle, or a leaf of a middle
            let covered = 1 + legs.len() + legs.iter().filter(|l| l.1.is_some()).count();
            if ok && covered == n {
                return Some(Self { n, center, legs });
            }
        }
        None
    }
}
