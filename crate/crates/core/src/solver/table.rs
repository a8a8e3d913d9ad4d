use std::collections::HashMap;

use super::Goal;
use crate::error::Result;
use crate::tree::{enumerate_trees, LabeledTree, Vertex};

/// Every labeled tree on `n` vertices, flattened for fast splitting.
#[derive(Debug, Clone)]
pub struct TreeTable {
    n: usize,
    pairs: Vec<(Vertex, Vertex)>,
    trees: Vec<LabeledTree>,
    /// `dist[t * pairs + p]`.
    dist: Vec<u8>,
    /// Bit `p` set when pair `p` is at maximum distance in tree `t`.
    diam_mask: Vec<u32>,
    iso: Vec<u32>,
}

impl TreeTable {
    /// All `n^(n-2)` trees in Prüfer order. Needs `n <= 8` so pair masks fit in 32 bits.
    pub fn new(n: usize) -> Result<Self> {
        let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        assert!(pairs.len() <= 32, "pair masks are 32 bits wide");
        let trees: Vec<LabeledTree> = enumerate_trees(n)?.collect();
        let mut dist = Vec::with_capacity(trees.len() * pairs.len());
        let mut diam_mask = Vec::with_capacity(trees.len());
        let mut iso = Vec::with_capacity(trees.len());
        let mut ids = HashMap::new();
        for t in &trees {
            let m = t.distance_matrix();
            let diam = m.diameter();
            let mut mask = 0u32;
            for (p, &(a, b)) in pairs.iter().enumerate() {
                let d = m.get(a, b);
                dist.push(d as u8);
                if d == diam {
                    mask |= 1 << p;
                }
            }
            diam_mask.push(mask);
            let next = ids.len() as u32;
            iso.push(*ids.entry(t.canonical_code()).or_insert(next));
        }
        Ok(Self {
            n,
            pairs,
            trees,
            dist,
            diam_mask,
            iso,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn tree(&self, t: usize) -> &LabeledTree {
        &self.trees[t]
    }

    #[inline]
    pub fn dist(&self, t: usize, p: usize) -> u8 {
        self.dist[t * self.pairs.len() + p]
    }

    /// Index of the pair `(a, b)`, `a < b`.
    pub fn pair_index(&self, a: Vertex, b: Vertex) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    pub fn goal_holds(&self, set: &[u32], goal: Goal) -> bool {
        match goal {
            Goal::ExactTree => set.len() <= 1,
            Goal::IsoClass => set.iter().all(|&t| self.iso[t as usize] == self.iso[set[0] as usize]),
            Goal::MaxDistPair => self.n < 2 || set.iter().fold(u32::MAX, |m, &t| m & self.diam_mask[t as usize]) != 0,
        }
    }

    /// Splits `set` by the answer each tree gives on pair `p`, ascending by answer.
    pub fn split(&self, set: &[u32], p: usize) -> Vec<(u8, Vec<u32>)> {
        let mut parts: Vec<(u8, Vec<u32>)> = Vec::new();
        for &t in set {
            let d = self.dist(t as usize, p);
            match parts.iter_mut().find(|(x, _)| *x == d) {
                Some((_, v)) => v.push(t),
                None => parts.push((d, vec![t])),
            }
        }
        parts.sort_unstable_by_key(|(d, _)| *d);
        parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_is_lexicographic() {
        let t = TreeTable::new(5).unwrap();
        for (i, &(a, b)) in t.pairs().iter().enumerate() {
            assert_eq!(t.pair_index(a, b), i);
            assert_eq!(t.pair_index(b, a), i);
        }
        assert_eq!(t.len(), 125);
    }
}
