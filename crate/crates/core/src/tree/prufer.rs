use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{ordered, LabeledTree, Vertex};
use crate::error::{ProbeError, Result};

/// Largest `n` that [`enumerate_trees`] accepts without an explicit override.
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

/// Decodes a Prüfer sequence of length `n - 2` into its labeled tree.
pub fn prufer_decode(seq: &[Vertex], n: usize) -> Result<LabeledTree> {
    if n < 2 {
        return Err(ProbeError::Domain(format!("Prüfer decoding needs n >= 2, got {n}")));
    }
    if seq.len() != n - 2 {
        return Err(ProbeError::Domain(format!(
            "Prüfer sequence for n = {n} must have length {}, got {}",
            n - 2,
            seq.len()
        )));
    }
    if let Some(&v) = seq.iter().find(|&&v| v >= n) {
        return Err(ProbeError::OutOfRange { vertex: v, n });
    }
    Ok(decode_unchecked(seq, n))
}

fn decode_unchecked(seq: &[Vertex], n: usize) -> LabeledTree {
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push(ordered(leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push(ordered(a, b));
    edges.sort_unstable();
    LabeledTree::from_sorted_unchecked(n, edges)
}

/// Prüfer sequence of a tree with at least two vertices.
pub fn prufer_encode(tree: &LabeledTree) -> Vec<Vertex> {
    let n = tree.n();
    assert!(n >= 2, "Prüfer encoding needs n >= 2");
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut leaves: BinaryHeap<Reverse<Vertex>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut seq = Vec::with_capacity(n - 2);
    while seq.len() < n - 2 {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        removed[leaf] = true;
        let parent = *tree
            .neighbors(leaf)
            .iter()
            .find(|&&w| !removed[w])
            .expect("leaf has a live neighbor");
        seq.push(parent);
        degree[parent] -= 1;
        if degree[parent] == 1 {
            leaves.push(Reverse(parent));
        }
    }
    seq
}

/// Number of labeled trees on `n` vertices (`n^(n-2)`, and 1 for `n <= 2`).
pub fn tree_count(n: usize) -> u64 {
    if n <= 2 {
        1
    } else {
        (n as u64).pow(n as u32 - 2)
    }
}

/// The tree whose Prüfer sequence is the base-`n` expansion of `index`
/// (most significant digit first). Lets callers partition the tree space by ranges.
pub fn tree_at_index(n: usize, index: u64) -> LabeledTree {
    let len = n.saturating_sub(2);
    let mut seq = vec![0; len];
    let mut rest = index;
    for slot in seq.iter_mut().rev() {
        *slot = (rest % n as u64) as usize;
        rest /= n as u64;
    }
    decode_unchecked(&seq, n)
}

/// Streams every labeled tree on `n` vertices exactly once.
pub fn enumerate_trees(n: usize) -> Result<TreeEnumerator> {
    enumerate_trees_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_trees_capped(n: usize, cap: usize) -> Result<TreeEnumerator> {
    if n < 2 {
        return Err(ProbeError::Domain(format!("enumeration needs n >= 2, got {n}")));
    }
    if n > cap {
        return Err(ProbeError::CapExceeded { n, cap });
    }
    Ok(TreeEnumerator {
        n,
        seq: vec![0; n - 2],
        done: false,
    })
}

/// Iterator over Prüfer sequences in lexicographic order.
#[derive(Debug, Clone)]
pub struct TreeEnumerator {
    n: usize,
    seq: Vec<Vertex>,
    done: bool,
}

impl Iterator for TreeEnumerator {
    type Item = LabeledTree;

    fn next(&mut self) -> Option<LabeledTree> {
        if self.done {
            return None;
        }
        let tree = decode_unchecked(&self.seq, self.n);
        // odometer increment
        let mut i = self.seq.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.seq[i] += 1;
            if self.seq[i] < self.n {
                break;
            }
            self.seq[i] = 0;
        }
        Some(tree)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::tree::TreeShape;

    #[test]
    fn decode_small_cases() {
        let t = prufer_decode(&[], 2).unwrap();
        assert_eq!(t.edges(), &[(0, 1)]);
        let s = prufer_decode(&[0, 0], 4).unwrap();
        assert_eq!(s.edges(), &[(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn decode_rejects_bad_input() {
        assert!(matches!(
            prufer_decode(&[0, 4], 4),
            Err(ProbeError::OutOfRange { vertex: 4, n: 4 })
        ));
        assert!(prufer_decode(&[0], 4).is_err());
        assert!(prufer_decode(&[], 1).is_err());
    }

    #[test]
    fn n4_has_twelve_paths_and_four_stars() {
        let trees: Vec<_> = enumerate_trees(4).unwrap().collect();
        assert_eq!(trees.len(), 16);
        let distinct: HashSet<_> = trees.iter().cloned().collect();
        assert_eq!(distinct.len(), 16);
        let stars = trees.iter().filter(|t| t.shape() == TreeShape::Star).count();
        let paths = trees.iter().filter(|t| (0..4).all(|v| t.degree(v) <= 2)).count();
        assert_eq!((paths, stars), (12, 4));
    }

    #[test]
    fn cayley_counts_and_distinctness() {
        assert_eq!(enumerate_trees(3).unwrap().count(), 3);
        assert_eq!(enumerate_trees(4).unwrap().count(), 16);
        let all: HashSet<_> = enumerate_trees(7).unwrap().map(|t| t.edges().to_vec()).collect();
        assert_eq!(all.len(), 16807);
    }

    #[test]
    fn encode_decode_roundtrip_exhaustive() {
        for n in 2..=7 {
            for (i, t) in enumerate_trees(n).unwrap().enumerate() {
                let seq = prufer_encode(&t);
                assert_eq!(prufer_decode(&seq, n).unwrap(), t);
                assert_eq!(tree_at_index(n, i as u64), t);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_trees(10),
            Err(ProbeError::CapExceeded { n: 10, cap: 9 })
        ));
        assert!(enumerate_trees_capped(10, 10).is_ok());
    }
}
