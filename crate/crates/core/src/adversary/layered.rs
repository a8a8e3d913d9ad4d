use std::collections::HashMap;

use super::dsu::ParityDsu;
use super::{check_pair, split_roles, Adversary, FreeInfo, Reply, Role};
use crate::error::{ProbeError, Result};
use crate::tree::{LabeledTree, Vertex};

/// Informative answers the layered adversary forces before the tree is
/// determined: `(k - 1)(n - k - 1)` with `k = floor(n/2)`.
pub fn layered_forcing_bound(n: usize) -> usize {
    let k = n / 2;
    k.saturating_sub(1) * (n - k).saturating_sub(1)
}

/// What is known about which middle each leaf hangs from.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Constraints {
    /// Bit `i` of `allowed[j]` says leaf `j` may hang from middle `i`.
    allowed: Vec<u64>,
    /// Representative of each leaf's group of leaves known to share a middle.
    same: Vec<usize>,
    /// Leaf pairs known to hang from different middles.
    apart: Vec<(usize, usize)>,
}

impl Constraints {
    fn groups(&self) -> (Vec<u64>, Vec<(usize, usize)>, Vec<usize>) {
        // group index per leaf, numbered by first appearance
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut of_leaf = Vec::with_capacity(self.same.len());
        let mut masks: Vec<u64> = Vec::new();
        for (j, &label) in self.same.iter().enumerate() {
            let next = index.len();
            let g = *index.entry(label).or_insert(next);
            if g == masks.len() {
                masks.push(u64::MAX);
            }
            masks[g] &= self.allowed[j];
            of_leaf.push(g);
        }
        let mut edges: Vec<(usize, usize)> = self
            .apart
            .iter()
            .map(|&(a, b)| {
                let (ga, gb) = (of_leaf[a], of_leaf[b]);
                (ga.min(gb), ga.max(gb))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        (masks, edges, of_leaf)
    }

    fn key(&self) -> Vec<u64> {
        let (masks, edges, _) = self.groups();
        let mut key = masks;
        key.push(u64::MAX);
        key.extend(edges.iter().map(|&(a, b)| ((a as u64) << 32) | b as u64));
        key
    }

    /// Up to `limit` assignments of groups to middles; returns their count and the first one found.
    fn solve(&self, limit: usize) -> (usize, Option<Vec<usize>>) {
        let (masks, edges, of_leaf) = self.groups();
        if edges.iter().any(|&(a, b)| a == b) {
            return (0, None);
        }
        let g = masks.len();
        let mut nbrs = vec![Vec::new(); g];
        for &(a, b) in &edges {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        let mut color = vec![usize::MAX; g];
        let mut found = None;
        let mut count = 0;
        search(&masks, &nbrs, &mut color, limit, &mut count, &mut found);
        (
            count,
            found.map(|c: Vec<usize>| of_leaf.iter().map(|&gi| c[gi]).collect()),
        )
    }
}

fn search(
    masks: &[u64],
    nbrs: &[Vec<usize>],
    color: &mut [usize],
    limit: usize,
    count: &mut usize,
    found: &mut Option<Vec<usize>>,
) {
    // most constrained unassigned group first
    let mut pick: Option<(usize, u64)> = None;
    for g in 0..masks.len() {
        if color[g] != usize::MAX {
            continue;
        }
        let mut avail = masks[g];
        for &h in &nbrs[g] {
            if color[h] != usize::MAX {
                avail &= !(1u64 << color[h]);
            }
        }
        if pick.is_none_or(|(_, best)| avail.count_ones() < best.count_ones()) {
            pick = Some((g, avail));
        }
    }
    let Some((g, mut avail)) = pick else {
        *count += 1;
        if found.is_none() {
            *found = Some(color.to_vec());
        }
        return;
    };
    while avail != 0 && *count < limit {
        let c = avail.trailing_zeros() as usize;
        avail &= avail - 1;
        color[g] = c;
        search(masks, nbrs, color, limit, count, found);
    }
    color[g] = usize::MAX;
}

/// Adversary for exact reconstruction on trees made of a center, `floor(n/2)`
/// middles around it, and leaves each hanging from some middle.
///
/// The role partition is announced for free. A middle-leaf query is answered
/// 3 and a leaf-leaf query 4 whenever some leaf-to-middle assignment agrees
/// with everything said so far plus that answer; otherwise 1 or 2.
/// Feasibility is decided by backtracking over groups of leaves known to
/// share a middle, memoized on the constraint set.
#[derive(Debug, Clone)]
pub struct LayeredAdversary {
    n: usize,
    center: Vertex,
    middles: Vec<Vertex>,
    leaves: Vec<Vertex>,
    role: Vec<Role>,
    cons: Constraints,
    informative: usize,
    informative_at_resolution: Option<usize>,
    resolved: bool,
    memo: HashMap<Vec<u64>, bool>,
}

impl LayeredAdversary {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_placement(n, &(0..n).collect::<Vec<_>>())
    }

    /// `placement[0]` is the center, the next `floor(n/2)` entries the middles, the rest leaves.
    pub fn with_placement(n: usize, placement: &[Vertex]) -> Result<Self> {
        if !(4..=129).contains(&n) {
            return Err(ProbeError::Domain(format!(
                "the layered adversary needs 4 <= n <= 129, got {n}"
            )));
        }
        let k = n / 2;
        let (center, middles, leaves, role) = split_roles(n, placement, k)?;
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let m = leaves.len();
        let cons = Constraints {
            allowed: vec![full; m],
            same: (0..m).collect(),
            apart: Vec::new(),
        };
        let mut adv = Self {
            n,
            center,
            middles,
            leaves,
            role,
            cons,
            informative: 0,
            informative_at_resolution: None,
            resolved: false,
            memo: HashMap::new(),
        };
        adv.resolved = adv.cons.solve(2).0 == 1;
        if adv.resolved {
            adv.informative_at_resolution = Some(0);
        }
        Ok(adv)
    }

    /// Queries answered 3 or 4 so far.
    pub fn informative(&self) -> usize {
        self.informative
    }

    /// Informative answers given up to the moment only one assignment remained.
    pub fn informative_at_resolution(&self) -> Option<usize> {
        self.informative_at_resolution
    }

    fn feasible(&mut self, cons: &Constraints) -> bool {
        let key = cons.key();
        if let Some(&ok) = self.memo.get(&key) {
            return ok;
        }
        let ok = cons.solve(1).0 > 0;
        self.memo.insert(key, ok);
        ok
    }

    pub fn layered_answer(&mut self, x: Vertex, y: Vertex) -> Result<u32> {
        check_pair(self.n, x, y)?;
        let d = match (self.role[x], self.role[y]) {
            (Role::Center, Role::Middle(_)) | (Role::Middle(_), Role::Center) => 1,
            (Role::Center, Role::Leaf(_)) | (Role::Leaf(_), Role::Center) => 2,
            (Role::Middle(_), Role::Middle(_)) => 2,
            (Role::Middle(i), Role::Leaf(j)) | (Role::Leaf(j), Role::Middle(i)) => {
                let mut far = self.cons.clone();
                far.allowed[j] &= !(1u64 << i);
                if self.feasible(&far) {
                    self.cons = far;
                    3
                } else {
                    self.cons.allowed[j] = 1u64 << i;
                    1
                }
            }
            (Role::Leaf(a), Role::Leaf(b)) => {
                let mut far = self.cons.clone();
                far.apart.push((a, b));
                if self.feasible(&far) {
                    self.cons = far;
                    4
                } else {
                    let mut dsu = ParityDsu::new(self.cons.same.len());
                    for (j, &label) in self.cons.same.iter().enumerate() {
                        dsu.union(j, label, false);
                    }
                    dsu.union(a, b, false);
                    self.cons.same = (0..self.cons.same.len()).map(|j| dsu.find(j).0).collect();
                    2
                }
            }
            (Role::Center, Role::Center) => unreachable!("distinct vertices"),
        };
        if d >= 3 {
            self.informative += 1;
        }
        if !self.resolved {
            self.resolved = self.cons.solve(2).0 == 1;
            if self.resolved {
                self.informative_at_resolution = Some(self.informative);
            }
        }
        Ok(d)
    }

    /// Middle index of every leaf in the current witness.
    pub fn assignment(&self) -> Vec<usize> {
        self.cons
            .solve(1)
            .1
            .expect("the adversary keeps a consistent assignment")
    }
}

impl Adversary for LayeredAdversary {
    fn n(&self) -> usize {
        self.n
    }

    fn opening(&self) -> Option<FreeInfo> {
        Some(FreeInfo::RolePartition {
            center: self.center,
            middles: self.middles.clone(),
            leaves: self.leaves.clone(),
        })
    }

    fn answer(&mut self, x: Vertex, y: Vertex) -> Result<Reply> {
        self.layered_answer(x, y).map(Reply::plain)
    }

    fn resolved(&self) -> bool {
        self.resolved
    }

    fn witness(&self) -> LabeledTree {
        let mut edges: Vec<(Vertex, Vertex)> = self.middles.iter().map(|&m| (self.center, m)).collect();
        for (j, i) in self.assignment().into_iter().enumerate() {
            edges.push((self.middles[i], self.leaves[j]));
        }
        LabeledTree::new(self.n, edges).expect("center, middles and hung leaves form a tree")
    }
}
