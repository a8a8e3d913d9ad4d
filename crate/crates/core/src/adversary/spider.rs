use super::matching::{leaf_saturating_matching, Bipartite};
use super::{check_pair, split_roles, Adversary, FreeInfo, Reply, Role};
use crate::error::{ProbeError, Result};
use crate::tree::{LabeledTree, SpiderRoles, Vertex};

/// Lower bound on the number of middle-leaf queries answered 3 before a
/// hidden spider is pinned down: `C(m, 2)` for `m = n - floor(n/2) - 1` legs with a leaf.
pub fn spider_forcing_bound(n: usize) -> usize {
    let m = SpiderRoles::leaf_count(n);
    m * m.saturating_sub(1) / 2
}

/// Adversary that hides a spider and answers every middle-leaf query with 3
/// unless the pair is an edge of every spider still consistent.
///
/// The only undetermined answers are between a middle and a leaf. A pair is
/// forced when the bipartite graph of still-allowed middle-leaf pairs has no
/// matching saturating the leaves without it. With `reveal_roles` the role
/// partition is announced up front; without it the questioner is not told
/// that the tree is a spider at all.
#[derive(Debug, Clone)]
pub struct SpiderAdversary {
    n: usize,
    center: Vertex,
    middles: Vec<Vertex>,
    leaves: Vec<Vertex>,
    role: Vec<Role>,
    /// Left side leaves, right side middles.
    graph: Bipartite,
    reveal_roles: bool,
    cross_answered_three: usize,
    cross_at_resolution: Option<usize>,
    resolved: bool,
}

impl SpiderAdversary {
    /// Roles as in [`SpiderRoles::canonical`].
    pub fn new(n: usize, reveal_roles: bool) -> Result<Self> {
        Self::with_placement(n, &(0..n).collect::<Vec<_>>(), reveal_roles)
    }

    /// `placement[0]` is the center, the next `floor(n/2)` entries the middles, the rest leaves.
    pub fn with_placement(n: usize, placement: &[Vertex], reveal_roles: bool) -> Result<Self> {
        if n < 5 {
            return Err(ProbeError::Domain(format!(
                "the spider adversary needs n >= 5, got {n}"
            )));
        }
        let k = SpiderRoles::middle_count(n);
        let (center, middles, leaves, role) = split_roles(n, placement, k)?;
        let graph = Bipartite::complete(leaves.len(), k);
        let mut adv = Self {
            n,
            center,
            middles,
            leaves,
            role,
            graph,
            reveal_roles,
            cross_answered_three: 0,
            cross_at_resolution: None,
            resolved: false,
        };
        adv.resolved = adv.unique();
        if adv.resolved {
            adv.cross_at_resolution = Some(0);
        }
        Ok(adv)
    }

    pub fn reveal_roles(&self) -> bool {
        self.reveal_roles
    }

    /// Middle-leaf queries answered 3 so far.
    pub fn cross_answered_three(&self) -> usize {
        self.cross_answered_three
    }

    /// Middle-leaf queries answered 3 up to the moment the spider was determined.
    pub fn cross_at_resolution(&self) -> Option<usize> {
        self.cross_at_resolution
    }

    /// The allowed middle-leaf pairs, leaves on the left.
    pub fn graph(&self) -> &Bipartite {
        &self.graph
    }

    pub fn spider_answer(&mut self, x: Vertex, y: Vertex) -> Result<u32> {
        check_pair(self.n, x, y)?;
        let d = match (self.role[x], self.role[y]) {
            (Role::Center, Role::Middle(_)) | (Role::Middle(_), Role::Center) => 1,
            (Role::Center, Role::Leaf(_)) | (Role::Leaf(_), Role::Center) => 2,
            (Role::Middle(_), Role::Middle(_)) => 2,
            (Role::Leaf(_), Role::Leaf(_)) => 4,
            (Role::Middle(i), Role::Leaf(j)) | (Role::Leaf(j), Role::Middle(i)) => {
                if self.graph.allowed(j, i) && self.graph.forced(j, i) {
                    self.graph.fix(j, i);
                    1
                } else {
                    self.graph.set(j, i, false);
                    self.cross_answered_three += 1;
                    3
                }
            }
            (Role::Center, Role::Center) => unreachable!("distinct vertices"),
        };
        if !self.resolved {
            self.resolved = self.unique();
            if self.resolved {
                self.cross_at_resolution = Some(self.cross_answered_three);
            }
        }
        Ok(d)
    }

    /// Current witness spider.
    pub fn roles(&self) -> SpiderRoles {
        let m = leaf_saturating_matching(&self.graph).expect("the adversary keeps a saturating matching");
        let legs = self
            .middles
            .iter()
            .enumerate()
            .map(|(i, &mid)| (mid, m.iter().position(|&r| r == i).map(|j| self.leaves[j])))
            .collect();
        SpiderRoles {
            n: self.n,
            center: self.center,
            legs,
        }
    }

    fn unique(&self) -> bool {
        match leaf_saturating_matching(&self.graph) {
            Some(m) => m.iter().enumerate().all(|(j, &i)| self.graph.forced(j, i)),
            None => false,
        }
    }
}

impl Adversary for SpiderAdversary {
    fn n(&self) -> usize {
        self.n
    }

    fn opening(&self) -> Option<FreeInfo> {
        self.reveal_roles.then(|| FreeInfo::RolePartition {
            center: self.center,
            middles: self.middles.clone(),
            leaves: self.leaves.clone(),
        })
    }

    fn answer(&mut self, x: Vertex, y: Vertex) -> Result<Reply> {
        self.spider_answer(x, y).map(Reply::plain)
    }

    fn resolved(&self) -> bool {
        self.resolved
    }

    fn witness(&self) -> LabeledTree {
        self.roles().to_tree()
    }
}
