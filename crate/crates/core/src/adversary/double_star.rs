use std::collections::{BTreeMap, BTreeSet};

use super::augment::{three_components_augment, Augmentation};
use super::dsu::ParityDsu;
use super::{check_pair, Adversary, FreeInfo, Reply};
use crate::error::{ProbeError, Result};
use crate::tree::{ordered, LabeledTree, Vertex};

/// Distance between `x` and `y` in a double star with centers `u`, `v`,
/// given whether the two vertices sit on the same side.
pub fn side_distance(u: Vertex, v: Vertex, x: Vertex, y: Vertex, same_side: bool) -> u32 {
    let centers = [x, y].iter().filter(|&&w| w == u || w == v).count();
    match (centers, same_side) {
        (2, _) => 1,
        (1, true) => 1,
        (1, false) => 2,
        (_, true) => 2,
        (_, false) => 3,
    }
}

/// Moving the vertex set `moved` off `center` onto `host` turns the witness
/// double star into a real caterpillar that agrees with every answer.
#[derive(Debug, Clone, PartialEq, Eq)]
struct CaterpillarMove {
    center: Vertex,
    host: Vertex,
    moved: Vec<Vertex>,
}

/// Adversary that keeps both a double star (diameter 3) and a real
/// caterpillar (diameter 4) consistent for as long as it can.
///
/// The first query `(u, v)` is answered 1 and fixes the centers. Afterwards
/// the adversary reasons about sides only: it answers "opposite" unless the
/// two vertices already lie in the same part of one component of `G1` (the
/// graph of "opposite" answers); "same" answers go to `G2`. The side answer
/// is translated to a distance by [`side_distance`]. The first time `G1` has
/// exactly three components, two extra "opposite" pairs are given away so
/// that `G1` becomes connected.
#[derive(Debug, Clone)]
pub struct DoubleStarAdversary {
    n: usize,
    centers: Option<(Vertex, Vertex)>,
    dsu: ParityDsu,
    g1: BTreeSet<(Vertex, Vertex)>,
    g2: BTreeSet<(Vertex, Vertex)>,
    answers: BTreeMap<(Vertex, Vertex), u32>,
    revealed: Vec<(Vertex, Vertex, u32)>,
    augmentation: Option<Augmentation>,
    ended: bool,
}

impl DoubleStarAdversary {
    /// Needs `n >= 5`: on four vertices no real caterpillar exists.
    pub fn new(n: usize) -> Result<Self> {
        if n < 5 {
            return Err(ProbeError::Domain(format!(
                "the double-star adversary needs n >= 5, got {n}"
            )));
        }
        Ok(Self {
            n,
            centers: None,
            dsu: ParityDsu::new(n),
            g1: BTreeSet::new(),
            g2: BTreeSet::new(),
            answers: BTreeMap::new(),
            revealed: Vec::new(),
            augmentation: None,
            ended: false,
        })
    }

    pub fn centers(&self) -> Option<(Vertex, Vertex)> {
        self.centers
    }

    /// "Opposite" pairs, the revealed ones included.
    pub fn g1_edges(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.g1
    }

    /// "Same" pairs.
    pub fn g2_edges(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.g2
    }

    pub fn components(&self) -> usize {
        self.dsu.components()
    }

    pub fn special_moment_passed(&self) -> bool {
        self.augmentation.is_some()
    }

    pub fn augmentation(&self) -> Option<&Augmentation> {
        self.augmentation.as_ref()
    }

    /// Pairs given away at the special moment, as `(a, b, distance)`.
    pub fn revealed(&self) -> &[(Vertex, Vertex, u32)] {
        &self.revealed
    }

    pub fn ended(&self) -> bool {
        self.ended
    }

    /// Every distance the questioner knows: answers plus revealed pairs.
    pub fn facts(&self) -> Vec<(Vertex, Vertex, u32)> {
        let mut out: Vec<_> = self.answers.iter().map(|(&(a, b), &d)| (a, b, d)).collect();
        out.extend(self.revealed.iter().copied());
        out
    }

    /// Answers one query; see the type docs for the rule.
    pub fn ds_answer(&mut self, x: Vertex, y: Vertex) -> Result<Reply> {
        check_pair(self.n, x, y)?;
        if self.ended {
            return Err(ProbeError::GameOver(
                "no real caterpillar is consistent any more".into(),
            ));
        }
        if let Some(&d) = self.answers.get(&ordered(x, y)) {
            return Ok(Reply::plain(d));
        }
        let mut reply = match self.centers {
            None => {
                self.centers = Some((x, y));
                self.dsu.union(x, y, true);
                self.g1.insert(ordered(x, y));
                Reply {
                    distance: 1,
                    free_info: Some(FreeInfo::Declaration { centers: (x, y) }),
                }
            }
            Some((u, v)) => {
                let same = self.dsu.same_part(x, y);
                if same {
                    self.g2.insert(ordered(x, y));
                } else {
                    self.dsu.union(x, y, true);
                    self.g1.insert(ordered(x, y));
                }
                Reply::plain(side_distance(u, v, x, y, same))
            }
        };
        self.answers.insert(ordered(x, y), reply.distance);

        if self.augmentation.is_none() && self.dsu.components() == 3 {
            let (u, v) = self.centers.expect("set by the first query");
            let g1: Vec<_> = self.g1.iter().copied().collect();
            let aug = three_components_augment(self.n, &g1, u)?;
            for (a, b) in aug.edges {
                if !self.dsu.union(a, b, true) {
                    return Err(ProbeError::InvariantViolation(format!(
                        "revealed pair ({a},{b}) breaks bipartiteness"
                    )));
                }
                self.g1.insert(ordered(a, b));
                self.revealed.push((a, b, side_distance(u, v, a, b, false)));
            }
            self.augmentation = Some(aug);
            reply.free_info = Some(FreeInfo::Revealed {
                pairs: self.revealed.clone(),
            });
        }
        self.ended = !self.caterpillar_consistent();
        Ok(reply)
    }

    /// Whether a real caterpillar is still consistent, by the structural test.
    ///
    /// With three or more components some component's part can always be
    /// flipped away from a vertex of another component. Once `G1` is
    /// connected the sides are fixed, and a caterpillar exists when some
    /// `G2`-component `K` of one side, avoiding that side's center and
    /// leaving at least one other non-center vertex on the side, has a
    /// non-center vertex on the other side with no `G1` edge into `K`.
    pub fn caterpillar_consistent(&self) -> bool {
        if self.centers.is_none() || self.dsu.components() >= 3 {
            return true;
        }
        self.find_move(&self.orientation()).is_some()
    }

    /// `|E(G1 ∪ G2)|` at the end of the game, checked against `2n - 7`.
    ///
    /// The revealed pairs are among the edges, so the questioner asked at
    /// least two fewer queries than the returned count.
    pub fn ds_certificate(&self) -> Result<usize> {
        if !self.ended {
            return Err(ProbeError::Protocol(
                "the certificate exists only once the game has ended".into(),
            ));
        }
        let edges = self.g1.len() + self.g2.len();
        let floor = 2 * self.n - 7;
        if edges < floor {
            return Err(ProbeError::InvariantViolation(format!(
                "ended with {edges} edges in G1 and G2, below 2n - 7 = {floor}"
            )));
        }
        Ok(edges)
    }

    /// Side of every vertex in the witness double star (`true` for the side of `u`).
    ///
    /// Components of `G1` other than the centers' one are free to flip. The
    /// first of them puts the part of its smallest vertex next to `u`, the
    /// second puts the part of its smallest vertex next to `v`, and the rest
    /// follow the first; both sides then have a leaf.
    fn orientation(&self) -> Vec<bool> {
        let n = self.n;
        let Some((u, _)) = self.centers else {
            return vec![true; n];
        };
        let (root_u, par_u) = self.dsu.find(u);
        let mut flip: BTreeMap<Vertex, bool> = BTreeMap::new();
        flip.insert(root_u, par_u);
        let mut seen = 0;
        for w in 0..n {
            let (r, p) = self.dsu.find(w);
            if flip.contains_key(&r) {
                continue;
            }
            // `w` is the smallest vertex of its component
            let toward_u = seen != 1;
            flip.insert(r, if toward_u { p } else { !p });
            seen += 1;
        }
        (0..n)
            .map(|w| {
                let (r, p) = self.dsu.find(w);
                p == flip[&r]
            })
            .collect()
    }

    fn find_move(&self, side_u: &[bool]) -> Option<CaterpillarMove> {
        let (u, v) = self.centers?;
        let n = self.n;
        let mut g1_adj = vec![Vec::new(); n];
        for &(a, b) in &self.g1 {
            g1_adj[a].push(b);
            g1_adj[b].push(a);
        }
        for (center, other, on_side) in [(u, v, true), (v, u, false)] {
            let side: Vec<Vertex> = (0..n).filter(|&w| side_u[w] == on_side).collect();
            let across: Vec<Vertex> = (0..n).filter(|&w| side_u[w] != on_side && w != other).collect();
            let mut k_dsu = ParityDsu::new(n);
            for &(a, b) in &self.g2 {
                if side_u[a] == on_side && side_u[b] == on_side {
                    k_dsu.union(a, b, false);
                }
            }
            let mut groups: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
            for &w in &side {
                groups.entry(k_dsu.find(w).0).or_default().push(w);
            }
            let mut groups: Vec<Vec<Vertex>> = groups.into_values().collect();
            groups.sort_unstable_by_key(|g| g[0]);
            for k in groups {
                if k.contains(&center) || k.len() + 1 >= side.len() {
                    continue;
                }
                let mut in_k = vec![false; n];
                for &w in &k {
                    in_k[w] = true;
                }
                if let Some(&host) = across.iter().find(|&&x| !g1_adj[x].iter().any(|&w| in_k[w])) {
                    return Some(CaterpillarMove { center, host, moved: k });
                }
            }
        }
        None
    }

    /// A consistent double star with centers `u`, `v` and a leaf on each side.
    pub fn witness_double_star(&self) -> Option<LabeledTree> {
        let (u, v) = self.centers?;
        let side_u = self.orientation();
        let u_leaves: Vec<Vertex> = (0..self.n).filter(|&w| side_u[w] && w != u).collect();
        Some(LabeledTree::double_star(self.n, u, v, &u_leaves).expect("centers are distinct"))
    }

    /// A consistent real caterpillar, built by moving one `G2`-component to a
    /// vertex of the other side; `None` once the game has ended.
    pub fn witness_caterpillar(&self) -> Option<LabeledTree> {
        let (u, v) = self.centers?;
        let side_u = self.orientation();
        let mv = self.find_move(&side_u)?;
        let mut edges = vec![(u, v)];
        for w in 0..self.n {
            if w == u || w == v {
                continue;
            }
            let hub = if mv.moved.contains(&w) {
                mv.host
            } else if side_u[w] {
                u
            } else {
                v
            };
            edges.push((hub, w));
        }
        Some(LabeledTree::new(self.n, edges).expect("a double star with one part moved is a tree"))
    }
}

impl Adversary for DoubleStarAdversary {
    fn n(&self) -> usize {
        self.n
    }

    fn answer(&mut self, x: Vertex, y: Vertex) -> Result<Reply> {
        self.ds_answer(x, y)
    }

    fn resolved(&self) -> bool {
        self.ended
    }

    fn witness(&self) -> LabeledTree {
        self.witness_double_star()
            .unwrap_or_else(|| LabeledTree::double_star(self.n, 0, 1, &[2]).expect("n >= 5"))
    }
}
