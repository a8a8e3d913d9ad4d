use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{ProbeError, Result};
use crate::tree::{ordered, Vertex};

/// Which branch of the construction produced the two edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AugmentCase {
    /// Some other component's spanning tree has a leaf in its not-larger part.
    LeafInSmallerPart,
    /// No such leaf; the less lopsided other component has a larger part of size at least two.
    LargerPartLeaf,
    /// No such leaf; the less lopsided other component is a single vertex.
    IsolatedVertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Augmentation {
    pub edges: [(Vertex, Vertex); 2],
    /// Leaf of the spanning tree, outside the anchor's component, in the not-larger part.
    pub leaf: Vertex,
    pub case: AugmentCase,
}

struct Component {
    /// `parts[c]` holds the vertices of BFS color `c`; color 0 contains the minimum vertex.
    parts: [Vec<Vertex>; 2],
    color: Vec<(Vertex, usize)>,
    /// Vertices of degree one in the BFS spanning tree.
    tree_leaves: Vec<Vertex>,
}

impl Component {
    fn len(&self) -> usize {
        self.parts[0].len() + self.parts[1].len()
    }

    fn color_of(&self, v: Vertex) -> usize {
        self.color.iter().find(|&&(w, _)| w == v).expect("member").1
    }

    /// Index of the smaller part; color 0 on a tie.
    fn small(&self) -> usize {
        usize::from(self.parts[1].len() < self.parts[0].len())
    }

    fn imbalance(&self) -> usize {
        self.parts[0].len().abs_diff(self.parts[1].len())
    }

    /// Smallest spanning-tree leaf in a part that may play the smaller role.
    fn leaf_in_small_role(&self) -> Option<(Vertex, usize)> {
        let mut roles = vec![self.small()];
        if self.parts[0].len() == self.parts[1].len() {
            roles = vec![0, 1];
        }
        let mut best: Option<(Vertex, usize)> = None;
        for &w in &self.tree_leaves {
            let c = self.color_of(w);
            if roles.contains(&c) && best.is_none_or(|(b, _)| w < b) {
                best = Some((w, c));
            }
        }
        best
    }
}

/// Adds two edges to a bipartite graph with exactly three components so that
/// the result is connected, bipartite, and has a spanning tree with a leaf
/// outside the component of `anchor` lying in the not-larger part.
///
/// Spanning trees are BFS trees from each component's smallest vertex; every
/// choice of endpoint takes the smallest eligible index.
pub fn three_components_augment(n: usize, edges: &[(Vertex, Vertex)], anchor: Vertex) -> Result<Augmentation> {
    if anchor >= n {
        return Err(ProbeError::OutOfRange { vertex: anchor, n });
    }
    let comps = components(n, edges)?;
    if comps.len() != 3 {
        return Err(ProbeError::Domain(format!(
            "expected 3 components, found {}",
            comps.len()
        )));
    }
    let ci = comps
        .iter()
        .position(|c| c.color.iter().any(|&(v, _)| v == anchor))
        .expect("anchor lies in some component");
    let c = &comps[ci];
    if c.len() < 2 {
        return Err(ProbeError::Domain(
            "the anchor's component must have at least two vertices".into(),
        ));
    }
    let mut others: Vec<&Component> = comps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != ci)
        .map(|(_, k)| k)
        .collect();
    let c1 = &c.parts[c.small()];
    let c2 = &c.parts[1 - c.small()];
    let first = |p: &[Vertex]| *p.iter().min().expect("nonempty part");

    for (a, b) in [(0, 1), (1, 0)] {
        if let Some((w, role)) = others[a].leaf_in_small_role() {
            let x = first(c1);
            let y = first(&others[a].parts[1 - role]);
            let z = first(&others[b].parts[1 - others[b].small()]);
            return Ok(Augmentation {
                edges: [ordered(x, y), ordered(x, z)],
                leaf: w,
                case: AugmentCase::LeafInSmallerPart,
            });
        }
    }

    // both other components are strictly unbalanced with every tree leaf in the larger part
    if others[0].imbalance() < others[1].imbalance() {
        others.swap(0, 1);
    }
    let (cp, cpp) = (others[0], others[1]);
    let cp2 = &cp.parts[1 - cp.small()];
    let cpp2 = &cpp.parts[1 - cpp.small()];
    let (y, z, t) = (first(c2), first(cp2), first(c1));
    if cpp2.len() >= 2 {
        let x = *cpp.tree_leaves.iter().min().expect("a tree with an edge has leaves");
        let x2 = *cpp2
            .iter()
            .filter(|&&v| v != x)
            .min()
            .expect("two vertices in the part");
        Ok(Augmentation {
            edges: [ordered(x2, y), ordered(z, t)],
            leaf: x,
            case: AugmentCase::LargerPartLeaf,
        })
    } else if cpp.len() == 1 {
        let x = cpp2[0];
        Ok(Augmentation {
            edges: [ordered(x, y), ordered(z, t)],
            leaf: x,
            case: AugmentCase::IsolatedVertex,
        })
    } else {
        Err(ProbeError::InvariantViolation(
            "a one-vertex larger part next to a nonempty smaller part".into(),
        ))
    }
}

fn components(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Vec<Component>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(ProbeError::OutOfRange { vertex: a.max(b), n });
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color = vec![usize::MAX; n];
    let mut tree_deg = vec![0usize; n];
    let mut out = Vec::new();
    for s in 0..n {
        if color[s] != usize::MAX {
            continue;
        }
        color[s] = 0;
        let mut members = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if color[w] == usize::MAX {
                    color[w] = 1 - color[v];
                    tree_deg[v] += 1;
                    tree_deg[w] += 1;
                    members.push(w);
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return Err(ProbeError::Domain(format!("edge ({v},{w}) closes an odd cycle")));
                }
            }
        }
        let mut parts = [Vec::new(), Vec::new()];
        for &v in &members {
            parts[color[v]].push(v);
        }
        let mut tree_leaves: Vec<Vertex> = members.iter().copied().filter(|&v| tree_deg[v] == 1).collect();
        tree_leaves.sort_unstable();
        out.push(Component {
            parts,
            color: members.iter().map(|&v| (v, color[v])).collect(),
            tree_leaves,
        });
    }
    Ok(out)
}
