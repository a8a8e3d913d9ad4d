use serde::{Deserialize, Serialize};

use crate::error::{ProbeError, Result};
use crate::session::DistanceOracle;
use crate::tree::{LabeledTree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionResult {
    pub tree: LabeledTree,
    pub queries_used: usize,
}

/// Query ceiling of [`reconstruct_tree`]: `(n-1) + floor((n-1)^2 / 4)`.
pub fn reconstruction_ceiling(n: usize) -> usize {
    let m = n.saturating_sub(1);
    m + m * m / 4
}

/// Level-by-level reconstruction.
///
/// Vertex 0 is asked against everyone, which sorts the vertices into
/// distance levels. Every tree edge joins consecutive levels, so asking all
/// pairs between levels `l` and `l + 1` (for `l >= 1`; level 1 hangs off 0
/// by definition) finds every edge.
pub fn reconstruct_tree<O: DistanceOracle + ?Sized>(oracle: &mut O) -> Result<ReconstructionResult> {
    let n = oracle.n();
    if n < 2 {
        return Err(ProbeError::Domain("need at least two vertices".into()));
    }
    let start = oracle.queries_used();
    let root = 0;
    let mut levels: Vec<Vec<Vertex>> = vec![vec![root]];
    for w in 1..n {
        let d = oracle.ask(root, w)? as usize;
        if levels.len() <= d {
            levels.resize(d + 1, Vec::new());
        }
        levels[d].push(w);
    }
    let mut edges: Vec<(Vertex, Vertex)> = levels[1].iter().map(|&w| (root, w)).collect();
    for l in 1..levels.len().saturating_sub(1) {
        for &a in &levels[l] {
            for &b in &levels[l + 1] {
                if oracle.ask(a, b)? == 1 {
                    edges.push((a, b));
                }
            }
        }
    }
    let tree = LabeledTree::new(n, edges)
        .map_err(|e| ProbeError::InvariantViolation(format!("answers do not describe a tree: {e}")))?;
    Ok(ReconstructionResult {
        tree,
        queries_used: oracle.queries_used() - start,
    })
}
