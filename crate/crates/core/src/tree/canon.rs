use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LabeledTree, Vertex};

/// Byte string identifying the isomorphism class of an unlabeled tree.
///
/// The code is the AHU parenthesization of the tree rooted at its center;
/// for bicentral trees both centers are tried and the smaller string kept.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

pub fn canonical_code(tree: &LabeledTree) -> CanonicalCode {
    let code = centers(tree)
        .into_iter()
        .map(|c| rooted_code(tree, c))
        .min()
        .expect("every tree has a center");
    CanonicalCode(code)
}

/// One or two central vertices, found by peeling leaves layer by layer.
fn centers(tree: &LabeledTree) -> Vec<Vertex> {
    let n = tree.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in tree.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(tree: &LabeledTree, root: Vertex) -> String {
    // iterative post-order so long paths do not overflow the stack
    let n = tree.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in tree.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut child_codes: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut code = String::new();
    for &x in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[x]);
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        if x == root {
            code = s;
        } else {
            child_codes[parent[x]].push(s);
        }
    }
    code
}
