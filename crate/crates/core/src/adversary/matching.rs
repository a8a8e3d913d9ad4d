/// Bipartite graph given by an allowed-pair matrix, left side first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartite {
    left: usize,
    right: usize,
    allowed: Vec<Vec<bool>>,
}

impl Bipartite {
    /// Complete bipartite graph.
    pub fn complete(left: usize, right: usize) -> Self {
        Self {
            left,
            right,
            allowed: vec![vec![true; right]; left],
        }
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn allowed(&self, l: usize, r: usize) -> bool {
        self.allowed[l][r]
    }

    pub fn set(&mut self, l: usize, r: usize, allowed: bool) {
        self.allowed[l][r] = allowed;
    }

    /// Keeps `(l, r)` as the only option for both `l` and `r`.
    pub fn fix(&mut self, l: usize, r: usize) {
        for r2 in 0..self.right {
            self.allowed[l][r2] = r2 == r;
        }
        for l2 in 0..self.left {
            if l2 != l {
                self.allowed[l2][r] = false;
            }
        }
    }

    /// True if every matching that saturates the left side uses `(l, r)`.
    /// Also true when no saturating matching exists at all.
    pub fn forced(&self, l: usize, r: usize) -> bool {
        let mut without = self.clone();
        without.set(l, r, false);
        leaf_saturating_matching(&without).is_none()
    }
}

/// A matching that covers every left vertex (`result[l]` is its partner), by augmenting paths.
pub fn leaf_saturating_matching(g: &Bipartite) -> Option<Vec<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; g.right];
    for l in 0..g.left {
        let mut visited = vec![false; g.right];
        if !augment(g, l, &mut visited, &mut owner) {
            return None;
        }
    }
    let mut result = vec![usize::MAX; g.left];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = *o {
            result[l] = r;
        }
    }
    Some(result)
}

fn augment(g: &Bipartite, l: usize, visited: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for r in 0..g.right {
        if !g.allowed[l][r] || visited[r] {
            continue;
        }
        visited[r] = true;
        let free = match owner[r] {
            None => true,
            Some(other) => augment(g, other, visited, owner),
        };
        if free {
            owner[r] = Some(l);
            return true;
        }
    }
    false
}
