use crate::tree::Vertex;

/// Union-find that also tracks, for every vertex, the parity of its side
/// relative to its root. Joining two vertices with `opposite = true` keeps
/// each component properly two-colored.
#[derive(Debug, Clone)]
pub(crate) struct ParityDsu {
    parent: Vec<Vertex>,
    parity: Vec<bool>,
    size: Vec<usize>,
    components: usize,
}

impl ParityDsu {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            parity: vec![false; n],
            size: vec![1; n],
            components: n,
        }
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }

    /// Root of `v` and the parity of `v` relative to it.
    pub(crate) fn find(&self, mut v: Vertex) -> (Vertex, bool) {
        let mut p = false;
        while self.parent[v] != v {
            p ^= self.parity[v];
            v = self.parent[v];
        }
        (v, p)
    }

    /// Joins `a` and `b` so that their parities differ iff `opposite`.
    /// Returns false, leaving the structure untouched, on a parity conflict.
    pub(crate) fn union(&mut self, a: Vertex, b: Vertex, opposite: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == opposite;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.parity[small] = pa ^ pb ^ opposite;
        self.size[big] += self.size[small];
        self.components -= 1;
        true
    }

    /// Same component and same parity.
    pub(crate) fn same_part(&self, a: Vertex, b: Vertex) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        ra == rb && pa == pb
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parities_follow_opposite_unions() {
        let mut d = ParityDsu::new(5);
        assert!(d.union(0, 1, true));
        assert!(d.union(1, 2, true));
        assert!(d.same_part(0, 2));
        assert!(!d.same_part(0, 1));
        assert!(!d.union(0, 2, true));
        assert!(d.union(3, 4, false));
        assert_eq!(d.components(), 2);
        assert!(d.find(3).0 == d.find(4).0 && d.find(2).0 != d.find(3).0);
    }
}
