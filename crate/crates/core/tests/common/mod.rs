//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the crate's own metric, enumeration or isomorphism code.

#![allow(dead_code)]

use itertools::Itertools;

pub type Edges = Vec<(usize, usize)>;

/// Every labeled tree on `n` vertices, as sorted edge lists, by scanning all
/// `(n-1)`-subsets of pairs for acyclic ones.
pub fn edge_subset_trees(n: usize) -> Vec<Edges> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    pairs
        .into_iter()
        .combinations(n - 1)
        .filter(|set| {
            let mut parent: Vec<usize> = (0..n).collect();
            fn root(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            set.iter().all(|&(a, b)| {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                parent[ra] = rb;
                ra != rb
            })
        })
        .collect()
}

/// All-pairs hop distances by breadth-first search from every vertex.
pub fn bfs_distances(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    (0..n)
        .map(|s| {
            let mut d = vec![u32::MAX; n];
            d[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if d[y] == u32::MAX {
                        d[y] = d[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            d
        })
        .collect()
}

pub fn diameter(d: &[Vec<u32>]) -> u32 {
    d.iter().flatten().copied().max().unwrap_or(0)
}

/// Four-point condition on every quadruple, including repeated vertices.
pub fn four_point(d: &[Vec<u32>]) -> bool {
    let n = d.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                (0..n).all(|e| {
                    let mut s = [d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]];
                    s.sort_unstable();
                    s[1] == s[2]
                })
            })
        })
    })
}

/// Smallest sorted edge list over all relabelings; equal iff isomorphic.
pub fn brute_form(n: usize, edges: &[(usize, usize)]) -> Edges {
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut e: Edges = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .expect("at least one permutation")
}
