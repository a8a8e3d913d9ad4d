use rand::seq::SliceRandom;
use rand::Rng;

use super::{prufer_decode, LabeledTree, SpiderRoles, Vertex};

/// Uniformly random labeled tree, via a uniform Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LabeledTree {
    assert!(n >= 1);
    if n == 1 {
        return LabeledTree::new(1, []).expect("single vertex");
    }
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(&seq, n).expect("in-range sequence")
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vertex> {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Spider with uniformly random role placement.
pub fn random_spider<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpiderRoles {
    let perm = random_permutation(n, rng);
    SpiderRoles::canonical(n).expect("n >= 3").relabel(&perm)
}
