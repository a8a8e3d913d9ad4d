mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treeprobe::adaptive::*;
use treeprobe::tree::*;
use treeprobe::{LabeledTree, ProbeError, QuerySession};

use common::{bfs_distances, diameter};

fn check_diameter(t: &LabeledTree) -> usize {
    let mut s = QuerySession::new(t.clone(), None);
    let r = find_diameter_pair(&mut s).unwrap();
    let d = bfs_distances(t.n(), t.edges());
    let (a, b) = r.pair;
    assert_eq!(d[a][b], diameter(&d), "{t:?}");
    assert_eq!(r.distance, d[a][b]);
    if let Some((v, x)) = r.inferred {
        // the deduced distance is measured from the far end of the first sweep
        assert!(d.iter().any(|row| row[v] == x));
    }
    assert_eq!(r.queries_used, s.count());
    r.queries_used
}

#[test]
fn diameter_exhaustive_small() {
    for n in 2..=7 {
        let worst = enumerate_trees(n).unwrap().map(|t| check_diameter(&t)).max().unwrap();
        assert!(worst <= diameter_ceiling(n).max(1), "n = {n}: {worst}");
        if n >= 4 {
            assert_eq!(worst, 2 * n - 4);
        }
    }
}

#[test]
fn reconstruction_exhaustive_small() {
    for n in 2..=7 {
        for t in enumerate_trees(n).unwrap() {
            let mut s = QuerySession::new(t.clone(), None);
            let r = reconstruct_tree(&mut s).unwrap();
            assert_eq!(r.tree, t);
            assert!(r.queries_used <= reconstruction_ceiling(n), "{t:?}: {}", r.queries_used);
        }
    }
}

#[test]
fn reconstruction_ceiling_is_reached() {
    // two equal levels of middles and leaves make every cross pair necessary
    for n in [5, 7, 9] {
        let k = (n - 1) / 2;
        let mut edges: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
        edges.extend((k + 1..n).map(|w| (1, w)));
        let t = LabeledTree::new(n, edges).unwrap();
        let mut s = QuerySession::new(t.clone(), None);
        let r = reconstruct_tree(&mut s).unwrap();
        assert_eq!(r.tree, t);
        assert!(r.queries_used <= reconstruction_ceiling(n));
    }
}

#[test]
fn spiders_random_and_relabeled() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 7..=30 {
        for _ in 0..20 {
            let t = random_spider(n, &mut rng).to_tree();
            let mut s = QuerySession::new(t.clone(), None);
            let r = identify_spider(&mut s).unwrap();
            assert_eq!(r.tree, t);
            assert!(r.queries_used <= spider_ceiling(n));
        }
    }
}

#[test]
fn spider_rejects_small_n() {
    let t = SpiderRoles::canonical(6).unwrap().to_tree();
    let mut s = QuerySession::new(t, None);
    assert!(matches!(identify_spider(&mut s), Err(ProbeError::Domain(_))));
}

#[test]
fn budgets_surface_as_errors() {
    let mut s = QuerySession::new(LabeledTree::path(10), Some(5));
    assert!(matches!(
        find_diameter_pair(&mut s),
        Err(ProbeError::BudgetExhausted { budget: 5 })
    ));
}

#[test]
fn random_large_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..60 {
        let n = rng.gen_range(8..=120);
        let t = random_tree(n, &mut rng);
        assert!(check_diameter(&t) <= 2 * n - 4);
        let mut s = QuerySession::new(t.clone(), None);
        assert_eq!(reconstruct_tree(&mut s).unwrap().tree, t);
    }
}

proptest! {
    #[test]
    fn diameter_pair_on_any_tree(seq in proptest::collection::vec(0usize..1000, 2..60)) {
        let n = seq.len() + 2;
        let seq: Vec<usize> = seq.into_iter().map(|x| x % n).collect();
        let t = prufer_decode(&seq, n).unwrap();
        prop_assert!(check_diameter(&t) <= 2 * n - 4);
    }

    #[test]
    fn reconstruction_on_any_tree(seq in proptest::collection::vec(0usize..1000, 0..40)) {
        let n = seq.len() + 2;
        let seq: Vec<usize> = seq.into_iter().map(|x| x % n).collect();
        let t = prufer_decode(&seq, n).unwrap();
        let mut s = QuerySession::new(t.clone(), None);
        let r = reconstruct_tree(&mut s).unwrap();
        prop_assert_eq!(r.tree, t);
        prop_assert!(r.queries_used <= reconstruction_ceiling(n));
    }
}
