mod common;

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treeprobe::tree::*;
use treeprobe::{AnsweredQueryGraph, LabeledTree, QuerySession};

use common::*;

#[test]
fn enumeration_matches_subset_scan() {
    for n in 2..=7 {
        let ours: BTreeSet<Vec<(usize, usize)>> = enumerate_trees(n).unwrap().map(|t| t.edges().to_vec()).collect();
        let oracle: BTreeSet<Vec<(usize, usize)>> = edge_subset_trees(n).into_iter().collect();
        assert_eq!(ours.len() as u64, tree_count(n));
        assert_eq!(ours, oracle, "n = {n}");
        assert_eq!(tree_count(n), (n as u64).pow(n as u32 - 2));
    }
}

#[test]
fn indexed_access_agrees_with_the_stream() {
    for n in 3..=6 {
        for (i, t) in enumerate_trees(n).unwrap().enumerate() {
            assert_eq!(tree_at_index(n, i as u64), t);
        }
    }
}

#[test]
fn canonical_code_matches_brute_force_isomorphism() {
    for n in 1..=6 {
        let trees: Vec<LabeledTree> = if n == 1 {
            vec![LabeledTree::new(1, []).unwrap()]
        } else {
            enumerate_trees(n).unwrap().collect()
        };
        // two codes are equal iff two brute-force forms are equal: compare the induced partitions
        let mut by_form: HashMap<Vec<(usize, usize)>, CanonicalCode> = HashMap::new();
        let mut by_code: HashMap<CanonicalCode, Vec<(usize, usize)>> = HashMap::new();
        for t in &trees {
            let form = brute_form(n, t.edges());
            let code = canonical_code(t);
            assert_eq!(
                by_form.entry(form.clone()).or_insert_with(|| code.clone()),
                &code,
                "n = {n}"
            );
            assert_eq!(by_code.entry(code).or_insert(form.clone()), &form, "n = {n}");
        }
    }
}

#[test]
fn unlabeled_tree_counts() {
    let classes: Vec<usize> = (2..=8)
        .map(|n| {
            enumerate_trees(n)
                .unwrap()
                .map(|t| canonical_code(&t))
                .collect::<BTreeSet<_>>()
                .len()
        })
        .collect();
    assert_eq!(classes, [1, 1, 2, 3, 6, 11, 23]);
}

#[test]
fn metrics_match_bfs_and_satisfy_four_point() {
    for n in 2..=7 {
        for t in enumerate_trees(n).unwrap() {
            let oracle = bfs_distances(n, t.edges());
            let m = all_pairs_distance(&t);
            for a in 0..n {
                assert_eq!(m.row(a), &oracle[a][..]);
            }
            assert!(m.satisfies_four_point());
            assert!(m.is_well_formed());
            if n <= 6 {
                assert!(four_point(&oracle));
            }
            let (a, b, d) = diameter_pair(&t).unwrap();
            assert_eq!(d, diameter(&oracle));
            assert_eq!(oracle[a][b], d);
            assert_eq!(m.realize().as_ref(), Some(&t));
        }
    }
}

#[test]
fn four_point_rejects_non_tree_metrics() {
    // the 4-cycle metric
    let c4 = DistanceMatrix::from_raw(4, vec![0, 1, 2, 1, 1, 0, 1, 2, 2, 1, 0, 1, 1, 2, 1, 0]);
    assert!(!c4.satisfies_four_point());
    assert!(c4.realize().is_none());
}

#[test]
fn tree_files_in_both_forms() {
    let edges: LabeledTree = serde_json::from_str(r#"{"n": 4, "edges": [[0,1],[1,2],[1,3]]}"#).unwrap();
    let prufer: LabeledTree = serde_json::from_str(r#"{"n": 4, "prufer": [1, 1]}"#).unwrap();
    assert_eq!(edges, prufer);
    assert_eq!(edges, LabeledTree::star(4, 1));
    let back: LabeledTree = serde_json::from_str(&serde_json::to_string(&edges).unwrap()).unwrap();
    assert_eq!(back, edges);
    for bad in [
        r#"{"n": 4, "edges": [[0,1],[1,2]]}"#,
        r#"{"n": 4, "edges": [[0,1],[1,2],[2,0]]}"#,
        r#"{"n": 3, "edges": [[0,1],[1,5]]}"#,
        r#"{"n": 4, "prufer": [1]}"#,
        r#"{"n": 4, "prufer": [1, 9]}"#,
    ] {
        assert!(serde_json::from_str::<LabeledTree>(bad).is_err(), "{bad}");
    }
}

#[test]
fn sessions_count_distinct_pairs_only() {
    let mut s = QuerySession::new(LabeledTree::path(5), Some(2));
    use treeprobe::DistanceOracle;
    assert_eq!(s.ask(0, 4).unwrap(), 4);
    assert_eq!(s.ask(4, 0).unwrap(), 4);
    assert_eq!(s.ask(1, 2).unwrap(), 1);
    assert_eq!(s.count(), 2);
    assert!(s.ask(0, 2).is_err());
    assert!(s.ask(3, 3).is_err());
    let transcript: AnsweredQueryGraph = s.into_transcript();
    let text = serde_json::to_string(&transcript).unwrap();
    assert_eq!(serde_json::from_str::<AnsweredQueryGraph>(&text).unwrap(), transcript);
}

#[test]
fn consistency_check_finds_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let t = random_tree(7, &mut rng);
        let q = AnsweredQueryGraph::from_tree_on_pairs(&t, [(0, 1), (2, 5), (3, 6), (1, 4)]);
        let w = treeprobe::check_consistency(&q).unwrap().unwrap();
        assert!(q.agrees_with(&w.distance_matrix()));
    }
    let mut bad = AnsweredQueryGraph::new(5);
    bad.insert(0, 1, 1).unwrap();
    bad.insert(1, 2, 1).unwrap();
    bad.insert(0, 2, 1).unwrap();
    assert_eq!(treeprobe::check_consistency(&bad).unwrap(), None);
}

fn arb_tree() -> impl Strategy<Value = LabeledTree> {
    (2usize..40)
        .prop_flat_map(|n| proptest::collection::vec(0..n, n - 2).prop_map(move |seq| prufer_decode(&seq, n).unwrap()))
}

proptest! {
    #[test]
    fn prufer_round_trip(t in arb_tree()) {
        prop_assert_eq!(prufer_decode(&prufer_encode(&t), t.n()).unwrap(), t);
    }

    #[test]
    fn code_ignores_labels(t in arb_tree(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = random_permutation(t.n(), &mut rng);
        prop_assert_eq!(canonical_code(&t.relabel(&perm)), canonical_code(&t));
    }

    #[test]
    fn random_metrics_are_tree_metrics(t in arb_tree()) {
        let m = t.distance_matrix();
        prop_assert!(m.satisfies_four_point());
        prop_assert_eq!(m.realize(), Some(t.clone()));
        let oracle = bfs_distances(t.n(), t.edges());
        prop_assert_eq!(m.diameter(), diameter(&oracle));
    }
}
