use std::collections::HashMap;

use serde_json::Value;
use treeprobe::adaptive::{find_diameter_pair, reconstruct_tree};
use treeprobe::solver::*;
use treeprobe::tree::enumerate_trees;
use treeprobe::{LabeledTree, QuerySession};

/// Plain minimax over explicit tree sets, memoized on the sorted set itself.
struct Oracle {
    pairs: Vec<(usize, usize)>,
    dist: Vec<Vec<u32>>,
    diam: Vec<u32>,
    /// Sorted degree sequence; a complete isomorphism invariant for n <= 5.
    degrees: Vec<Vec<usize>>,
    goal: Goal,
    memo: HashMap<Vec<usize>, u32>,
}

impl Oracle {
    fn new(n: usize, goal: Goal) -> Self {
        let pairs: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let trees: Vec<LabeledTree> = enumerate_trees(n).unwrap().collect();
        let dist: Vec<Vec<u32>> = trees
            .iter()
            .map(|t| {
                let rows: Vec<Vec<u32>> = (0..n).map(|v| t.distances_from(v)).collect();
                pairs.iter().map(|&(a, b)| rows[a][b]).collect()
            })
            .collect();
        let diam = dist.iter().map(|d| d.iter().copied().max().unwrap_or(0)).collect();
        let degrees = trees
            .iter()
            .map(|t| {
                let mut d: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
                d.sort_unstable();
                d
            })
            .collect();
        Self {
            pairs,
            dist,
            diam,
            degrees,
            goal,
            memo: HashMap::new(),
        }
    }

    fn all(&self) -> Vec<usize> {
        (0..self.dist.len()).collect()
    }

    fn done(&self, set: &[usize]) -> bool {
        match self.goal {
            Goal::ExactTree => set.len() == 1,
            Goal::IsoClass => set.iter().all(|&t| self.degrees[t] == self.degrees[set[0]]),
            Goal::MaxDistPair => (0..self.pairs.len()).any(|p| set.iter().all(|&t| self.dist[t][p] == self.diam[t])),
        }
    }

    fn parts(&self, set: &[usize], p: usize) -> Vec<Vec<usize>> {
        let mut by: HashMap<u32, Vec<usize>> = HashMap::new();
        for &t in set {
            by.entry(self.dist[t][p]).or_default().push(t);
        }
        by.into_values().collect()
    }

    fn value(&mut self, set: Vec<usize>) -> u32 {
        if self.done(&set) {
            return 0;
        }
        if let Some(&v) = self.memo.get(&set) {
            return v;
        }
        let mut best = u32::MAX;
        for p in 0..self.pairs.len() {
            let parts = self.parts(&set, p);
            if parts.len() < 2 {
                continue;
            }
            let worst = parts.into_iter().map(|s| self.value(s)).max().unwrap();
            best = best.min(1 + worst);
        }
        self.memo.insert(set, best);
        best
    }

    /// Smallest query set, over every subset of pairs, whose answer classes all meet the goal.
    fn nonadaptive(&self) -> u32 {
        let m = self.pairs.len();
        let mut best = m as u32;
        for mask in 0u32..(1 << m) {
            let k = mask.count_ones();
            if k >= best {
                continue;
            }
            let mut classes: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
            for t in self.all() {
                let key = (0..m).filter(|p| mask >> p & 1 == 1).map(|p| self.dist[t][p]).collect();
                classes.entry(key).or_default().push(t);
            }
            if classes.values().all(|s| self.done(s)) {
                best = k;
            }
        }
        best
    }
}

fn regression() -> Value {
    serde_json::from_str(include_str!("../data/solver_regression.json")).unwrap()
}

fn key(goal: Goal, adaptive: bool) -> String {
    let letter = match goal {
        Goal::MaxDistPair => "f",
        Goal::ExactTree => "g",
        Goal::IsoClass => "h",
    };
    format!("{letter}_{}", if adaptive { "A" } else { "N" })
}

fn frozen(goal: Goal, adaptive: bool, n: usize) -> Option<u32> {
    regression()[key(goal, adaptive)][n.to_string()]
        .as_u64()
        .map(|v| v as u32)
}

#[test]
fn adaptive_matches_plain_minimax() {
    for n in 2..=5 {
        for goal in Goal::ALL {
            let mut oracle = Oracle::new(n, goal);
            let all = oracle.all();
            assert_eq!(solve_adaptive(n, goal).unwrap(), oracle.value(all), "n = {n}, {goal}");
        }
    }
}

#[test]
fn nonadaptive_matches_subset_scan() {
    for n in 2..=5 {
        for goal in Goal::ALL {
            let oracle = Oracle::new(n, goal);
            assert_eq!(
                solve_nonadaptive(n, goal).unwrap(),
                oracle.nonadaptive(),
                "n = {n}, {goal}"
            );
        }
    }
}

#[test]
fn hand_derivable_values() {
    assert_eq!(solve_adaptive(3, Goal::MaxDistPair).unwrap(), 2);
    assert_eq!(solve_nonadaptive(5, Goal::ExactTree).unwrap(), 8);
}

#[test]
fn frozen_regression_table() {
    for n in 2..=6 {
        for goal in Goal::ALL {
            assert_eq!(
                Some(solve_adaptive(n, goal).unwrap()),
                frozen(goal, true, n),
                "adaptive n = {n}, {goal}"
            );
            assert_eq!(
                Some(solve_nonadaptive(n, goal).unwrap()),
                frozen(goal, false, n),
                "non-adaptive n = {n}, {goal}"
            );
        }
    }
    let opts = SolverOptions {
        cap: EXTENDED_SOLVER_CAP,
        memo: true,
    };
    for goal in Goal::ALL {
        assert_eq!(
            Some(solve_adaptive_with(7, goal, opts).unwrap()),
            frozen(goal, true, 7),
            "adaptive n = 7, {goal}"
        );
    }
}

#[test]
fn values_sit_below_the_algorithms() {
    for n in 2..=6 {
        let mut diameter_worst = 0;
        let mut reconstruct_worst = 0;
        for t in enumerate_trees(n).unwrap() {
            let mut s = QuerySession::new(t.clone(), None);
            diameter_worst = diameter_worst.max(find_diameter_pair(&mut s).unwrap().queries_used);
            let mut s = QuerySession::new(t, None);
            reconstruct_worst = reconstruct_worst.max(reconstruct_tree(&mut s).unwrap().queries_used);
        }
        let f = solve_adaptive(n, Goal::MaxDistPair).unwrap() as usize;
        let g = solve_adaptive(n, Goal::ExactTree).unwrap() as usize;
        assert!(f <= diameter_worst, "n = {n}: {f} > {diameter_worst}");
        assert!(g <= reconstruct_worst, "n = {n}: {g} > {reconstruct_worst}");
        if n >= 4 {
            assert!(f <= 2 * n - 4);
        }
    }
}

#[test]
fn exact_costs_at_least_iso() {
    for n in 2..=6 {
        assert!(solve_adaptive(n, Goal::ExactTree).unwrap() >= solve_adaptive(n, Goal::IsoClass).unwrap());
        assert!(solve_nonadaptive(n, Goal::ExactTree).unwrap() >= solve_nonadaptive(n, Goal::IsoClass).unwrap());
        assert!(solve_nonadaptive(n, Goal::MaxDistPair).unwrap() >= solve_adaptive(n, Goal::MaxDistPair).unwrap());
    }
}

#[test]
fn extracted_strategies_replay_at_their_value() {
    for n in 2..=5 {
        for goal in Goal::ALL {
            let s = optimal_strategy_extract(n, goal).unwrap();
            assert_eq!(s.value, solve_adaptive(n, goal).unwrap());
            assert_eq!(s.root.depth(), s.value, "n = {n}, {goal}");
            assert_eq!(verify_strategy(&s).unwrap(), s.value, "n = {n}, {goal}");
        }
    }
}

#[test]
fn witness_query_graph_separates() {
    let trees: Vec<LabeledTree> = enumerate_trees(5).unwrap().collect();
    for goal in Goal::ALL {
        let (value, q) = solve_nonadaptive_with_witness(5, goal).unwrap();
        assert_eq!(q.len() as u32, value);
        let mut classes: HashMap<Vec<u32>, Vec<LabeledTree>> = HashMap::new();
        for t in &trees {
            let m = t.distance_matrix();
            classes
                .entry(q.iter().map(|&(a, b)| m.get(a, b)).collect())
                .or_default()
                .push(t.clone());
        }
        assert!(classes.values().all(|c| goal_reached(c, goal).unwrap()), "{goal}");
    }
}

#[test]
fn strategies_round_trip_through_json() {
    let s = optimal_strategy_extract(4, Goal::IsoClass).unwrap();
    let back: Strategy = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
}

#[test]
fn out_of_range_requests_fail() {
    assert!(solve_adaptive(1, Goal::ExactTree).is_err());
    assert!(solve_nonadaptive(7, Goal::ExactTree).is_err());
    assert!(goal_reached(&[], Goal::IsoClass).is_err());
}
