use serde::{Deserialize, Serialize};

use super::adaptive::AdaptiveSolver;
use super::table::TreeTable;
use super::{check_cap, Goal, DEFAULT_SOLVER_CAP};
use crate::error::{ProbeError, Result};
use crate::tree::{LabeledTree, Vertex};

/// A questioner strategy: which pair to ask next, by the answers so far.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionTree {
    /// The goal holds; `consistent` trees remain.
    Done { consistent: usize },
    Ask {
        pair: (Vertex, Vertex),
        branches: Vec<(u32, DecisionTree)>,
    },
}

impl DecisionTree {
    /// Worst-case number of queries.
    pub fn depth(&self) -> u32 {
        match self {
            DecisionTree::Done { .. } => 0,
            DecisionTree::Ask { branches, .. } => 1 + branches.iter().map(|(_, b)| b.depth()).max().unwrap_or(0),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            DecisionTree::Done { .. } => 1,
            DecisionTree::Ask { branches, .. } => branches.iter().map(|(_, b)| b.leaves()).sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    pub n: usize,
    pub goal: Goal,
    pub value: u32,
    pub root: DecisionTree,
}

impl Strategy {
    /// Plays the strategy against `tree`; returns the pairs asked with their answers.
    pub fn replay(&self, tree: &LabeledTree) -> Result<Vec<((Vertex, Vertex), u32)>> {
        if tree.n() != self.n {
            return Err(ProbeError::Domain(format!(
                "strategy is for n = {}, tree has {}",
                self.n,
                tree.n()
            )));
        }
        let m = tree.distance_matrix();
        let mut node = &self.root;
        let mut asked = Vec::new();
        while let DecisionTree::Ask { pair, branches } = node {
            let d = m.get(pair.0, pair.1);
            asked.push((*pair, d));
            node = branches
                .iter()
                .find(|(x, _)| *x == d)
                .map(|(_, b)| b)
                .ok_or_else(|| ProbeError::Protocol(format!("no branch for answer {d} to {pair:?}")))?;
        }
        Ok(asked)
    }
}

/// An optimal adaptive strategy, with worst-case depth equal to the game value.
pub fn optimal_strategy_extract(n: usize, goal: Goal) -> Result<Strategy> {
    check_cap(n, DEFAULT_SOLVER_CAP)?;
    let table = TreeTable::new(n)?;
    let mut solver = AdaptiveSolver::new(&table, goal, true);
    let all: Vec<u32> = (0..table.len() as u32).collect();
    let mut answered = vec![0u8; table.pairs().len()];
    let value = solver.value(&mut answered, &all);
    let root = build(&mut solver, &mut answered, &all, value);
    Ok(Strategy { n, goal, value, root })
}

fn build(solver: &mut AdaptiveSolver<'_>, answered: &mut [u8], set: &[u32], value: u32) -> DecisionTree {
    if solver.table.goal_holds(set, solver.goal()) {
        return DecisionTree::Done { consistent: set.len() };
    }
    for (p, parts) in solver.options(answered, set) {
        let good = parts.iter().all(|(x, part)| {
            answered[p] = *x;
            let ok = solver.can_finish(answered, part, value - 1);
            answered[p] = 0;
            ok
        });
        if !good {
            continue;
        }
        let branches = parts
            .iter()
            .map(|(x, part)| {
                answered[p] = *x;
                let v = solver.value(answered, part);
                let child = build(solver, answered, part, v);
                answered[p] = 0;
                (*x as u32, child)
            })
            .collect();
        return DecisionTree::Ask {
            pair: solver.table.pairs()[p],
            branches,
        };
    }
    unreachable!("a state of value {value} has a query achieving it")
}

/// Replays `strategy` against every labeled tree and checks that each run ends
/// with the goal met within `strategy.value` queries. Returns the deepest run.
pub fn verify_strategy(strategy: &Strategy) -> Result<u32> {
    check_cap(strategy.n, DEFAULT_SOLVER_CAP)?;
    let table = TreeTable::new(strategy.n)?;
    let mut worst = 0;
    for t in 0..table.len() {
        let asked = strategy.replay(table.tree(t))?;
        let set: Vec<u32> = (0..table.len() as u32)
            .filter(|&s| {
                asked
                    .iter()
                    .all(|&((a, b), d)| table.dist(s as usize, table.pair_index(a, b)) as u32 == d)
            })
            .collect();
        if !table.goal_holds(&set, strategy.goal) {
            return Err(ProbeError::InvariantViolation(format!(
                "after {} queries on {:?} the goal {} does not hold",
                asked.len(),
                table.tree(t),
                strategy.goal
            )));
        }
        worst = worst.max(asked.len() as u32);
    }
    if worst > strategy.value {
        return Err(ProbeError::InvariantViolation(format!(
            "a replay used {worst} queries, more than the value {}",
            strategy.value
        )));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_vertices_maxdist() {
        let s = optimal_strategy_extract(3, Goal::MaxDistPair).unwrap();
        assert_eq!(s.value, 2);
        assert_eq!(s.root.depth(), 2);
        assert_eq!(verify_strategy(&s).unwrap(), 2);
    }

    #[test]
    fn four_vertices_exact() {
        let s = optimal_strategy_extract(4, Goal::ExactTree).unwrap();
        assert_eq!(s.root.leaves(), 16);
        assert_eq!(verify_strategy(&s).unwrap(), s.value);
    }
}
