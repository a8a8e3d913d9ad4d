use std::collections::HashMap;

use super::canon::Canonizer;
use super::table::TreeTable;
use super::{check_cap, Goal, SolverOptions};
use crate::error::Result;

/// Minimax number of queries to reach `goal` on a hidden tree with `n` vertices.
pub fn solve_adaptive(n: usize, goal: Goal) -> Result<u32> {
    solve_adaptive_with(n, goal, SolverOptions::default())
}

pub fn solve_adaptive_with(n: usize, goal: Goal, opts: SolverOptions) -> Result<u32> {
    check_cap(n, opts.cap)?;
    let table = TreeTable::new(n)?;
    let mut solver = AdaptiveSolver::new(&table, goal, opts.memo);
    Ok(solver.value_of_root())
}

/// Iterative-deepening minimax over answered graphs.
///
/// Only queries that split the consistent set are considered; a query every
/// consistent tree answers alike changes nothing. The memo stores a lower and
/// an upper bound on the value per relabeling class of answered graphs.
pub(crate) struct AdaptiveSolver<'a> {
    pub(crate) table: &'a TreeTable,
    goal: Goal,
    use_memo: bool,
    canon: Canonizer,
    memo: HashMap<Vec<u8>, (u32, u32)>,
}

impl<'a> AdaptiveSolver<'a> {
    pub(crate) fn new(table: &'a TreeTable, goal: Goal, use_memo: bool) -> Self {
        Self {
            table,
            goal,
            use_memo,
            canon: Canonizer::new(table.n()),
            memo: HashMap::new(),
        }
    }

    pub(crate) fn goal(&self) -> Goal {
        self.goal
    }

    pub(crate) fn value_of_root(&mut self) -> u32 {
        let all: Vec<u32> = (0..self.table.len() as u32).collect();
        let mut answered = vec![0u8; self.table.pairs().len()];
        self.value(&mut answered, &all)
    }

    /// Exact value of a state.
    pub(crate) fn value(&mut self, answered: &mut [u8], set: &[u32]) -> u32 {
        let mut d = 0;
        while !self.can_finish(answered, set, d) {
            d += 1;
        }
        d
    }

    /// Queries that split `set`, each with its parts, best worst-case split first.
    pub(crate) fn options(&self, answered: &[u8], set: &[u32]) -> Vec<(usize, Vec<(u8, Vec<u32>)>)> {
        let mut opts: Vec<(usize, usize, Vec<(u8, Vec<u32>)>)> = (0..answered.len())
            .filter(|&p| answered[p] == 0)
            .filter_map(|p| {
                let parts = self.table.split(set, p);
                (parts.len() >= 2).then(|| (parts.iter().map(|(_, s)| s.len()).max().unwrap_or(0), p, parts))
            })
            .collect();
        opts.sort_by_key(|(worst, p, _)| (*worst, *p));
        opts.into_iter().map(|(_, p, parts)| (p, parts)).collect()
    }

    /// True if the questioner can force the goal within `d` more queries.
    pub(crate) fn can_finish(&mut self, answered: &mut [u8], set: &[u32], d: u32) -> bool {
        if self.table.goal_holds(set, self.goal) {
            return true;
        }
        if d == 0 {
            return false;
        }
        let key = self.use_memo.then(|| self.canon.key(answered));
        if let Some((lb, ub)) = key.as_ref().and_then(|k| self.memo.get(k)) {
            if d >= *ub {
                return true;
            }
            if d < *lb {
                return false;
            }
        }
        let mut ok = false;
        for (p, parts) in self.options(answered, set) {
            let mut all = true;
            for (x, part) in &parts {
                answered[p] = *x;
                let sub = self.can_finish(answered, part, d - 1);
                answered[p] = 0;
                if !sub {
                    all = false;
                    break;
                }
            }
            if all {
                ok = true;
                break;
            }
        }
        if let Some(k) = key {
            let e = self.memo.entry(k).or_insert((1, u32::MAX));
            if ok {
                e.1 = e.1.min(d);
            } else {
                e.0 = e.0.max(d + 1);
            }
        }
        ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(solve_adaptive(2, Goal::MaxDistPair).unwrap(), 0);
        assert_eq!(solve_adaptive(3, Goal::MaxDistPair).unwrap(), 2);
        assert_eq!(solve_adaptive(3, Goal::IsoClass).unwrap(), 0);
        assert_eq!(solve_adaptive(3, Goal::ExactTree).unwrap(), 2);
    }

    #[test]
    fn memo_toggle_agrees() {
        for n in 2..=4 {
            for g in Goal::ALL {
                let on = solve_adaptive_with(n, g, SolverOptions { cap: 6, memo: true }).unwrap();
                let off = solve_adaptive_with(n, g, SolverOptions { cap: 6, memo: false }).unwrap();
                assert_eq!(on, off, "n = {n}, {g}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(solve_adaptive(7, Goal::MaxDistPair).is_err());
    }
}
