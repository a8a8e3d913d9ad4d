use std::collections::{HashMap, HashSet};

use super::canon::Canonizer;
use super::table::TreeTable;
use super::{check_cap, Goal, DEFAULT_SOLVER_CAP};
use crate::error::Result;
use crate::tree::Vertex;

/// Smallest number of simultaneous queries that always reaches `goal`.
pub fn solve_nonadaptive(n: usize, goal: Goal) -> Result<u32> {
    solve_nonadaptive_with_witness(n, goal).map(|(v, _)| v)
}

/// The value together with one optimal query graph.
///
/// Query graphs are tried by size, smallest first, one per relabeling class;
/// adding queries only refines the answer classes, so the first feasible
/// size is the minimum.
pub fn solve_nonadaptive_with_witness(n: usize, goal: Goal) -> Result<(u32, Vec<(Vertex, Vertex)>)> {
    check_cap(n, DEFAULT_SOLVER_CAP)?;
    let table = TreeTable::new(n)?;
    let canon = Canonizer::new(n);
    let pairs = table.pairs().len();
    for k in 0..=pairs {
        let mut seen = HashSet::new();
        let mut chosen: Vec<usize> = (0..k).collect();
        loop {
            let mut w = vec![0u8; pairs];
            for &p in &chosen {
                w[p] = 1;
            }
            if seen.insert(canon.key(&w)) && separates(&table, &chosen, goal) {
                let q = chosen.iter().map(|&p| table.pairs()[p]).collect();
                return Ok((k as u32, q));
            }
            if !next_combination(&mut chosen, pairs) {
                break;
            }
        }
    }
    unreachable!("asking every pair determines the tree")
}

/// Every class of trees with equal answers on `q` satisfies the goal.
pub(crate) fn separates(table: &TreeTable, q: &[usize], goal: Goal) -> bool {
    let mut classes: HashMap<Vec<u8>, Vec<u32>> = HashMap::new();
    for t in 0..table.len() {
        let key: Vec<u8> = q.iter().map(|&p| table.dist(t, p)).collect();
        classes.entry(key).or_default().push(t as u32);
    }
    classes.values().all(|set| table.goal_holds(set, goal))
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
