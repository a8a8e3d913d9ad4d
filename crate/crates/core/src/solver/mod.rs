//! Exact game values for tiny `n`, by exhaustive search over all labeled trees.
//!
//! The adaptive value is a minimax over queries and answers; the
//! non-adaptive value is the smallest query graph whose answer vectors
//! separate the trees well enough for the goal.

mod adaptive;
mod canon;
mod nonadaptive;
mod strategy;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ProbeError, Result};
use crate::tree::LabeledTree;

pub use adaptive::{solve_adaptive, solve_adaptive_with};
pub use nonadaptive::{solve_nonadaptive, solve_nonadaptive_with_witness};
pub use strategy::{optimal_strategy_extract, verify_strategy, DecisionTree, Strategy};
pub use table::TreeTable;

/// Largest `n` the solvers accept by default.
pub const DEFAULT_SOLVER_CAP: usize = 6;
/// Largest `n` the adaptive solver accepts when asked to go further.
pub const EXTENDED_SOLVER_CAP: usize = 7;

/// When the questioner may stop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Goal {
    /// Some pair is at maximum distance in every consistent tree.
    MaxDistPair,
    /// Only one tree is consistent.
    ExactTree,
    /// All consistent trees are isomorphic.
    IsoClass,
}

impl Goal {
    pub const ALL: [Goal; 3] = [Goal::MaxDistPair, Goal::ExactTree, Goal::IsoClass];

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Goal::MaxDistPair => "maxdist",
            Goal::ExactTree => "exact",
            Goal::IsoClass => "iso",
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Goal {
    type Err = ProbeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maxdist" => Ok(Goal::MaxDistPair),
            "exact" => Ok(Goal::ExactTree),
            "iso" => Ok(Goal::IsoClass),
            _ => Err(ProbeError::Domain(format!(
                "unknown goal {s:?}; expected maxdist, exact or iso"
            ))),
        }
    }
}

/// Solver knobs. `memo: false` exists to test that memoization changes nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub cap: usize,
    pub memo: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SOLVER_CAP,
            memo: true,
        }
    }
}

/// Whether the goal holds over a nonempty set of trees on the same vertex set.
pub fn goal_reached(trees: &[LabeledTree], goal: Goal) -> Result<bool> {
    let Some(first) = trees.first() else {
        return Err(ProbeError::Domain(
            "the goal is undefined on an empty set of trees".into(),
        ));
    };
    Ok(match goal {
        Goal::ExactTree => trees.iter().all(|t| t == first),
        Goal::IsoClass => {
            let code = first.canonical_code();
            trees.iter().all(|t| t.canonical_code() == code)
        }
        Goal::MaxDistPair => {
            let n = first.n();
            let metrics: Vec<_> = trees.iter().map(|t| t.distance_matrix()).collect();
            (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .any(|(a, b)| metrics.iter().all(|m| m.get(a, b) == m.diameter()))
                || n < 2
        }
    })
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n < 2 {
        return Err(ProbeError::Domain(format!("the solvers need n >= 2, got {n}")));
    }
    if cap > EXTENDED_SOLVER_CAP {
        return Err(ProbeError::Domain(format!(
            "solver cap {cap} is above the supported {EXTENDED_SOLVER_CAP}"
        )));
    }
    if n > cap {
        return Err(ProbeError::CapExceeded { n, cap });
    }
    Ok(())
}
