//! Experiment runner: exhaustive sweeps, randomized trials, adversary
//! tournaments and the bounds table, all reported as [`BoundsReport`] rows.
//!
//! Every randomized piece is seeded, and aggregation does not depend on the
//! order in which parallel workers finish, so reports repeat exactly.

mod report;
mod sweeps;
mod table;
mod tournament;

pub use report::{BoundRow, BoundsReport, Direction};
pub use sweeps::{run_exhaustive, run_random, AlgorithmId};
pub use table::{regression_key, solver_regression, verify_bounds_table, BoundsConfig, SOLVER_REGRESSION_JSON};
pub use tournament::{run_tournament, tournament_game_log, AdversaryId, QuestionerId, GREEDY_CAP};
