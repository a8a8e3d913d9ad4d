use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::report::{BoundRow, BoundsReport, Direction};
use super::sweeps::{run_exhaustive, run_random, AlgorithmId};
use super::tournament::{run_tournament, AdversaryId, QuestionerId};
use crate::error::Result;
use crate::nonadaptive::{
    build_min_degree_query_graph, build_reconstruction_query_graph, common_neighbor_audit, lemi_witness, QueryGraphSpec,
};
use crate::solver::{solve_adaptive, solve_nonadaptive, Goal};
use crate::tree::DEFAULT_ENUMERATION_CAP;

/// Solver values checked into the repository, keyed like `f_A` then by `n`.
pub const SOLVER_REGRESSION_JSON: &str = include_str!("../../data/solver_regression.json");

/// Frozen solver values: `table["g_N"][&5] == 8`.
pub fn solver_regression() -> Result<BTreeMap<String, BTreeMap<usize, u32>>> {
    let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(SOLVER_REGRESSION_JSON)?;
    let mut out = BTreeMap::new();
    for (key, value) in raw {
        if key == "version" {
            continue;
        }
        let per_n: BTreeMap<String, u32> = serde_json::from_value(value)?;
        let per_n = per_n
            .into_iter()
            .map(|(n, v)| n.parse().map(|n| (n, v)))
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| crate::ProbeError::Domain(format!("bad n in regression table: {e}")))?;
        out.insert(key, per_n);
    }
    Ok(out)
}

/// Key of a value in the regression table, e.g. `f_A`.
pub fn regression_key(goal: Goal, adaptive: bool) -> String {
    let letter = match goal {
        Goal::MaxDistPair => "f",
        Goal::ExactTree => "g",
        Goal::IsoClass => "h",
    };
    format!("{letter}_{}", if adaptive { 'A' } else { 'N' })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsConfig {
    pub seed: u64,
    /// Solver rows cover `2..=solver_max_n`.
    pub solver_max_n: usize,
    /// Exhaustive algorithm sweeps cover `4..=exhaustive_max_n`.
    pub exhaustive_max_n: usize,
    /// Random trees per size in the randomized rows.
    pub trials: usize,
    /// Games per tournament row.
    pub games: usize,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            solver_max_n: 5,
            exhaustive_max_n: 7,
            trials: 50,
            games: 20,
        }
    }
}

/// Evaluates every closed-form bound against constructor sizes, measured
/// algorithm counts, adversary tournaments and solver values.
pub fn verify_bounds_table(config: &BoundsConfig) -> Result<BoundsReport> {
    let mut report = BoundsReport::new();
    constructions(&mut report)?;
    let measured = measurements(config, &mut report)?;
    solver_rows(config, &measured, &mut report)?;
    tournaments(config, &mut report)?;
    Ok(report)
}

fn constructions(report: &mut BoundsReport) -> Result<()> {
    for n in 5..=40 {
        let q = build_reconstruction_query_graph(n)?.query_count() as u64;
        report.push(BoundRow::new(
            n,
            "g_N.query_graph",
            q,
            "ceil(n(n-2)/2)",
            (n * (n - 2)).div_ceil(2) as u64,
            Direction::Exactly,
        ));
    }
    for n in 13..=40 {
        let spec = build_min_degree_query_graph(n)?;
        let q = spec.query_count() as u64;
        let bound = (n * (n - 3) / 2) as u64;
        report.push(BoundRow::new(
            n,
            "f_N.query_graph",
            q,
            "n(n-3)/2",
            bound,
            Direction::Exactly,
        ));
        report.push(BoundRow::new(
            n,
            "h_N.query_graph",
            q,
            "n(n-3)/2",
            bound,
            Direction::Exactly,
        ));
        if n <= 20 {
            report.push(BoundRow::new(
                n,
                "h_N.common_neighbor_audit",
                common_neighbor_audit(&spec) as u64,
                "every missing pair has a common queried neighbor",
                1,
                Direction::Exactly,
            ));
        }
    }
    // a vertex missing three queries leaves two trees with equal answers and different diameters
    let spec = QueryGraphSpec::new(13, [(0, 1), (0, 2), (0, 3)])?;
    let (t, t2) = lemi_witness(&spec)?;
    let same = spec.answers_from(&t)? == spec.answers_from(&t2)?;
    let (d, d2) = (t.distance_matrix().diameter(), t2.distance_matrix().diameter());
    report.push(
        BoundRow::new(
            13,
            "f_N.below_threshold_witness",
            (same && d != d2) as u64,
            "two trees, equal answers, diameters differ",
            1,
            Direction::Exactly,
        )
        .with_detail(format!("missing={} diameters {d} and {d2}", spec.missing_count())),
    );
    Ok(())
}

/// Worst measured query counts per algorithm and `n`, from the exhaustive sweeps.
struct Measured {
    diameter: BTreeMap<usize, u64>,
    reconstruct: BTreeMap<usize, u64>,
}

fn measurements(config: &BoundsConfig, report: &mut BoundsReport) -> Result<Measured> {
    let top = config.exhaustive_max_n.min(DEFAULT_ENUMERATION_CAP);
    let worst = |algo: AlgorithmId, lo: usize, report: &mut BoundsReport| -> Result<BTreeMap<usize, u64>> {
        let mut out = BTreeMap::new();
        if lo > top {
            return Ok(out);
        }
        let r = run_exhaustive(lo..=top, algo, DEFAULT_ENUMERATION_CAP)?;
        for row in &r.rows {
            if row.id.ends_with("max_queries") {
                out.insert(row.n, row.measured);
            }
        }
        report.merge(r);
        Ok(out)
    };
    let diameter = worst(AlgorithmId::Diameter, 2, report)?;
    let reconstruct = worst(AlgorithmId::Reconstruct, 2, report)?;
    worst(AlgorithmId::DecodeExact, 5, report)?;
    worst(AlgorithmId::Spider, 7, report)?;

    let seed = config.seed;
    report.merge(run_random(&[20, 50, 100], config.trials, AlgorithmId::Diameter, seed)?);
    report.merge(run_random(&[20, 50], config.trials, AlgorithmId::Reconstruct, seed)?);
    report.merge(run_random(&[9, 11, 16, 25], config.trials, AlgorithmId::Spider, seed)?);
    report.merge(run_random(&[9, 12], config.trials, AlgorithmId::DecodeExact, seed)?);
    report.merge(run_random(&[13], config.trials.min(20), AlgorithmId::DecodeIso, seed)?);
    Ok(Measured { diameter, reconstruct })
}

fn solver_rows(config: &BoundsConfig, measured: &Measured, report: &mut BoundsReport) -> Result<()> {
    let frozen = solver_regression()?;
    for n in 2..=config.solver_max_n {
        let mut value = BTreeMap::new();
        for goal in Goal::ALL {
            for adaptive in [true, false] {
                let v = if adaptive {
                    solve_adaptive(n, goal)?
                } else {
                    solve_nonadaptive(n, goal)?
                };
                let key = regression_key(goal, adaptive);
                let expected = frozen.get(&key).and_then(|m| m.get(&n)).copied();
                let row = BoundRow::new(
                    n,
                    format!("{key}.solver"),
                    v as u64,
                    "frozen regression value",
                    expected.unwrap_or(u32::MAX) as u64,
                    Direction::Exactly,
                );
                report.push(row);
                value.insert(key, v as u64);
            }
        }
        let f_a = value["f_A"];
        if n >= 3 {
            // with two vertices the only tree is known without asking
            report.push(BoundRow::new(
                n,
                "f_A.trivial_lower",
                f_a,
                "n-1",
                (n - 1) as u64,
                Direction::AtLeast,
            ));
        }
        if n >= 4 {
            report.push(BoundRow::new(
                n,
                "f_A.sandwich",
                f_a,
                "2n-4",
                (2 * n - 4) as u64,
                Direction::AtMost,
            ));
        }
        if let Some(&m) = measured.diameter.get(&n) {
            report.push(BoundRow::new(
                n,
                "f_A.below_algorithm",
                f_a,
                "measured two-sweep worst case",
                m,
                Direction::AtMost,
            ));
        }
        if let Some(&m) = measured.reconstruct.get(&n) {
            report.push(BoundRow::new(
                n,
                "g_A.below_algorithm",
                value["g_A"],
                "measured level-by-level worst case",
                m,
                Direction::AtMost,
            ));
        }
        report.push(BoundRow::new(
            n,
            "h_A.below_g_A",
            value["h_A"],
            "g_A(n)",
            value["g_A"],
            Direction::AtMost,
        ));
        report.push(BoundRow::new(
            n,
            "h_N.below_g_N",
            value["h_N"],
            "g_N(n)",
            value["g_N"],
            Direction::AtMost,
        ));
        report.push(BoundRow::new(
            n,
            "f_A.below_f_N",
            value["f_A"],
            "f_N(n)",
            value["f_N"],
            Direction::AtMost,
        ));
        if n >= 5 {
            report.push(BoundRow::new(
                n,
                "g_N.solver_formula",
                value["g_N"],
                "ceil(n(n-2)/2)",
                (n * (n - 2)).div_ceil(2) as u64,
                Direction::Exactly,
            ));
        }
    }
    Ok(())
}

fn tournaments(config: &BoundsConfig, report: &mut BoundsReport) -> Result<()> {
    let plan = [
        (AdversaryId::Doublestar, QuestionerId::PaperDiameter, 20),
        (AdversaryId::Doublestar, QuestionerId::Random, 20),
        (AdversaryId::Doublestar, QuestionerId::Greedy, 8),
        (AdversaryId::Layered, QuestionerId::PaperReconstruct, 12),
        (AdversaryId::Layered, QuestionerId::Random, 10),
        (AdversaryId::Spider, QuestionerId::PaperSpider, 11),
        (AdversaryId::SpiderHidden, QuestionerId::Random, 9),
    ];
    for (adv, q, n) in plan {
        let games = if q == QuestionerId::Greedy {
            config.games.min(3)
        } else {
            config.games
        };
        report.merge(run_tournament(adv, q, n, games, config.seed)?);
    }
    Ok(())
}
