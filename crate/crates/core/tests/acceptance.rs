//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines show up on a passing run; exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treeprobe::harness::*;
use treeprobe::nonadaptive::*;
use treeprobe::solver::{solve_adaptive, solve_nonadaptive, Goal};
use treeprobe::tree::*;
use treeprobe::LabeledTree;

type Outcome = Result<String, String>;

const SEED: u64 = 2024;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Fails with the first failing rows of a report, else returns its row count.
fn passing(report: &BoundsReport) -> Result<usize, String> {
    let bad: Vec<String> = report
        .failures()
        .take(3)
        .map(|r| {
            format!(
                "n={} {} {} {} {} {}",
                r.n,
                r.id,
                r.measured,
                r.direction.symbol(),
                r.bound,
                r.detail
            )
        })
        .collect();
    if bad.is_empty() {
        Ok(report.rows.len())
    } else {
        Err(bad.join("; "))
    }
}

fn row<'a>(report: &'a BoundsReport, n: usize, id: &str) -> &'a BoundRow {
    report
        .rows
        .iter()
        .find(|r| r.n == n && r.id == id)
        .unwrap_or_else(|| panic!("row {id} at n = {n}"))
}

fn diameter_queries() -> Outcome {
    let exhaustive = run_exhaustive(4..=8, AlgorithmId::Diameter, 8).map_err(|e| e.to_string())?;
    passing(&exhaustive)?;
    let random = run_random(&[20, 50, 100, 200], 1000, AlgorithmId::Diameter, SEED).map_err(|e| e.to_string())?;
    passing(&random)?;
    let trees: u64 = exhaustive
        .rows
        .iter()
        .chain(&random.rows)
        .filter(|r| r.id.ends_with(".correct"))
        .map(|r| r.measured)
        .sum();
    Ok(format!(
        "{trees} trees, worst at n=8: {} <= 12",
        row(&exhaustive, 8, "diameter.max_queries").measured
    ))
}

fn double_star_forcing() -> Outcome {
    let mut parts = Vec::new();
    for n in [10, 20, 50] {
        for (q, games) in [(QuestionerId::PaperDiameter, 1000), (QuestionerId::Random, 1000)] {
            let r = run_tournament(AdversaryId::Doublestar, q, n, games, SEED).map_err(|e| e.to_string())?;
            passing(&r)?;
            let end = row(&r, n, &format!("doublestar/{q}.end_count")).measured;
            let cert = row(&r, n, &format!("doublestar/{q}.certificate")).measured;
            parts.push(format!("n={n} {q} end>={end} cert>={cert}"));
        }
    }
    Ok(parts.join(", "))
}

fn reconstruction() -> Outcome {
    passing(&run_exhaustive(4..=8, AlgorithmId::Reconstruct, 8).map_err(|e| e.to_string())?)?;
    passing(&run_random(&[10, 25, 50, 75, 100], 200, AlgorithmId::Reconstruct, SEED).map_err(|e| e.to_string())?)?;
    let mut parts = Vec::new();
    for n in [10, 12, 14] {
        let r = run_tournament(AdversaryId::Layered, QuestionerId::PaperReconstruct, n, 20, SEED)
            .map_err(|e| e.to_string())?;
        passing(&r)?;
        let informative = row(&r, n, "layered/paper-reconstruct.informative");
        parts.push(format!(
            "n={n} informative {}>={}",
            informative.measured, informative.bound
        ));
    }
    Ok(parts.join(", "))
}

fn spiders() -> Outcome {
    let ns: Vec<usize> = (7..=30).collect();
    passing(&run_random(&ns, 200, AlgorithmId::Spider, SEED).map_err(|e| e.to_string())?)?;
    let mut parts = Vec::new();
    for n in [9, 11, 13] {
        let r =
            run_tournament(AdversaryId::Spider, QuestionerId::PaperSpider, n, 20, SEED).map_err(|e| e.to_string())?;
        passing(&r)?;
        let cross = row(&r, n, "spider/paper-spider.cross_pairs");
        let audit = row(&r, n, "spider/paper-spider.coverage_audit");
        check(audit.pass, || format!("coverage audit failed at n={n}"))?;
        parts.push(format!("n={n} cross {}>={}", cross.measured, cross.bound));
    }
    Ok(parts.join(", "))
}

fn exact_decoding() -> Outcome {
    for n in 5..=40 {
        let q = build_reconstruction_query_graph(n)
            .map_err(|e| e.to_string())?
            .query_count();
        check(q == (n * (n - 2)).div_ceil(2), || format!("|Q| = {q} at n = {n}"))?;
    }
    let ex = run_exhaustive(5..=8, AlgorithmId::DecodeExact, 8).map_err(|e| e.to_string())?;
    passing(&ex)?;
    let ns: Vec<usize> = (9..=14).collect();
    passing(&run_random(&ns, 1000, AlgorithmId::DecodeExact, SEED).map_err(|e| e.to_string())?)?;
    let trees: u64 = ex
        .rows
        .iter()
        .filter(|r| r.id == "decode-exact.correct")
        .map(|r| r.measured)
        .sum();
    Ok(format!("|Q| exact for n=5..40, {trees} trees exhaustive, 6000 random"))
}

fn iso_and_max_pair() -> Outcome {
    for n in 13..=40 {
        let q = build_min_degree_query_graph(n)
            .map_err(|e| e.to_string())?
            .query_count();
        check(q == n * (n - 3) / 2, || format!("|Q| = {q} at n = {n}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut most = 0;
    for n in 13..=15 {
        let spec = build_min_degree_query_graph(n).map_err(|e| e.to_string())?;
        for _ in 0..500 {
            let t = random_tree(n, &mut rng);
            let answers = spec.answers_from(&t).map_err(|e| e.to_string())?;
            let set = complete_missing_distances(&spec, &answers, usize::MAX).map_err(|e| e.to_string())?;
            check(set.exhausted, || "completion search stopped early".into())?;
            check(set.completions.contains(&t), || {
                format!("hidden tree missing from completions of {t:?}")
            })?;
            most = most.max(set.completions.len());
            let code = decode_isomorphism(&spec, &answers).map_err(|e| e.to_string())?;
            check(set.shared_code.as_ref() == Some(&code), || {
                format!("completions of {t:?} are not all isomorphic")
            })?;
            check(code == canonical_code(&t), || {
                format!("decoded class differs for {t:?}")
            })?;
            let (a, b, d) = find_max_distance_pair_nonadaptive(&spec, &answers).map_err(|e| e.to_string())?;
            let metrics: Vec<DistanceMatrix> = set.completions.iter().map(|c| c.distance_matrix()).collect();
            check(
                metrics.iter().all(|m| m.get(a, b) == m.diameter() && m.diameter() == d),
                || format!("pair ({a},{b}) is not diametral in every completion of {t:?}"),
            )?;
            for (u, v) in spec.missing() {
                let base = metrics[0].get(u, v);
                for m in &metrics {
                    let x = m.get(u, v);
                    check(x % 2 == base % 2, || format!("parity of ({u},{v}) varies for {t:?}"))?;
                    check(x.max(base) < 5 || x == base, || {
                        format!("distance {x} vs {base} at ({u},{v}) for {t:?}")
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "|Q| exact for n=13..40, 1500 trees, up to {most} completions each"
    ))
}

fn witness() -> Outcome {
    let n = 13;
    let mut placements = 0;
    for v in 0..n {
        let others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        for partners in others.iter().combinations(3) {
            let spec = QueryGraphSpec::new(n, partners.iter().map(|&&w| (v, w))).map_err(|e| e.to_string())?;
            let (t, t2) = lemi_witness(&spec).map_err(|e| e.to_string())?;
            let what = || format!("missing {partners:?} at {v}");
            check(
                spec.answers_from(&t).unwrap() == spec.answers_from(&t2).unwrap(),
                || format!("answers differ, {}", what()),
            )?;
            let (m, m2) = (t.distance_matrix(), t2.distance_matrix());
            check(m.diameter() == 4 && m2.diameter() == 3, || {
                format!("diameters {} and {}, {}", m.diameter(), m2.diameter(), what())
            })?;
            let top: Vec<(usize, usize)> = (0..n).tuple_combinations().filter(|&(a, b)| m.get(a, b) == 4).collect();
            check(top.len() == 1 && m2.get(top[0].0, top[0].1) == 2, || {
                format!("maximum pairs {top:?}, {}", what())
            })?;
            placements += 1;
        }
    }
    Ok(format!("{placements} placements"))
}

fn solver_ground_truth() -> Outcome {
    let e = |e: treeprobe::ProbeError| e.to_string();
    check(solve_adaptive(3, Goal::MaxDistPair).map_err(e)? == 2, || {
        "adaptive max pair at n=3".into()
    })?;
    check(solve_nonadaptive(5, Goal::ExactTree).map_err(e)? == 8, || {
        "non-adaptive exact at n=5".into()
    })?;
    let frozen = solver_regression().map_err(e)?;
    let diam = run_exhaustive(2..=5, AlgorithmId::Diameter, 8).map_err(e)?;
    let rec = run_exhaustive(2..=5, AlgorithmId::Reconstruct, 8).map_err(e)?;
    let mut values = 0;
    for n in 2..=5 {
        for goal in Goal::ALL {
            for adaptive in [true, false] {
                let v = if adaptive {
                    solve_adaptive(n, goal)
                } else {
                    solve_nonadaptive(n, goal)
                }
                .map_err(e)?;
                let key = regression_key(goal, adaptive);
                check(frozen[&key].get(&n) == Some(&v), || {
                    format!("{key}({n}) = {v}, frozen {:?}", frozen[&key].get(&n))
                })?;
                values += 1;
            }
        }
        let f = solve_adaptive(n, Goal::MaxDistPair).map_err(e)? as u64;
        let g = solve_adaptive(n, Goal::ExactTree).map_err(e)? as u64;
        let h = solve_adaptive(n, Goal::IsoClass).map_err(e)? as u64;
        let d = row(&diam, n, "diameter.max_queries").measured;
        let r = row(&rec, n, "reconstruct.max_queries").measured;
        check(f <= d && g <= r && h <= r, || {
            format!("solver above an algorithm at n={n}: {f}/{d}, {g}/{r}")
        })?;
    }
    Ok(format!("{values} values match the frozen table"))
}

fn substrate() -> Outcome {
    let mut pairs = 0u64;
    for n in 2..=6 {
        let trees: Vec<LabeledTree> = enumerate_trees(n).map_err(|e| e.to_string())?.collect();
        let codes: Vec<CanonicalCode> = trees.iter().map(canonical_code).collect();
        let forms: Vec<Vec<(usize, usize)>> = trees.iter().map(|t| common::brute_form(n, t.edges())).collect();
        for i in 0..trees.len() {
            for j in i + 1..trees.len() {
                check((codes[i] == codes[j]) == (forms[i] == forms[j]), || {
                    format!("{:?} vs {:?}", trees[i], trees[j])
                })?;
                pairs += 1;
            }
        }
    }
    let mut metrics = 0;
    for n in 2..=7 {
        for t in enumerate_trees(n).map_err(|e| e.to_string())? {
            check(all_pairs_distance(&t).satisfies_four_point(), || {
                format!("four-point fails on {t:?}")
            })?;
            metrics += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in [20, 50, 100] {
        for _ in 0..20 {
            let t = random_tree(n, &mut rng);
            check(t.distance_matrix().satisfies_four_point(), || {
                format!("four-point fails on {t:?}")
            })?;
            metrics += 1;
        }
    }
    for n in 13..=20 {
        let spec = build_min_degree_query_graph(n).map_err(|e| e.to_string())?;
        check(common_neighbor_audit(&spec), || {
            format!("common-neighbor audit fails at n={n}")
        })?;
    }
    Ok(format!("{pairs} tree pairs, {metrics} metrics, audit n=13..20"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("adaptive diameter", 120, diameter_queries),
        ("double-star forcing", 60, double_star_forcing),
        ("adaptive reconstruction", 120, reconstruction),
        ("spider identification", 60, spiders),
        ("non-adaptive exact decoding", 120, exact_decoding),
        ("non-adaptive isomorphism and max pair", 300, iso_and_max_pair),
        ("lower-bound witness", 10, witness),
        ("exact solver", 60, solver_ground_truth),
        ("substrate", 60, substrate),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(limit) => Err(format!("{msg}; took {took:.1?}, limit {limit}s")),
            other => other,
        };
        let (tag, msg) = match &outcome {
            Ok(msg) => ("PASS", msg),
            Err(msg) => ("FAIL", msg),
        };
        println!("{tag} criterion {} {name} ({took:.1?}): {msg}", i + 1);
        failed += outcome.is_err() as usize;
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
