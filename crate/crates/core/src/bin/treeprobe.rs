use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use treeprobe::adaptive::{
    diameter_ceiling, find_diameter_pair, identify_spider, reconstruct_tree, reconstruction_ceiling, spider_ceiling,
};
use treeprobe::harness::*;
use treeprobe::nonadaptive::*;
use treeprobe::solver::*;
use treeprobe::tree::{random_tree, DEFAULT_ENUMERATION_CAP};
use treeprobe::{AnsweredQueryGraph, LabeledTree, ProbeError, QuerySession, Result};

/// Distance-query games on hidden trees.
#[derive(Parser)]
#[command(name = "treeprobe", version)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print report rows as CSV.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Largest n for exhaustive enumeration or the solvers.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an adaptive questioner on one tree, random trees, or every tree.
    Adaptive {
        #[arg(long, value_enum)]
        algo: Algo,
        /// A tree file, `random:<n>` or `all:<n>`.
        #[arg(long)]
        tree: String,
        /// Number of trees for `random:<n>`.
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Play a questioner against an adversary strategy.
    Adversary {
        #[arg(long)]
        strategy: AdversaryId,
        #[arg(long)]
        questioner: QuestionerId,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        games: usize,
        /// Also write the first game's event log here, as JSON lines.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Non-adaptive query graphs and their decoders.
    Nonadaptive {
        #[arg(value_enum)]
        action: NonadaptiveAction,
        #[command(flatten)]
        io: NonadaptiveIo,
    },
    /// Exact game values for tiny n.
    Solve {
        #[arg(value_enum)]
        mode: SolveMode,
        #[arg(long)]
        goal: Goal,
        #[arg(long)]
        n: usize,
        /// Write an optimal decision tree here (adaptive only).
        #[arg(long)]
        emit_strategy: Option<PathBuf>,
    },
    /// Check every bound of the bounds table.
    Bounds {
        #[arg(long, default_value_t = BoundsConfig::default().solver_max_n)]
        solver_max_n: usize,
        #[arg(long, default_value_t = BoundsConfig::default().exhaustive_max_n)]
        exhaustive_max_n: usize,
        #[arg(long, default_value_t = BoundsConfig::default().trials)]
        trials: usize,
        #[arg(long, default_value_t = BoundsConfig::default().games)]
        games: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Diameter,
    Reconstruct,
    Spider,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NonadaptiveAction {
    Build,
    DecodeExact,
    DecodeIso,
    MaxPair,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Adaptive,
    Nonadaptive,
}

#[derive(Args)]
struct NonadaptiveIo {
    #[arg(long)]
    n: usize,
    /// Query graph file; defaults to the construction for the action.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Transcript file with the answers; defaults to answers from `--tree`.
    #[arg(long)]
    answers: Option<PathBuf>,
    /// Hidden tree (file or `random:<n>`) when no answers are given; default `random:<n>`.
    #[arg(long)]
    tree: Option<String>,
    /// Build the min-degree graph instead of the exact-reconstruction graph.
    #[arg(long)]
    min_degree: bool,
    /// Keep every completion instead of stopping at the default limit.
    #[arg(long)]
    all: bool,
}

/// What a subcommand produced: a value to print and whether its checks passed.
struct Outcome {
    value: serde_json::Value,
    report: Option<BoundsReport>,
    text: String,
    pass: bool,
}

impl Outcome {
    fn report(report: BoundsReport) -> Self {
        Self {
            value: serde_json::to_value(&report).expect("reports serialize"),
            text: report.to_string(),
            pass: report.all_pass(),
            report: Some(report),
        }
    }

    fn value(value: serde_json::Value, text: String, pass: bool) -> Self {
        Self {
            value,
            report: None,
            text,
            pass,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out).map(|_| out.pass)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("treeprobe: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, out: &Outcome) -> Result<()> {
    let text = if cli.csv {
        let report = out
            .report
            .as_ref()
            .ok_or_else(|| ProbeError::Domain("--csv applies to report-producing commands".into()))?;
        report.to_csv()?
    } else if cli.json {
        serde_json::to_string_pretty(&out.value)? + "\n"
    } else {
        out.text.clone()
    };
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        // a closed pipe (`| head`) is not an error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Adaptive { algo, tree, trials } => adaptive(cli, *algo, tree, *trials),
        Command::Adversary {
            strategy,
            questioner,
            n,
            games,
            log,
        } => {
            if let Some(path) = log {
                let events = tournament_game_log(*strategy, *questioner, *n, 0, cli.seed)?;
                let mut out = BufWriter::new(File::create(path)?);
                for e in events {
                    serde_json::to_writer(&mut out, &e)?;
                    std::io::Write::write_all(&mut out, b"\n")?;
                }
            }
            Ok(Outcome::report(run_tournament(
                *strategy,
                *questioner,
                *n,
                *games,
                cli.seed,
            )?))
        }
        Command::Nonadaptive { action, io } => nonadaptive(cli, *action, io),
        Command::Solve {
            mode,
            goal,
            n,
            emit_strategy,
        } => solve(cli, *mode, *goal, *n, emit_strategy.as_ref()),
        Command::Bounds {
            solver_max_n,
            exhaustive_max_n,
            trials,
            games,
        } => {
            let config = BoundsConfig {
                seed: cli.seed,
                solver_max_n: *solver_max_n,
                exhaustive_max_n: cli.cap.map_or(*exhaustive_max_n, |c| c.min(*exhaustive_max_n)),
                trials: *trials,
                games: *games,
            };
            Ok(Outcome::report(verify_bounds_table(&config)?))
        }
    }
}

fn read_tree(spec: &str, rng: &mut ChaCha8Rng) -> Result<LabeledTree> {
    if let Some(n) = spec.strip_prefix("random:") {
        let n = parse_n(n)?;
        return Ok(random_tree(n, rng));
    }
    let text = std::fs::read_to_string(spec)?;
    Ok(serde_json::from_str(&text)?)
}

fn parse_n(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| ProbeError::Domain(format!("expected a vertex count, got {s:?}")))
}

fn adaptive(cli: &Cli, algo: Algo, tree: &str, trials: usize) -> Result<Outcome> {
    let id = match algo {
        Algo::Diameter => AlgorithmId::Diameter,
        Algo::Reconstruct => AlgorithmId::Reconstruct,
        Algo::Spider => AlgorithmId::Spider,
    };
    if let Some(n) = tree.strip_prefix("all:") {
        let n = parse_n(n)?;
        return Ok(Outcome::report(run_exhaustive(
            n..=n,
            id,
            cli.cap.unwrap_or(DEFAULT_ENUMERATION_CAP),
        )?));
    }
    if let Some(n) = tree.strip_prefix("random:") {
        if trials > 1 {
            return Ok(Outcome::report(run_random(&[parse_n(n)?], trials, id, cli.seed)?));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let hidden = read_tree(tree, &mut rng)?;
    let n = hidden.n();
    let mut session = QuerySession::new(hidden.clone(), None);
    let (value, correct, used, ceiling) = match algo {
        Algo::Diameter => {
            let r = find_diameter_pair(&mut session)?;
            let m = hidden.distance_matrix();
            let ok = m.get(r.pair.0, r.pair.1) == m.diameter();
            (serde_json::to_value(&r)?, ok, r.queries_used, diameter_ceiling(n))
        }
        Algo::Reconstruct | Algo::Spider => {
            let (r, ceiling) = if matches!(algo, Algo::Spider) {
                (identify_spider(&mut session)?, spider_ceiling(n))
            } else {
                (reconstruct_tree(&mut session)?, reconstruction_ceiling(n))
            };
            (serde_json::to_value(&r)?, r.tree == hidden, r.queries_used, ceiling)
        }
    };
    let pass = correct && used <= ceiling;
    let text = format!(
        "{} n={n} correct={correct} queries={used} ceiling={ceiling}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let value = json!({ "hidden": hidden, "result": value, "correct": correct, "ceiling": ceiling });
    Ok(Outcome::value(value, text, pass))
}

fn nonadaptive(cli: &Cli, action: NonadaptiveAction, io: &NonadaptiveIo) -> Result<Outcome> {
    let n = io.n;
    let spec = match &io.spec {
        Some(path) => QueryGraphSpec::read_json(path)?,
        None => match action {
            NonadaptiveAction::Build if io.min_degree => build_min_degree_query_graph(n)?,
            NonadaptiveAction::Build | NonadaptiveAction::DecodeExact => build_reconstruction_query_graph(n)?,
            NonadaptiveAction::DecodeIso | NonadaptiveAction::MaxPair => build_min_degree_query_graph(n)?,
            NonadaptiveAction::Witness => QueryGraphSpec::new(n, [(0, 1), (0, 2), (0, 3)])?,
        },
    };
    if spec.n() != n {
        return Err(ProbeError::Domain(format!(
            "--n {n} but the query graph has {} vertices",
            spec.n()
        )));
    }
    match action {
        NonadaptiveAction::Build => {
            let text = format!(
                "n={n} queries={} missing={} min_degree={}\n",
                spec.query_count(),
                spec.missing_count(),
                spec.min_degree()
            );
            return Ok(Outcome::value(serde_json::to_value(&spec)?, text, true));
        }
        NonadaptiveAction::Witness => {
            let (t, t2) = lemi_witness(&spec)?;
            let same = spec.answers_from(&t)? == spec.answers_from(&t2)?;
            let (d, d2) = (t.distance_matrix().diameter(), t2.distance_matrix().diameter());
            let text = format!(
                "answers equal={same} diameters {d} and {d2}\nT  = {:?}\nT' = {:?}\n",
                t.edges(),
                t2.edges()
            );
            let value = json!({ "t": t, "t_prime": t2, "answers_equal": same, "diameters": [d, d2] });
            return Ok(Outcome::value(value, text, same && d != d2));
        }
        _ => {}
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let (answers, hidden): (AnsweredQueryGraph, Option<LabeledTree>) = match &io.answers {
        Some(path) => (serde_json::from_str(&std::fs::read_to_string(path)?)?, None),
        None => {
            let tree = read_tree(io.tree.as_deref().unwrap_or(&format!("random:{n}")), &mut rng)?;
            (spec.answers_from(&tree)?, Some(tree))
        }
    };
    match action {
        NonadaptiveAction::DecodeExact => {
            let t = decode_exact(&spec, &answers)?;
            let pass = hidden.as_ref().is_none_or(|h| *h == t);
            let text = format!("decoded edges {:?}{}\n", t.edges(), verdict(&hidden, pass));
            Ok(Outcome::value(
                json!({ "tree": t, "matches_hidden": hidden.map(|_| pass) }),
                text,
                pass,
            ))
        }
        NonadaptiveAction::DecodeIso => {
            let limit = if io.all { usize::MAX } else { DEFAULT_MAX_SOLUTIONS };
            if spec.min_degree() + 3 < n {
                return Err(ProbeError::Domain("decode-iso needs minimum query degree n - 3".into()));
            }
            let set = complete_missing_distances(&spec, &answers, limit)?;
            let code = set.isomorphism_class()?;
            let pass = hidden.as_ref().is_none_or(|h| h.canonical_code() == code);
            let text = format!(
                "code {} from {} completion(s){}{}\n",
                code.as_str(),
                set.completions.len(),
                if set.exhausted { "" } else { " (limit reached)" },
                verdict(&hidden, pass)
            );
            let value = json!({
                "code": code.as_str(),
                "completions": set.completions,
                "exhausted": set.exhausted,
                "matches_hidden": hidden.map(|_| pass),
            });
            Ok(Outcome::value(value, text, pass))
        }
        NonadaptiveAction::MaxPair => {
            let (a, b, d) = find_max_distance_pair_nonadaptive(&spec, &answers)?;
            let pass = hidden.as_ref().is_none_or(|h| {
                let m = h.distance_matrix();
                m.get(a, b) == m.diameter()
            });
            let text = format!("pair ({a},{b}) at distance {d}{}\n", verdict(&hidden, pass));
            Ok(Outcome::value(json!({ "pair": [a, b], "distance": d }), text, pass))
        }
        NonadaptiveAction::Build | NonadaptiveAction::Witness => unreachable!("handled above"),
    }
}

fn verdict(hidden: &Option<LabeledTree>, pass: bool) -> &'static str {
    match (hidden, pass) {
        (None, _) => "",
        (Some(_), true) => "; agrees with the hidden tree",
        (Some(_), false) => "; DISAGREES with the hidden tree",
    }
}

fn solve(cli: &Cli, mode: SolveMode, goal: Goal, n: usize, emit: Option<&PathBuf>) -> Result<Outcome> {
    let cap = cli.cap.unwrap_or(DEFAULT_SOLVER_CAP);
    let value = match mode {
        SolveMode::Adaptive => solve_adaptive_with(n, goal, SolverOptions { cap, memo: true })?,
        SolveMode::Nonadaptive => {
            if n > cap {
                return Err(ProbeError::CapExceeded { n, cap });
            }
            solve_nonadaptive(n, goal)?
        }
    };
    let mut pass = true;
    if let Some(path) = emit {
        if matches!(mode, SolveMode::Nonadaptive) {
            return Err(ProbeError::Domain("--emit-strategy applies to adaptive solving".into()));
        }
        let strategy = optimal_strategy_extract(n, goal)?;
        pass = verify_strategy(&strategy)? == value;
        serde_json::to_writer(BufWriter::new(File::create(path)?), &strategy)?;
    }
    let frozen = solver_regression()?
        .get(&regression_key(goal, matches!(mode, SolveMode::Adaptive)))
        .and_then(|m| m.get(&n))
        .copied();
    if let Some(f) = frozen {
        pass &= f == value;
    }
    let text = format!(
        "n={n} goal={goal} value={value}{}\n",
        frozen.map_or(String::new(), |f| format!(" frozen={f}"))
    );
    Ok(Outcome::value(
        json!({ "n": n, "goal": goal.name(), "value": value, "frozen": frozen }),
        text,
        pass,
    ))
}
