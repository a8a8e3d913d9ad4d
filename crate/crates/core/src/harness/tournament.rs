use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{BoundRow, BoundsReport, Direction};
use super::sweeps::sub_seed;
use crate::adaptive::{find_diameter_pair, identify_spider, reconstruct_tree};
use crate::adversary::{
    layered_forcing_bound, pairwise_coverage_audit, spider_forcing_bound, Adversary, AdversaryGame,
    DoubleStarAdversary, FreeInfo, GameEvent, LayeredAdversary, SpiderAdversary,
};
use crate::error::{ProbeError, Result};
use crate::session::DistanceOracle;
use crate::solver::TreeTable;
use crate::tree::{random_permutation, LabeledTree, Vertex};

/// Largest `n` the greedy questioner accepts; it keeps every labeled tree in memory.
pub const GREEDY_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdversaryId {
    Doublestar,
    Layered,
    Spider,
    /// The spider adversary without the up-front role partition.
    SpiderHidden,
}

impl AdversaryId {
    pub const ALL: [AdversaryId; 4] = [
        AdversaryId::Doublestar,
        AdversaryId::Layered,
        AdversaryId::Spider,
        AdversaryId::SpiderHidden,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AdversaryId::Doublestar => "doublestar",
            AdversaryId::Layered => "layered",
            AdversaryId::Spider => "spider",
            AdversaryId::SpiderHidden => "spider-hidden",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuestionerId {
    PaperDiameter,
    PaperReconstruct,
    PaperSpider,
    /// Uniformly random unasked pairs until the adversary is resolved.
    Random,
    /// The pair splitting the consistent trees into the most answer classes.
    Greedy,
}

impl QuestionerId {
    pub const ALL: [QuestionerId; 5] = [
        QuestionerId::PaperDiameter,
        QuestionerId::PaperReconstruct,
        QuestionerId::PaperSpider,
        QuestionerId::Random,
        QuestionerId::Greedy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QuestionerId::PaperDiameter => "paper-diameter",
            QuestionerId::PaperReconstruct => "paper-reconstruct",
            QuestionerId::PaperSpider => "paper-spider",
            QuestionerId::Random => "random",
            QuestionerId::Greedy => "greedy",
        }
    }
}

macro_rules! named_id {
    ($t:ty, $what:literal) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $t {
            type Err = ProbeError;

            fn from_str(s: &str) -> Result<Self> {
                <$t>::ALL
                    .into_iter()
                    .find(|x| x.name() == s)
                    .ok_or_else(|| ProbeError::Domain(format!(concat!("unknown ", $what, " {:?}"), s)))
            }
        }
    };
}

named_id!(AdversaryId, "adversary");
named_id!(QuestionerId, "questioner");

/// What one game produced, reduced to what the report needs.
#[derive(Debug, Clone, Default)]
struct GameStats {
    /// Distinct queries asked when the game stopped.
    queries: usize,
    resolved_at: Option<usize>,
    /// The questioner ran to completion (as opposed to being stopped by the adversary).
    finished: bool,
    /// The questioner's output, when it claims one, agrees with the adversary's witness.
    output_ok: bool,
    /// The transcript agrees with the adversary's final witness.
    consistent: bool,
    /// Double star: certificate at the end.
    certificate: Option<usize>,
    /// Double star: before the ending query, a double star and a real
    /// caterpillar were both consistent with no common diametral pair.
    goal_open: bool,
    /// Layered: informative answers at resolution. Spider: cross pairs answered 3.
    forced: Option<usize>,
    audit: Option<bool>,
}

/// Plays `games` games of `questioner` against `adversary` on `n` vertices and
/// checks the adversary's forcing bound on every game. Deterministic in `seed`.
pub fn run_tournament(
    adversary: AdversaryId,
    questioner: QuestionerId,
    n: usize,
    games: usize,
    seed: u64,
) -> Result<BoundsReport> {
    check_pairing(adversary, questioner, n)?;
    let table = (questioner == QuestionerId::Greedy)
        .then(|| TreeTable::new(n))
        .transpose()?;
    let base = sub_seed(seed, n, &format!("{adversary}/{questioner}"));
    let stats: Vec<GameStats> = (0..games)
        .into_par_iter()
        .map(|g| {
            let mut rng = ChaCha8Rng::seed_from_u64(base.wrapping_add(g as u64));
            play_one(adversary, questioner, n, &mut rng, table.as_ref()).map(|(s, _)| s)
        })
        .collect::<Result<_>>()?;
    Ok(summarize(adversary, questioner, n, &stats))
}

/// Event log of game number `game` of the matching [`run_tournament`] call.
pub fn tournament_game_log(
    adversary: AdversaryId,
    questioner: QuestionerId,
    n: usize,
    game: usize,
    seed: u64,
) -> Result<Vec<GameEvent>> {
    check_pairing(adversary, questioner, n)?;
    let table = (questioner == QuestionerId::Greedy)
        .then(|| TreeTable::new(n))
        .transpose()?;
    let base = sub_seed(seed, n, &format!("{adversary}/{questioner}"));
    let mut rng = ChaCha8Rng::seed_from_u64(base.wrapping_add(game as u64));
    play_one(adversary, questioner, n, &mut rng, table.as_ref()).map(|(_, log)| log)
}

fn check_pairing(adversary: AdversaryId, questioner: QuestionerId, n: usize) -> Result<()> {
    let spider_family = matches!(adversary, AdversaryId::Spider | AdversaryId::SpiderHidden);
    if questioner == QuestionerId::PaperSpider && !spider_family {
        return Err(ProbeError::Domain(format!(
            "paper-spider only plays against spider adversaries, not {adversary}"
        )));
    }
    if questioner == QuestionerId::Greedy && n > GREEDY_CAP {
        return Err(ProbeError::CapExceeded { n, cap: GREEDY_CAP });
    }
    if questioner == QuestionerId::PaperSpider && n < 7 {
        return Err(ProbeError::Domain(format!("paper-spider needs n >= 7, got {n}")));
    }
    // surfaces size errors once instead of per game
    match adversary {
        AdversaryId::Doublestar => drop(DoubleStarAdversary::new(n)?),
        AdversaryId::Layered => drop(LayeredAdversary::new(n)?),
        _ => drop(SpiderAdversary::new(n, true)?),
    }
    Ok(())
}

fn play_one(
    adversary: AdversaryId,
    questioner: QuestionerId,
    n: usize,
    rng: &mut ChaCha8Rng,
    table: Option<&TreeTable>,
) -> Result<(GameStats, Vec<GameEvent>)> {
    match adversary {
        AdversaryId::Doublestar => {
            let mut game = AdversaryGame::new(DoubleStarAdversary::new(n)?);
            let (finished, output) = drive(&mut game, questioner, rng, table)?;
            let mut stats = common_stats(&game, finished, output);
            if let Some(end) = game.resolved_at() {
                stats.certificate = game.adversary().ds_certificate().ok();
                stats.goal_open = goal_open_before(&game, end)?;
            }
            Ok((stats, game.log().to_vec()))
        }
        AdversaryId::Layered => {
            let placement = random_permutation(n, rng);
            let mut game = AdversaryGame::new(LayeredAdversary::with_placement(n, &placement)?);
            let (finished, output) = drive(&mut game, questioner, rng, table)?;
            let mut stats = common_stats(&game, finished, output);
            stats.forced = game.adversary().informative_at_resolution();
            Ok((stats, game.log().to_vec()))
        }
        AdversaryId::Spider | AdversaryId::SpiderHidden => {
            let placement = random_permutation(n, rng);
            let reveal = adversary == AdversaryId::Spider;
            let mut game = AdversaryGame::new(SpiderAdversary::with_placement(n, &placement, reveal)?);
            let (finished, output) = drive(&mut game, questioner, rng, table)?;
            let mut stats = common_stats(&game, finished, output);
            stats.forced = game.adversary().cross_at_resolution();
            if stats.resolved_at.is_some() {
                stats.audit = Some(pairwise_coverage_audit(game.transcript(), &game.adversary().roles()));
            }
            Ok((stats, game.log().to_vec()))
        }
    }
}

/// What a questioner claims at the end of its run.
enum Output {
    Nothing,
    Tree(LabeledTree),
    Pair(Vertex, Vertex),
}

fn common_stats<A: Adversary>(game: &AdversaryGame<A>, finished: bool, output: Output) -> GameStats {
    let witness = game.adversary().witness();
    let consistent = game.transcript().agrees_with(&witness.distance_matrix());
    let output_ok = match output {
        Output::Nothing => true,
        Output::Tree(t) => t == witness,
        Output::Pair(a, b) => {
            let m = witness.distance_matrix();
            m.get(a, b) == m.diameter()
        }
    };
    GameStats {
        queries: game.queries_used(),
        resolved_at: game.resolved_at(),
        finished,
        output_ok,
        consistent,
        ..GameStats::default()
    }
}

/// Runs one questioner until it finishes or the adversary ends the game.
fn drive<A: Adversary>(
    game: &mut AdversaryGame<A>,
    questioner: QuestionerId,
    rng: &mut ChaCha8Rng,
    table: Option<&TreeTable>,
) -> Result<(bool, Output)> {
    let outcome = match questioner {
        QuestionerId::PaperDiameter => find_diameter_pair(game).map(|r| Output::Pair(r.pair.0, r.pair.1)),
        QuestionerId::PaperReconstruct => reconstruct_tree(game).map(|r| Output::Tree(r.tree)),
        QuestionerId::PaperSpider => identify_spider(game).map(|r| Output::Tree(r.tree)),
        QuestionerId::Random => random_questioner(game, rng).map(|_| Output::Nothing),
        QuestionerId::Greedy => greedy_questioner(game, table.expect("built for greedy")).map(|_| Output::Nothing),
    };
    match outcome {
        Ok(out) => Ok((true, out)),
        Err(ProbeError::GameOver(_)) => Ok((false, Output::Nothing)),
        Err(e) => Err(e),
    }
}

fn random_questioner<A: Adversary>(game: &mut AdversaryGame<A>, rng: &mut ChaCha8Rng) -> Result<()> {
    let n = game.n();
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    for (a, b) in pairs {
        if game.resolved() {
            break;
        }
        game.ask(a, b)?;
    }
    Ok(())
}

/// Tracks the trees consistent with every distance the questioner has seen
/// (answers and revealed pairs) and asks the pair with the most distinct
/// answers among them, smallest pair on ties.
fn greedy_questioner<A: Adversary>(game: &mut AdversaryGame<A>, table: &TreeTable) -> Result<()> {
    let mut set: Vec<u32> = (0..table.len() as u32).collect();
    let mut seen_events = 0;
    let pairs = table.pairs().len();
    let mut asked = vec![false; pairs];
    while !game.resolved() {
        let mut facts: Vec<(Vertex, Vertex, u32)> = Vec::new();
        for e in &game.log()[seen_events..] {
            facts.push((e.pair.0, e.pair.1, e.answer));
            if let Some(FreeInfo::Revealed { pairs }) = &e.free_info {
                facts.extend(pairs.iter().copied());
            }
        }
        seen_events = game.log().len();
        for (a, b, d) in facts {
            let p = table.pair_index(a, b);
            asked[p] = true;
            set.retain(|&t| table.dist(t as usize, p) as u32 == d);
        }
        let next = (0..pairs).filter(|&p| !asked[p]).max_by_key(|&p| {
            let mut classes = [false; 8];
            for &t in &set {
                classes[table.dist(t as usize, p) as usize] = true;
            }
            (classes.iter().filter(|&&c| c).count(), std::cmp::Reverse(p))
        });
        let Some(p) = next else { break };
        let (a, b) = table.pairs()[p];
        asked[p] = true;
        game.ask(a, b)?;
    }
    Ok(())
}

/// Replays the first `end - 1` queries and checks that afterwards a double
/// star and a real caterpillar were both consistent with all known distances
/// while sharing no diametral pair. The goal only gets easier as facts
/// accumulate, so it was open at every earlier query too.
fn goal_open_before(game: &AdversaryGame<DoubleStarAdversary>, end: usize) -> Result<bool> {
    let n = game.n();
    let mut replay = DoubleStarAdversary::new(n)?;
    for e in game.log().iter().take(end - 1) {
        replay.ds_answer(e.pair.0, e.pair.1)?;
    }
    if replay.ended() {
        return Ok(false);
    }
    if replay.centers().is_none() {
        // nothing is known yet; every labeled tree is consistent
        return Ok(true);
    }
    let (Some(ds), Some(cat)) = (replay.witness_double_star(), replay.witness_caterpillar()) else {
        return Ok(false);
    };
    let (mds, mcat) = (ds.distance_matrix(), cat.distance_matrix());
    let facts = replay.facts();
    if !facts.iter().all(|&(a, b, d)| mds.get(a, b) == d && mcat.get(a, b) == d) {
        return Ok(false);
    }
    let shared = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .any(|(a, b)| mds.get(a, b) == mds.diameter() && mcat.get(a, b) == mcat.diameter());
    Ok(!shared)
}

fn summarize(adversary: AdversaryId, questioner: QuestionerId, n: usize, stats: &[GameStats]) -> BoundsReport {
    let games = stats.len() as u64;
    let id = |what: &str| format!("{adversary}/{questioner}.{what}");
    let mut report = BoundsReport::new();
    let count = |f: &dyn Fn(&GameStats) -> bool| stats.iter().filter(|s| f(s)).count() as u64;

    let queries: Vec<usize> = stats.iter().map(|s| s.resolved_at.unwrap_or(s.queries)).collect();
    let (min, max) = (
        queries.iter().min().copied().unwrap_or(0),
        queries.iter().max().copied().unwrap_or(0),
    );
    let mean = queries.iter().sum::<usize>() as f64 / queries.len().max(1) as f64;
    let summary = format!("games={games} end-count min={min} max={max} mean={mean:.2}");

    report.push(BoundRow::new(
        n,
        id("consistent"),
        count(&|s| s.consistent),
        "every game",
        games,
        Direction::Exactly,
    ));
    report.push(
        BoundRow::new(
            n,
            id("output_correct"),
            count(&|s| s.output_ok),
            "every game",
            games,
            Direction::Exactly,
        )
        .with_detail(format!("finished={}", count(&|s| s.finished))),
    );

    match adversary {
        AdversaryId::Doublestar => {
            let ended: Vec<&GameStats> = stats.iter().filter(|s| s.resolved_at.is_some()).collect();
            report.push(BoundRow::new(
                n,
                id("ended"),
                ended.len() as u64,
                "every game",
                games,
                Direction::Exactly,
            ));
            let min_end = ended.iter().filter_map(|s| s.resolved_at).min().unwrap_or(0) as u64;
            report.push(
                BoundRow::new(
                    n,
                    id("end_count"),
                    min_end,
                    "2n-9",
                    (2 * n).saturating_sub(9) as u64,
                    Direction::AtLeast,
                )
                .with_detail(summary),
            );
            let min_cert = ended.iter().map(|s| s.certificate.unwrap_or(0)).min().unwrap_or(0) as u64;
            report.push(BoundRow::new(
                n,
                id("certificate"),
                min_cert,
                "2n-7",
                (2 * n - 7) as u64,
                Direction::AtLeast,
            ));
            report.push(BoundRow::new(
                n,
                id("goal_open_before_end"),
                count(&|s| s.goal_open),
                "every game",
                games,
                Direction::Exactly,
            ));
        }
        AdversaryId::Layered | AdversaryId::Spider | AdversaryId::SpiderHidden => {
            let resolved = count(&|s| s.forced.is_some() && s.resolved_at.is_some());
            report.push(BoundRow::new(
                n,
                id("resolved"),
                resolved,
                "every game",
                games,
                Direction::Exactly,
            ));
            let min_forced = stats.iter().filter_map(|s| s.forced).min().unwrap_or(0) as u64;
            let (bound, anchor, what) = if adversary == AdversaryId::Layered {
                (
                    layered_forcing_bound(n),
                    "(floor(n/2)-1)(n-floor(n/2)-1)",
                    "informative",
                )
            } else {
                (spider_forcing_bound(n), "C(n-floor(n/2)-1,2)", "cross_pairs")
            };
            report.push(
                BoundRow::new(n, id(what), min_forced, anchor, bound as u64, Direction::AtLeast).with_detail(summary),
            );
            if adversary != AdversaryId::Layered {
                report.push(BoundRow::new(
                    n,
                    id("coverage_audit"),
                    count(&|s| s.audit == Some(true)),
                    "every resolved game",
                    resolved,
                    Direction::Exactly,
                ));
            }
        }
    }
    report
}
