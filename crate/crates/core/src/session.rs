//! Distance oracles and the transcript they produce.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ProbeError, Result};
use crate::tree::{
    all_pairs_distance, ordered, tree_at_index, tree_count, DistanceMatrix, LabeledTree, Vertex,
    DEFAULT_ENUMERATION_CAP,
};

/// Vertex pairs with their distance answers (the weighted query graph).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AnsweredQueryGraph {
    n: usize,
    answers: BTreeMap<(Vertex, Vertex), u32>,
}

impl AnsweredQueryGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            answers: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.answers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.answers.is_empty()
    }

    pub fn get(&self, a: Vertex, b: Vertex) -> Option<u32> {
        self.answers.get(&ordered(a, b)).copied()
    }

    pub fn contains(&self, a: Vertex, b: Vertex) -> bool {
        self.answers.contains_key(&ordered(a, b))
    }

    /// Records an answer. Re-inserting the same value is a no-op; a conflicting
    /// value, a loop, or a distance outside `1..n` is rejected.
    pub fn insert(&mut self, a: Vertex, b: Vertex, d: u32) -> Result<()> {
        self.check_pair(a, b)?;
        if d == 0 || d as usize >= self.n {
            return Err(ProbeError::Domain(format!(
                "answer {d} for ({a},{b}) outside 1..{}",
                self.n
            )));
        }
        match self.answers.get(&ordered(a, b)) {
            Some(&old) if old != d => Err(ProbeError::Domain(format!(
                "pair ({a},{b}) already answered {old}, not {d}"
            ))),
            Some(_) => Ok(()),
            None => {
                self.answers.insert(ordered(a, b), d);
                Ok(())
            }
        }
    }

    fn check_pair(&self, a: Vertex, b: Vertex) -> Result<()> {
        for v in [a, b] {
            if v >= self.n {
                return Err(ProbeError::OutOfRange { vertex: v, n: self.n });
            }
        }
        if a == b {
            return Err(ProbeError::Domain(format!("query ({a},{a}) names one vertex twice")));
        }
        Ok(())
    }

    /// `(a, b, d)` with `a < b`, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.answers.iter().map(|(&(a, b), &d)| (a, b, d))
    }

    /// True when `metric` agrees with every recorded answer.
    pub fn agrees_with(&self, metric: &DistanceMatrix) -> bool {
        self.iter().all(|(a, b, d)| metric.get(a, b) == d)
    }

    pub fn from_tree_on_pairs(tree: &LabeledTree, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let m = all_pairs_distance(tree);
        let mut g = Self::new(tree.n());
        for (a, b) in pairs {
            g.answers.insert(ordered(a, b), m.get(a, b));
        }
        g
    }

    pub fn to_file(&self) -> TranscriptFile {
        TranscriptFile {
            n: self.n,
            answers: self.iter().map(|(a, b, d)| [a, b, d as usize]).collect(),
        }
    }
}

/// JSON form `{"n": int, "answers": [[a, b, d], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptFile {
    pub n: usize,
    pub answers: Vec<[usize; 3]>,
}

impl TranscriptFile {
    pub fn into_graph(self) -> Result<AnsweredQueryGraph> {
        let mut g = AnsweredQueryGraph::new(self.n);
        for [a, b, d] in self.answers {
            g.insert(a, b, d as u32)?;
        }
        Ok(g)
    }
}

impl Serialize for AnsweredQueryGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnsweredQueryGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TranscriptFile::deserialize(d)?
            .into_graph()
            .map_err(serde::de::Error::custom)
    }
}

/// Anything that answers distance queries: a session around a real tree, or an adversary.
pub trait DistanceOracle {
    fn n(&self) -> usize;

    /// Distance between `x` and `y`. Repeating a pair is free.
    fn ask(&mut self, x: Vertex, y: Vertex) -> Result<u32>;

    /// Distinct pairs asked so far.
    fn queries_used(&self) -> usize;

    fn transcript(&self) -> &AnsweredQueryGraph;
}

/// Oracle around a hidden tree that counts and records every distinct query.
#[derive(Debug, Clone)]
pub struct QuerySession {
    hidden: LabeledTree,
    metric: DistanceMatrix,
    transcript: AnsweredQueryGraph,
    budget: Option<usize>,
}

impl QuerySession {
    pub fn new(hidden: LabeledTree, budget: Option<usize>) -> Self {
        let metric = all_pairs_distance(&hidden);
        let transcript = AnsweredQueryGraph::new(hidden.n());
        Self {
            hidden,
            metric,
            transcript,
            budget,
        }
    }

    pub fn count(&self) -> usize {
        self.transcript.len()
    }

    pub fn budget(&self) -> Option<usize> {
        self.budget
    }

    /// The hidden tree; for verification after a run, not for questioners.
    pub fn reveal(&self) -> &LabeledTree {
        &self.hidden
    }

    pub fn into_transcript(self) -> AnsweredQueryGraph {
        self.transcript
    }
}

impl DistanceOracle for QuerySession {
    fn n(&self) -> usize {
        self.hidden.n()
    }

    fn ask(&mut self, x: Vertex, y: Vertex) -> Result<u32> {
        self.transcript.check_pair(x, y)?;
        if let Some(d) = self.transcript.get(x, y) {
            return Ok(d);
        }
        if let Some(budget) = self.budget {
            if self.transcript.len() >= budget {
                return Err(ProbeError::BudgetExhausted { budget });
            }
        }
        let d = self.metric.get(x, y);
        self.transcript.answers.insert(ordered(x, y), d);
        Ok(d)
    }

    fn queries_used(&self) -> usize {
        self.transcript.len()
    }

    fn transcript(&self) -> &AnsweredQueryGraph {
        &self.transcript
    }
}

/// Whether some labeled tree realizes every answer, by exhaustive enumeration.
///
/// Returns the first witness in Prüfer order. Refuses `n` above `cap`.
pub fn check_consistency(aqg: &AnsweredQueryGraph) -> Result<Option<LabeledTree>> {
    check_consistency_capped(aqg, DEFAULT_ENUMERATION_CAP)
}

pub fn check_consistency_capped(aqg: &AnsweredQueryGraph, cap: usize) -> Result<Option<LabeledTree>> {
    let n = aqg.n();
    if n > cap {
        return Err(ProbeError::CapExceeded { n, cap });
    }
    if n <= 1 {
        return Ok(Some(LabeledTree::new(1, []).expect("single vertex")));
    }
    if aqg.iter().any(|(_, _, d)| d == 0 || d as usize >= n) {
        return Ok(None);
    }
    let answers: Vec<_> = aqg.iter().collect();
    let witness = (0..tree_count(n)).into_par_iter().find_first(|&i| {
        let t = tree_at_index(n, i);
        let mut cache: Vec<Option<Vec<u32>>> = vec![None; n];
        answers.iter().all(|&(a, b, d)| {
            let row = cache[a].get_or_insert_with(|| t.distances_from(a));
            row[b] == d
        })
    });
    Ok(witness.map(|i| tree_at_index(n, i)))
}
