use super::decode::check_coverage;
use super::QueryGraphSpec;
use crate::error::{ProbeError, Result};
use crate::session::AnsweredQueryGraph;
use crate::tree::{four_point_holds, CanonicalCode, DistanceMatrix, LabeledTree, Vertex};

/// Completions searched for by default before the search stops.
pub const DEFAULT_MAX_SOLUTIONS: usize = 64;

/// Trees consistent with the answers, found by filling in the missing distances.
#[derive(Debug, Clone)]
pub struct CompletionSet {
    pub completions: Vec<LabeledTree>,
    /// Code shared by every completion, `None` if two of them differ.
    pub shared_code: Option<CanonicalCode>,
    /// True when the search ran to the end, so `completions` holds every consistent tree.
    pub exhausted: bool,
}

impl CompletionSet {
    /// The common isomorphism class; two non-isomorphic completions are an invariant violation.
    pub fn isomorphism_class(&self) -> Result<CanonicalCode> {
        self.shared_code.clone().ok_or_else(|| {
            let codes: Vec<_> = self.completions.iter().map(|t| t.canonical_code()).collect();
            let other = codes.iter().position(|c| *c != codes[0]).unwrap_or(0);
            ProbeError::InvariantViolation(format!(
                "completions {:?} and {:?} are not isomorphic",
                self.completions[0], self.completions[other]
            ))
        })
    }

    /// Smallest pair realizing the diameter in every completion.
    ///
    /// Checks that a returned distance of at least 4 is the same in all
    /// completions, and that with every diameter at most 3 it equals the
    /// largest answer.
    pub fn max_distance_pair(&self, answers: &AnsweredQueryGraph) -> Result<(Vertex, Vertex, u32)> {
        let metrics: Vec<DistanceMatrix> = self.completions.iter().map(|t| t.distance_matrix()).collect();
        let diams: Vec<u32> = metrics.iter().map(|m| m.diameter()).collect();
        let n = answers.n();
        let pair = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| metrics.iter().zip(&diams).all(|(m, &d)| m.get(a, b) == d))
            .ok_or_else(|| ProbeError::InvariantViolation("no pair is diametral in every completion".into()))?;
        let (a, b) = pair;
        let d = metrics[0].get(a, b);
        if d >= 4 && metrics.iter().any(|m| m.get(a, b) != d) {
            return Err(ProbeError::InvariantViolation(format!(
                "distance of ({a},{b}) varies across completions"
            )));
        }
        if diams.iter().all(|&x| x <= 3) {
            let top = answers.iter().map(|(_, _, x)| x).max().unwrap_or(0);
            if d != top {
                return Err(ProbeError::InvariantViolation(format!(
                    "diameter {d} differs from the largest answer {top}"
                )));
            }
        }
        Ok((a, b, d))
    }
}

/// Fills in the distances of the unqueried pairs by backtracking and keeps
/// every assignment whose distance-1 pairs form a tree with exactly that metric.
///
/// Candidate values for a missing `(u, v)` lie between `max |q(u,w) - q(v,w)|`
/// and `min q(u,w) + q(v,w)` over vertices `w` queried with both, with the
/// parity those sums fix. After each assignment, every quadruple with all six
/// distances known must satisfy the four-point condition.
///
/// At most `max_solutions` trees are returned (`usize::MAX` for no limit).
/// When none exists the error names the first failed check: `parity`,
/// `bound window`, `four-point` or `spanning-tree`.
pub fn complete_missing_distances(
    spec: &QueryGraphSpec,
    answers: &AnsweredQueryGraph,
    max_solutions: usize,
) -> Result<CompletionSet> {
    if max_solutions == 0 {
        return Err(ProbeError::Domain("max_solutions must be positive".into()));
    }
    check_coverage(spec, answers)?;
    let n = spec.n();
    let mut d = vec![0u32; n * n];
    for (a, b, x) in answers.iter() {
        d[a * n + b] = x;
        d[b * n + a] = x;
    }

    let mut slots = Vec::new();
    for (u, v) in spec.missing() {
        slots.push(Slot {
            u,
            v,
            values: candidates(n, &d, u, v)?,
        });
    }
    slots.sort_by_key(|s| s.values.len());

    let mut search = Search {
        n,
        d,
        slots,
        found: Vec::new(),
        limit: max_solutions,
        first_failure: None,
    };
    if let Some(q) = search.violated_quadruple(None) {
        return Err(ProbeError::decode(
            "four-point",
            format!("answers on {q:?} are not a tree metric"),
        ));
    }
    let exhausted = search.run(0);
    if search.found.is_empty() {
        let rule = search.first_failure.unwrap_or("spanning-tree");
        return Err(ProbeError::decode(rule, "no tree agrees with the answers"));
    }
    let first = search.found[0].canonical_code();
    let shared_code = search
        .found
        .iter()
        .all(|t| t.canonical_code() == first)
        .then_some(first);
    Ok(CompletionSet {
        completions: search.found,
        shared_code,
        exhausted,
    })
}

/// Isomorphism class of the hidden tree from answers on a query graph of minimum degree `n - 3`.
pub fn decode_isomorphism(spec: &QueryGraphSpec, answers: &AnsweredQueryGraph) -> Result<CanonicalCode> {
    check_min_degree(spec)?;
    complete_missing_distances(spec, answers, DEFAULT_MAX_SOLUTIONS)?.isomorphism_class()
}

/// A pair at maximum distance in the hidden tree, from answers on a query graph of minimum degree `n - 3`.
pub fn find_max_distance_pair_nonadaptive(
    spec: &QueryGraphSpec,
    answers: &AnsweredQueryGraph,
) -> Result<(Vertex, Vertex, u32)> {
    check_min_degree(spec)?;
    complete_missing_distances(spec, answers, DEFAULT_MAX_SOLUTIONS)?.max_distance_pair(answers)
}

fn check_min_degree(spec: &QueryGraphSpec) -> Result<()> {
    let n = spec.n();
    if n < 13 {
        return Err(ProbeError::Domain(format!(
            "decoding up to isomorphism needs n >= 13, got {n}"
        )));
    }
    if spec.min_degree() < n - 3 {
        return Err(ProbeError::Domain(format!(
            "query graph has minimum degree {}, below n - 3 = {}",
            spec.min_degree(),
            n - 3
        )));
    }
    Ok(())
}

fn candidates(n: usize, d: &[u32], u: Vertex, v: Vertex) -> Result<Vec<u32>> {
    let mut lo = 1u32;
    let mut hi = (n - 1) as u32;
    let mut parity: Option<u32> = None;
    for w in 0..n {
        let (a, b) = (d[u * n + w], d[v * n + w]);
        if w == u || w == v || a == 0 || b == 0 {
            continue;
        }
        let p = (a + b) % 2;
        if parity.is_some_and(|q| q != p) {
            return Err(ProbeError::decode(
                "parity",
                format!("common neighbors of ({u},{v}) disagree on the parity of its distance"),
            ));
        }
        parity = Some(p);
        lo = lo.max(a.abs_diff(b));
        hi = hi.min(a + b);
    }
    let values: Vec<u32> = (lo..=hi).filter(|x| parity.is_none_or(|p| x % 2 == p)).collect();
    if values.is_empty() {
        return Err(ProbeError::decode(
            "bound window",
            format!("no distance for ({u},{v}) fits between {lo} and {hi}"),
        ));
    }
    Ok(values)
}

struct Slot {
    u: Vertex,
    v: Vertex,
    values: Vec<u32>,
}

struct Search {
    n: usize,
    /// Row-major distances, 0 off the diagonal for unknown.
    d: Vec<u32>,
    slots: Vec<Slot>,
    found: Vec<LabeledTree>,
    limit: usize,
    first_failure: Option<&'static str>,
}

impl Search {
    /// Returns false when the limit cut the search short.
    fn run(&mut self, k: usize) -> bool {
        if k == self.slots.len() {
            match DistanceMatrix::from_raw(self.n, self.d.clone()).realize() {
                Some(t) => self.found.push(t),
                None => {
                    self.first_failure.get_or_insert("spanning-tree");
                }
            }
            return self.found.len() < self.limit;
        }
        let (u, v) = (self.slots[k].u, self.slots[k].v);
        let n = self.n;
        for i in 0..self.slots[k].values.len() {
            let x = self.slots[k].values[i];
            self.d[u * n + v] = x;
            self.d[v * n + u] = x;
            if let Some(rule) = self.conflict(u, v) {
                self.first_failure.get_or_insert(rule);
                continue;
            }
            if !self.run(k + 1) {
                self.d[u * n + v] = 0;
                self.d[v * n + u] = 0;
                return false;
            }
        }
        self.d[u * n + v] = 0;
        self.d[v * n + u] = 0;
        true
    }

    /// Triangle and four-point checks touching the newly set pair `(u, v)`.
    fn conflict(&self, u: Vertex, v: Vertex) -> Option<&'static str> {
        let n = self.n;
        let x = self.d[u * n + v];
        for w in 0..n {
            let (a, b) = (self.d[u * n + w], self.d[v * n + w]);
            if w != u && w != v && a != 0 && b != 0 && (x > a + b || x < a.abs_diff(b)) {
                return Some("bound window");
            }
        }
        self.violated_quadruple(Some((u, v))).map(|_| "four-point")
    }

    /// A fully known quadruple breaking the four-point condition; with `pair`,
    /// only quadruples containing it are examined.
    fn violated_quadruple(&self, pair: Option<(Vertex, Vertex)>) -> Option<[Vertex; 4]> {
        let n = self.n;
        let g = |a: Vertex, b: Vertex| self.d[a * n + b];
        let bad = |q: [Vertex; 4]| {
            let [a, b, c, e] = q;
            let six = [g(a, b), g(c, e), g(a, c), g(b, e), g(a, e), g(b, c)];
            six.iter().all(|&x| x != 0) && !four_point_holds(six[0] + six[1], six[2] + six[3], six[4] + six[5])
        };
        match pair {
            Some((u, v)) => {
                for a in 0..n {
                    if a == u || a == v || g(u, a) == 0 || g(v, a) == 0 {
                        continue;
                    }
                    for b in a + 1..n {
                        if b != u && b != v && bad([u, v, a, b]) {
                            return Some([u, v, a, b]);
                        }
                    }
                }
                None
            }
            None => {
                for a in 0..n {
                    for b in a + 1..n {
                        for c in b + 1..n {
                            for e in c + 1..n {
                                if bad([a, b, c, e]) {
                                    return Some([a, b, c, e]);
                                }
                            }
                        }
                    }
                }
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonadaptive::build_min_degree_query_graph;
    use crate::tree::TreeShape;

    #[test]
    fn star_has_one_completion() {
        let spec = build_min_degree_query_graph(13).unwrap();
        let star = LabeledTree::star(13, 4);
        let answers = spec.answers_from(&star).unwrap();
        let set = complete_missing_distances(&spec, &answers, usize::MAX).unwrap();
        assert!(set.exhausted);
        assert_eq!(set.completions, vec![star.clone()]);
        let (a, b, d) = find_max_distance_pair_nonadaptive(&spec, &answers).unwrap();
        assert_eq!(d, 2);
        assert!(star.leaves().any(|l| l == a) && star.leaves().any(|l| l == b));
    }

    #[test]
    fn path_completions_are_paths() {
        let spec = build_min_degree_query_graph(13).unwrap();
        let perm: Vec<Vertex> = (0..13).map(|i| (i * 5) % 13).collect();
        let path = LabeledTree::path(13).relabel(&perm);
        let answers = spec.answers_from(&path).unwrap();
        let set = complete_missing_distances(&spec, &answers, DEFAULT_MAX_SOLUTIONS).unwrap();
        assert!(set.completions.iter().all(|t| t.shape() == TreeShape::Path));
        assert_eq!(decode_isomorphism(&spec, &answers).unwrap(), path.canonical_code());
        let (a, b, d) = find_max_distance_pair_nonadaptive(&spec, &answers).unwrap();
        assert_eq!(d, 12);
        assert_eq!(path.distance_matrix().get(a, b), 12);
    }

    #[test]
    fn inconsistent_parity_is_named() {
        let spec = build_min_degree_query_graph(13).unwrap();
        let mut answers = spec.answers_from(&LabeledTree::star(13, 6)).unwrap();
        // move one answer from 2 to 3 so that common neighbors of (0,1) disagree on parity
        let mut raw = answers.to_file();
        for e in raw.answers.iter_mut() {
            if e[0] == 0 && e[1] == 3 {
                e[2] = 3;
            }
        }
        answers = raw.into_graph().unwrap();
        match complete_missing_distances(&spec, &answers, 8) {
            Err(ProbeError::Decode { rule, .. }) => assert_eq!(rule, "parity"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_n_is_rejected_for_isomorphism() {
        let spec = QueryGraphSpec::new(6, [(0, 1)]).unwrap();
        let answers = spec.answers_from(&LabeledTree::path(6)).unwrap();
        assert!(matches!(
            decode_isomorphism(&spec, &answers),
            Err(ProbeError::Domain(_))
        ));
        // the completion search itself works at any size
        let set = complete_missing_distances(&spec, &answers, usize::MAX).unwrap();
        assert_eq!(set.completions, vec![LabeledTree::path(6)]);
    }
}
