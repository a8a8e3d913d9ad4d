use super::QueryGraphSpec;
use crate::error::{ProbeError, Result};
use crate::session::AnsweredQueryGraph;
use crate::tree::{ordered, LabeledTree, Vertex};

/// Recovers the hidden tree from answers on a query graph whose missing
/// pairs form a matching.
///
/// Queried pairs answered 1 are edges. A missing pair `(u, v)` is decided by,
/// in order: some `w` with `|q(u,w) - q(v,w)| != 1` makes it a non-edge; if
/// `u` or `v` does not have exactly one queried neighbor it is an edge;
/// otherwise, with `x` and `y` those neighbors, it is an edge iff `x` and `y`
/// are not adjacent. When `(x, y)` is itself missing its own decision is used,
/// so missing pairs are settled in rounds until nothing changes.
pub fn decode_exact(spec: &QueryGraphSpec, answers: &AnsweredQueryGraph) -> Result<LabeledTree> {
    let n = spec.n();
    if n < 5 {
        return Err(ProbeError::Domain(format!("exact decoding needs n >= 5, got {n}")));
    }
    if (0..n).any(|v| spec.missing_partners(v).len() > 1) {
        return Err(ProbeError::Domain("the missing pairs must form a matching".into()));
    }
    check_coverage(spec, answers)?;

    let q = |a: Vertex, b: Vertex| answers.get(a, b).expect("coverage checked");
    let mut neighbor: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for (a, b, d) in answers.iter() {
        if d == 1 {
            neighbor[a].push(b);
            neighbor[b].push(a);
        }
    }

    // decision per missing pair; undecided ones wait on their bridge pair (x, y)
    let mut decided: Vec<((Vertex, Vertex), Option<bool>)> = Vec::new();
    let mut pending: Vec<(usize, Vertex, Vertex)> = Vec::new();
    for (u, v) in spec.missing() {
        let window = (0..n)
            .filter(|&w| w != u && w != v)
            .any(|w| q(u, w).abs_diff(q(v, w)) != 1);
        let outcome = if window {
            Some(false)
        } else if neighbor[u].len() != 1 || neighbor[v].len() != 1 {
            Some(true)
        } else {
            pending.push((decided.len(), neighbor[u][0], neighbor[v][0]));
            None
        };
        decided.push(((u, v), outcome));
    }

    while !pending.is_empty() {
        let mut waiting = Vec::new();
        for &(i, x, y) in &pending {
            let adjacent = if spec.is_queried(x, y) {
                Some(q(x, y) == 1)
            } else {
                decided.iter().find(|(p, _)| *p == ordered(x, y)).and_then(|(_, o)| *o)
            };
            match adjacent {
                Some(adj) => decided[i].1 = Some(!adj),
                None => waiting.push((i, x, y)),
            }
        }
        if waiting.len() == pending.len() {
            let (u, v) = decided[waiting[0].0].0;
            return Err(ProbeError::decode(
                "bridge-pair",
                format!("missing pair ({u},{v}) depends on another undecided missing pair"),
            ));
        }
        pending = waiting;
    }

    let mut edges: Vec<(Vertex, Vertex)> = answers
        .iter()
        .filter(|&(_, _, d)| d == 1)
        .map(|(a, b, _)| (a, b))
        .collect();
    edges.extend(decided.iter().filter(|(_, o)| *o == Some(true)).map(|(p, _)| *p));
    let tree = LabeledTree::new(n, edges).map_err(|e| ProbeError::decode("tree-validation", e.to_string()))?;
    if !answers.agrees_with(&tree.distance_matrix()) {
        return Err(ProbeError::decode(
            "tree-validation",
            "the decoded tree disagrees with some answer",
        ));
    }
    Ok(tree)
}

pub(super) fn check_coverage(spec: &QueryGraphSpec, answers: &AnsweredQueryGraph) -> Result<()> {
    if answers.n() != spec.n() {
        return Err(ProbeError::decode(
            "coverage",
            format!(
                "answers are on {} vertices, the query graph on {}",
                answers.n(),
                spec.n()
            ),
        ));
    }
    if let Some((a, b, _)) = answers.iter().find(|&(a, b, _)| !spec.is_queried(a, b)) {
        return Err(ProbeError::decode(
            "coverage",
            format!("pair ({a},{b}) was not in the query graph"),
        ));
    }
    if let Some((a, b)) = spec.queried().find(|&(a, b)| !answers.contains(a, b)) {
        return Err(ProbeError::decode(
            "coverage",
            format!("queried pair ({a},{b}) has no answer"),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonadaptive::build_reconstruction_query_graph;

    #[test]
    fn path_with_missing_first_edge() {
        let spec = build_reconstruction_query_graph(5).unwrap();
        let path = LabeledTree::path(5);
        let answers = spec.answers_from(&path).unwrap();
        assert_eq!(decode_exact(&spec, &answers).unwrap(), path);
    }

    #[test]
    fn star_leaves_are_not_adjacent() {
        let spec = build_reconstruction_query_graph(6).unwrap();
        let star = LabeledTree::star(6, 5);
        let answers = spec.answers_from(&star).unwrap();
        assert!(answers.iter().all(|(_, _, d)| d <= 2));
        assert_eq!(decode_exact(&spec, &answers).unwrap(), star);
    }

    #[test]
    fn missing_bridge_pair_is_resolved_in_rounds() {
        // path 2-0-1-3 plus 4 on 2: (0,1) needs (2,3), which the window rule settles
        let spec = build_reconstruction_query_graph(5).unwrap();
        let t = LabeledTree::new(5, [(0, 2), (0, 1), (1, 3), (2, 4)]).unwrap();
        let answers = spec.answers_from(&t).unwrap();
        assert_eq!(decode_exact(&spec, &answers).unwrap(), t);
    }

    #[test]
    fn coverage_errors() {
        let spec = build_reconstruction_query_graph(5).unwrap();
        let mut answers = spec.answers_from(&LabeledTree::path(5)).unwrap();
        answers.insert(0, 1, 1).unwrap();
        match decode_exact(&spec, &answers) {
            Err(ProbeError::Decode { rule, .. }) => assert_eq!(rule, "coverage"),
            other => panic!("{other:?}"),
        }
        let partial = AnsweredQueryGraph::new(5);
        assert!(matches!(
            decode_exact(&spec, &partial),
            Err(ProbeError::Decode { rule: "coverage", .. })
        ));
    }

    #[test]
    fn inconsistent_answers_fail_validation() {
        let spec = build_reconstruction_query_graph(5).unwrap();
        let mut answers = AnsweredQueryGraph::new(5);
        for (a, b) in spec.queried() {
            answers.insert(a, b, 1).unwrap();
        }
        assert!(matches!(
            decode_exact(&spec, &answers),
            Err(ProbeError::Decode {
                rule: "tree-validation",
                ..
            })
        ));
    }
}
