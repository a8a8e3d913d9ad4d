use serde::{Deserialize, Serialize};

use crate::error::{ProbeError, Result};
use crate::session::DistanceOracle;
use crate::tree::{ordered, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterResult {
    pub pair: (Vertex, Vertex),
    pub distance: u32,
    pub queries_used: usize,
    /// The one distance the second sweep deduces instead of asking: `(vertex, d(far, vertex))`.
    pub inferred: Option<(Vertex, u32)>,
}

/// Two-sweep search for a maximum-distance pair in at most `2n - 4` queries (`n >= 4`).
///
/// Sweep one asks vertex 0 against everyone. Sweep two takes the farthest
/// vertex `far` and asks it against everyone except 0 and one neighbor `nb`
/// of 0. Exactly one neighbor of 0 is one step closer to `far` than 0 is, so
/// `d(far, nb)` follows from the other neighbors' answers.
pub fn find_diameter_pair<O: DistanceOracle + ?Sized>(oracle: &mut O) -> Result<DiameterResult> {
    let n = oracle.n();
    let start = oracle.queries_used();
    match n {
        0 | 1 => Err(ProbeError::Domain("need at least two vertices".into())),
        2 => {
            let d = oracle.ask(0, 1)?;
            Ok(DiameterResult {
                pair: (0, 1),
                distance: d,
                queries_used: oracle.queries_used() - start,
                inferred: None,
            })
        }
        3 => {
            // the answer 2 marks the two leaves; two answers of 1 pin vertex 0 as the middle
            let pair = if oracle.ask(0, 1)? == 2 {
                (0, 1)
            } else if oracle.ask(0, 2)? == 2 {
                (0, 2)
            } else {
                (1, 2)
            };
            Ok(DiameterResult {
                pair,
                distance: 2,
                queries_used: oracle.queries_used() - start,
                inferred: None,
            })
        }
        _ => two_sweeps(oracle, start),
    }
}

fn two_sweeps<O: DistanceOracle + ?Sized>(oracle: &mut O, start: usize) -> Result<DiameterResult> {
    let n = oracle.n();
    let root = 0;
    let mut from_root = vec![0u32; n];
    for w in 1..n {
        from_root[w] = oracle.ask(root, w)?;
    }
    // first vertex attaining the maximum
    let far = (1..n).fold(1, |best, w| if from_root[w] > from_root[best] { w } else { best });
    let reach = from_root[far];
    if reach == 1 {
        // everything hangs off vertex 0
        return Ok(DiameterResult {
            pair: (1, 2),
            distance: 2,
            queries_used: oracle.queries_used() - start,
            inferred: None,
        });
    }
    let neighbors: Vec<Vertex> = (1..n).filter(|&w| from_root[w] == 1).collect();
    let skipped = neighbors[0];

    let mut from_far = vec![0u32; n];
    from_far[root] = reach;
    for w in 0..n {
        if w != root && w != skipped && w != far {
            from_far[w] = oracle.ask(far, w)?;
        }
    }
    let other_closer = neighbors[1..].iter().any(|&w| from_far[w] + 1 == reach);
    let inferred = if other_closer { reach + 1 } else { reach - 1 };
    from_far[skipped] = inferred;

    let best = (0..n)
        .filter(|&w| w != far)
        .fold(None::<Vertex>, |best, w| match best {
            Some(b) if from_far[b] >= from_far[w] => Some(b),
            _ => Some(w),
        })
        .expect("n >= 4");
    Ok(DiameterResult {
        pair: ordered(far, best),
        distance: from_far[best],
        queries_used: oracle.queries_used() - start,
        inferred: Some((skipped, inferred)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::QuerySession;
    use crate::tree::{diameter_pair, enumerate_trees, LabeledTree};

    fn run(t: &LabeledTree) -> DiameterResult {
        let mut s = QuerySession::new(t.clone(), None);
        find_diameter_pair(&mut s).unwrap()
    }

    #[test]
    fn two_vertices() {
        let r = run(&LabeledTree::path(2));
        assert_eq!((r.pair, r.distance, r.queries_used), ((0, 1), 1, 1));
    }

    #[test]
    fn path_of_five_from_endpoint() {
        let r = run(&LabeledTree::path(5));
        assert_eq!(r.pair, (0, 4));
        assert_eq!(r.distance, 4);
        assert_eq!(r.queries_used, 6);
    }

    #[test]
    fn star_centered_at_root_stops_early() {
        let r = run(&LabeledTree::star(6, 0));
        assert_eq!(r.distance, 2);
        assert_eq!(r.queries_used, 5);
    }

    #[test]
    fn exhaustive_up_to_seven() {
        for n in 2..=7 {
            let cap = if n >= 4 { 2 * n - 4 } else { n - 1 };
            for t in enumerate_trees(n).unwrap() {
                let r = run(&t);
                let m = t.distance_matrix();
                assert_eq!(r.distance, diameter_pair(&t).unwrap().2, "{t:?}");
                assert_eq!(m.get(r.pair.0, r.pair.1), r.distance);
                assert!(r.queries_used <= cap);
            }
        }
    }
}
