use super::QueryGraphSpec;
use crate::error::{ProbeError, Result};
use crate::tree::LabeledTree;

/// Two trees that agree on every queried pair but differ in diameter, for a
/// query graph with a vertex missing at least three partners.
///
/// With `v` the smallest such vertex, `u1 < u2 < u4` its three smallest
/// missing partners and `u3` the smallest remaining vertex, the first tree is
/// the path `u1 u2 u3 u4 v` with every other vertex pendant on `u3`
/// (diameter 4, attained only by `u1, v`). The second moves `v` from `u4` to
/// `u2` (diameter 3). Only distances from `v` to `u1`, `u2`, `u4` change.
pub fn lemi_witness(spec: &QueryGraphSpec) -> Result<(LabeledTree, LabeledTree)> {
    let n = spec.n();
    if n < 13 {
        return Err(ProbeError::Domain(format!(
            "the witness construction needs n >= 13, got {n}"
        )));
    }
    let (v, partners) = (0..n)
        .map(|v| (v, spec.missing_partners(v)))
        .find(|(_, p)| p.len() >= 3)
        .ok_or_else(|| ProbeError::Domain("no vertex has degree at most n - 4 in the query graph".into()))?;
    let (u1, u2, u4) = (partners[0], partners[1], partners[2]);
    let u3 = (0..n).find(|&w| ![v, u1, u2, u4].contains(&w)).expect("n >= 5");
    let pendants: Vec<_> = (0..n)
        .filter(|w| ![v, u1, u2, u3, u4].contains(w))
        .map(|w| (u3, w))
        .collect();
    let spine = [(u1, u2), (u2, u3), (u3, u4)];
    let t = LabeledTree::new(
        n,
        spine.iter().copied().chain([(u4, v)]).chain(pendants.iter().copied()),
    )?;
    let t2 = LabeledTree::new(n, spine.iter().copied().chain([(u2, v)]).chain(pendants))?;
    Ok((t, t2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claw_at_a_vertex() {
        let spec = QueryGraphSpec::new(13, [(7, 2), (7, 9), (7, 11)]).unwrap();
        let (t, t2) = lemi_witness(&spec).unwrap();
        assert_eq!(spec.answers_from(&t).unwrap(), spec.answers_from(&t2).unwrap());
        let (m, m2) = (t.distance_matrix(), t2.distance_matrix());
        assert_eq!(m.diameter(), 4);
        assert_eq!(m2.diameter(), 3);
        assert_eq!(m.get(2, 7), 4);
        assert_eq!(m2.get(2, 7), 2);
    }

    #[test]
    fn needs_a_low_degree_vertex() {
        let spec = QueryGraphSpec::new(13, [(0, 1), (0, 2)]).unwrap();
        assert!(matches!(lemi_witness(&spec), Err(ProbeError::Domain(_))));
        let small = QueryGraphSpec::new(12, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(lemi_witness(&small).is_err());
    }
}
