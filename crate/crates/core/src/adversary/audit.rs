use crate::session::AnsweredQueryGraph;
use crate::tree::SpiderRoles;

/// True if, for every two legs that both carry a leaf, some answered pair has
/// one endpoint on each leg.
///
/// A transcript that misses legs `i` and `j` cannot tell the spider apart from
/// the one with the two leaves swapped, so any complete identification must pass.
pub fn pairwise_coverage_audit(transcript: &AnsweredQueryGraph, roles: &SpiderRoles) -> bool {
    let mut leg_of = vec![usize::MAX; roles.n];
    let mut full = Vec::new();
    for (i, &(mid, leaf)) in roles.legs.iter().enumerate() {
        if let Some(leaf) = leaf {
            if mid >= roles.n || leaf >= roles.n {
                return false;
            }
            leg_of[mid] = full.len();
            leg_of[leaf] = full.len();
            full.push(i);
        }
    }
    let m = full.len();
    let mut covered = vec![vec![false; m]; m];
    for (x, y, _) in transcript.iter() {
        if x >= roles.n || y >= roles.n {
            continue;
        }
        let (a, b) = (leg_of[x], leg_of[y]);
        if a != usize::MAX && b != usize::MAX && a != b {
            covered[a][b] = true;
            covered[b][a] = true;
        }
    }
    (0..m).all(|a| (a + 1..m).all(|b| covered[a][b]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_cross_leg_queries_fail() {
        let roles = SpiderRoles::canonical(7).unwrap();
        let tree = roles.to_tree();
        let d = tree.distance_matrix();
        let legs: Vec<_> = roles.legs.iter().map(|&(m, l)| (m, l.unwrap())).collect();
        let mut t = AnsweredQueryGraph::new(7);
        // cover legs 0-1 and 0-2, leave 1-2 untouched
        t.insert(legs[0].0, legs[1].1, d.get(legs[0].0, legs[1].1)).unwrap();
        t.insert(legs[0].1, legs[2].0, d.get(legs[0].1, legs[2].0)).unwrap();
        assert!(!pairwise_coverage_audit(&t, &roles));

        // the spider with legs 1 and 2 swapping leaves agrees with the transcript
        let mut swapped = roles.clone();
        swapped.legs[1].1 = Some(legs[2].1);
        swapped.legs[2].1 = Some(legs[1].1);
        assert!(t.agrees_with(&swapped.to_tree().distance_matrix()));

        t.insert(legs[1].0, legs[2].0, 2).unwrap();
        assert!(pairwise_coverage_audit(&t, &roles));
    }

    #[test]
    fn empty_transcript_fails_with_two_legs() {
        let roles = SpiderRoles::canonical(5).unwrap();
        assert!(!pairwise_coverage_audit(&AnsweredQueryGraph::new(5), &roles));
    }
}
