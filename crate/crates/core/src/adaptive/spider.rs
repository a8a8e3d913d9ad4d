use super::ReconstructionResult;
use crate::error::{ProbeError, Result};
use crate::session::DistanceOracle;
use crate::tree::{SpiderRoles, Vertex};

/// Query ceiling of [`identify_spider`]: `C(n - floor(n/2), 2) + 5n`.
pub fn spider_ceiling(n: usize) -> usize {
    let m = n - n / 2;
    m * (m.saturating_sub(1)) / 2 + 5 * n
}

/// What the probe vertex turned out to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ProbeRole {
    Center,
    /// A middle with a pendant leaf; holds `(center, leaf)`.
    Middle {
        center: Vertex,
        leaf: Vertex,
    },
    /// The leafless middle that exists for even `n`.
    BareMiddle {
        center: Vertex,
    },
    /// A leaf; holds `(center, its middle)`.
    Leaf {
        center: Vertex,
        middle: Vertex,
    },
}

/// Identifies a hidden spider exactly (`n >= 7`).
///
/// Vertex 0 is asked against everyone. Its number of neighbors and of
/// vertices at distance two tell apart the center (degree `n/2`), a middle
/// with a leaf (degree 2), the leafless middle of an even spider (degree 1,
/// several vertices at distance 2) and a leaf (degree 1, only the center at
/// distance 2). The same answers split the rest into middles and leaves.
/// Each remaining middle is then asked against the still unmatched leaves
/// until its own leaf answers 1.
pub fn identify_spider<O: DistanceOracle + ?Sized>(oracle: &mut O) -> Result<ReconstructionResult> {
    let n = oracle.n();
    if n < 7 {
        return Err(ProbeError::Domain(format!(
            "spider identification needs n >= 7, got {n}"
        )));
    }
    let start = oracle.queries_used();
    let probe: Vertex = 0;
    let mut dist = vec![0u32; n];
    for w in 1..n {
        dist[w] = oracle.ask(probe, w)?;
    }
    let at = |d: u32| -> Vec<Vertex> { (1..n).filter(|&w| dist[w] == d).collect() };
    let near = at(1);
    let second_ring = at(2).len();
    let k = SpiderRoles::middle_count(n);

    let role = match near.len() {
        d if d == k => ProbeRole::Center,
        2 => {
            let (y, other) = (near[0], near[1]);
            let z = (1..n)
                .find(|&w| dist[w] >= 2)
                .expect("spider has a vertex beyond the probe's neighbors");
            if oracle.ask(y, z)? <= 2 {
                ProbeRole::Middle { center: y, leaf: other }
            } else {
                ProbeRole::Middle { center: other, leaf: y }
            }
        }
        1 if second_ring > 1 => ProbeRole::BareMiddle { center: near[0] },
        1 => ProbeRole::Leaf {
            center: *at(2).first().ok_or_else(not_a_spider)?,
            middle: near[0],
        },
        _ => return Err(not_a_spider()),
    };

    let (center, mut legs, mut middles, mut leaves): (Vertex, Vec<_>, Vec<Vertex>, Vec<Vertex>) = match role {
        ProbeRole::Center => (probe, Vec::new(), at(1), at(2)),
        ProbeRole::Middle { center, leaf } => (center, vec![(probe, Some(leaf))], at(2), at(3)),
        ProbeRole::BareMiddle { center } => (center, vec![(probe, None)], at(2), at(3)),
        ProbeRole::Leaf { center, middle } => (center, vec![(middle, Some(probe))], at(3), at(4)),
    };
    middles.sort_unstable();
    leaves.sort_unstable();

    for m in middles {
        let mut matched = None;
        for (i, &w) in leaves.iter().enumerate() {
            if oracle.ask(m, w)? == 1 {
                matched = Some(i);
                break;
            }
        }
        legs.push((m, matched.map(|i| leaves.remove(i))));
    }
    let bare = legs.iter().filter(|l| l.1.is_none()).count();
    let expected_bare = usize::from(n.is_multiple_of(2));
    if legs.len() != k || bare != expected_bare || !leaves.is_empty() {
        return Err(not_a_spider());
    }
    let roles = SpiderRoles { n, center, legs };
    Ok(ReconstructionResult {
        tree: roles.to_tree(),
        queries_used: oracle.queries_used() - start,
    })
}

fn not_a_spider() -> ProbeError {
    ProbeError::InvariantViolation("answers are not those of a spider".into())
}
