//! Canonical enumeration of tri-partitions and vertex covers.
//!
//! A tri-partition assigns every vertex one of the labels V1, V2, V3.  Assignments
//! are visited in ascending mixed-radix order with V1 < V2 < V3 and the last vertex
//! as the fastest digit, so "the first violating partition" is well defined and
//! byte-stable.  Vertex covers are visited as ascending bitmasks with bit `i` for
//! vertex `i`.  Everything here works on plain endpoint pairs so that the same
//! scans serve the host graph and its spanning subgraphs.

use crate::rat::Rat;

pub(crate) const LABEL_V1: u8 = 0;
pub(crate) const LABEL_V2: u8 = 1;
pub(crate) const LABEL_V3: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PositivityFailure {
    /// Σ_{V1} b < Σ_{V3} b.
    Strict,
    /// The equality clause broke: sums equal with G[V1, V1∪V2] nonempty, or sums
    /// strictly ordered with G[V1, V1∪V2] empty.
    Equality,
}

/// Visits every label assignment, keeping Σ_{V1} b and Σ_{V3} b incrementally.
/// Stops early when `visit` returns `Some`.
fn scan_assignments<T>(
    b: &[Rat],
    mut visit: impl FnMut(&[u8], &Rat, &Rat) -> Option<T>,
) -> Option<T> {
    let n = b.len();
    let mut labels = vec![LABEL_V1; n];
    let mut sum1: Rat = b.iter().sum();
    let mut sum3 = Rat::zero();
    loop {
        if let Some(found) = visit(&labels, &sum1, &sum3) {
            return Some(found);
        }
        let mut i = n;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            match labels[i] {
                LABEL_V1 => {
                    labels[i] = LABEL_V2;
                    sum1 -= &b[i];
                    break true;
                }
                LABEL_V2 => {
                    labels[i] = LABEL_V3;
                    sum3 += &b[i];
                    break true;
                }
                _ => {
                    labels[i] = LABEL_V1;
                    sum3 -= &b[i];
                    sum1 += &b[i];
                }
            }
        };
        if !advanced {
            return None;
        }
    }
}

/// G[V2∪V3, V3] = ∅: every edge incident to V3 has its other endpoint in V1.
fn admissible(labels: &[u8], edges: &[(usize, usize)]) -> bool {
    edges.iter().all(|&(u, w)| {
        (labels[u] != LABEL_V3 || labels[w] == LABEL_V1)
            && (labels[w] != LABEL_V3 || labels[u] == LABEL_V1)
    })
}

/// G[V1, V1∪V2] ≠ ∅: some edge touches V1 with its other endpoint outside V3.
fn touches_v1(labels: &[u8], edges: &[(usize, usize)]) -> bool {
    edges.iter().any(|&(u, w)| {
        (labels[u] == LABEL_V1 && labels[w] != LABEL_V3)
            || (labels[w] == LABEL_V1 && labels[u] != LABEL_V3)
    })
}

/// First admissible tri-partition with nonempty V3 and Σ_{V1} b < Σ_{V3} b.
/// `None` means P(G,b) is nonempty.
pub(crate) fn first_nonempty_tri_violation(b: &[Rat], edges: &[(usize, usize)]) -> Option<Vec<u8>> {
    scan_assignments(b, |labels, sum1, sum3| {
        if labels.iter().all(|&l| l != LABEL_V3) {
            return None;
        }
        if !admissible(labels, edges) {
            return None;
        }
        (sum1 < sum3).then(|| labels.to_vec())
    })
}

/// First admissible tri-partition (V3 may be empty) breaking the strict-positivity
/// condition: Σ_{V1} b ≥ Σ_{V3} b with equality iff G[V1, V1∪V2] = ∅.
pub(crate) fn first_positivity_tri_violation(
    b: &[Rat],
    edges: &[(usize, usize)],
) -> Option<(Vec<u8>, PositivityFailure)> {
    scan_assignments(b, |labels, sum1, sum3| {
        if !admissible(labels, edges) {
            return None;
        }
        if sum1 < sum3 {
            return Some((labels.to_vec(), PositivityFailure::Strict));
        }
        let blocked = touches_v1(labels, edges);
        if (sum1 == sum3) == blocked {
            return Some((labels.to_vec(), PositivityFailure::Equality));
        }
        None
    })
}

fn is_cover(mask: u64, edges: &[(usize, usize)]) -> bool {
    edges
        .iter()
        .all(|&(u, w)| mask >> u & 1 == 1 || mask >> w & 1 == 1)
}

fn mask_sum(b: &[Rat], mask: u64) -> Rat {
    b.iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v)
        .sum()
}

/// First vertex cover C with Σ_C b < Σ_{V∖C} b; `None` means the bipartite
/// nonemptiness condition holds.
pub(crate) fn first_nonempty_cover_violation(b: &[Rat], edges: &[(usize, usize)]) -> Option<u64> {
    let n = b.len();
    assert!(n <= 63, "cover enumeration needs at most 63 vertices");
    let total: Rat = b.iter().sum();
    (0..1u64 << n).find(|&mask| {
        if !is_cover(mask, edges) {
            return false;
        }
        let inside = mask_sum(b, mask);
        let outside = &total - &inside;
        inside < outside
    })
}

/// First vertex cover breaking the bipartite strict-positivity condition:
/// Σ_C b ≥ Σ_{V∖C} b with equality iff V∖C is also a cover.
pub(crate) fn first_positivity_cover_violation(
    b: &[Rat],
    edges: &[(usize, usize)],
) -> Option<(u64, PositivityFailure)> {
    let n = b.len();
    assert!(n <= 63, "cover enumeration needs at most 63 vertices");
    let total: Rat = b.iter().sum();
    let full = (1u64 << n) - 1;
    for mask in 0..=full {
        if !is_cover(mask, edges) {
            continue;
        }
        let inside = mask_sum(b, mask);
        let outside = &total - &inside;
        if inside < outside {
            return Some((mask, PositivityFailure::Strict));
        }
        let complement_covers = is_cover(full & !mask, edges);
        if (inside == outside) != complement_covers {
            return Some((mask, PositivityFailure::Equality));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(values: &[i64]) -> Vec<Rat> {
        values.iter().map(|&n| Rat::from_int(n)).collect()
    }

    #[test]
    fn p3_unit_b_is_infeasible_with_expected_partition() {
        // Path v1-v2-v3; the only violation is V1 = {v2}, V3 = {v1, v3}.
        let edges = [(0, 1), (1, 2)];
        let labels = first_nonempty_tri_violation(&rats(&[1, 1, 1]), &edges).unwrap();
        assert_eq!(labels, vec![LABEL_V3, LABEL_V1, LABEL_V3]);
    }

    #[test]
    fn p3_balanced_b_passes() {
        let edges = [(0, 1), (1, 2)];
        assert!(first_nonempty_tri_violation(&rats(&[1, 2, 1]), &edges).is_none());
    }

    #[test]
    fn positivity_violation_reports_forced_zero_edge() {
        // P3 with b = (1,1,0): first break is V1 = {v3}, V2 = {v1,v2}, V3 = ∅.
        let edges = [(0, 1), (1, 2)];
        let (labels, kind) = first_positivity_tri_violation(&rats(&[1, 1, 0]), &edges).unwrap();
        assert_eq!(labels, vec![LABEL_V2, LABEL_V2, LABEL_V1]);
        assert_eq!(kind, PositivityFailure::Equality);
    }

    #[test]
    fn cover_scan_finds_the_p3_cut() {
        let edges = [(0, 1), (1, 2)];
        let mask = first_nonempty_cover_violation(&rats(&[1, 1, 1]), &edges).unwrap();
        assert_eq!(mask, 0b010);
        assert!(first_nonempty_cover_violation(&rats(&[1, 2, 1]), &edges).is_none());
    }

    #[test]
    fn edgeless_graph_violates_iff_b_nonzero() {
        let edges: [(usize, usize); 0] = [];
        assert!(first_nonempty_cover_violation(&rats(&[0, 0]), &edges).is_none());
        assert_eq!(
            first_nonempty_cover_violation(&rats(&[1, 0]), &edges),
            Some(0)
        );
        assert!(first_nonempty_tri_violation(&rats(&[0, 0]), &edges).is_none());
        assert!(first_nonempty_tri_violation(&rats(&[1, 0]), &edges).is_some());
    }
}
