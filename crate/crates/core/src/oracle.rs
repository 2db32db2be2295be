//! Brute-force ground truth, deliberately exponential.
//!
//! Everything here is derived from generic rational linear algebra and support
//! closures only — no bipartiteness, no cycle classification — so that each main
//! result is checked through a genuinely different computational path:
//!
//! - vertices: basic feasible solutions over column subsets of the incidence
//!   matrix (nullity-zero subsets with a positive solve);
//! - vertex test: zero kernel on the support (no perturbation direction);
//! - dimension: affine rank of the vertex set;
//! - faces: the support-closed edge subsets, with adjacency of two vertices iff
//!   no third vertex lives inside their joint support.

use crate::caps::Caps;
use crate::error::Error;
use crate::graph::{BVector, EdgeVector, MultiGraph, SpanningSubgraph};
use crate::linalg::{rank_nullity, solve_affine, LinSolveResult, RatMatrix};
use crate::rat::Rat;
use crate::structure::incidence_matrix;

/// Everything the oracle knows about one instance.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub vertices: Vec<EdgeVector>,
    pub dimension: i64,
    pub face_supports: Vec<SpanningSubgraph>,
    /// adjacency[i][j] iff vertices i and j span an edge of the polytope.
    pub adjacency: Vec<Vec<bool>>,
}

/// All vertices of `P(G,b)` as basic feasible solutions: for every column subset
/// with nullity zero, solve against `b` and keep strictly positive solutions,
/// extended by zeros.  Sorted by support in canonical order.
pub fn oracle_vertices(g: &MultiGraph, b: &BVector, caps: &Caps) -> Result<Vec<EdgeVector>, Error> {
    caps.check_edges(g)?;
    let m = g.edge_count();
    let incidence = incidence_matrix(g);
    let mut out: Vec<EdgeVector> = Vec::new();
    for mask in 0u64..(1 << m) {
        let columns: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        let sub = incidence.column_submatrix(&columns);
        if rank_nullity(&sub).1 != 0 {
            continue;
        }
        let LinSolveResult::Solution { particular, .. } = solve_affine(&sub, b.entries())? else {
            continue;
        };
        if !particular.iter().all(Rat::is_positive) {
            continue;
        }
        let mut entries = vec![Rat::zero(); m];
        for (pos, &e) in columns.iter().enumerate() {
            entries[e] = particular[pos].clone();
        }
        let x = EdgeVector::from_entries(g, entries);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Midpoint-free vertex test: `u` (which must lie in `P(G,b)`) is a vertex iff
/// the kernel of the incidence matrix restricted to `supp(u)` is zero.
pub fn oracle_is_vertex(g: &MultiGraph, b: &BVector, u: &EdgeVector) -> Result<bool, Error> {
    if let Some(e) = (0..g.edge_count()).find(|&e| u.get(e).is_negative()) {
        return Err(Error::NotInPolytope(format!(
            "negative coordinate at `{}`",
            g.edge_id(e)
        )));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| &u.vertex_sum(g, v) != b.get(v)) {
        return Err(Error::NotInPolytope(format!(
            "incident-edge sum at `{}` differs from b",
            g.vertex_id(v)
        )));
    }
    let support = u.support();
    let sub = incidence_matrix(g).column_submatrix(&support);
    Ok(rank_nullity(&sub).1 == 0)
}

/// Affine dimension of the convex hull of `vertices`: -1 when empty, else the
/// rank of the differences against the first vertex.
pub fn oracle_dimension(g: &MultiGraph, vertices: &[EdgeVector]) -> i64 {
    let Some((first, rest)) = vertices.split_first() else {
        return -1;
    };
    if rest.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rat>> = rest
        .iter()
        .map(|v| {
            (0..g.edge_count())
                .map(|e| v.get(e) - first.get(e))
                .collect()
        })
        .collect();
    rank_nullity(&RatMatrix::from_rows(rows)).0 as i64
}

/// The union of the supports of all vertices contained in `mask`.
fn support_closure(supports: &[u64], mask: u64) -> u64 {
    supports
        .iter()
        .filter(|&&s| s & !mask == 0)
        .fold(0, |acc, &s| acc | s)
}

/// Face lattice by support closure: an edge subset is a face support iff it
/// equals the union of the vertex supports it contains.  Adjacency of two
/// vertices holds iff the closure of their joint support contains no third
/// vertex.  Requires nonzero `b`.
pub fn oracle_face_lattice(
    g: &MultiGraph,
    b: &BVector,
    caps: &Caps,
) -> Result<OracleReport, Error> {
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    caps.check_edges(g)?;
    let vertices = oracle_vertices(g, b, caps)?;
    let supports: Vec<u64> = vertices
        .iter()
        .map(|v| v.support().into_iter().fold(0u64, |acc, e| acc | 1 << e))
        .collect();

    let mut face_supports = Vec::new();
    for mask in 0u64..(1 << g.edge_count()) {
        if support_closure(&supports, mask) == mask {
            face_supports.push(SpanningSubgraph::from_mask(g, mask));
        }
    }

    let n = vertices.len();
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let joint = supports[i] | supports[j];
            let third = (0..n).any(|k| k != i && k != j && supports[k] & !joint == 0);
            adjacency[i][j] = !third;
            adjacency[j][i] = !third;
        }
    }

    let dimension = oracle_dimension(g, &vertices);
    Ok(OracleReport {
        vertices,
        dimension,
        face_supports,
        adjacency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn oracle_vertices_of_c4() {
        let g = fixtures::c4();
        let vs = oracle_vertices(&g, &fixtures::b_ones(&g), &caps()).unwrap();
        let entries: Vec<_> = vs.iter().map(|v| v.entries().to_vec()).collect();
        assert_eq!(
            entries,
            vec![vec![r(1), r(0), r(1), r(0)], vec![r(0), r(1), r(0), r(1)],]
        );
    }

    #[test]
    fn oracle_vertices_of_k3() {
        let g = fixtures::k3();
        let vs = oracle_vertices(&g, &fixtures::b_ones(&g), &caps()).unwrap();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].entries(), &vec![Rat::new(1, 2); 3][..]);
    }

    #[test]
    fn oracle_vertices_of_infeasible_p3() {
        let g = fixtures::p3();
        assert!(oracle_vertices(&g, &fixtures::b_ones(&g), &caps())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn oracle_vertex_tests() {
        let k3 = fixtures::k3();
        let b = fixtures::b_ones(&k3);
        let half = EdgeVector::from_entries(&k3, vec![Rat::new(1, 2); 3]);
        assert!(oracle_is_vertex(&k3, &b, &half).unwrap());

        let c4 = fixtures::c4();
        let b = fixtures::b_ones(&c4);
        let mid = EdgeVector::from_entries(&c4, vec![Rat::new(1, 2); 4]);
        assert!(!oracle_is_vertex(&c4, &b, &mid).unwrap());

        let p3 = fixtures::p3();
        let b = fixtures::b_of(&p3, &[1, 2, 1]);
        let x = EdgeVector::from_entries(&p3, vec![r(1), r(1)]);
        assert!(oracle_is_vertex(&p3, &b, &x).unwrap());
    }

    #[test]
    fn oracle_rejects_non_members() {
        let g = fixtures::p3();
        let b = fixtures::b_of(&g, &[1, 2, 1]);
        let bad = EdgeVector::from_entries(&g, vec![r(2), r(0)]);
        assert!(matches!(
            oracle_is_vertex(&g, &b, &bad),
            Err(Error::NotInPolytope(_))
        ));
    }

    #[test]
    fn oracle_dimensions() {
        let c4 = fixtures::c4();
        let vs = oracle_vertices(&c4, &fixtures::b_ones(&c4), &caps()).unwrap();
        assert_eq!(oracle_dimension(&c4, &vs), 1);
        assert_eq!(oracle_dimension(&c4, &vs[..1]), 0);
        let twin2 = fixtures::twin2();
        let vs = oracle_vertices(&twin2, &fixtures::b_ones(&twin2), &caps()).unwrap();
        assert_eq!(vs.len(), 4);
        assert_eq!(oracle_dimension(&twin2, &vs), 2);
    }

    #[test]
    fn oracle_face_lattice_counts() {
        let c4 = fixtures::c4();
        let report = oracle_face_lattice(&c4, &fixtures::b_ones(&c4), &caps()).unwrap();
        assert_eq!(report.face_supports.len(), 4);
        assert!(report.adjacency[0][1]);

        let twin2 = fixtures::twin2();
        let report = oracle_face_lattice(&twin2, &fixtures::b_ones(&twin2), &caps()).unwrap();
        assert_eq!(report.face_supports.len(), 10);
        // Diagonal pairs share no face: {e1,e3} vs {e2,e4} and {e1,e4} vs {e2,e3}.
        let masks: Vec<u64> = report
            .vertices
            .iter()
            .map(|v| v.support().iter().fold(0u64, |a, &e| a | 1 << e))
            .collect();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let diagonal = masks[i] & masks[j] == 0;
                assert_eq!(report.adjacency[i][j], !diagonal);
            }
        }

        let k3 = fixtures::k3();
        let report = oracle_face_lattice(&k3, &fixtures::b_ones(&k3), &caps()).unwrap();
        assert_eq!(report.face_supports.len(), 2);
    }

    #[test]
    fn oracle_vertices_and_vertex_test_are_consistent() {
        for g in fixtures::all() {
            let b = fixtures::b_ones(&g);
            for v in oracle_vertices(&g, &b, &caps()).unwrap() {
                assert!(oracle_is_vertex(&g, &b, &v).unwrap());
            }
        }
    }

    #[test]
    fn zero_b_makes_zero_the_only_vertex() {
        let g = fixtures::k3();
        let vs = oracle_vertices(&g, &BVector::zeros(&g), &caps()).unwrap();
        assert_eq!(vs.len(), 1);
        assert!(vs[0].entries().iter().all(Rat::is_zero));
        assert!(matches!(
            oracle_face_lattice(&g, &BVector::zeros(&g), &caps()),
            Err(Error::ZeroB)
        ));
    }
}
