//! Vertices, dimension and edge adjacency of `P(G,b)`.
//!
//! An element `u` of `P(G,b)` is a vertex iff every component of its graph
//! `gr(u)` (the spanning subgraph supporting it) is acyclic or odd-unicyclic, and
//! a vertex is recovered exactly from its graph by the closed-form solve of
//! [`crate::flow::unique_solve`].  Enumeration therefore walks the edge subsets
//! with at most `|V| - B` edges that pass the structural test, solves each, and
//! keeps the strictly positive solutions.  The dimension of a nonempty polytope
//! is `|gr(P)| - |V| + B(gr(P))`, and two distinct vertices span a polytope edge
//! iff the union of their graphs has incidence nullity one.

use crate::caps::Caps;
use crate::error::Error;
use crate::flow;
use crate::graph::{
    BVector, DemandVector, EdgeId, EdgeVector, MultiGraph, SpanningSubgraph, VertexId,
};
use crate::rat::Rat;
use crate::structure::{analyze_components, classify_components, incidence_nullity};

/// A vertex of `P(G,b)` with its supporting spanning subgraph `gr(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPoint {
    pub coords: EdgeVector,
    pub support: SpanningSubgraph,
}

/// Headline facts about `P(G,b)`: emptiness, dimension, and its graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeSummary {
    pub nonempty: bool,
    /// -1 encodes the empty polytope.
    pub dimension: i64,
    /// gr(P(G,b)): the union of all vertex supports.
    pub graph: SpanningSubgraph,
    /// Bipartite component count of `graph` as a spanning subgraph.
    pub bipartite_components: usize,
}

/// Structural vertex test on an edge subset: every component of the spanning
/// subgraph must be acyclic or odd-unicyclic.  Isolated vertices are acyclic
/// components, so only the edge-bearing pieces are examined.
fn mask_structure_ok(g: &MultiGraph, mask: u64) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut color = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // BFS one piece.
        let mut stack = vec![start];
        seen[start] = true;
        let mut vertices = Vec::new();
        let mut edge_count = 0usize;
        let mut odd = false;
        let mut touched = false;
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for &e in g.incident_edges(v) {
                if mask >> e & 1 == 0 {
                    continue;
                }
                touched = true;
                let u = g.other_end(e, v);
                // Count each edge once, at its lower-indexed endpoint visit.
                if u == v {
                    edge_count += 1;
                    odd = true;
                    continue;
                }
                if !seen[u] {
                    seen[u] = true;
                    color[u] = !color[v];
                    stack.push(u);
                }
                if color[u] == color[v] {
                    odd = true;
                }
                edge_count += 1;
            }
        }
        if !touched {
            continue;
        }
        let edge_count = edge_count_dedup(edge_count, &vertices, g, mask);
        let excess = edge_count as i64 - vertices.len() as i64;
        let ok = excess == -1 || (excess == 0 && odd);
        if !ok {
            return false;
        }
    }
    true
}

/// Nonloop edges get visited from both endpoints above; halve them.
fn edge_count_dedup(raw: usize, vertices: &[usize], g: &MultiGraph, mask: u64) -> usize {
    let loops: usize = vertices
        .iter()
        .flat_map(|&v| g.incident_edges(v))
        .filter(|&&e| mask >> e & 1 == 1 && g.is_loop(e))
        .count();
    loops + (raw - loops) / 2
}

/// Attempts to realize `mask` as a vertex support: the unique solve on the
/// subgraph must succeed and be strictly positive on every chosen edge.
fn vertex_from_mask(g: &MultiGraph, b: &BVector, mask: u64) -> Option<EdgeVector> {
    if !mask_structure_ok(g, mask) {
        return None;
    }
    let sub = SpanningSubgraph::from_mask(g, mask)
        .to_multigraph(g)
        .expect("mask edges exist");
    let solved = flow::unique_solve(
        &sub,
        &DemandVector::from_entries(&sub, b.entries().to_vec()),
    )
    .ok()?;
    if !solved.entries().iter().all(Rat::is_positive) {
        return None;
    }
    let mut entries = vec![Rat::zero(); g.edge_count()];
    for (pos, id) in sub.edge_ids().enumerate() {
        let e = g.edge_index(id).expect("subgraph edge id");
        entries[e] = solved.get(pos).clone();
    }
    let x = EdgeVector::from_entries(g, entries);
    debug_assert!(x.in_polytope(g, b));
    Some(x)
}

/// The vertex of `P(G,b)` whose graph is `h`, if any: the unique solve on `h`
/// extended by zeros, accepted iff strictly positive on all of `h`'s edges.
pub fn vertex_from_graph(
    g: &MultiGraph,
    b: &BVector,
    h: &SpanningSubgraph,
) -> Result<Option<EdgeVector>, Error> {
    let mask = h.mask(g)?;
    Ok(vertex_from_mask(g, b, mask))
}

/// All vertices of `P(G,b)`, sorted by support in canonical order.
pub fn enumerate_vertices(
    g: &MultiGraph,
    b: &BVector,
    caps: &Caps,
) -> Result<Vec<VertexPoint>, Error> {
    caps.check(g)?;
    let m = g.edge_count();
    let report = analyze_components(g);
    let size_bound = g.vertex_count() - report.bipartite_count;

    let mut out: Vec<VertexPoint> = Vec::new();
    let mut seen_supports = Vec::new();
    for mask in 0..(1u64 << m) {
        if (mask.count_ones() as usize) > size_bound {
            continue;
        }
        let Some(coords) = vertex_from_mask(g, b, mask) else {
            continue;
        };
        // Strict positivity on the chosen edges makes the support equal the mask,
        // and distinct vertices have distinct supports; dedup is a safety net.
        if seen_supports.contains(&mask) {
            continue;
        }
        seen_supports.push(mask);
        out.push(VertexPoint {
            coords,
            support: SpanningSubgraph::from_mask(g, mask),
        });
    }
    Ok(out)
}

/// Outcome of the vertex test; anything but `Vertex` carries the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexCheck {
    Vertex,
    /// Not in P(G,b): a negative coordinate.
    NegativeCoordinate(EdgeId),
    /// Not in P(G,b): the incident-edge sum at this vertex misses b.
    VertexSumMismatch(VertexId),
    /// In P(G,b), but some support component has an even cycle or several cycles.
    CyclicSupport,
}

impl VertexCheck {
    pub fn is_vertex(&self) -> bool {
        matches!(self, VertexCheck::Vertex)
    }

    pub fn reason(&self) -> Option<String> {
        match self {
            VertexCheck::Vertex => None,
            VertexCheck::NegativeCoordinate(e) => Some(format!("negative coordinate at `{e}`")),
            VertexCheck::VertexSumMismatch(v) => {
                Some(format!("incident-edge sum at `{v}` differs from b"))
            }
            VertexCheck::CyclicSupport => {
                Some("support has a component with an even cycle or several cycles".into())
            }
        }
    }
}

/// Tests membership exactly, then the support structure.
pub fn is_vertex(g: &MultiGraph, b: &BVector, x: &EdgeVector) -> VertexCheck {
    for e in 0..g.edge_count() {
        if x.get(e).is_negative() {
            return VertexCheck::NegativeCoordinate(g.edge_id(e).clone());
        }
    }
    for v in 0..g.vertex_count() {
        if &x.vertex_sum(g, v) != b.get(v) {
            return VertexCheck::VertexSumMismatch(g.vertex_id(v).clone());
        }
    }
    let mask = support_mask(g, x);
    if mask_structure_ok(g, mask) {
        VertexCheck::Vertex
    } else {
        VertexCheck::CyclicSupport
    }
}

pub(crate) fn support_mask(g: &MultiGraph, x: &EdgeVector) -> u64 {
    assert!(g.edge_count() <= 64);
    let mut mask = 0u64;
    for e in 0..g.edge_count() {
        if !x.get(e).is_zero() {
            mask |= 1 << e;
        }
    }
    mask
}

/// gr(P(G,b)): the union of the supports of all vertices.
pub fn polytope_graph(g: &MultiGraph, b: &BVector, caps: &Caps) -> Result<SpanningSubgraph, Error> {
    let vertices = enumerate_vertices(g, b, caps)?;
    let mut union = 0u64;
    for vertex in &vertices {
        union |= vertex.support.mask(g)?;
    }
    Ok(SpanningSubgraph::from_mask(g, union))
}

pub fn summarize(g: &MultiGraph, b: &BVector, caps: &Caps) -> Result<PolytopeSummary, Error> {
    let vertices = enumerate_vertices(g, b, caps)?;
    let mut union = 0u64;
    for vertex in &vertices {
        union |= vertex.support.mask(g)?;
    }
    let graph = SpanningSubgraph::from_mask(g, union);
    if vertices.is_empty() {
        return Ok(PolytopeSummary {
            nonempty: false,
            dimension: -1,
            graph,
            bipartite_components: g.vertex_count(),
        });
    }
    let sub = graph.to_multigraph(g)?;
    let b_count = analyze_components(&sub).bipartite_count;
    let dimension = graph.len() as i64 - g.vertex_count() as i64 + b_count as i64;
    Ok(PolytopeSummary {
        nonempty: true,
        dimension,
        graph,
        bipartite_components: b_count,
    })
}

/// dim P(G,b); -1 when empty.  When a strictly positive element exists this
/// equals `|E| - |V| + B(G)`.
pub fn dimension(g: &MultiGraph, b: &BVector, caps: &Caps) -> Result<i64, Error> {
    Ok(summarize(g, b, caps)?.dimension)
}

/// Whether two distinct vertices of `P(G,b)` span an edge of the polytope: the
/// union of their graphs must have exactly one component carrying nullity one
/// and all others carrying nullity zero.
pub fn is_edge_pair(
    g: &MultiGraph,
    b: &BVector,
    u: &EdgeVector,
    w: &EdgeVector,
) -> Result<bool, Error> {
    if u == w {
        return Err(Error::Precondition(
            "the two points must be distinct".into(),
        ));
    }
    for (name, point) in [("first", u), ("second", w)] {
        let check = is_vertex(g, b, point);
        if !check.is_vertex() {
            return Err(Error::Precondition(format!(
                "{name} point is not a vertex: {}",
                check.reason().unwrap_or_default()
            )));
        }
    }
    let union_mask = support_mask(g, u) | support_mask(g, w);
    let sub = SpanningSubgraph::from_mask(g, union_mask).to_multigraph(g)?;
    let report = analyze_components(&sub);
    let classes = classify_components(&sub, &report);
    let mut ones = 0usize;
    for class in &classes {
        match class.nullity() {
            Some(0) => {}
            Some(1) => ones += 1,
            _ => return Ok(false),
        }
    }
    let adjacent = ones == 1;
    debug_assert_eq!(adjacent, incidence_nullity(&sub) == 1);
    Ok(adjacent)
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

    fn vertex_entries(g: &MultiGraph, b: &BVector) -> Vec<Vec<Rat>> {
        enumerate_vertices(g, b, &caps())
            .unwrap()
            .into_iter()
            .map(|v| v.coords.entries().to_vec())
            .collect()
    }

    #[test]
    fn c4_vertices_are_the_two_matchings() {
        let g = fixtures::c4();
        let vertices = vertex_entries(&g, &fixtures::b_ones(&g));
        assert_eq!(
            vertices,
            vec![vec![r(1), r(0), r(1), r(0)], vec![r(0), r(1), r(0), r(1)],]
        );
    }

    #[test]
    fn k3_vertex_is_the_half_point() {
        let g = fixtures::k3();
        let vertices = vertex_entries(&g, &fixtures::b_ones(&g));
        assert_eq!(vertices, vec![vec![Rat::new(1, 2); 3]]);
    }

    #[test]
    fn twin2_has_four_vertices() {
        let g = fixtures::twin2();
        assert_eq!(vertex_entries(&g, &fixtures::b_ones(&g)).len(), 4);
    }

    #[test]
    fn infeasible_instance_has_no_vertices() {
        let g = fixtures::p3();
        assert!(vertex_entries(&g, &fixtures::b_ones(&g)).is_empty());
    }

    #[test]
    fn is_vertex_on_fixtures() {
        let g = fixtures::k3();
        let b = fixtures::b_ones(&g);
        let half = EdgeVector::from_entries(&g, vec![Rat::new(1, 2); 3]);
        assert!(is_vertex(&g, &b, &half).is_vertex());

        let g = fixtures::c4();
        let b = fixtures::b_ones(&g);
        let mid = EdgeVector::from_entries(&g, vec![Rat::new(1, 2); 4]);
        assert_eq!(is_vertex(&g, &b, &mid), VertexCheck::CyclicSupport);

        let g = MultiGraph::build(&["v1"], &[]).unwrap();
        let zero = EdgeVector::zeros(&g);
        assert!(is_vertex(&g, &BVector::zeros(&g), &zero).is_vertex());
    }

    #[test]
    fn is_vertex_reports_membership_failures() {
        let g = fixtures::p3();
        let b = fixtures::b_of(&g, &[1, 2, 1]);
        let negative = EdgeVector::from_entries(&g, vec![r(-1), r(1)]);
        assert_eq!(
            is_vertex(&g, &b, &negative),
            VertexCheck::NegativeCoordinate(EdgeId::from("e1"))
        );
        let off = EdgeVector::from_entries(&g, vec![r(1), r(2)]);
        assert_eq!(
            is_vertex(&g, &b, &off),
            VertexCheck::VertexSumMismatch(VertexId::from("v2"))
        );
    }

    #[test]
    fn vertex_from_graph_pan() {
        let g = fixtures::pan();
        let b = fixtures::b_of(&g, &[2, 1, 1, 1]);
        let h = SpanningSubgraph::full(&g);
        let x = vertex_from_graph(&g, &b, &h).unwrap().unwrap();
        assert_eq!(
            x.entries(),
            &[Rat::new(1, 2), Rat::new(1, 2), Rat::new(1, 2), r(1)]
        );
    }

    #[test]
    fn vertex_from_graph_detects_balance_failure() {
        let g = fixtures::k3();
        let b = fixtures::b_ones(&g);
        let h = SpanningSubgraph::new(&g, [EdgeId::from("e1"), EdgeId::from("e2")]).unwrap();
        assert_eq!(vertex_from_graph(&g, &b, &h).unwrap(), None);
    }

    #[test]
    fn vertex_from_graph_p3_tree() {
        let g = fixtures::p3();
        let b = fixtures::b_of(&g, &[1, 2, 1]);
        let h = SpanningSubgraph::full(&g);
        let x = vertex_from_graph(&g, &b, &h).unwrap().unwrap();
        assert_eq!(x.entries(), &[r(1), r(1)]);
    }

    #[test]
    fn polytope_graph_drops_forced_zero_edges() {
        let g = fixtures::p3();
        let b = fixtures::b_of(&g, &[1, 1, 0]);
        let graph = polytope_graph(&g, &b, &caps()).unwrap();
        assert_eq!(graph.edge_ids(), &[EdgeId::from("e1")]);
    }

    #[test]
    fn polytope_graph_of_c4_is_everything() {
        let g = fixtures::c4();
        let graph = polytope_graph(&g, &fixtures::b_ones(&g), &caps()).unwrap();
        assert_eq!(graph.len(), 4);
    }

    #[test]
    fn polytope_graph_of_infeasible_is_empty() {
        let g = fixtures::p3();
        let graph = polytope_graph(&g, &fixtures::b_ones(&g), &caps()).unwrap();
        assert!(graph.is_empty());
    }

    #[test]
    fn dimensions_of_fixtures() {
        let c4 = fixtures::c4();
        assert_eq!(dimension(&c4, &fixtures::b_ones(&c4), &caps()).unwrap(), 1);
        let k3 = fixtures::k3();
        assert_eq!(dimension(&k3, &fixtures::b_ones(&k3), &caps()).unwrap(), 0);
        let twin2 = fixtures::twin2();
        assert_eq!(
            dimension(&twin2, &fixtures::b_ones(&twin2), &caps()).unwrap(),
            2
        );
        let p3 = fixtures::p3();
        assert_eq!(dimension(&p3, &fixtures::b_ones(&p3), &caps()).unwrap(), -1);
    }

    #[test]
    fn c4_matchings_are_adjacent() {
        let g = fixtures::c4();
        let b = fixtures::b_ones(&g);
        let u = EdgeVector::from_entries(&g, vec![r(1), r(0), r(1), r(0)]);
        let w = EdgeVector::from_entries(&g, vec![r(0), r(1), r(0), r(1)]);
        assert!(is_edge_pair(&g, &b, &u, &w).unwrap());
    }

    #[test]
    fn twin2_diagonal_vertices_are_not_adjacent() {
        let g = fixtures::twin2();
        let b = fixtures::b_ones(&g);
        let u = EdgeVector::from_entries(&g, vec![r(1), r(0), r(1), r(0)]);
        let w = EdgeVector::from_entries(&g, vec![r(0), r(1), r(0), r(1)]);
        assert!(!is_edge_pair(&g, &b, &u, &w).unwrap());
    }

    #[test]
    fn k3d_triangle_vertices_are_adjacent() {
        let g = fixtures::k3d();
        let b = fixtures::b_ones(&g);
        // Vertex supported on triangle {e1, e2, e3} and on triangle {e1', e2, e3}.
        let u = EdgeVector::from_entries(
            &g,
            vec![Rat::new(1, 2), r(0), Rat::new(1, 2), Rat::new(1, 2)],
        );
        let w = EdgeVector::from_entries(
            &g,
            vec![r(0), Rat::new(1, 2), Rat::new(1, 2), Rat::new(1, 2)],
        );
        assert!(is_edge_pair(&g, &b, &u, &w).unwrap());
    }

    #[test]
    fn is_edge_pair_rejects_non_vertices() {
        let g = fixtures::c4();
        let b = fixtures::b_ones(&g);
        let mid = EdgeVector::from_entries(&g, vec![Rat::new(1, 2); 4]);
        let u = EdgeVector::from_entries(&g, vec![r(1), r(0), r(1), r(0)]);
        assert!(matches!(
            is_edge_pair(&g, &b, &mid, &u),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            is_edge_pair(&g, &b, &u, &u),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn enumeration_respects_caps() {
        let g = fixtures::c4();
        let err = enumerate_vertices(&g, &fixtures::b_ones(&g), &Caps::new(16, 3)).unwrap_err();
        assert_eq!(
            err,
            Error::EdgeCapExceeded {
                actual: 4,
                limit: 3
            }
        );
    }

    #[test]
    fn support_size_respects_the_vertex_bound() {
        for g in fixtures::all() {
            let report = analyze_components(&g);
            let bound = g.vertex_count() - report.bipartite_count;
            for b in [fixtures::b_ones(&g), BVector::zeros(&g)] {
                for vertex in enumerate_vertices(&g, &b, &caps()).unwrap() {
                    assert!(vertex.support.len() <= bound);
                }
            }
        }
    }
}
