//! The lattice of face graphs of `P(G,b)`.
//!
//! For nonzero `b`, the supports of the faces of `P(G,b)` — equivalently, all
//! unions of vertex supports — form a lattice under inclusion that is isomorphic
//! to the face lattice itself.  A spanning subgraph `H` belongs to it iff it has
//! no edges or `P(H,b)` restricted to `H`'s edges has a strictly positive
//! element, which unwinds to a b-sum condition: for every tri-partition
//! `V = V1 ⊎ V2 ⊎ V3` with `H[V2∪V3,V3] = ∅`, `Σ_{V1} b ≥ Σ_{V3} b` with
//! equality iff `H[V1,V1∪V2] = ∅`.  For bipartite `H` the equivalent vertex-cover
//! form is used instead.  Meets collect the vertex supports inside the
//! intersection; joins are plain unions.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::Error;
use crate::feasibility::positivity_violation_for_edges;
use crate::graph::{FaceGraph, MultiGraph, SpanningSubgraph};
use crate::polytope::{enumerate_vertices, polytope_graph, VertexPoint};
use crate::structure::analyze_components;
use crate::{BVector, EdgeId};

/// One face of `P(G,b)`: its graph, dimension, and the canonical indices of the
/// vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub graph: FaceGraph,
    /// -1 for the empty face.
    pub dimension: i64,
    /// Indices into the canonical vertex enumeration of `P(G,b)`.
    pub vertex_ids: Vec<usize>,
}

/// The full face lattice: faces sorted canonically (bottom first, top last) and
/// the Hasse cover relation as index pairs (lower, upper).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub faces: Vec<FaceDescriptor>,
    pub covers: Vec<(usize, usize)>,
}

fn require_nonzero_b(b: &BVector) -> Result<(), Error> {
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    Ok(())
}

fn subgraph_edge_pairs(g: &MultiGraph, mask: u64) -> Vec<(usize, usize)> {
    (0..g.edge_count())
        .filter(|&e| mask >> e & 1 == 1)
        .map(|e| g.edge_ends(e))
        .collect()
}

fn mask_is_face_graph(g: &MultiGraph, b: &BVector, mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let edges = subgraph_edge_pairs(g, mask);
    let sub = SpanningSubgraph::from_mask(g, mask)
        .to_multigraph(g)
        .expect("mask edges exist");
    let bipartite = analyze_components(&sub).is_bipartite();
    positivity_violation_for_edges(b.entries(), &edges, bipartite).is_none()
}

/// Membership test for the lattice of face graphs, via the b-sum condition.
pub fn is_face_graph(
    g: &MultiGraph,
    b: &BVector,
    h: &SpanningSubgraph,
    caps: &Caps,
) -> Result<bool, Error> {
    require_nonzero_b(b)?;
    caps.check(g)?;
    Ok(mask_is_face_graph(g, b, h.mask(g)?))
}

/// All face graphs: the distinct unions of subsets of vertex supports, including
/// the empty union, sorted canonically.
pub fn enumerate_face_graphs(
    g: &MultiGraph,
    b: &BVector,
    caps: &Caps,
) -> Result<Vec<FaceGraph>, Error> {
    require_nonzero_b(b)?;
    let vertices = enumerate_vertices(g, b, caps)?;
    let masks = union_closure(g, &vertices)?;
    #[cfg(debug_assertions)]
    if g.vertex_count() <= 6 && g.edge_count() <= 10 {
        for mask in 0..(1u64 << g.edge_count()) {
            debug_assert_eq!(
                masks.binary_search(&mask).is_ok(),
                mask_is_face_graph(g, b, mask),
                "union-of-supports membership must match the b-sum condition"
            );
        }
    }
    Ok(masks
        .into_iter()
        .map(|mask| SpanningSubgraph::from_mask(g, mask))
        .collect())
}

/// Sorted list of all unions of subsets of the vertex supports (0 included).
fn union_closure(g: &MultiGraph, vertices: &[VertexPoint]) -> Result<Vec<u64>, Error> {
    let mut masks: Vec<u64> = vec![0];
    for vertex in vertices {
        let support = vertex.support.mask(g)?;
        let mut extended: Vec<u64> = masks.iter().map(|m| m | support).collect();
        masks.append(&mut extended);
        masks.sort_unstable();
        masks.dedup();
    }
    Ok(masks)
}

fn descriptor_for_mask(
    g: &MultiGraph,
    mask: u64,
    vertices: &[VertexPoint],
) -> Result<FaceDescriptor, Error> {
    let vertex_ids: Vec<usize> = vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| v.support.mask(g).map(|m| m & !mask == 0).unwrap_or(false))
        .map(|(i, _)| i)
        .collect();
    let graph = SpanningSubgraph::from_mask(g, mask);
    let dimension = if vertex_ids.is_empty() {
        -1
    } else {
        let sub = graph.to_multigraph(g)?;
        let b_count = analyze_components(&sub).bipartite_count;
        graph.len() as i64 - g.vertex_count() as i64 + b_count as i64
    };
    Ok(FaceDescriptor {
        graph,
        dimension,
        vertex_ids,
    })
}

/// Dimension and vertex set of the face whose graph is `h`.
pub fn face_from_graph(
    g: &MultiGraph,
    b: &BVector,
    h: &FaceGraph,
    caps: &Caps,
) -> Result<FaceDescriptor, Error> {
    require_nonzero_b(b)?;
    let mask = h.mask(g)?;
    if !mask_is_face_graph(g, b, mask) {
        return Err(Error::NotAFaceGraph);
    }
    let vertices = enumerate_vertices(g, b, caps)?;
    descriptor_for_mask(g, mask, &vertices)
}

/// Builds the whole lattice: every face graph with its dimension and vertex set,
/// plus the Hasse cover relation.
pub fn build_face_lattice(g: &MultiGraph, b: &BVector, caps: &Caps) -> Result<FaceLattice, Error> {
    require_nonzero_b(b)?;
    let vertices = enumerate_vertices(g, b, caps)?;
    let masks = union_closure(g, &vertices)?;
    let faces = masks
        .iter()
        .map(|&mask| descriptor_for_mask(g, mask, &vertices))
        .collect::<Result<Vec<_>, _>>()?;
    let covers = hasse_covers(&masks);
    Ok(FaceLattice { faces, covers })
}

/// Cover pairs (i, j): mask_i ⊂ mask_j with nothing strictly between.
fn hasse_covers(masks: &[u64]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (i, &small) in masks.iter().enumerate() {
        for (j, &large) in masks.iter().enumerate() {
            if small == large || small & !large != 0 {
                continue;
            }
            let strictly_between = masks
                .iter()
                .any(|&mid| mid != small && mid != large && small & !mid == 0 && mid & !large == 0);
            if !strictly_between {
                covers.push((i, j));
            }
        }
    }
    covers
}

/// Meet: the union of the supports of all vertices whose support lies inside
/// every member of `hs`.  The empty meet is gr(P(G,b)).
pub fn lattice_meet(
    g: &MultiGraph,
    b: &BVector,
    hs: &[FaceGraph],
    caps: &Caps,
) -> Result<FaceGraph, Error> {
    require_nonzero_b(b)?;
    if hs.is_empty() {
        return polytope_graph(g, b, caps);
    }
    let mut intersection = u64::MAX;
    for h in hs {
        let mask = h.mask(g)?;
        if !mask_is_face_graph(g, b, mask) {
            return Err(Error::NotAFaceGraph);
        }
        intersection &= mask;
    }
    let mut union = 0u64;
    for vertex in enumerate_vertices(g, b, caps)? {
        let support = vertex.support.mask(g)?;
        if support & !intersection == 0 {
            union |= support;
        }
    }
    Ok(SpanningSubgraph::from_mask(g, union))
}

/// Join: the plain union.  The empty join is the bottom (the edgeless graph).
pub fn lattice_join(g: &MultiGraph, hs: &[FaceGraph]) -> Result<FaceGraph, Error> {
    let mut union = 0u64;
    for h in hs {
        union |= h.mask(g)?;
    }
    Ok(SpanningSubgraph::from_mask(g, union))
}

impl Serialize for FaceDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("edges", self.graph.edge_ids())?;
        map.serialize_entry("dim", &self.dimension)?;
        map.serialize_entry("vertex_ids", &self.vertex_ids)?;
        map.end()
    }
}

impl Serialize for FaceLattice {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("faces", &self.faces)?;
        let covers: Vec<[usize; 2]> = self.covers.iter().map(|&(i, j)| [i, j]).collect();
        map.serialize_entry("covers", &covers)?;
        map.end()
    }
}

/// Hasse diagram in DOT form, nodes labeled with dimension and edge set.
pub fn lattice_to_dot(lattice: &FaceLattice) -> String {
    let mut out = String::from("digraph face_lattice {\n  rankdir=BT;\n");
    for (i, face) in lattice.faces.iter().enumerate() {
        let edges: Vec<&str> = face.graph.edge_ids().iter().map(EdgeId::as_str).collect();
        out.push_str(&format!(
            "  f{} [label=\"dim {}\\n{{{}}}\"];\n",
            i,
            face.dimension,
            edges.join(", ")
        ));
    }
    for &(i, j) in &lattice.covers {
        out.push_str(&format!("  f{i} -> f{j};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn caps() -> Caps {
        Caps::default()
    }

    fn face_masks(g: &MultiGraph, b: &BVector) -> Vec<u64> {
        enumerate_face_graphs(g, b, &caps())
            .unwrap()
            .iter()
            .map(|h| h.mask(g).unwrap())
            .collect()
    }

    #[test]
    fn c4_has_four_face_graphs() {
        let g = fixtures::c4();
        assert_eq!(
            face_masks(&g, &fixtures::b_ones(&g)),
            vec![0b0000, 0b0101, 0b1010, 0b1111]
        );
    }

    #[test]
    fn k3_has_two_face_graphs() {
        let g = fixtures::k3();
        assert_eq!(face_masks(&g, &fixtures::b_ones(&g)), vec![0b000, 0b111]);
    }

    #[test]
    fn twin2_has_ten_face_graphs() {
        let g = fixtures::twin2();
        assert_eq!(face_masks(&g, &fixtures::b_ones(&g)).len(), 10);
    }

    #[test]
    fn is_face_graph_on_c4() {
        let g = fixtures::c4();
        let b = fixtures::b_ones(&g);
        let matching = SpanningSubgraph::from_mask(&g, 0b0101);
        assert!(is_face_graph(&g, &b, &matching, &caps()).unwrap());
        let single = SpanningSubgraph::from_mask(&g, 0b0001);
        assert!(!is_face_graph(&g, &b, &single, &caps()).unwrap());
        let empty = SpanningSubgraph::empty();
        assert!(is_face_graph(&g, &b, &empty, &caps()).unwrap());
    }

    #[test]
    fn is_face_graph_rejects_zero_b() {
        let g = fixtures::c4();
        let b = BVector::zeros(&g);
        let err = is_face_graph(&g, &b, &SpanningSubgraph::empty(), &caps()).unwrap_err();
        assert_eq!(err, Error::ZeroB);
    }

    #[test]
    fn face_from_graph_dimensions() {
        let g = fixtures::c4();
        let b = fixtures::b_ones(&g);
        let whole = face_from_graph(&g, &b, &SpanningSubgraph::full(&g), &caps()).unwrap();
        assert_eq!(whole.dimension, 1);
        assert_eq!(whole.vertex_ids, vec![0, 1]);
        let point =
            face_from_graph(&g, &b, &SpanningSubgraph::from_mask(&g, 0b0101), &caps()).unwrap();
        assert_eq!(point.dimension, 0);
        assert_eq!(point.vertex_ids.len(), 1);

        let k3 = fixtures::k3();
        let whole = face_from_graph(
            &k3,
            &fixtures::b_ones(&k3),
            &SpanningSubgraph::full(&k3),
            &caps(),
        )
        .unwrap();
        assert_eq!(whole.dimension, 0);
        assert_eq!(whole.vertex_ids, vec![0]);
    }

    #[test]
    fn face_from_graph_rejects_non_members() {
        let g = fixtures::c4();
        let b = fixtures::b_ones(&g);
        let single = SpanningSubgraph::from_mask(&g, 0b0001);
        assert_eq!(
            face_from_graph(&g, &b, &single, &caps()).unwrap_err(),
            Error::NotAFaceGraph
        );
    }

    #[test]
    fn meet_and_join_on_c4() {
        let g = fixtures::c4();
        let b = fixtures::b_ones(&g);
        let m1 = SpanningSubgraph::from_mask(&g, 0b0101);
        let m2 = SpanningSubgraph::from_mask(&g, 0b1010);
        let meet = lattice_meet(&g, &b, &[m1.clone(), m2.clone()], &caps()).unwrap();
        assert!(meet.is_empty());
        let full = SpanningSubgraph::full(&g);
        let meet2 = lattice_meet(&g, &b, &[full.clone(), m1.clone()], &caps()).unwrap();
        assert_eq!(meet2, m1);
        let empty_meet = lattice_meet(&g, &b, &[], &caps()).unwrap();
        assert_eq!(empty_meet, full);
        let join = lattice_join(&g, &[m1.clone(), m2]).unwrap();
        assert_eq!(join, full);
        let join_single = lattice_join(&g, std::slice::from_ref(&m1)).unwrap();
        assert_eq!(join_single, m1);
        let empty_join = lattice_join(&g, &[]).unwrap();
        assert!(empty_join.is_empty());
    }

    #[test]
    fn join_on_twin2_builds_a_square_edge() {
        // Adjacent vertex graphs {e1,e3} and {e1,e4} join to a 3-edge face graph.
        let g = fixtures::twin2();
        let u = SpanningSubgraph::from_mask(&g, 0b0101);
        let w = SpanningSubgraph::from_mask(&g, 0b1001);
        let join = lattice_join(&g, &[u, w]).unwrap();
        assert_eq!(join.len(), 3);
        assert!(is_face_graph(&g, &fixtures::b_ones(&g), &join, &caps()).unwrap());
    }

    #[test]
    fn lattice_of_c4_has_expected_shape() {
        let g = fixtures::c4();
        let lattice = build_face_lattice(&g, &fixtures::b_ones(&g), &caps()).unwrap();
        assert_eq!(lattice.faces.len(), 4);
        assert_eq!(lattice.faces[0].dimension, -1);
        assert_eq!(lattice.faces[3].dimension, 1);
        // Bottom covered by the two vertices; both covered by the top.
        assert_eq!(lattice.covers, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn dot_export_is_stable() {
        let g = fixtures::c4();
        let lattice = build_face_lattice(&g, &fixtures::b_ones(&g), &caps()).unwrap();
        let dot = lattice_to_dot(&lattice);
        let expected = "digraph face_lattice {\n  rankdir=BT;\n  f0 [label=\"dim -1\\n{}\"];\n  f1 [label=\"dim 0\\n{e1, e3}\"];\n  f2 [label=\"dim 0\\n{e2, e4}\"];\n  f3 [label=\"dim 1\\n{e1, e2, e3, e4}\"];\n  f0 -> f1;\n  f0 -> f2;\n  f1 -> f3;\n  f2 -> f3;\n}\n";
        assert_eq!(dot, expected);
    }

    #[test]
    fn json_export_shape() {
        let g = fixtures::k3();
        let lattice = build_face_lattice(&g, &fixtures::b_ones(&g), &caps()).unwrap();
        let json = serde_json::to_string(&lattice).unwrap();
        assert_eq!(
            json,
            r#"{"faces":[{"edges":[],"dim":-1,"vertex_ids":[]},{"edges":["e1","e2","e3"],"dim":0,"vertex_ids":[0]}],"covers":[[0,1]]}"#
        );
    }
}
