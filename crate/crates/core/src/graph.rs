//! The multigraph data model.
//!
//! A [`MultiGraph`] is a finite undirected multigraph with loops and parallel edges.
//! Vertex and edge ids are opaque strings; declaration order is the canonical order
//! and every enumeration in this crate is stable with respect to it.  All types here
//! are immutable values after construction.
//!
//! Conventions: the edge set incident to a vertex, `δ(v)`, contains a loop at `v`
//! once, so a loop contributes its weight once to the vertex sum and a single 1 to
//! its incidence-matrix column.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::RatMatrix;
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub String);

macro_rules! id_impls {
    ($ty:ident) => {
        impl $ty {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(s: &str) -> Self {
                $ty(s.to_owned())
            }
        }

        impl From<String> for $ty {
            fn from(s: String) -> Self {
                $ty(s)
            }
        }
    };
}

id_impls!(VertexId);
id_impls!(EdgeId);

#[derive(Clone, Debug)]
struct EdgeRecord {
    id: EdgeId,
    /// Endpoint vertex indices, in input order; equal for a loop.
    ends: [usize; 2],
}

/// Finite undirected multigraph.  The vertex set is nonempty; the edge list may be
/// empty.  Ids are unique across vertices and edges together.
#[derive(Clone, Debug)]
pub struct MultiGraph {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeRecord>,
    vertex_lookup: HashMap<String, usize>,
    edge_lookup: HashMap<String, usize>,
    /// Incident edge indices per vertex, canonical order; a loop appears once.
    incidence: Vec<Vec<usize>>,
}

impl MultiGraph {
    pub fn new(
        vertices: Vec<VertexId>,
        edges: Vec<(EdgeId, VertexId, VertexId)>,
    ) -> Result<Self, Error> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_lookup.insert(v.0.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.0.clone()));
            }
        }
        let mut edge_lookup = HashMap::new();
        let mut records = Vec::with_capacity(edges.len());
        for (i, (id, u, w)) in edges.into_iter().enumerate() {
            if vertex_lookup.contains_key(&id.0) {
                return Err(Error::DuplicateId(id.0));
            }
            if edge_lookup.insert(id.0.clone(), i).is_some() {
                return Err(Error::DuplicateId(id.0));
            }
            let ui = *vertex_lookup
                .get(&u.0)
                .ok_or_else(|| Error::UnknownVertex(u.0.clone()))?;
            let wi = *vertex_lookup
                .get(&w.0)
                .ok_or_else(|| Error::UnknownVertex(w.0.clone()))?;
            records.push(EdgeRecord { id, ends: [ui, wi] });
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (e, rec) in records.iter().enumerate() {
            incidence[rec.ends[0]].push(e);
            if rec.ends[1] != rec.ends[0] {
                incidence[rec.ends[1]].push(e);
            }
        }
        Ok(MultiGraph {
            vertices,
            edges: records,
            vertex_lookup,
            edge_lookup,
            incidence,
        })
    }

    /// Convenience constructor from `&str` ids.
    pub fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, Error> {
        MultiGraph::new(
            vertices.iter().map(|v| VertexId::from(*v)).collect(),
            edges
                .iter()
                .map(|(id, u, w)| (EdgeId::from(*id), VertexId::from(*u), VertexId::from(*w)))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_id(&self, index: usize) -> &VertexId {
        &self.vertices[index]
    }

    pub fn edge_id(&self, index: usize) -> &EdgeId {
        &self.edges[index].id
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> {
        self.edges.iter().map(|e| &e.id)
    }

    /// Endpoint vertex indices of an edge, in declaration order; equal for a loop.
    pub fn edge_ends(&self, index: usize) -> (usize, usize) {
        let [u, w] = self.edges[index].ends;
        (u, w)
    }

    pub fn is_loop(&self, index: usize) -> bool {
        let [u, w] = self.edges[index].ends;
        u == w
    }

    pub fn vertex_index(&self, id: &VertexId) -> Result<usize, Error> {
        self.vertex_lookup
            .get(&id.0)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.0.clone()))
    }

    pub fn edge_index(&self, id: &EdgeId) -> Result<usize, Error> {
        self.edge_lookup
            .get(&id.0)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.0.clone()))
    }

    /// δ(v): indices of incident edges in canonical order, a loop once.
    pub fn incident_edges(&self, vertex: usize) -> &[usize] {
        &self.incidence[vertex]
    }

    /// The other endpoint of `edge` as seen from `vertex` (itself, for a loop).
    pub fn other_end(&self, edge: usize, vertex: usize) -> usize {
        let [u, w] = self.edges[edge].ends;
        if u == vertex {
            w
        } else {
            debug_assert_eq!(w, vertex);
            u
        }
    }
}

/// Nonnegative rational vertex weighting (the `b` of `P(G,b)`), total on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BVector {
    entries: Vec<Rat>,
}

impl BVector {
    pub fn zeros(g: &MultiGraph) -> Self {
        BVector {
            entries: vec![Rat::zero(); g.vertex_count()],
        }
    }

    /// Builds from (id, value) pairs; unspecified vertices default to 0.
    pub fn from_pairs<'a, I>(g: &MultiGraph, pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (&'a VertexId, Rat)>,
    {
        let mut entries = vec![Rat::zero(); g.vertex_count()];
        for (id, value) in pairs {
            let i = g.vertex_index(id)?;
            if value.is_negative() {
                return Err(Error::NegativeB(id.0.clone()));
            }
            entries[i] = value;
        }
        Ok(BVector { entries })
    }

    /// All entries equal to `value` (handy for b = 1 instances).
    pub fn constant(g: &MultiGraph, value: Rat) -> Result<Self, Error> {
        if value.is_negative() {
            return Err(Error::NegativeB("<all>".into()));
        }
        Ok(BVector {
            entries: vec![value; g.vertex_count()],
        })
    }

    pub fn from_entries(g: &MultiGraph, entries: Vec<Rat>) -> Result<Self, Error> {
        assert_eq!(entries.len(), g.vertex_count(), "entry count mismatch");
        if let Some(i) = entries.iter().position(Rat::is_negative) {
            return Err(Error::NegativeB(g.vertex_id(i).0.clone()));
        }
        Ok(BVector { entries })
    }

    pub fn get(&self, vertex: usize) -> &Rat {
        &self.entries[vertex]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn sum(&self) -> Rat {
        self.entries.iter().sum()
    }
}

/// Rational edge weighting (the `x` of `P(G,b)`), total on `E`, sign-unrestricted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeVector {
    entries: Vec<Rat>,
}

impl EdgeVector {
    pub fn zeros(g: &MultiGraph) -> Self {
        EdgeVector {
            entries: vec![Rat::zero(); g.edge_count()],
        }
    }

    pub fn from_entries(g: &MultiGraph, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), g.edge_count(), "entry count mismatch");
        EdgeVector { entries }
    }

    pub fn get(&self, edge: usize) -> &Rat {
        &self.entries[edge]
    }

    pub fn set(&mut self, edge: usize, value: Rat) {
        self.entries[edge] = value;
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    /// supp(x): edges with a nonzero entry, canonical order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&e| !self.entries[e].is_zero())
            .collect()
    }

    /// Vertex sum at `v`: Σ_{e ∈ δ(v)} x_e, a loop counted once.
    pub fn vertex_sum(&self, g: &MultiGraph, vertex: usize) -> Rat {
        g.incident_edges(vertex)
            .iter()
            .map(|&e| &self.entries[e])
            .sum()
    }

    /// Whether `x ∈ P(G,b)`: nonnegative with exact vertex sums.
    pub fn in_polytope(&self, g: &MultiGraph, b: &BVector) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
            && (0..g.vertex_count()).all(|v| &self.vertex_sum(g, v) == b.get(v))
    }
}

/// Sign-unrestricted rational vertex demands (the `a` of `I_G x = a`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemandVector {
    entries: Vec<Rat>,
}

impl DemandVector {
    pub fn zeros(g: &MultiGraph) -> Self {
        DemandVector {
            entries: vec![Rat::zero(); g.vertex_count()],
        }
    }

    pub fn from_entries(g: &MultiGraph, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), g.vertex_count(), "entry count mismatch");
        DemandVector { entries }
    }

    pub fn from_pairs<'a, I>(g: &MultiGraph, pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (&'a VertexId, Rat)>,
    {
        let mut entries = vec![Rat::zero(); g.vertex_count()];
        for (id, value) in pairs {
            entries[g.vertex_index(id)?] = value;
        }
        Ok(DemandVector { entries })
    }

    pub fn get(&self, vertex: usize) -> &Rat {
        &self.entries[vertex]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }
}

impl From<&BVector> for DemandVector {
    fn from(b: &BVector) -> Self {
        DemandVector {
            entries: b.entries().to_vec(),
        }
    }
}

/// Edge subset of a host graph.  Stored as edge ids sorted by the host's canonical
/// order; a spanning subgraph is the host's vertex set together with such a subset,
/// so the same type serves for plain edge sets, spanning subgraphs and face graphs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpanningSubgraph {
    edges: Vec<EdgeId>,
}

/// A plain edge subset, when the spanning-vertex-set reading is not intended.
pub type EdgeSet = SpanningSubgraph;

/// A face graph is a spanning subgraph that belongs to the lattice of graphs of
/// `P(G,b)`; see [`crate::lattice`].
pub type FaceGraph = SpanningSubgraph;

impl SpanningSubgraph {
    pub fn new<I: IntoIterator<Item = EdgeId>>(g: &MultiGraph, edges: I) -> Result<Self, Error> {
        let mut indices = Vec::new();
        for id in edges {
            let i = g.edge_index(&id)?;
            if indices.contains(&i) {
                return Err(Error::DuplicateId(id.0));
            }
            indices.push(i);
        }
        indices.sort_unstable();
        Ok(SpanningSubgraph {
            edges: indices.iter().map(|&i| g.edge_id(i).clone()).collect(),
        })
    }

    pub fn empty() -> Self {
        SpanningSubgraph { edges: Vec::new() }
    }

    pub fn full(g: &MultiGraph) -> Self {
        SpanningSubgraph {
            edges: g.edge_ids().cloned().collect(),
        }
    }

    pub fn from_indices(g: &MultiGraph, indices: &[usize]) -> Self {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        SpanningSubgraph {
            edges: sorted.iter().map(|&i| g.edge_id(i).clone()).collect(),
        }
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn indices(&self, g: &MultiGraph) -> Result<Vec<usize>, Error> {
        self.edges.iter().map(|id| g.edge_index(id)).collect()
    }

    /// Bitmask over host edge indices; requires the host to have at most 64 edges.
    pub fn mask(&self, g: &MultiGraph) -> Result<u64, Error> {
        if g.edge_count() > 64 {
            return Err(Error::EdgeCapExceeded {
                actual: g.edge_count(),
                limit: 64,
            });
        }
        let mut mask = 0u64;
        for id in &self.edges {
            mask |= 1u64 << g.edge_index(id)?;
        }
        Ok(mask)
    }

    pub fn from_mask(g: &MultiGraph, mask: u64) -> Self {
        let indices: Vec<usize> = (0..g.edge_count())
            .filter(|&e| mask >> e & 1 == 1)
            .collect();
        SpanningSubgraph::from_indices(g, &indices)
    }

    /// Materializes the spanning subgraph as a standalone multigraph on the host's
    /// full vertex set, preserving ids and canonical order.
    pub fn to_multigraph(&self, g: &MultiGraph) -> Result<MultiGraph, Error> {
        let edges = self
            .indices(g)?
            .into_iter()
            .map(|e| {
                let (u, w) = g.edge_ends(e);
                (
                    g.edge_id(e).clone(),
                    g.vertex_id(u).clone(),
                    g.vertex_id(w).clone(),
                )
            })
            .collect();
        MultiGraph::new(g.vertex_ids().to_vec(), edges)
    }
}

/// Resolves a list of vertex ids into a deduplicated index set.
fn vertex_index_set(g: &MultiGraph, ids: &[VertexId]) -> Result<Vec<usize>, Error> {
    let mut out: Vec<usize> = ids
        .iter()
        .map(|id| g.vertex_index(id))
        .collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// G[U,W]: the edges with one endpoint in `U` and the other in `W` (a loop at `v`
/// qualifies when `v` lies in both).  Symmetric in `(U, W)`.
pub fn edge_set_between(
    g: &MultiGraph,
    us: &[VertexId],
    ws: &[VertexId],
) -> Result<EdgeSet, Error> {
    let u_set = vertex_index_set(g, us)?;
    let w_set = vertex_index_set(g, ws)?;
    let in_u = |v: usize| u_set.binary_search(&v).is_ok();
    let in_w = |v: usize| w_set.binary_search(&v).is_ok();
    let indices: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let (u, w) = g.edge_ends(e);
            (in_u(u) && in_w(w)) || (in_u(w) && in_w(u))
        })
        .collect();
    Ok(SpanningSubgraph::from_indices(g, &indices))
}

/// Whether `C` is a vertex cover of `g`, i.e. `G[V∖C, V∖C] = ∅`.
pub fn is_vertex_cover(g: &MultiGraph, cover: &[VertexId]) -> Result<bool, Error> {
    let c = vertex_index_set(g, cover)?;
    let in_c = |v: usize| c.binary_search(&v).is_ok();
    Ok((0..g.edge_count()).all(|e| {
        let (u, w) = g.edge_ends(e);
        in_c(u) || in_c(w)
    }))
}

/// The generalized adjacency matrix `A_G(x)`: rows and columns indexed by `V` in
/// canonical order, entry `(v,w)` the sum of `x_e` over edges joining `v` and `w`
/// (loop weights appear once, on the diagonal).  With a bipartition `(U,W)` the
/// `U×W` biadjacency submatrix is returned instead, rows and columns in the order
/// the classes were given.
pub fn generalized_adjacency(
    g: &MultiGraph,
    x: &EdgeVector,
    bipartition: Option<(&[VertexId], &[VertexId])>,
) -> Result<RatMatrix, Error> {
    let mut full = RatMatrix::zeros(g.vertex_count(), g.vertex_count());
    for e in 0..g.edge_count() {
        let (u, w) = g.edge_ends(e);
        let val = full.get(u, w) + x.get(e);
        full.set(u, w, val.clone());
        if u != w {
            full.set(w, u, val);
        }
    }
    let Some((us, ws)) = bipartition else {
        return Ok(full);
    };

    let u_set = vertex_index_set(g, us)?;
    let w_set = vertex_index_set(g, ws)?;
    let describe = |us: &[VertexId], ws: &[VertexId]| {
        format!(
            "{{{}}}, {{{}}}",
            us.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(","),
            ws.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(",")
        )
    };
    if u_set.iter().any(|v| w_set.binary_search(v).is_ok()) {
        return Err(Error::NotBipartition(
            describe(us, ws),
            "classes intersect".into(),
        ));
    }
    if u_set.len() + w_set.len() != g.vertex_count() {
        return Err(Error::NotBipartition(
            describe(us, ws),
            "classes do not cover the vertex set".into(),
        ));
    }
    let in_u = |v: usize| u_set.binary_search(&v).is_ok();
    for e in 0..g.edge_count() {
        let (u, w) = g.edge_ends(e);
        if in_u(u) == in_u(w) {
            return Err(Error::NotBipartition(
                describe(us, ws),
                format!("edge `{}` does not cross the classes", g.edge_id(e)),
            ));
        }
    }
    // Deduplicated index sets, but rows/cols ordered as the caller listed them.
    let mut seen = Vec::new();
    let mut u_rows = Vec::new();
    for id in us {
        let i = g.vertex_index(id)?;
        if !seen.contains(&i) {
            seen.push(i);
            u_rows.push(i);
        }
    }
    let mut w_cols = Vec::new();
    for id in ws {
        let i = g.vertex_index(id)?;
        if !seen.contains(&i) {
            seen.push(i);
            w_cols.push(i);
        }
    }
    let mut out = RatMatrix::zeros(u_rows.len(), w_cols.len());
    for (i, &u) in u_rows.iter().enumerate() {
        for (j, &w) in w_cols.iter().enumerate() {
            out.set(i, j, full.get(u, w).clone());
        }
    }
    Ok(out)
}
