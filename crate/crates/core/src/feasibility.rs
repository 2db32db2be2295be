//! Nonemptiness and strict positivity of `P(G,b)`, with certificates.
//!
//! `P(G,b)` is nonempty iff Σ_{V1} b ≥ Σ_{V3} b for every tri-partition
//! V = V1 ⊎ V2 ⊎ V3 with G[V2∪V3, V3] = ∅; for bipartite graphs the vertex-cover
//! form Σ_C b ≥ Σ_{V∖C} b is equivalent and cheaper.  Strict positivity requires
//! in addition that the inequality is an equality exactly when G[V1, V1∪V2] = ∅
//! (partitions with empty V3 included: they detect forced-zero edges).
//!
//! Positive answers come with a point of the polytope, found constructively by
//! augmenting paths on the bipartite double graph; negative answers come with the
//! first violating partition in canonical order.  Certificate minimality is not
//! promised.

use std::collections::{BTreeMap, VecDeque};

use crate::caps::Caps;
use crate::error::Error;
use crate::graph::{BVector, EdgeId, EdgeVector, MultiGraph, VertexId};
use crate::partitions::{
    first_nonempty_cover_violation, first_nonempty_tri_violation, first_positivity_cover_violation,
    first_positivity_tri_violation, PositivityFailure,
};
use crate::polytope;
use crate::rat::Rat;
use crate::structure::analyze_components;

/// A tri-partition certificate: `V = V1 ⊎ V2 ⊎ V3` with `G[V2∪V3, V3] = ∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriPartition {
    pub v1: Vec<VertexId>,
    pub v2: Vec<VertexId>,
    pub v3: Vec<VertexId>,
}

impl TriPartition {
    fn from_labels(g: &MultiGraph, labels: &[u8]) -> Self {
        let pick = |target: u8| {
            labels
                .iter()
                .enumerate()
                .filter(|&(_, &l)| l == target)
                .map(|(v, _)| g.vertex_id(v).clone())
                .collect()
        };
        TriPartition {
            v1: pick(0),
            v2: pick(1),
            v3: pick(2),
        }
    }

    fn from_cover_mask(g: &MultiGraph, mask: u64) -> Self {
        // A violated cover C becomes (V1, V2, V3) = (C, ∅, V∖C).
        TriPartition {
            v1: (0..g.vertex_count())
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| g.vertex_id(v).clone())
                .collect(),
            v2: Vec::new(),
            v3: (0..g.vertex_count())
                .filter(|&v| mask >> v & 1 == 0)
                .map(|v| g.vertex_id(v).clone())
                .collect(),
        }
    }

    /// Exact validity check: partition shape, `G[V2∪V3,V3] = ∅`, and the claimed
    /// b-sum relation (`strict`: Σ_{V1} b < Σ_{V3} b).
    pub fn verify(&self, g: &MultiGraph, b: &BVector, strict: bool) -> Result<(), Error> {
        let mut labels = vec![u8::MAX; g.vertex_count()];
        for (class, ids) in [(0u8, &self.v1), (1, &self.v2), (2, &self.v3)] {
            for id in ids {
                let v = g.vertex_index(id)?;
                if labels[v] != u8::MAX {
                    return Err(Error::Precondition(format!(
                        "vertex `{id}` appears in two classes"
                    )));
                }
                labels[v] = class;
            }
        }
        if labels.contains(&u8::MAX) {
            return Err(Error::Precondition("classes do not cover V".into()));
        }
        let admissible = (0..g.edge_count()).all(|e| {
            let (u, w) = g.edge_ends(e);
            (labels[u] != 2 || labels[w] == 0) && (labels[w] != 2 || labels[u] == 0)
        });
        if !admissible {
            return Err(Error::Precondition("G[V2∪V3, V3] is nonempty".into()));
        }
        let sum = |class: u8| -> Rat {
            (0..g.vertex_count())
                .filter(|&v| labels[v] == class)
                .map(|v| b.get(v))
                .sum()
        };
        if strict && !(sum(0) < sum(2)) {
            return Err(Error::Precondition("Σ_{V1} b < Σ_{V3} b fails".into()));
        }
        Ok(())
    }
}

/// Verdict of [`check_nonempty`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonemptinessCertificate {
    Feasible(EdgeVector),
    Infeasible(TriPartition),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockingKind {
    /// Σ_{V1} b < Σ_{V3} b.
    StrictFail,
    /// The equality clause broke in either direction.
    EqualityFail,
}

impl From<PositivityFailure> for BlockingKind {
    fn from(f: PositivityFailure) -> Self {
        match f {
            PositivityFailure::Strict => BlockingKind::StrictFail,
            PositivityFailure::Equality => BlockingKind::EqualityFail,
        }
    }
}

/// Verdict of [`check_strictly_positive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositivityCertificate {
    Positive(EdgeVector),
    Blocking {
        partition: TriPartition,
        kind: BlockingKind,
    },
}

fn endpoint_pairs(g: &MultiGraph) -> Vec<(usize, usize)> {
    (0..g.edge_count()).map(|e| g.edge_ends(e)).collect()
}

/// Collapses parallel edges (and repeated loops) to single edges.  Returns the
/// reduced graph and the surjection from old edge ids to new ones; each group
/// keeps its first member's id.  Nonemptiness and strict positivity of `P(·,b)`
/// are unaffected by this reduction.
pub fn reduce_multi_edges(g: &MultiGraph) -> (MultiGraph, BTreeMap<EdgeId, EdgeId>) {
    let mut representative: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut kept = Vec::new();
    let mut mapping = BTreeMap::new();
    for e in 0..g.edge_count() {
        let (u, w) = g.edge_ends(e);
        let key = (u.min(w), u.max(w));
        let rep = *representative.entry(key).or_insert_with(|| {
            kept.push(e);
            e
        });
        mapping.insert(g.edge_id(e).clone(), g.edge_id(rep).clone());
    }
    let edges = kept
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
    let reduced = MultiGraph::new(g.vertex_ids().to_vec(), edges).expect("reduction keeps ids");
    (reduced, mapping)
}

/// One original edge's pair of images in the bipartite double graph, with the
/// weight μ used to project a double-graph point back: x_e = (x'₁ + x'₂)/μ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledEdge {
    pub original: EdgeId,
    pub images: [EdgeId; 2],
    /// 2 for a nonloop edge, 1 for a loop.
    pub mu: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCorrespondence {
    pub entries: Vec<DoubledEdge>,
}

impl DoubleCorrespondence {
    /// Projects a point of `P(G', b')` back to one of `P(G, b)`.
    pub fn project_back(
        &self,
        g: &MultiGraph,
        double: &MultiGraph,
        xd: &EdgeVector,
    ) -> Result<EdgeVector, Error> {
        let mut entries = vec![Rat::zero(); g.edge_count()];
        for doubled in &self.entries {
            let e = g.edge_index(&doubled.original)?;
            let first = double.edge_index(&doubled.images[0])?;
            let second = double.edge_index(&doubled.images[1])?;
            let sum = xd.get(first) + xd.get(second);
            entries[e] = &sum / &Rat::from_int(i64::from(doubled.mu));
        }
        Ok(EdgeVector::from_entries(g, entries))
    }
}

/// The bipartite double graph: vertices `V×{1,2}` (layer 1 first, then layer 2,
/// ids suffixed `#1`/`#2`), and for each edge `e = {u,w}` the two edges `(e,1)`
/// joining `(u,1),(w,2)` and `(e,2)` joining `(w,1),(u,2)`.  `b` is duplicated
/// across layers.  `P(G,b)` is nonempty (or has a strictly positive element) iff
/// the doubled instance does.
pub fn bipartite_double(
    g: &MultiGraph,
    b: &BVector,
) -> (MultiGraph, BVector, DoubleCorrespondence) {
    let layered = |v: usize, layer: u8| VertexId(format!("{}#{layer}", g.vertex_id(v)));
    let mut vertices = Vec::with_capacity(2 * g.vertex_count());
    for layer in [1u8, 2] {
        for v in 0..g.vertex_count() {
            vertices.push(layered(v, layer));
        }
    }
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    let mut entries = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let (u, w) = g.edge_ends(e);
        let first = EdgeId(format!("{}#1", g.edge_id(e)));
        let second = EdgeId(format!("{}#2", g.edge_id(e)));
        edges.push((first.clone(), layered(u, 1), layered(w, 2)));
        edges.push((second.clone(), layered(w, 1), layered(u, 2)));
        entries.push(DoubledEdge {
            original: g.edge_id(e).clone(),
            images: [first, second],
            mu: if u == w { 1 } else { 2 },
        });
    }
    let double = MultiGraph::new(vertices, edges).expect("double graph ids are fresh");
    let mut bd = Vec::with_capacity(2 * g.vertex_count());
    for _ in 0..2 {
        bd.extend(b.entries().iter().cloned());
    }
    let bd = BVector::from_entries(&double, bd).expect("b stays nonnegative");
    (double, bd, DoubleCorrespondence { entries })
}

/// Constructive point finder: runs augmenting paths on the bipartite double graph
/// starting from x = 0, and projects the result back.  When augmentation stalls,
/// the set of vertices reachable from the remaining deficiencies yields a
/// tri-partition certificate of infeasibility.
pub fn find_point(g: &MultiGraph, b: &BVector) -> Result<EdgeVector, TriPartition> {
    let (double, bd, correspondence) = bipartite_double(g, b);
    let n = g.vertex_count();
    let m = double.edge_count();
    let mut x = vec![Rat::zero(); m];
    let mut sums = vec![Rat::zero(); 2 * n];

    loop {
        // Layer-1 deficiencies are the sources; layer-2 deficiencies the sinks.
        let sources: Vec<usize> = (0..n).filter(|&v| &sums[v] < bd.get(v)).collect();
        if sources.is_empty() {
            debug_assert!((0..2 * n).all(|v| &sums[v] == bd.get(v)));
            let xd = EdgeVector::from_entries(&double, x);
            let point = correspondence
                .project_back(g, &double, &xd)
                .expect("correspondence ids are valid");
            debug_assert!(point.in_polytope(g, b));
            return Ok(point);
        }

        // Breadth-first reachability: layer-1 → layer-2 over any edge, layer-2 →
        // layer-1 only across positive entries.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; 2 * n]; // (vertex, edge)
        let mut seen = vec![false; 2 * n];
        let mut queue = VecDeque::new();
        for &s in &sources {
            seen[s] = true;
            queue.push_back(s);
        }
        let mut target = None;
        'bfs: while let Some(v) = queue.pop_front() {
            let descending = v < n;
            for &e in double.incident_edges(v) {
                if !descending && x[e].is_zero() {
                    continue;
                }
                let u = double.other_end(e, v);
                if seen[u] {
                    continue;
                }
                seen[u] = true;
                parent[u] = Some((v, e));
                if u >= n && &sums[u] < bd.get(u) {
                    target = Some(u);
                    break 'bfs;
                }
                queue.push_back(u);
            }
        }

        let Some(t) = target else {
            // Stalled: S' = seen.  V1 collects vertices in layer 2 only, V3 those
            // in layer 1 only.
            let mut labels = vec![1u8; n];
            for v in 0..n {
                match (seen[v], seen[v + n]) {
                    (false, true) => labels[v] = 0,
                    (true, false) => labels[v] = 2,
                    _ => {}
                }
            }
            let certificate = TriPartition::from_labels(g, &labels);
            debug_assert!(certificate.verify(g, b, true).is_ok());
            return Err(certificate);
        };

        // Recover the path and the maximal feasible step.
        let mut path = Vec::new();
        let mut v = t;
        while let Some((prev, e)) = parent[v] {
            path.push((prev, e, v));
            v = prev;
        }
        path.reverse();
        let source = v;
        let mut step = bd.get(source) - &sums[source];
        let sink_room = bd.get(t) - &sums[t];
        if sink_room < step {
            step = sink_room;
        }
        for &(from, e, _) in &path {
            if from >= n && x[e] < step {
                step = x[e].clone();
            }
        }
        debug_assert!(step.is_positive());
        for &(from, e, _) in &path {
            if from < n {
                x[e] += &step;
            } else {
                x[e] -= &step;
            }
        }
        sums[source] += &step;
        sums[t] += &step;
    }
}

/// Decides nonemptiness of `P(G,b)`.  Bipartite graphs run the vertex-cover scan,
/// general graphs the tri-partition scan (nonempty V3 only); a positive verdict
/// carries the point built by [`find_point`].
pub fn check_nonempty(
    g: &MultiGraph,
    b: &BVector,
    caps: &Caps,
) -> Result<NonemptinessCertificate, Error> {
    caps.check_vertices(g)?;
    let violation = if analyze_components(g).is_bipartite() {
        nonempty_violation_by_covers(g, b)
    } else {
        nonempty_violation_by_partitions(g, b)
    };
    if let Some(partition) = violation {
        debug_assert!(partition.verify(g, b, true).is_ok());
        return Ok(NonemptinessCertificate::Infeasible(partition));
    }
    let point = find_point(g, b)
        .unwrap_or_else(|_| panic!("partition scan and augmentation disagree on feasibility"));
    Ok(NonemptinessCertificate::Feasible(point))
}

/// Vertex-cover form of the nonemptiness condition (complete only for bipartite
/// graphs); exposed for cross-checking the two decision paths.
pub fn nonempty_violation_by_covers(g: &MultiGraph, b: &BVector) -> Option<TriPartition> {
    first_nonempty_cover_violation(b.entries(), &endpoint_pairs(g))
        .map(|mask| TriPartition::from_cover_mask(g, mask))
}

/// Tri-partition form of the nonemptiness condition (complete for every graph).
pub fn nonempty_violation_by_partitions(g: &MultiGraph, b: &BVector) -> Option<TriPartition> {
    first_nonempty_tri_violation(b.entries(), &endpoint_pairs(g))
        .map(|labels| TriPartition::from_labels(g, &labels))
}

/// Decides whether `P(G,b)` contains a strictly positive element.  The scan runs
/// over all tri-partitions including empty V3 (that case detects forced-zero
/// edges); a positive verdict carries the mean of all polytope vertices, whose
/// support is the whole edge set.
pub fn check_strictly_positive(
    g: &MultiGraph,
    b: &BVector,
    caps: &Caps,
) -> Result<PositivityCertificate, Error> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    caps.check(g)?;
    if let Some((labels, kind)) = first_positivity_tri_violation(b.entries(), &endpoint_pairs(g)) {
        let partition = TriPartition::from_labels(g, &labels);
        #[cfg(debug_assertions)]
        if analyze_components(g).is_bipartite() {
            debug_assert!(
                positivity_violation_by_covers(g, b).is_some(),
                "cover form disagrees with partition form"
            );
        }
        return Ok(PositivityCertificate::Blocking {
            partition,
            kind: kind.into(),
        });
    }
    #[cfg(debug_assertions)]
    if analyze_components(g).is_bipartite() {
        debug_assert!(positivity_violation_by_covers(g, b).is_none());
    }

    let vertices = polytope::enumerate_vertices(g, b, caps)?;
    assert!(
        !vertices.is_empty(),
        "positivity condition passed on an empty polytope"
    );
    let count = Rat::from_int(vertices.len() as i64);
    let mut entries = vec![Rat::zero(); g.edge_count()];
    for vertex in &vertices {
        for (e, entry) in entries.iter_mut().enumerate() {
            *entry += vertex.coords.get(e);
        }
    }
    for entry in &mut entries {
        *entry = &*entry / &count;
    }
    let witness = EdgeVector::from_entries(g, entries);
    assert!(
        witness.in_polytope(g, b) && witness.entries().iter().all(Rat::is_positive),
        "vertex mean must be a strictly positive element"
    );
    Ok(PositivityCertificate::Positive(witness))
}

/// Vertex-cover form of the strict-positivity condition (complete only for
/// bipartite graphs); exposed for cross-checking.
pub fn positivity_violation_by_covers(
    g: &MultiGraph,
    b: &BVector,
) -> Option<(TriPartition, BlockingKind)> {
    first_positivity_cover_violation(b.entries(), &endpoint_pairs(g))
        .map(|(mask, kind)| (TriPartition::from_cover_mask(g, mask), kind.into()))
}

/// Strict-positivity scan for an arbitrary spanning subgraph's edge list, used
/// by the face-graph test.  Bipartite subgraphs run the cheaper vertex-cover
/// form, cross-checked against the tri-partition form in debug builds.  `None`
/// means the condition holds.
pub(crate) fn positivity_violation_for_edges(
    b: &[Rat],
    edges: &[(usize, usize)],
    bipartite: bool,
) -> Option<PositivityFailure> {
    if bipartite {
        let by_covers = first_positivity_cover_violation(b, edges).map(|(_, k)| k);
        debug_assert_eq!(
            by_covers.is_some(),
            first_positivity_tri_violation(b, edges).is_some(),
            "cover and tri-partition forms disagree on a bipartite subgraph"
        );
        by_covers
    } else {
        first_positivity_tri_violation(b, edges).map(|(_, k)| k)
    }
}
