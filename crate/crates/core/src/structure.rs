//! Component analysis, bipartiteness, incidence matrices and cycle structure.
//!
//! The incidence nullity of a multigraph is `|E| - |V| + B` where `B` counts the
//! bipartite components (a loop is an odd 1-cycle, a parallel pair an even
//! 2-cycle).  This module computes that formula, classifies each component by its
//! cycle content, builds the canonical spanning core (tree per bipartite
//! component, connected odd-unicyclic subgraph per nonbipartite component) and
//! materializes an explicit kernel basis of the incidence matrix from it.

use num_traits::One;

use crate::flow;
use crate::graph::{DemandVector, EdgeVector, MultiGraph};
use crate::linalg::RatMatrix;
use crate::rat::Rat;

/// One connected component, in discovery (canonical) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInfo {
    /// Vertex indices, ascending.
    pub vertices: Vec<usize>,
    /// Edge indices, ascending.
    pub edges: Vec<usize>,
    pub bipartite: bool,
    /// The bipartition classes `(U_C, W_C)` when bipartite; the class containing
    /// the lowest vertex comes first.
    pub classes: Option<(Vec<usize>, Vec<usize>)>,
    /// `|E_C| - |V_C|`.
    pub excess: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub components: Vec<ComponentInfo>,
    /// Component index per vertex.
    pub vertex_component: Vec<usize>,
    /// B: the number of bipartite components.
    pub bipartite_count: usize,
}

impl ComponentReport {
    pub fn is_bipartite(&self) -> bool {
        self.components.iter().all(|c| c.bipartite)
    }

    pub fn component_of_edge(&self, g: &MultiGraph, edge: usize) -> usize {
        self.vertex_component[g.edge_ends(edge).0]
    }
}

/// Breadth-first component labeling with 2-coloring.
pub fn analyze_components(g: &MultiGraph) -> ComponentReport {
    let n = g.vertex_count();
    let mut vertex_component = vec![usize::MAX; n];
    let mut color = vec![false; n];
    let mut components = Vec::new();

    for root in 0..n {
        if vertex_component[root] != usize::MAX {
            continue;
        }
        let comp_index = components.len();
        let mut queue = std::collections::VecDeque::from([root]);
        vertex_component[root] = comp_index;
        let mut vertices = vec![root];
        while let Some(v) = queue.pop_front() {
            for &e in g.incident_edges(v) {
                let u = g.other_end(e, v);
                if vertex_component[u] == usize::MAX {
                    vertex_component[u] = comp_index;
                    color[u] = !color[v];
                    vertices.push(u);
                    queue.push_back(u);
                }
            }
        }
        vertices.sort_unstable();
        let edges: Vec<usize> = (0..g.edge_count())
            .filter(|&e| vertex_component[g.edge_ends(e).0] == comp_index)
            .collect();
        // An edge joining same-colored endpoints closes an odd walk; loops always do.
        let bipartite = edges.iter().all(|&e| {
            let (u, w) = g.edge_ends(e);
            u != w && color[u] != color[w]
        });
        let classes = bipartite.then(|| {
            let (mut u_class, mut w_class): (Vec<usize>, Vec<usize>) =
                vertices.iter().partition(|&&v| color[v] == color[root]);
            u_class.sort_unstable();
            w_class.sort_unstable();
            (u_class, w_class)
        });
        let excess = edges.len() as i64 - vertices.len() as i64;
        components.push(ComponentInfo {
            vertices,
            edges,
            bipartite,
            classes,
            excess,
        });
    }

    let bipartite_count = components.iter().filter(|c| c.bipartite).count();
    ComponentReport {
        components,
        vertex_component,
        bipartite_count,
    }
}

/// The incidence matrix `I_G`: rows indexed by vertices, columns by edges, both in
/// canonical order.  A loop column carries a single 1.
pub fn incidence_matrix(g: &MultiGraph) -> RatMatrix {
    let mut m = RatMatrix::zeros(g.vertex_count(), g.edge_count());
    for e in 0..g.edge_count() {
        let (u, w) = g.edge_ends(e);
        m.set(u, e, Rat::one());
        if w != u {
            m.set(w, e, Rat::one());
        }
    }
    m
}

/// `nullity(I_G) = |E| - |V| + B`.
pub fn incidence_nullity(g: &MultiGraph) -> usize {
    let report = analyze_components(g);
    let value = g.edge_count() as i64 - g.vertex_count() as i64 + report.bipartite_count as i64;
    debug_assert!(value >= 0);
    debug_assert_eq!(
        value as usize,
        crate::linalg::rank_nullity(&incidence_matrix(g)).1,
        "nullity formula disagrees with exact elimination"
    );
    value as usize
}

/// Degree of `v` within `allowed` edges for cycle-structure purposes: a loop
/// counts twice here (contrast `δ(v)`, where it counts once).
pub(crate) fn struct_degree(g: &MultiGraph, allowed: &[bool], v: usize) -> usize {
    g.incident_edges(v)
        .iter()
        .filter(|&&e| allowed[e])
        .map(|&e| if g.is_loop(e) { 2 } else { 1 })
        .sum()
}

/// Iteratively removes pendant edges; what remains of `edges` is the 2-core.
pub(crate) fn two_core(g: &MultiGraph, edges: &[usize]) -> Vec<usize> {
    let mut allowed = vec![false; g.edge_count()];
    for &e in edges {
        allowed[e] = true;
    }
    loop {
        let mut changed = false;
        for &e in edges {
            if !allowed[e] || g.is_loop(e) {
                continue;
            }
            let (u, w) = g.edge_ends(e);
            if struct_degree(g, &allowed, u) == 1 || struct_degree(g, &allowed, w) == 1 {
                allowed[e] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    edges.iter().copied().filter(|&e| allowed[e]).collect()
}

/// Per-component cycle content, following the nullity-0 and nullity-1
/// characterizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleClass {
    /// No cycle; excess -1.
    Acyclic,
    /// Exactly one cycle, odd length; excess 0, nonbipartite.
    OddUnicyclic,
    /// Exactly one cycle, even length; excess 0, bipartite.
    EvenUnicyclic,
    /// Exactly two cycles with at least one odd; excess 1, nonbipartite.
    TwoCyclesOneOdd,
    /// One even and two odd cycles, pairwise sharing an edge; excess 1, nonbipartite.
    OneEvenTwoOddSharing,
    /// Anything with incidence nullity at least 2.
    Higher,
}

impl CycleClass {
    /// Incidence nullity contributed by a component of this class, when it is 0 or 1.
    pub fn nullity(self) -> Option<usize> {
        match self {
            CycleClass::Acyclic | CycleClass::OddUnicyclic => Some(0),
            CycleClass::EvenUnicyclic
            | CycleClass::TwoCyclesOneOdd
            | CycleClass::OneEvenTwoOddSharing => Some(1),
            CycleClass::Higher => None,
        }
    }
}

/// Whether the 2-core (connected, min degree 2, excess 1) is a theta graph:
/// two branch vertices joined by three internally disjoint paths.  The only
/// other excess-1 shapes are two edge-disjoint cycles joined by a path or at a
/// vertex; those have either a degree-4 vertex or a bridge.
fn core_is_theta(g: &MultiGraph, core: &[usize]) -> bool {
    let mut allowed = vec![false; g.edge_count()];
    for &e in core {
        allowed[e] = true;
    }
    let touched: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| struct_degree(g, &allowed, v) > 0)
        .collect();
    if touched.iter().any(|&v| struct_degree(g, &allowed, v) == 4) {
        return false;
    }
    // Two degree-3 vertices: theta unless some edge is a bridge.
    for &skip in core {
        let mut reach = vec![false; g.vertex_count()];
        let start = touched[0];
        let mut queue = std::collections::VecDeque::from([start]);
        reach[start] = true;
        while let Some(v) = queue.pop_front() {
            for &e in g.incident_edges(v) {
                if !allowed[e] || e == skip {
                    continue;
                }
                let u = g.other_end(e, v);
                if !reach[u] {
                    reach[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if touched.iter().any(|&v| !reach[v]) {
            return false; // bridge: two cycles joined by a path
        }
    }
    true
}

/// Classifies every component of `g`, in component order.
pub fn classify_cycle_structure(g: &MultiGraph) -> Vec<CycleClass> {
    let report = analyze_components(g);
    classify_components(g, &report)
}

pub fn classify_components(g: &MultiGraph, report: &ComponentReport) -> Vec<CycleClass> {
    report
        .components
        .iter()
        .map(|c| {
            let class = match (c.excess, c.bipartite) {
                (-1, _) => CycleClass::Acyclic,
                (0, false) => CycleClass::OddUnicyclic,
                (0, true) => CycleClass::EvenUnicyclic,
                (1, true) => CycleClass::Higher,
                (1, false) => {
                    if core_is_theta(g, &two_core(g, &c.edges)) {
                        CycleClass::OneEvenTwoOddSharing
                    } else {
                        CycleClass::TwoCyclesOneOdd
                    }
                }
                _ => CycleClass::Higher,
            };
            #[cfg(debug_assertions)]
            if c.excess <= 1 && c.edges.len() <= 12 {
                debug_assert_eq!(
                    class,
                    class_from_cycle_census(g, &c.edges),
                    "cycle-structure tag disagrees with exhaustive cycle enumeration"
                );
            }
            class
        })
        .collect()
}

/// All simple cycles within `edges`, as ascending edge-index lists.  A cycle is a
/// nonempty edge subset that is connected and meets every touched vertex with
/// structural degree exactly 2 (so a loop is a 1-cycle and a parallel pair a
/// 2-cycle).  Exponential in `edges.len()`; callers keep that at most ~16.
pub fn enumerate_cycles(g: &MultiGraph, edges: &[usize]) -> Vec<Vec<usize>> {
    assert!(edges.len() <= 20, "cycle enumeration limited to 20 edges");
    let mut cycles = Vec::new();
    for mask in 1u32..(1 << edges.len()) {
        let subset: Vec<usize> = (0..edges.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        if subset_is_cycle(g, &subset) {
            cycles.push(subset);
        }
    }
    cycles.sort();
    cycles
}

fn subset_is_cycle(g: &MultiGraph, subset: &[usize]) -> bool {
    let mut allowed = vec![false; g.edge_count()];
    let mut touched = Vec::new();
    for &e in subset {
        allowed[e] = true;
        let (u, w) = g.edge_ends(e);
        touched.push(u);
        touched.push(w);
    }
    touched.sort_unstable();
    touched.dedup();
    if touched.iter().any(|&v| struct_degree(g, &allowed, v) != 2) {
        return false;
    }
    // Connectivity over the subset.
    let mut reach = vec![false; g.vertex_count()];
    let mut queue = std::collections::VecDeque::from([touched[0]]);
    reach[touched[0]] = true;
    while let Some(v) = queue.pop_front() {
        for &e in g.incident_edges(v) {
            if !allowed[e] {
                continue;
            }
            let u = g.other_end(e, v);
            if !reach[u] {
                reach[u] = true;
                queue.push_back(u);
            }
        }
    }
    touched.iter().all(|&v| reach[v])
}

#[cfg(debug_assertions)]
fn class_from_cycle_census(g: &MultiGraph, edges: &[usize]) -> CycleClass {
    let cycles = enumerate_cycles(g, edges);
    let odd = cycles.iter().filter(|c| c.len() % 2 == 1).count();
    let even = cycles.len() - odd;
    let pairwise_share = cycles.iter().enumerate().all(|(i, a)| {
        cycles
            .iter()
            .skip(i + 1)
            .all(|b| a.iter().any(|e| b.contains(e)))
    });
    match (cycles.len(), odd, even) {
        (0, _, _) => CycleClass::Acyclic,
        (1, 1, 0) => CycleClass::OddUnicyclic,
        (1, 0, 1) => CycleClass::EvenUnicyclic,
        (2, o, _) if o >= 1 => CycleClass::TwoCyclesOneOdd,
        (3, 2, 1) if pairwise_share => CycleClass::OneEvenTwoOddSharing,
        _ => CycleClass::Higher,
    }
}

/// The canonical spanning core `H`: per component, a breadth-first spanning tree
/// from the lowest vertex, plus — for a nonbipartite component — the first
/// non-tree edge in canonical order closing an odd cycle.  `|core| = |V| - B`,
/// and the leftover edges index the kernel basis.
#[derive(Clone, Debug)]
pub struct CoreDecomposition {
    /// Edge indices of `H`, ascending.
    pub core_edges: Vec<usize>,
    /// Edge indices of `E \ H`, ascending.
    pub leftover_edges: Vec<usize>,
}

pub fn canonical_core(g: &MultiGraph, report: &ComponentReport) -> CoreDecomposition {
    let n = g.vertex_count();
    let mut in_tree = vec![false; g.edge_count()];
    let mut visited = vec![false; n];
    let mut color = vec![false; n];
    let mut core = Vec::new();

    for comp in &report.components {
        let root = comp.vertices[0];
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident_edges(v) {
                let u = g.other_end(e, v);
                if !visited[u] {
                    visited[u] = true;
                    color[u] = !color[v];
                    in_tree[e] = true;
                    core.push(e);
                    queue.push_back(u);
                }
            }
        }
        if !comp.bipartite {
            let chord = comp
                .edges
                .iter()
                .copied()
                .find(|&e| {
                    if in_tree[e] {
                        return false;
                    }
                    let (u, w) = g.edge_ends(e);
                    u == w || color[u] == color[w]
                })
                .expect("nonbipartite component must have an odd-closing edge");
            core.push(chord);
        }
    }
    core.sort_unstable();
    let leftover = (0..g.edge_count()).filter(|e| !core.contains(e)).collect();
    CoreDecomposition {
        core_edges: core,
        leftover_edges: leftover,
    }
}

impl CoreDecomposition {
    /// The core as a standalone multigraph on the host's vertex set.
    pub fn core_graph(&self, g: &MultiGraph) -> MultiGraph {
        let edges = self
            .core_edges
            .iter()
            .map(|&e| {
                let (u, w) = g.edge_ends(e);
                (
                    g.edge_id(e).clone(),
                    g.vertex_id(u).clone(),
                    g.vertex_id(w).clone(),
                )
            })
            .collect();
        MultiGraph::new(g.vertex_ids().to_vec(), edges).expect("core edges are valid")
    }
}

/// Explicit basis of the kernel of `I_G`: one vector per leftover edge `f`, with
/// `x(f)_f` nonzero and support inside `core ∪ {f}`.  Entries are ±1 around an even
/// cycle, and ±1 on nonloop cycles with ±2 on connecting paths and loops for the
/// two-odd-cycles configurations.  Exactly `|E| - |V| + B` vectors are returned.
pub fn kernel_basis(g: &MultiGraph) -> Vec<EdgeVector> {
    let report = analyze_components(g);
    let decomposition = canonical_core(g, &report);
    let core_graph = decomposition.core_graph(g);

    let mut basis = Vec::new();
    for &f in &decomposition.leftover_edges {
        // Fix x_f = 1 and balance the core against f's incidence column.
        let mut demand = vec![Rat::zero(); g.vertex_count()];
        let (u, w) = g.edge_ends(f);
        demand[u] -= &Rat::one();
        if w != u {
            demand[w] -= &Rat::one();
        }
        let solved = flow::unique_solve(
            &core_graph,
            &DemandVector::from_entries(&core_graph, demand),
        )
        .expect("core plus one edge has a one-dimensional kernel");

        let mut entries = vec![Rat::zero(); g.edge_count()];
        entries[f] = Rat::one();
        for (core_pos, &e) in decomposition.core_edges.iter().enumerate() {
            entries[e] = solved.get(core_pos).clone();
        }
        // Clear denominators (they divide 2) to match the ±1/±2 normal form.
        if entries.iter().any(|v| !v.denom().is_one()) {
            for v in &mut entries {
                *v = &*v * &Rat::from_int(2);
            }
        }
        let vector = EdgeVector::from_entries(g, entries);
        debug_assert!(
            (0..g.vertex_count()).all(|v| vector.vertex_sum(g, v).is_zero()),
            "kernel vector must balance at every vertex"
        );
        basis.push(vector);
    }
    debug_assert_eq!(basis.len(), incidence_nullity(g));
    basis
}
