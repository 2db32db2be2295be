//! Python bindings: an `Instance` class wrapping a graph plus b, with methods
//! mirroring the CLI subcommands.  Rationals cross the boundary as `"p/q"`
//! strings so exactness survives; structured results come back as dicts and
//! lists with keys in canonical order.
//!
//! Usage from Python:
//!
//!     from bmatch import Instance
//!     inst = Instance.from_parts(["v1","v2"], [("e1","v1","v2")], {"v1":"1","v2":"1"})
//!     inst.dimension()      # 0
//!     inst.vertices()       # [{"support": ["e1"], "point": {"e1": "1"}}]

use std::collections::HashMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use bmatch_core::feasibility::{
    bipartite_double, check_nonempty, check_strictly_positive, reduce_multi_edges, BlockingKind,
    NonemptinessCertificate, PositivityCertificate, TriPartition,
};
use bmatch_core::format::GraphDoc;
use bmatch_core::lattice::{build_face_lattice, enumerate_face_graphs, lattice_to_dot};
use bmatch_core::oracle::{oracle_dimension, oracle_face_lattice, oracle_vertices};
use bmatch_core::polytope::{dimension, enumerate_vertices, is_edge_pair, is_vertex};
use bmatch_core::structure::{analyze_components, incidence_nullity, kernel_basis};
use bmatch_core::{
    BVector, Caps, DemandVector, EdgeId, EdgeVector, MultiGraph, Rat, SpanningSubgraph, VertexId,
};

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A graph together with its vertex weighting b.
#[pyclass]
struct Instance {
    graph: MultiGraph,
    b: BVector,
    caps: Caps,
}

fn edge_vector_dict<'py>(
    py: Python<'py>,
    g: &MultiGraph,
    x: &EdgeVector,
) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    for e in 0..g.edge_count() {
        dict.set_item(g.edge_id(e).as_str(), x.get(e).to_string())?;
    }
    Ok(dict)
}

fn partition_dict<'py>(py: Python<'py>, p: &TriPartition) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    let names = |ids: &[VertexId]| -> Vec<String> { ids.iter().map(|v| v.0.clone()).collect() };
    dict.set_item("V1", names(&p.v1))?;
    dict.set_item("V2", names(&p.v2))?;
    dict.set_item("V3", names(&p.v3))?;
    Ok(dict)
}

fn graph_dict<'py>(py: Python<'py>, g: &MultiGraph, b: &BVector) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    let vertices: Vec<String> = g.vertex_ids().iter().map(|v| v.0.clone()).collect();
    dict.set_item("vertices", vertices)?;
    let edges = PyList::empty(py);
    for e in 0..g.edge_count() {
        let (u, w) = g.edge_ends(e);
        let edge = PyDict::new(py);
        edge.set_item("id", g.edge_id(e).as_str())?;
        edge.set_item(
            "ends",
            vec![g.vertex_id(u).as_str(), g.vertex_id(w).as_str()],
        )?;
        edges.append(edge)?;
    }
    dict.set_item("edges", edges)?;
    let bmap = PyDict::new(py);
    for v in 0..g.vertex_count() {
        bmap.set_item(g.vertex_id(v).as_str(), b.get(v).to_string())?;
    }
    dict.set_item("b", bmap)?;
    Ok(dict)
}

fn subgraph_ids(h: &SpanningSubgraph) -> Vec<String> {
    h.edge_ids().iter().map(|e| e.0.clone()).collect()
}

impl Instance {
    fn parse_point(&self, point: &HashMap<String, String>) -> PyResult<EdgeVector> {
        let mut entries = vec![None; self.graph.edge_count()];
        for (key, literal) in point {
            let e = self
                .graph
                .edge_index(&EdgeId::from(key.as_str()))
                .map_err(value_error)?;
            entries[e] = Some(Rat::parse(literal).map_err(value_error)?);
        }
        entries
            .into_iter()
            .enumerate()
            .map(|(e, value)| {
                value.ok_or_else(|| {
                    value_error(format!(
                        "missing entry for edge `{}`",
                        self.graph.edge_id(e)
                    ))
                })
            })
            .collect::<PyResult<Vec<_>>>()
            .map(|entries| EdgeVector::from_entries(&self.graph, entries))
    }
}

#[pymethods]
impl Instance {
    /// Builds from a graph-file JSON string (see the README for the format).
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        let (graph, b) = bmatch_core::format::parse_graph_file(json).map_err(value_error)?;
        Ok(Instance {
            graph,
            b,
            caps: Caps::default(),
        })
    }

    /// Builds from parts: vertex ids, (id, u, w) edge triples, and a partial
    /// b map (missing entries are 0).
    #[staticmethod]
    #[pyo3(signature = (vertices, edges, b=None))]
    fn from_parts(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
        b: Option<HashMap<String, String>>,
    ) -> PyResult<Self> {
        let graph = MultiGraph::new(
            vertices.into_iter().map(VertexId::from).collect(),
            edges
                .into_iter()
                .map(|(id, u, w)| (EdgeId::from(id), VertexId::from(u), VertexId::from(w)))
                .collect(),
        )
        .map_err(value_error)?;
        let mut pairs = Vec::new();
        for (key, literal) in b.unwrap_or_default() {
            let id = VertexId::from(key.as_str());
            graph.vertex_index(&id).map_err(value_error)?;
            pairs.push((id, Rat::parse(&literal).map_err(value_error)?));
        }
        let b = BVector::from_pairs(&graph, pairs.iter().map(|(id, r)| (id, r.clone())))
            .map_err(value_error)?;
        Ok(Instance {
            graph,
            b,
            caps: Caps::default(),
        })
    }

    fn set_caps(&mut self, max_vertices: usize, max_edges: usize) {
        self.caps = Caps::new(max_vertices, max_edges);
    }

    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    fn is_bipartite(&self) -> bool {
        analyze_components(&self.graph).is_bipartite()
    }

    /// nullity(I_G) = |E| - |V| + B.
    fn incidence_nullity(&self) -> usize {
        incidence_nullity(&self.graph)
    }

    /// {"status": "ok", "point": {...}} or {"status": "infeasible", "partition": {...}}.
    fn check_nonempty<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let dict = PyDict::new(py);
        match check_nonempty(&self.graph, &self.b, &self.caps).map_err(value_error)? {
            NonemptinessCertificate::Feasible(x) => {
                dict.set_item("status", "ok")?;
                dict.set_item("point", edge_vector_dict(py, &self.graph, &x)?)?;
            }
            NonemptinessCertificate::Infeasible(p) => {
                dict.set_item("status", "infeasible")?;
                dict.set_item("partition", partition_dict(py, &p)?)?;
            }
        }
        Ok(dict)
    }

    /// {"status": "ok", "point": {...}} or
    /// {"status": "infeasible", "kind": "strict"|"equality", "partition": {...}}.
    fn strictly_positive<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let dict = PyDict::new(py);
        match check_strictly_positive(&self.graph, &self.b, &self.caps).map_err(value_error)? {
            PositivityCertificate::Positive(x) => {
                dict.set_item("status", "ok")?;
                dict.set_item("point", edge_vector_dict(py, &self.graph, &x)?)?;
            }
            PositivityCertificate::Blocking { partition, kind } => {
                dict.set_item("status", "infeasible")?;
                dict.set_item(
                    "kind",
                    match kind {
                        BlockingKind::StrictFail => "strict",
                        BlockingKind::EqualityFail => "equality",
                    },
                )?;
                dict.set_item("partition", partition_dict(py, &partition)?)?;
            }
        }
        Ok(dict)
    }

    /// dim P(G,b); -1 when empty.
    fn dimension(&self) -> PyResult<i64> {
        dimension(&self.graph, &self.b, &self.caps).map_err(value_error)
    }

    /// [{"support": [...], "point": {...}}, ...] in canonical order.
    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let out = PyList::empty(py);
        for vertex in enumerate_vertices(&self.graph, &self.b, &self.caps).map_err(value_error)? {
            let entry = PyDict::new(py);
            entry.set_item("support", subgraph_ids(&vertex.support))?;
            entry.set_item("point", edge_vector_dict(py, &self.graph, &vertex.coords)?)?;
            out.append(entry)?;
        }
        Ok(out)
    }

    /// Whether the point (a total {edge: "p/q"} map) is a vertex of P(G,b).
    fn is_vertex(&self, point: HashMap<String, String>) -> PyResult<bool> {
        Ok(is_vertex(&self.graph, &self.b, &self.parse_point(&point)?).is_vertex())
    }

    /// {"is_vertex": bool, "reason": str|None}.
    fn vertex_check<'py>(
        &self,
        py: Python<'py>,
        point: HashMap<String, String>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let check = is_vertex(&self.graph, &self.b, &self.parse_point(&point)?);
        let dict = PyDict::new(py);
        dict.set_item("is_vertex", check.is_vertex())?;
        dict.set_item("reason", check.reason())?;
        Ok(dict)
    }

    /// Whether two distinct vertices span an edge of the polytope.
    fn is_edge(
        &self,
        first: HashMap<String, String>,
        second: HashMap<String, String>,
    ) -> PyResult<bool> {
        is_edge_pair(
            &self.graph,
            &self.b,
            &self.parse_point(&first)?,
            &self.parse_point(&second)?,
        )
        .map_err(value_error)
    }

    /// All face graphs as edge-id lists, canonical order.
    fn face_graphs(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(enumerate_face_graphs(&self.graph, &self.b, &self.caps)
            .map_err(value_error)?
            .iter()
            .map(subgraph_ids)
            .collect())
    }

    /// {"faces": [{"edges", "dim", "vertex_ids"}, ...], "covers": [[i, j], ...]}.
    fn face_lattice<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let lattice = build_face_lattice(&self.graph, &self.b, &self.caps).map_err(value_error)?;
        let faces = PyList::empty(py);
        for face in &lattice.faces {
            let entry = PyDict::new(py);
            entry.set_item("edges", subgraph_ids(&face.graph))?;
            entry.set_item("dim", face.dimension)?;
            entry.set_item("vertex_ids", face.vertex_ids.clone())?;
            faces.append(entry)?;
        }
        let dict = PyDict::new(py);
        dict.set_item("faces", faces)?;
        let covers: Vec<[usize; 2]> = lattice.covers.iter().map(|&(i, j)| [i, j]).collect();
        dict.set_item("covers", covers)?;
        Ok(dict)
    }

    /// DOT Hasse diagram of the face lattice.
    fn face_lattice_dot(&self) -> PyResult<String> {
        let lattice = build_face_lattice(&self.graph, &self.b, &self.caps).map_err(value_error)?;
        Ok(lattice_to_dot(&lattice))
    }

    /// Explicit kernel basis of the incidence matrix, as edge maps.
    fn kernel_basis<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let out = PyList::empty(py);
        for vector in kernel_basis(&self.graph) {
            out.append(edge_vector_dict(py, &self.graph, &vector)?)?;
        }
        Ok(out)
    }

    /// Solves I_G x = a (default a = b); {"x": {...}} or {"violation": {...}}.
    #[pyo3(signature = (demands=None))]
    fn solve_flow<'py>(
        &self,
        py: Python<'py>,
        demands: Option<HashMap<String, String>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let a = match demands {
            None => DemandVector::from(&self.b),
            Some(map) => {
                let mut pairs = Vec::new();
                for (key, literal) in map {
                    pairs.push((
                        VertexId::from(key.as_str()),
                        Rat::parse(&literal).map_err(value_error)?,
                    ));
                }
                DemandVector::from_pairs(&self.graph, pairs.iter().map(|(id, r)| (id, r.clone())))
                    .map_err(value_error)?
            }
        };
        let dict = PyDict::new(py);
        match bmatch_core::flow::solve_flow(&self.graph, &a) {
            Ok(x) => {
                dict.set_item("x", edge_vector_dict(py, &self.graph, &x)?)?;
            }
            Err(v) => {
                let violation = PyDict::new(py);
                violation.set_item("component_index", v.component_index)?;
                violation.set_item(
                    "class_u",
                    v.class_u.iter().map(|id| id.0.clone()).collect::<Vec<_>>(),
                )?;
                violation.set_item(
                    "class_w",
                    v.class_w.iter().map(|id| id.0.clone()).collect::<Vec<_>>(),
                )?;
                violation.set_item("sum_u", v.sum_u.to_string())?;
                violation.set_item("sum_w", v.sum_w.to_string())?;
                dict.set_item("violation", violation)?;
            }
        }
        Ok(dict)
    }

    /// Collapses parallel edges: {"graph": {...}, "edge_map": {...}}.
    fn reduce<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let (reduced, mapping) = reduce_multi_edges(&self.graph);
        let rb = BVector::from_entries(&reduced, self.b.entries().to_vec()).map_err(value_error)?;
        let dict = PyDict::new(py);
        dict.set_item("graph", graph_dict(py, &reduced, &rb)?)?;
        let edge_map = PyDict::new(py);
        for id in self.graph.edge_ids() {
            edge_map.set_item(id.as_str(), mapping[id].as_str())?;
        }
        dict.set_item("edge_map", edge_map)?;
        Ok(dict)
    }

    /// Bipartite double graph: {"graph": {...}, "correspondence": [...]}.
    fn double<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let (double, db, correspondence) = bipartite_double(&self.graph, &self.b);
        let dict = PyDict::new(py);
        dict.set_item("graph", graph_dict(py, &double, &db)?)?;
        let entries = PyList::empty(py);
        for d in &correspondence.entries {
            let entry = PyDict::new(py);
            entry.set_item("edge", d.original.as_str())?;
            entry.set_item("images", vec![d.images[0].as_str(), d.images[1].as_str()])?;
            entry.set_item("mu", d.mu)?;
            entries.append(entry)?;
        }
        dict.set_item("correspondence", entries)?;
        Ok(dict)
    }

    /// Cross-checks against the brute-force oracle; {"agree": bool, ...}.
    fn oracle_audit<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let ours = enumerate_vertices(&self.graph, &self.b, &self.caps).map_err(value_error)?;
        let ours_coords: Vec<EdgeVector> = ours.iter().map(|v| v.coords.clone()).collect();
        let oracle = oracle_vertices(&self.graph, &self.b, &self.caps).map_err(value_error)?;
        let vertices_ok = ours_coords == oracle;
        let dim_ok = dimension(&self.graph, &self.b, &self.caps).map_err(value_error)?
            == oracle_dimension(&self.graph, &oracle);
        let faces_ok = if self.b.is_zero() {
            None
        } else {
            let report =
                oracle_face_lattice(&self.graph, &self.b, &self.caps).map_err(value_error)?;
            let faces =
                enumerate_face_graphs(&self.graph, &self.b, &self.caps).map_err(value_error)?;
            Some(faces == report.face_supports)
        };
        let dict = PyDict::new(py);
        dict.set_item("agree", vertices_ok && dim_ok && faces_ok.unwrap_or(true))?;
        dict.set_item("vertices", vertices_ok)?;
        dict.set_item("dimension", dim_ok)?;
        dict.set_item("faces", faces_ok)?;
        Ok(dict)
    }

    /// Canonical graph-file JSON for this instance.
    fn to_json(&self) -> String {
        GraphDoc::canonical(&self.graph, &self.b).to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(vertices={}, edges={}, caps=({}, {}))",
            self.graph.vertex_count(),
            self.graph.edge_count(),
            self.caps.max_vertices,
            self.caps.max_edges,
        )
    }
}

#[pymodule]
fn bmatch(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Instance>()?;
    Ok(())
}
