//! `bmatch`: exact analysis of fractional perfect b-matching polytopes.
//!
//! Every subcommand reads a graph file (JSON; see the README for the format),
//! prints a single JSON document on standard output, and exits with 0 for
//! positive results, 1 for infeasible or negative decisions, and 2 for usage or
//! validation errors.  Output is byte-identical across runs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::value::RawValue;

use bmatch_core::feasibility::{
    bipartite_double, check_nonempty, check_strictly_positive, reduce_multi_edges, BlockingKind,
    NonemptinessCertificate, PositivityCertificate, TriPartition,
};
use bmatch_core::format::{
    edge_vector_to_json, parse_demands, parse_edge_vector, parse_graph_file, GraphDoc,
    OrderedRatMap,
};
use bmatch_core::lattice::{
    build_face_lattice, enumerate_face_graphs, lattice_to_dot, FaceDescriptor, FaceLattice,
};
use bmatch_core::oracle::{oracle_dimension, oracle_face_lattice, oracle_vertices};
use bmatch_core::polytope::{dimension, enumerate_vertices, is_edge_pair, is_vertex};
use bmatch_core::{BVector, Caps, EdgeId, EdgeVector, MultiGraph, VertexId};

#[derive(Parser)]
#[command(
    name = "bmatch",
    version,
    about = "Exact fractional perfect b-matching polytope analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Vertex cap for the exponential decision procedures.
    #[arg(long, global = true, default_value_t = 16)]
    max_vertices: usize,

    /// Edge cap for vertex/face enumeration.
    #[arg(long, global = true, default_value_t = 20)]
    max_edges: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether P(G,b) is nonempty; emits a point or a partition certificate.
    CheckNonempty { graph: PathBuf },
    /// Decide whether P(G,b) has a strictly positive element.
    StrictlyPositive { graph: PathBuf },
    /// Dimension of P(G,b) (-1 when empty).
    Dimension { graph: PathBuf },
    /// Enumerate all vertices of P(G,b).
    Vertices { graph: PathBuf },
    /// Test whether a point (--point FILE) is a vertex of P(G,b).
    IsVertex {
        graph: PathBuf,
        /// Edge-vector document; exactly one.
        #[arg(long = "point", required = true)]
        points: Vec<PathBuf>,
    },
    /// Test whether two points (--point given twice) span an edge of P(G,b).
    IsEdge {
        graph: PathBuf,
        /// Edge-vector documents; exactly two.
        #[arg(long = "point", required = true)]
        points: Vec<PathBuf>,
    },
    /// Enumerate the face graphs of P(G,b).
    FaceGraphs { graph: PathBuf },
    /// Build the full face lattice (JSON, or DOT with --dot).
    FaceLattice {
        graph: PathBuf,
        /// Emit a DOT Hasse diagram instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Explicit basis of the kernel of the incidence matrix.
    KernelBasis { graph: PathBuf },
    /// Solve I_G x = a for the demands in --demands FILE (default: the graph's b).
    SolveFlow {
        graph: PathBuf,
        #[arg(long)]
        demands: Option<PathBuf>,
    },
    /// Collapse parallel edges to single edges.
    Reduce { graph: PathBuf },
    /// Build the bipartite double graph.
    Double { graph: PathBuf },
    /// Cross-check the structural algorithms against the brute-force oracle.
    OracleAudit { graph: PathBuf },
}

/// Exit buckets, per the output contract.
enum Outcome {
    Ok(String),
    Negative(String),
    /// Raw (non-JSON) output, e.g. DOT.
    Raw(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps::new(cli.max_vertices, cli.max_edges);
    match run(&cli.command, &caps) {
        Ok(Outcome::Ok(doc)) => {
            println!("{}", render(&doc, cli.pretty));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Negative(doc)) => {
            println!("{}", render(&doc, cli.pretty));
            ExitCode::from(1)
        }
        Ok(Outcome::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(message) => {
            let doc = ErrorDoc {
                status: "error",
                error: message,
            };
            let doc = serde_json::to_string(&doc).expect("error doc");
            println!("{}", render(&doc, cli.pretty));
            ExitCode::from(2)
        }
    }
}

fn render(doc: &str, pretty: bool) -> String {
    if !pretty {
        return doc.to_owned();
    }
    let value: serde_json::Value = serde_json::from_str(doc).expect("own output parses");
    serde_json::to_string_pretty(&value).expect("pretty printing")
}

#[derive(Serialize)]
struct ErrorDoc {
    status: &'static str,
    error: String,
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_instance(path: &PathBuf) -> Result<(MultiGraph, BVector), String> {
    parse_graph_file(&read_file(path)?).map_err(|e| e.to_string())
}

fn load_point(g: &MultiGraph, path: &PathBuf) -> Result<EdgeVector, String> {
    parse_edge_vector(g, &read_file(path)?).map_err(|e| e.to_string())
}

fn raw(json: String) -> Box<RawValue> {
    RawValue::from_string(json).expect("canonical JSON fragment")
}

fn point_raw(g: &MultiGraph, x: &EdgeVector) -> Box<RawValue> {
    raw(edge_vector_to_json(g, x))
}

#[derive(Serialize)]
struct PartitionDoc {
    #[serde(rename = "V1")]
    v1: Vec<String>,
    #[serde(rename = "V2")]
    v2: Vec<String>,
    #[serde(rename = "V3")]
    v3: Vec<String>,
}

impl PartitionDoc {
    fn new(p: &TriPartition) -> Self {
        let names = |ids: &[VertexId]| ids.iter().map(|v| v.0.clone()).collect();
        PartitionDoc {
            v1: names(&p.v1),
            v2: names(&p.v2),
            v3: names(&p.v3),
        }
    }
}

fn ids(items: &[EdgeId]) -> Vec<String> {
    items.iter().map(|e| e.0.clone()).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serialization")
}

fn run(command: &Command, caps: &Caps) -> Result<Outcome, String> {
    match command {
        Command::CheckNonempty { graph } => {
            let (g, b) = load_instance(graph)?;
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                #[serde(skip_serializing_if = "Option::is_none")]
                point: Option<Box<RawValue>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                partition: Option<PartitionDoc>,
            }
            match check_nonempty(&g, &b, caps).map_err(|e| e.to_string())? {
                NonemptinessCertificate::Feasible(x) => Ok(Outcome::Ok(to_json(&Doc {
                    status: "ok",
                    point: Some(point_raw(&g, &x)),
                    partition: None,
                }))),
                NonemptinessCertificate::Infeasible(p) => Ok(Outcome::Negative(to_json(&Doc {
                    status: "infeasible",
                    point: None,
                    partition: Some(PartitionDoc::new(&p)),
                }))),
            }
        }

        Command::StrictlyPositive { graph } => {
            let (g, b) = load_instance(graph)?;
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                #[serde(skip_serializing_if = "Option::is_none")]
                point: Option<Box<RawValue>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                kind: Option<&'static str>,
                #[serde(skip_serializing_if = "Option::is_none")]
                partition: Option<PartitionDoc>,
            }
            match check_strictly_positive(&g, &b, caps).map_err(|e| e.to_string())? {
                PositivityCertificate::Positive(x) => Ok(Outcome::Ok(to_json(&Doc {
                    status: "ok",
                    point: Some(point_raw(&g, &x)),
                    kind: None,
                    partition: None,
                }))),
                PositivityCertificate::Blocking { partition, kind } => {
                    Ok(Outcome::Negative(to_json(&Doc {
                        status: "infeasible",
                        point: None,
                        kind: Some(match kind {
                            BlockingKind::StrictFail => "strict",
                            BlockingKind::EqualityFail => "equality",
                        }),
                        partition: Some(PartitionDoc::new(&partition)),
                    })))
                }
            }
        }

        Command::Dimension { graph } => {
            let (g, b) = load_instance(graph)?;
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                dimension: i64,
            }
            let dim = dimension(&g, &b, caps).map_err(|e| e.to_string())?;
            Ok(Outcome::Ok(to_json(&Doc {
                status: "ok",
                dimension: dim,
            })))
        }

        Command::Vertices { graph } => {
            let (g, b) = load_instance(graph)?;
            #[derive(Serialize)]
            struct VertexDoc {
                support: Vec<String>,
                point: Box<RawValue>,
            }
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                count: usize,
                vertices: Vec<VertexDoc>,
            }
            let vertices = enumerate_vertices(&g, &b, caps).map_err(|e| e.to_string())?;
            let vertices: Vec<VertexDoc> = vertices
                .iter()
                .map(|v| VertexDoc {
                    support: ids(v.support.edge_ids()),
                    point: point_raw(&g, &v.coords),
                })
                .collect();
            Ok(Outcome::Ok(to_json(&Doc {
                status: "ok",
                count: vertices.len(),
                vertices,
            })))
        }

        Command::IsVertex { graph, points } => {
            let (g, b) = load_instance(graph)?;
            let [point] = points.as_slice() else {
                return Err("is-vertex needs exactly one --point".into());
            };
            let x = load_point(&g, point)?;
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                is_vertex: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                reason: Option<String>,
            }
            let check = is_vertex(&g, &b, &x);
            if check.is_vertex() {
                Ok(Outcome::Ok(to_json(&Doc {
                    status: "ok",
                    is_vertex: true,
                    reason: None,
                })))
            } else {
                Ok(Outcome::Negative(to_json(&Doc {
                    status: "infeasible",
                    is_vertex: false,
                    reason: check.reason(),
                })))
            }
        }

        Command::IsEdge { graph, points } => {
            let (g, b) = load_instance(graph)?;
            let [first, second] = points.as_slice() else {
                return Err("is-edge needs exactly two --point arguments".into());
            };
            let u = load_point(&g, first)?;
            let w = load_point(&g, second)?;
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                is_edge: bool,
            }
            let adjacent = is_edge_pair(&g, &b, &u, &w).map_err(|e| e.to_string())?;
            if adjacent {
                Ok(Outcome::Ok(to_json(&Doc {
                    status: "ok",
                    is_edge: true,
                })))
            } else {
                Ok(Outcome::Negative(to_json(&Doc {
                    status: "infeasible",
                    is_edge: false,
                })))
            }
        }

        Command::FaceGraphs { graph } => {
            let (g, b) = load_instance(graph)?;
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                count: usize,
                face_graphs: Vec<Vec<String>>,
            }
            let faces = enumerate_face_graphs(&g, &b, caps).map_err(|e| e.to_string())?;
            let face_graphs: Vec<Vec<String>> = faces.iter().map(|h| ids(h.edge_ids())).collect();
            Ok(Outcome::Ok(to_json(&Doc {
                status: "ok",
                count: face_graphs.len(),
                face_graphs,
            })))
        }

        Command::FaceLattice { graph, dot } => {
            let (g, b) = load_instance(graph)?;
            let lattice = if b.is_zero() {
                // P(G,0) = {0}: the trivial lattice {∅, {0}}, reported directly
                // since the graph lattice itself requires nonzero b.
                FaceLattice {
                    faces: vec![
                        FaceDescriptor {
                            graph: bmatch_core::SpanningSubgraph::empty(),
                            dimension: -1,
                            vertex_ids: vec![],
                        },
                        FaceDescriptor {
                            graph: bmatch_core::SpanningSubgraph::empty(),
                            dimension: 0,
                            vertex_ids: vec![0],
                        },
                    ],
                    covers: vec![(0, 1)],
                }
            } else {
                build_face_lattice(&g, &b, caps).map_err(|e| e.to_string())?
            };
            if *dot {
                return Ok(Outcome::Raw(lattice_to_dot(&lattice)));
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                status: &'static str,
                faces: &'a [FaceDescriptor],
                covers: Vec<[usize; 2]>,
            }
            Ok(Outcome::Ok(to_json(&Doc {
                status: "ok",
                faces: &lattice.faces,
                covers: lattice.covers.iter().map(|&(i, j)| [i, j]).collect(),
            })))
        }

        Command::KernelBasis { graph } => {
            let (g, _) = load_instance(graph)?;
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                nullity: usize,
                basis: Vec<Box<RawValue>>,
            }
            let basis = bmatch_core::structure::kernel_basis(&g);
            Ok(Outcome::Ok(to_json(&Doc {
                status: "ok",
                nullity: basis.len(),
                basis: basis.iter().map(|k| point_raw(&g, k)).collect(),
            })))
        }

        Command::SolveFlow { graph, demands } => {
            let (g, b) = load_instance(graph)?;
            let a = match demands {
                Some(path) => parse_demands(&g, &read_file(path)?).map_err(|e| e.to_string())?,
                None => bmatch_core::DemandVector::from(&b),
            };
            #[derive(Serialize)]
            struct ViolationDoc {
                component_index: usize,
                class_u: Vec<String>,
                class_w: Vec<String>,
                sum_u: String,
                sum_w: String,
            }
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                #[serde(skip_serializing_if = "Option::is_none")]
                x: Option<Box<RawValue>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                violation: Option<ViolationDoc>,
            }
            match bmatch_core::flow::solve_flow(&g, &a) {
                Ok(x) => Ok(Outcome::Ok(to_json(&Doc {
                    status: "ok",
                    x: Some(point_raw(&g, &x)),
                    violation: None,
                }))),
                Err(v) => Ok(Outcome::Negative(to_json(&Doc {
                    status: "infeasible",
                    x: None,
                    violation: Some(ViolationDoc {
                        component_index: v.component_index,
                        class_u: v.class_u.iter().map(|id| id.0.clone()).collect(),
                        class_w: v.class_w.iter().map(|id| id.0.clone()).collect(),
                        sum_u: v.sum_u.to_string(),
                        sum_w: v.sum_w.to_string(),
                    }),
                }))),
            }
        }

        Command::Reduce { graph } => {
            let (g, b) = load_instance(graph)?;
            let (reduced, mapping) = reduce_multi_edges(&g);
            let rb = BVector::from_entries(&reduced, b.entries().to_vec()).expect("b carries over");
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                graph: GraphDoc,
                edge_map: OrderedRatMap,
            }
            // Emit the mapping in canonical (original edge) order.
            let edge_map = OrderedRatMap(
                g.edge_ids()
                    .map(|id| (id.0.clone(), mapping[id].0.clone()))
                    .collect(),
            );
            Ok(Outcome::Ok(to_json(&Doc {
                status: "ok",
                graph: GraphDoc::canonical(&reduced, &rb),
                edge_map,
            })))
        }

        Command::Double { graph } => {
            let (g, b) = load_instance(graph)?;
            let (double, db, correspondence) = bipartite_double(&g, &b);
            #[derive(Serialize)]
            struct EdgeImage {
                edge: String,
                images: [String; 2],
                mu: u8,
            }
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                graph: GraphDoc,
                correspondence: Vec<EdgeImage>,
            }
            Ok(Outcome::Ok(to_json(&Doc {
                status: "ok",
                graph: GraphDoc::canonical(&double, &db),
                correspondence: correspondence
                    .entries
                    .iter()
                    .map(|d| EdgeImage {
                        edge: d.original.0.clone(),
                        images: [d.images[0].0.clone(), d.images[1].0.clone()],
                        mu: d.mu,
                    })
                    .collect(),
            })))
        }

        Command::OracleAudit { graph } => {
            let (g, b) = load_instance(graph)?;
            #[derive(Serialize)]
            struct Checks {
                vertices: bool,
                dimension: bool,
                feasibility: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                face_count: Option<bool>,
                #[serde(skip_serializing_if = "Option::is_none")]
                adjacency: Option<bool>,
            }
            #[derive(Serialize)]
            struct Doc {
                status: &'static str,
                agree: bool,
                checks: Checks,
            }
            let ours = enumerate_vertices(&g, &b, caps).map_err(|e| e.to_string())?;
            let ours_coords: Vec<EdgeVector> = ours.iter().map(|v| v.coords.clone()).collect();
            let oracle = oracle_vertices(&g, &b, caps).map_err(|e| e.to_string())?;
            let vertices_ok = ours_coords == oracle;
            let dim_ok = dimension(&g, &b, caps).map_err(|e| e.to_string())?
                == oracle_dimension(&g, &oracle);
            let feasibility_ok = {
                let claimed = matches!(
                    check_nonempty(&g, &b, caps).map_err(|e| e.to_string())?,
                    NonemptinessCertificate::Feasible(_)
                );
                claimed == !oracle.is_empty()
            };
            let (face_ok, adjacency_ok) = if b.is_zero() {
                (None, None) // the graph lattice requires nonzero b
            } else {
                let report = oracle_face_lattice(&g, &b, caps).map_err(|e| e.to_string())?;
                let faces = enumerate_face_graphs(&g, &b, caps).map_err(|e| e.to_string())?;
                let face_ok = faces == report.face_supports;
                let mut adjacency_ok = true;
                for i in 0..ours_coords.len() {
                    for j in (i + 1)..ours_coords.len() {
                        let pair = is_edge_pair(&g, &b, &ours_coords[i], &ours_coords[j])
                            .map_err(|e| e.to_string())?;
                        if pair != report.adjacency[i][j] {
                            adjacency_ok = false;
                        }
                    }
                }
                (Some(face_ok), Some(adjacency_ok))
            };
            let agree = vertices_ok
                && dim_ok
                && feasibility_ok
                && face_ok.unwrap_or(true)
                && adjacency_ok.unwrap_or(true);
            let doc = to_json(&Doc {
                status: if agree { "ok" } else { "infeasible" },
                agree,
                checks: Checks {
                    vertices: vertices_ok,
                    dimension: dim_ok,
                    feasibility: feasibility_ok,
                    face_count: face_ok,
                    adjacency: adjacency_ok,
                },
            });
            if agree {
                Ok(Outcome::Ok(doc))
            } else {
                Ok(Outcome::Negative(doc))
            }
        }
    }
}
