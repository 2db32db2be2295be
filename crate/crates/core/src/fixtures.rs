//! Small named instances used throughout the tests, docs and examples.
//!
//! Vertex ids are `v1..vn` and edge ids `e1..em` in the listed order.

use crate::graph::{BVector, MultiGraph};
use crate::rat::Rat;

/// One vertex with a single loop.
pub fn loop1() -> MultiGraph {
    MultiGraph::build(&["v1"], &[("e1", "v1", "v1")]).unwrap()
}

/// Path v1 - e1 - v2 - e2 - v3.
pub fn p3() -> MultiGraph {
    MultiGraph::build(
        &["v1", "v2", "v3"],
        &[("e1", "v1", "v2"), ("e2", "v2", "v3")],
    )
    .unwrap()
}

/// Triangle.
pub fn k3() -> MultiGraph {
    MultiGraph::build(
        &["v1", "v2", "v3"],
        &[("e1", "v1", "v2"), ("e2", "v1", "v3"), ("e3", "v2", "v3")],
    )
    .unwrap()
}

/// 4-cycle.
pub fn c4() -> MultiGraph {
    MultiGraph::build(
        &["v1", "v2", "v3", "v4"],
        &[
            ("e1", "v1", "v2"),
            ("e2", "v2", "v3"),
            ("e3", "v3", "v4"),
            ("e4", "v4", "v1"),
        ],
    )
    .unwrap()
}

/// Two vertices joined by a pair of parallel edges.
pub fn twin() -> MultiGraph {
    MultiGraph::build(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v1", "v2")]).unwrap()
}

/// Two disjoint TWIN components.
pub fn twin2() -> MultiGraph {
    MultiGraph::build(
        &["v1", "v2", "v3", "v4"],
        &[
            ("e1", "v1", "v2"),
            ("e2", "v1", "v2"),
            ("e3", "v3", "v4"),
            ("e4", "v3", "v4"),
        ],
    )
    .unwrap()
}

/// Triangle with a pendant edge at v1.
pub fn pan() -> MultiGraph {
    MultiGraph::build(
        &["v1", "v2", "v3", "v4"],
        &[
            ("e1", "v1", "v2"),
            ("e2", "v1", "v3"),
            ("e3", "v2", "v3"),
            ("e4", "v1", "v4"),
        ],
    )
    .unwrap()
}

/// Triangle with its v1-v2 edge doubled.
pub fn k3d() -> MultiGraph {
    MultiGraph::build(
        &["v1", "v2", "v3"],
        &[
            ("e1", "v1", "v2"),
            ("e1'", "v1", "v2"),
            ("e2", "v1", "v3"),
            ("e3", "v2", "v3"),
        ],
    )
    .unwrap()
}

/// Two triangles sharing v3.
pub fn bowtie() -> MultiGraph {
    MultiGraph::build(
        &["v1", "v2", "v3", "v4", "v5"],
        &[
            ("e1", "v1", "v3"),
            ("e2", "v2", "v3"),
            ("e3", "v1", "v2"),
            ("e4", "v3", "v4"),
            ("e5", "v3", "v5"),
            ("e6", "v4", "v5"),
        ],
    )
    .unwrap()
}

pub fn all() -> Vec<MultiGraph> {
    vec![
        loop1(),
        p3(),
        k3(),
        c4(),
        twin(),
        twin2(),
        pan(),
        k3d(),
        bowtie(),
    ]
}

/// All-ones b.
pub fn b_ones(g: &MultiGraph) -> BVector {
    BVector::constant(g, Rat::one()).unwrap()
}

/// b from integer entries in vertex order.
pub fn b_of(g: &MultiGraph, entries: &[i64]) -> BVector {
    BVector::from_entries(g, entries.iter().map(|&n| Rat::from_int(n)).collect()).unwrap()
}
