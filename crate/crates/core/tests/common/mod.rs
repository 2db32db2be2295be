//! Shared machinery for the integration and acceptance suites: exhaustive
//! enumeration of small multigraphs and deterministic b sampling.
#![allow(dead_code)] // not every test target uses every helper

use bmatch_core::{BVector, MultiGraph, Rat};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every multigraph with 1..=max_vertices vertices and 0..=max_edges edges, up to
/// edge labeling: edges are multisets over the unordered vertex-pair slots
/// (loops included), with ids assigned canonically in slot order.
pub fn small_multigraphs(max_vertices: usize, max_edges: usize) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        for m in 0..=max_edges {
            let mut chosen = Vec::with_capacity(m);
            multisets(&slots, 0, m, &mut chosen, &mut |edges| {
                out.push(build(n, edges));
            });
        }
    }
    out
}

fn multisets(
    slots: &[(usize, usize)],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)]),
) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    for s in start..slots.len() {
        chosen.push(slots[s]);
        multisets(slots, s, remaining - 1, chosen, emit);
        chosen.pop();
    }
}

fn build(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let vertex_refs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let ids: Vec<String> = (1..=edges.len()).map(|i| format!("e{i}")).collect();
    let edge_specs: Vec<(&str, &str, &str)> = edges
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| (ids[k].as_str(), vertex_refs[i], vertex_refs[j]))
        .collect();
    MultiGraph::build(&vertex_refs, &edge_specs).expect("generated graphs are valid")
}

/// One deterministic b per graph, entries drawn from {0, 1/2, 1, 2}.
pub fn sampled_instances(
    max_vertices: usize,
    max_edges: usize,
    seed: u64,
) -> Vec<(MultiGraph, BVector)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = [Rat::zero(), Rat::new(1, 2), Rat::one(), Rat::from_int(2)];
    small_multigraphs(max_vertices, max_edges)
        .into_iter()
        .map(|g| {
            let entries: Vec<Rat> = (0..g.vertex_count())
                .map(|_| values[rng.gen_range(0..values.len())].clone())
                .collect();
            let b = BVector::from_entries(&g, entries).expect("sampled b is nonnegative");
            (g, b)
        })
        .collect()
}
