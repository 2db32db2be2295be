//! Solving `I_G x = a` for arbitrary rational vertex demands.
//!
//! A solution exists iff every bipartite component is balanced (equal demand sums
//! on the two classes), and it is unique iff additionally every component is
//! acyclic or odd-unicyclic.  In the unique case each entry has the closed form
//!
//! ```text
//! x_e = k_e · Σ_{v in the component of t_e in G∖e} (-1)^{d(v, t_e)} a_v
//! ```
//!
//! with `k_e = 1/2` on nonloop cycle edges and `1` otherwise, and `t_e` the
//! endpoint of `e` furthest from the component's cycle when `e` hangs off one,
//! or an arbitrary endpoint otherwise (the sum is independent of that choice;
//! this module picks the lowest-indexed endpoint and asserts the independence).
//! Every solver output is verified by substitution before being returned.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{DemandVector, EdgeVector, MultiGraph, VertexId};
use crate::rat::Rat;
use crate::structure::{analyze_components, canonical_core, ComponentReport};

/// A bipartite component whose class sums disagree; `I_G x = a` is then unsolvable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceViolation {
    pub component_index: usize,
    pub class_u: Vec<VertexId>,
    pub class_w: Vec<VertexId>,
    pub sum_u: Rat,
    pub sum_w: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error(
        "no solution: bipartite component {} has class sums {} and {}",
        .0.component_index, .0.sum_u, .0.sum_w
    )]
    Unbalanced(BalanceViolation),
    #[error("solution is not unique: a component has an even cycle or several cycles")]
    NonzeroNullity,
}

/// Checks Σ_{U_C} a = Σ_{W_C} a on every bipartite component; returns the first
/// violating component in canonical order.
pub fn flow_balance_check(g: &MultiGraph, a: &DemandVector) -> Result<(), BalanceViolation> {
    let report = analyze_components(g);
    balance_check_with(g, a, &report)
}

fn balance_check_with(
    g: &MultiGraph,
    a: &DemandVector,
    report: &ComponentReport,
) -> Result<(), BalanceViolation> {
    for (index, comp) in report.components.iter().enumerate() {
        let Some((class_u, class_w)) = &comp.classes else {
            continue;
        };
        let sum_u: Rat = class_u.iter().map(|&v| a.get(v)).sum();
        let sum_w: Rat = class_w.iter().map(|&v| a.get(v)).sum();
        if sum_u != sum_w {
            return Err(BalanceViolation {
                component_index: index,
                class_u: class_u.iter().map(|&v| g.vertex_id(v).clone()).collect(),
                class_w: class_w.iter().map(|&v| g.vertex_id(v).clone()).collect(),
                sum_u,
                sum_w,
            });
        }
    }
    Ok(())
}

/// BFS depths from `start` using only `allowed` edges; `None` for unreached.
fn bfs_depths(g: &MultiGraph, allowed: &[bool], start: usize) -> Vec<Option<usize>> {
    let mut depth = vec![None; g.vertex_count()];
    depth[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &e in g.incident_edges(v) {
            if !allowed[e] {
                continue;
            }
            let u = g.other_end(e, v);
            if depth[u].is_none() {
                depth[u] = Some(depth[v].unwrap() + 1);
                queue.push_back(u);
            }
        }
    }
    depth
}

fn signed_sum(g: &MultiGraph, a: &DemandVector, allowed: &[bool], start: usize) -> Rat {
    let depths = bfs_depths(g, allowed, start);
    let mut total = Rat::zero();
    for (v, d) in depths.iter().enumerate() {
        let Some(d) = d else { continue };
        if d % 2 == 0 {
            total += a.get(v);
        } else {
            total -= a.get(v);
        }
    }
    total
}

/// The unique solution of `I_G x = a`, when it exists.  Requires every component
/// to be acyclic or odd-unicyclic and every bipartite component to be balanced.
pub fn unique_solve(g: &MultiGraph, a: &DemandVector) -> Result<EdgeVector, FlowError> {
    let report = analyze_components(g);
    for comp in &report.components {
        let unique = comp.excess == -1 || (comp.excess == 0 && !comp.bipartite);
        if !unique {
            return Err(FlowError::NonzeroNullity);
        }
    }
    balance_check_with(g, a, &report).map_err(FlowError::Unbalanced)?;

    // Cycle edge set per component (empty for trees); stripping pendant edges
    // from an excess-0 component leaves exactly its cycle.
    let cycles: Vec<Vec<usize>> = report
        .components
        .iter()
        .map(|c| {
            if c.excess == 0 {
                crate::structure::two_core(g, &c.edges)
            } else {
                Vec::new()
            }
        })
        .collect();

    let mut entries = vec![Rat::zero(); g.edge_count()];
    for e in 0..g.edge_count() {
        let comp_index = report.component_of_edge(g, e);
        let comp = &report.components[comp_index];
        let cycle = &cycles[comp_index];
        let (u, w) = g.edge_ends(e);

        let mut allowed = vec![false; g.edge_count()];
        for &ce in &comp.edges {
            allowed[ce] = true;
        }
        allowed[e] = false;

        let on_cycle = cycle.contains(&e);
        let half = Rat::new(1, 2);
        let (k, value) = if on_cycle && !g.is_loop(e) {
            // Nonloop cycle edge: G∖e keeps the component connected; either
            // endpoint gives the same sum.
            let value = signed_sum(g, a, &allowed, u.min(w));
            debug_assert_eq!(
                value,
                signed_sum(g, a, &allowed, u.max(w)),
                "cycle-edge sum must not depend on the endpoint choice"
            );
            (half, value)
        } else if on_cycle {
            // Loop: both endpoints coincide.
            (Rat::one(), signed_sum(g, a, &allowed, u))
        } else if !cycle.is_empty() {
            // Bridge in a unicyclic component: take the endpoint whose side of
            // G∖e avoids the cycle.
            let depths_u = bfs_depths(g, &allowed, u);
            let u_side_has_cycle = cycle.iter().any(|&ce| {
                let (cu, cw) = g.edge_ends(ce);
                depths_u[cu].is_some() || depths_u[cw].is_some()
            });
            let t = if u_side_has_cycle { w } else { u };
            (Rat::one(), signed_sum(g, a, &allowed, t))
        } else {
            // Tree edge in an acyclic component: either endpoint works thanks to
            // the balance condition.
            let value = signed_sum(g, a, &allowed, u.min(w));
            debug_assert_eq!(
                value,
                signed_sum(g, a, &allowed, u.max(w)),
                "tree-edge sum must not depend on the endpoint choice"
            );
            (Rat::one(), value)
        };
        entries[e] = &k * &value;
    }

    let x = EdgeVector::from_entries(g, entries);
    for v in 0..g.vertex_count() {
        assert_eq!(
            &x.vertex_sum(g, v),
            a.get(v),
            "unique_solve output failed substitution at vertex {}",
            g.vertex_id(v)
        );
    }
    Ok(x)
}

/// Some solution of `I_G x = a`, supported on the canonical spanning core and zero
/// elsewhere.  Exists iff the balance condition holds.
pub fn solve_flow(g: &MultiGraph, a: &DemandVector) -> Result<EdgeVector, BalanceViolation> {
    let report = analyze_components(g);
    balance_check_with(g, a, &report)?;
    let decomposition = canonical_core(g, &report);
    let core_graph = decomposition.core_graph(g);
    let solved = unique_solve(
        &core_graph,
        &DemandVector::from_entries(&core_graph, a.entries().to_vec()),
    )
    .expect("the spanning core is acyclic or odd-unicyclic per component and balanced");
    let mut entries = vec![Rat::zero(); g.edge_count()];
    for (pos, &e) in decomposition.core_edges.iter().enumerate() {
        entries[e] = solved.get(pos).clone();
    }
    let x = EdgeVector::from_entries(g, entries);
    debug_assert!((0..g.vertex_count()).all(|v| &x.vertex_sum(g, v) == a.get(v)));
    Ok(x)
}
