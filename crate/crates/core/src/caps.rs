//! Size guards for the exponential decision procedures and enumerations.
//!
//! Exceeding a cap is a desk-scale limit, never a mathematical verdict: callers get
//! a distinct error naming the cap, so an over-budget instance is distinguishable
//! from an infeasible one.

use crate::error::Error;
use crate::graph::MultiGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for Caps {
    /// The defaults documented for the CLI and the feasibility guard.
    fn default() -> Self {
        Caps {
            max_vertices: 16,
            max_edges: 20,
        }
    }
}

impl Caps {
    pub fn new(max_vertices: usize, max_edges: usize) -> Self {
        Caps {
            max_vertices,
            max_edges,
        }
    }

    /// Tighter vertex bound recommended when the full vertex/face enumeration is
    /// driven as a library call without explicit limits.
    pub fn enumeration() -> Self {
        Caps {
            max_vertices: 12,
            max_edges: 20,
        }
    }

    pub fn check_vertices(&self, g: &MultiGraph) -> Result<(), Error> {
        if g.vertex_count() > self.max_vertices {
            return Err(Error::VertexCapExceeded {
                actual: g.vertex_count(),
                limit: self.max_vertices,
            });
        }
        Ok(())
    }

    pub fn check_edges(&self, g: &MultiGraph) -> Result<(), Error> {
        let limit = self.max_edges.min(64);
        if g.edge_count() > limit {
            return Err(Error::EdgeCapExceeded {
                actual: g.edge_count(),
                limit,
            });
        }
        Ok(())
    }

    pub fn check(&self, g: &MultiGraph) -> Result<(), Error> {
        self.check_vertices(g)?;
        self.check_edges(g)
    }
}
