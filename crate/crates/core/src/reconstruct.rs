//! Vertices, then edges: the whole graph from the oracle alone.

use crate::edge_recon::{reconstruct_edges_with, Execution};
use crate::error::Result;
use crate::persistence::DiagramOracle;
use crate::plane_graph::PlaneGraph;
use crate::vertex_recon::reconstruct_vertices;

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    /// Vertices in ascending y, edges indexing them.
    pub graph: PlaneGraph,
    pub vertex_queries: usize,
    pub edge_queries: usize,
    pub retries: usize,
    pub theta: f64,
}

pub fn reconstruct_graph(o: &DiagramOracle, exec: Execution) -> Result<Reconstruction> {
    let before = o.query_count();
    let vertices = reconstruct_vertices(o)?;
    let vertex_queries = o.query_count() - before;
    let edges = reconstruct_edges_with(o, &vertices, exec)?;
    let edge_queries = o.query_count() - before - vertex_queries;
    Ok(Reconstruction {
        graph: PlaneGraph::new(vertices, edges.edges)?,
        vertex_queries,
        edge_queries,
        retries: edges.retries,
        theta: edges.theta,
    })
}
