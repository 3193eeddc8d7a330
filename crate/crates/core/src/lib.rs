//! Directional persistence diagrams of plane graphs, and reconstruction of
//! the embedded graph from them.
//!
//! The hidden graph is only ever reached through a [`DiagramOracle`]: three
//! queries recover the vertex coordinates ([`reconstruct_vertices`]) and two
//! queries per vertex pair recover the edges ([`reconstruct_edges`]).

pub mod compare;
pub mod edge_recon;
pub mod error;
pub mod geometry;
pub mod persistence;
pub mod plane_graph;
pub mod reconstruct;
pub mod svg;
pub mod union_find;
pub mod vertex_recon;

pub use edge_recon::{
    edge_exists, enumerate_compatible_graphs, global_bowtie_width, indegree_from_diagrams,
    pair_directions, reconstruct_edges, reconstruct_edges_with, BowTie, EdgeReconstruction,
    Execution,
};
pub use error::{Error, Result};
pub use geometry::{
    filtration_line, height, intersect_lines, line_angle_mod_pi, rotate, tolerance_from_env,
    Direction, Line, Point2, DEFAULT_TOLERANCE,
};
pub use persistence::{lower_star_diagrams, oracle_query, Diagram, DiagramOracle, PersistencePair};
pub use plane_graph::{
    connected_components, indegree_direct, random_plane_graph, validate, Edge, PlaneGraph,
    Violation,
};
pub use reconstruct::{reconstruct_graph, Reconstruction};
pub use vertex_recon::{
    lines_from_dgm0, locate_point, match_and_intersect, reconstruct_vertices, third_direction,
    triple_intersections, LineFamily,
};
