//! Comparing two embedded graphs up to vertex relabelling.

use std::collections::BTreeSet;

use crate::geometry::Point2;
use crate::plane_graph::{Edge, PlaneGraph};

/// Result of matching graph `a` against graph `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphComparison {
    /// `mapping[i]` is the vertex of `b` paired with vertex `i` of `a`, when a
    /// one-to-one pairing within `eps` exists.
    pub mapping: Option<Vec<usize>>,
    /// Largest per-coordinate distance between paired vertices.
    pub max_vertex_error: f64,
    /// Vertices of `a` that could not be paired.
    pub unmatched: Vec<usize>,
    /// Edges of `a` (mapped into `b`'s labels) absent from `b`.
    pub missing_in_b: Vec<Edge>,
    /// Edges of `b` with no counterpart in `a`.
    pub extra_in_b: Vec<Edge>,
}

impl GraphComparison {
    pub fn vertices_match(&self) -> bool {
        self.mapping.is_some()
    }

    pub fn edges_match(&self) -> bool {
        self.mapping.is_some() && self.missing_in_b.is_empty() && self.extra_in_b.is_empty()
    }

    pub fn is_equal(&self) -> bool {
        self.edges_match()
    }
}

/// Maximum bipartite matching between points of `a` and `b` that lie within
/// `eps` of each other in every coordinate. Returns the partial assignment.
pub fn match_vertices(a: &[Point2], b: &[Point2], eps: f64) -> Vec<Option<usize>> {
    let mut by_x: Vec<usize> = (0..b.len()).collect();
    by_x.sort_by(|&i, &j| b[i].x.total_cmp(&b[j].x));
    let candidates: Vec<Vec<usize>> = a
        .iter()
        .map(|p| {
            let start = by_x.partition_point(|&j| b[j].x < p.x - eps);
            let mut c: Vec<usize> = by_x[start..]
                .iter()
                .copied()
                .take_while(|&j| b[j].x <= p.x + eps)
                .filter(|&j| p.max_abs_diff(&b[j]) <= eps)
                .collect();
            c.sort_by(|&x, &y| p.max_abs_diff(&b[x]).total_cmp(&p.max_abs_diff(&b[y])));
            c
        })
        .collect();

    fn augment(
        i: usize,
        candidates: &[Vec<usize>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &j in &candidates[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, candidates, owner, seen)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }

    let mut owner: Vec<Option<usize>> = vec![None; b.len()];
    for i in 0..a.len() {
        let mut seen = vec![false; b.len()];
        augment(i, &candidates, &mut owner, &mut seen);
    }
    let mut assignment = vec![None; a.len()];
    for (j, i) in owner.iter().enumerate() {
        if let Some(i) = i {
            assignment[*i] = Some(j);
        }
    }
    assignment
}

pub fn compare_graphs(a: &PlaneGraph, b: &PlaneGraph, eps: f64) -> GraphComparison {
    let assignment = match_vertices(a.vertices(), b.vertices(), eps);
    let unmatched: Vec<usize> = (0..a.vertex_count())
        .filter(|&i| assignment[i].is_none())
        .collect();
    let max_vertex_error = assignment
        .iter()
        .enumerate()
        .filter_map(|(i, j)| j.map(|j| a.vertices()[i].max_abs_diff(&b.vertices()[j])))
        .fold(0.0, f64::max);
    let complete = unmatched.is_empty() && a.vertex_count() == b.vertex_count();
    if !complete {
        return GraphComparison {
            mapping: None,
            max_vertex_error,
            unmatched,
            missing_in_b: Vec::new(),
            extra_in_b: Vec::new(),
        };
    }
    let mapping: Vec<usize> = assignment
        .into_iter()
        .map(|j| j.expect("complete"))
        .collect();
    let mapped: BTreeSet<Edge> = a
        .edges()
        .iter()
        .map(|&(i, j)| {
            let (x, y) = (mapping[i], mapping[j]);
            (x.min(y), x.max(y))
        })
        .collect();
    let theirs = b.edge_set();
    GraphComparison {
        mapping: Some(mapping),
        max_vertex_error,
        unmatched,
        missing_in_b: mapped.difference(&theirs).copied().collect(),
        extra_in_b: theirs.difference(&mapped).copied().collect(),
    }
}
