//! Straight-line plane graphs: the hidden ground truth behind the oracle.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{height, orient, Direction, Point2};
use crate::union_find::ElderUnionFind;

pub type Edge = (usize, usize);

/// Vertices with straight-line edges given as 0-based index pairs `(i, j)`,
/// `i < j`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PlaneGraph {
    vertices: Vec<Point2>,
    edges: Vec<Edge>,
}

/// A broken general-position or embedding rule.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonFinite(usize),
    SharedX(usize, usize),
    SharedY(usize, usize),
    Collinear(usize, usize, usize),
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    Crossing(Edge, Edge),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonFinite(i) => write!(f, "vertex {i} has a non-finite coordinate"),
            Violation::SharedX(i, j) => write!(f, "vertices {i} and {j} share an x-coordinate"),
            Violation::SharedY(i, j) => write!(f, "vertices {i} and {j} share a y-coordinate"),
            Violation::Collinear(i, j, k) => write!(f, "vertices {i}, {j}, {k} are collinear"),
            Violation::SelfLoop(i) => write!(f, "self-loop at vertex {i}"),
            Violation::DuplicateEdge(i, j) => write!(f, "duplicate edge ({i}, {j})"),
            Violation::Crossing(a, b) => {
                write!(f, "edges ({}, {}) and ({}, {}) cross", a.0, a.1, b.0, b.1)
            }
        }
    }
}

impl PlaneGraph {
    /// Builds a graph, ordering every edge as `(min, max)`. Only index bounds
    /// are checked here; geometric rules are reported by [`validate`].
    pub fn new(vertices: Vec<Point2>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let n = vertices.len();
        let edges = edges
            .into_iter()
            .map(|(i, j)| {
                for index in [i, j] {
                    if index >= n {
                        return Err(Error::IndexOutOfRange { index, len: n });
                    }
                }
                Ok((i.min(j), i.max(j)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PlaneGraph { vertices, edges })
    }

    pub fn edgeless(vertices: Vec<Point2>) -> Self {
        PlaneGraph {
            vertices,
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| i == v || j == v)
            .count()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PlaneGraph = serde_json::from_str(text)?;
        PlaneGraph::new(raw.vertices, raw.edges)
    }

    /// Compact JSON, numbers in shortest round-trip form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }
}

fn validate_x_or_y(
    vertices: &[Point2],
    coord: impl Fn(&Point2) -> f64,
    tol: f64,
    make: impl Fn(usize, usize) -> Violation,
    out: &mut Vec<Violation>,
) {
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| coord(&vertices[a]).total_cmp(&coord(&vertices[b])));
    for w in order.windows(2) {
        if (coord(&vertices[w[1]]) - coord(&vertices[w[0]])).abs() <= tol {
            out.push(make(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
}

/// Smallest altitude of the triangle `abc`; zero when two points coincide.
fn min_altitude(a: Point2, b: Point2, c: Point2) -> f64 {
    let longest = a.distance(&b).max(b.distance(&c)).max(c.distance(&a));
    if longest == 0.0 {
        return 0.0;
    }
    orient(a, b, c).abs() / longest
}

fn on_segment(p: Point2, a: Point2, b: Point2, tol: f64) -> bool {
    let len = a.distance(&b).max(f64::MIN_POSITIVE);
    (orient(a, b, p) / len).abs() <= tol
        && p.x >= a.x.min(b.x) - tol
        && p.x <= a.x.max(b.x) + tol
        && p.y >= a.y.min(b.y) - tol
        && p.y <= a.y.max(b.y) + tol
}

/// Whether closed segments `ab` and `cd` meet (within `tol`).
pub fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2, tol: f64) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    on_segment(c, a, b, tol)
        || on_segment(d, a, b, tol)
        || on_segment(a, c, d, tol)
        || on_segment(b, c, d, tol)
}

/// Every broken invariant of `g`; empty iff `g` is a general-position plane
/// graph.
pub fn validate(g: &PlaneGraph, tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    let v = &g.vertices;
    for (i, p) in v.iter().enumerate() {
        if !p.is_finite() {
            out.push(Violation::NonFinite(i));
        }
    }
    if !out.is_empty() {
        return out;
    }
    validate_x_or_y(v, |p| p.x, tol, Violation::SharedX, &mut out);
    validate_x_or_y(v, |p| p.y, tol, Violation::SharedY, &mut out);
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            for k in j + 1..v.len() {
                if min_altitude(v[i], v[j], v[k]) <= tol {
                    out.push(Violation::Collinear(i, j, k));
                }
            }
        }
    }

    let mut seen = BTreeSet::new();
    for &(i, j) in &g.edges {
        if i == j {
            out.push(Violation::SelfLoop(i));
        } else if !seen.insert((i, j)) {
            out.push(Violation::DuplicateEdge(i, j));
        }
    }
    let proper: Vec<Edge> = seen.into_iter().collect();
    for (a, &e) in proper.iter().enumerate() {
        for &f in &proper[a + 1..] {
            let shares = e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1;
            if !shares && segments_intersect(v[e.0], v[e.1], v[f.0], v[f.1], tol) {
                out.push(Violation::Crossing(e, f));
            }
        }
    }
    out
}

/// Number of edges at `v` whose other endpoint is at or below `v` in
/// direction `s` (equal heights count).
pub fn indegree_direct(g: &PlaneGraph, v: usize, s: Direction) -> Result<usize> {
    let n = g.vertex_count();
    if v >= n {
        return Err(Error::IndexOutOfRange { index: v, len: n });
    }
    let hv = height(g.vertices[v], s);
    Ok(g.edges
        .iter()
        .filter_map(|&(i, j)| match (i == v, j == v) {
            (true, false) => Some(j),
            (false, true) => Some(i),
            _ => None,
        })
        .filter(|&u| height(g.vertices[u], s) <= hv)
        .count())
}

pub fn connected_components(g: &PlaneGraph) -> usize {
    let mut uf = ElderUnionFind::new(g.vertex_count());
    for &(i, j) in &g.edges {
        uf.union(i, j);
    }
    uf.roots().len()
}

/// Knobs for [`random_plane_graph_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorOptions {
    /// Minimum gap between any two x (or y) coordinates, and minimum altitude
    /// of any vertex triangle.
    pub margin: f64,
    /// Total rejected samples before giving up.
    pub max_attempts: usize,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        GeneratorOptions {
            margin: 1e-3,
            max_attempts: 10_000,
        }
    }
}

/// Random general-position graph on `n` points of the unit square whose edges
/// are a uniform `density` fraction of the Delaunay triangulation.
pub fn random_plane_graph(n: usize, density: f64, seed: u64) -> Result<PlaneGraph> {
    random_plane_graph_with(n, density, seed, &GeneratorOptions::default())
}

pub fn random_plane_graph_with(
    n: usize,
    density: f64,
    seed: u64,
    opts: &GeneratorOptions,
) -> Result<PlaneGraph> {
    if n == 0 {
        return Err(Error::InvalidGraph(
            "at least one vertex is required".into(),
        ));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidGraph(format!(
            "density {density} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices = sample_general_position(n, &mut rng, opts)?;

    let mut edges = delaunay_edges(&vertices);
    let keep = (density * edges.len() as f64).round() as usize;
    edges.shuffle(&mut rng);
    edges.truncate(keep);
    edges.sort_unstable();
    PlaneGraph::new(vertices, edges)
}

fn sample_general_position(
    n: usize,
    rng: &mut ChaCha8Rng,
    opts: &GeneratorOptions,
) -> Result<Vec<Point2>> {
    let margin = opts.margin;
    let mut points: Vec<Point2> = Vec::with_capacity(n);
    let mut rejected = 0;
    while points.len() < n {
        let c = Point2::new(rng.random::<f64>(), rng.random::<f64>());
        let fits = points
            .iter()
            .all(|p| (p.x - c.x).abs() >= margin && (p.y - c.y).abs() >= margin)
            && points.iter().enumerate().all(|(i, &a)| {
                points[i + 1..]
                    .iter()
                    .all(|&b| min_altitude(a, b, c) >= margin)
            });
        if fits {
            points.push(c);
        } else {
            rejected += 1;
            if rejected >= opts.max_attempts {
                return Err(Error::GenerationFailed(rejected));
            }
        }
    }
    Ok(points)
}

/// Sorted edge set of the Delaunay triangulation of `points`.
pub fn delaunay_edges(points: &[Point2]) -> Vec<Edge> {
    match points.len() {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let pts: Vec<delaunator::Point> = points
        .iter()
        .map(|p| delaunator::Point { x: p.x, y: p.y })
        .collect();
    let tri = delaunator::triangulate(&pts);
    let mut edges = BTreeSet::new();
    for t in tri.triangles.chunks_exact(3) {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    edges.into_iter().collect()
}
