//! Zero- and one-dimensional persistence of the lower-star height filtration
//! of a plane graph, and the query-counting oracle that serves it.
//!
//! Simplices enter in the order (height, dimension, tie-break): a vertex
//! precedes every edge arriving at its height, and edges sharing an upper
//! endpoint are added in ascending order of their lower endpoint. Each edge
//! either merges two components (a dim-0 death at its height, the younger
//! component dying) or closes a cycle (a dim-1 birth that never dies).
//! A vertex whose first edge merges it into an older component yields a
//! diagonal pair `(h, h)`; those pairs are kept.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{height, Direction, DEFAULT_TOLERANCE};
use crate::plane_graph::PlaneGraph;
use crate::union_find::ElderUnionFind;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub birth: f64,
    /// `f64::INFINITY` for classes that never die.
    pub death: f64,
}

impl PersistencePair {
    pub fn new(birth: f64, death: f64) -> Self {
        debug_assert!(birth <= death);
        PersistencePair { birth, death }
    }

    pub fn essential(birth: f64) -> Self {
        PersistencePair {
            birth,
            death: f64::INFINITY,
        }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn is_diagonal(&self) -> bool {
        self.birth == self.death
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

fn sort_pairs(pairs: &mut [PersistencePair]) {
    pairs.sort_by(|a, b| {
        a.birth
            .total_cmp(&b.birth)
            .then(a.death.total_cmp(&b.death))
    });
}

/// Directional diagrams in dimensions 0 and 1, pairs sorted by
/// `(birth, death)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagram {
    pub direction: Direction,
    pub dim0: Vec<PersistencePair>,
    pub dim1: Vec<PersistencePair>,
}

impl Diagram {
    pub fn new(
        direction: Direction,
        mut dim0: Vec<PersistencePair>,
        mut dim1: Vec<PersistencePair>,
    ) -> Self {
        sort_pairs(&mut dim0);
        sort_pairs(&mut dim1);
        Diagram {
            direction,
            dim0,
            dim1,
        }
    }

    pub fn births0(&self) -> impl Iterator<Item = f64> + '_ {
        self.dim0.iter().map(|p| p.birth)
    }

    pub fn essential0(&self) -> usize {
        self.dim0.iter().filter(|p| p.is_essential()).count()
    }

    pub fn finite_deaths0(&self) -> usize {
        self.dim0.len() - self.essential0()
    }

    /// Same multisets of pairs, coordinates compared within `tol`.
    pub fn approx_eq(&self, other: &Diagram, tol: f64) -> bool {
        fn same(a: &[PersistencePair], b: &[PersistencePair], tol: f64) -> bool {
            let close = |x: f64, y: f64| x == y || (x - y).abs() <= tol;
            a.len() == b.len()
                && a.iter()
                    .zip(b)
                    .all(|(p, q)| close(p.birth, q.birth) && close(p.death, q.death))
        }
        same(&self.dim0, &other.dim0, tol) && same(&self.dim1, &other.dim1, tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson::from(self)).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DiagramJson = serde_json::from_str(text)?;
        Diagram::try_from(raw)
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    direction: [f64; 2],
    dim0: Vec<(f64, Option<f64>)>,
    dim1: Vec<(f64, Option<f64>)>,
}

fn pairs_to_json(pairs: &[PersistencePair]) -> Vec<(f64, Option<f64>)> {
    pairs
        .iter()
        .map(|p| (p.birth, (!p.is_essential()).then_some(p.death)))
        .collect()
}

fn pairs_from_json(pairs: Vec<(f64, Option<f64>)>) -> Vec<PersistencePair> {
    pairs
        .into_iter()
        .map(|(birth, death)| PersistencePair {
            birth,
            death: death.unwrap_or(f64::INFINITY),
        })
        .collect()
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            direction: d.direction.into(),
            dim0: pairs_to_json(&d.dim0),
            dim1: pairs_to_json(&d.dim1),
        }
    }
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = Error;

    fn try_from(raw: DiagramJson) -> Result<Self> {
        Ok(Diagram::new(
            Direction::try_from(raw.direction)?,
            pairs_from_json(raw.dim0),
            pairs_from_json(raw.dim1),
        ))
    }
}

/// Vertex indices sorted by height along `s`; fails if two heights are within
/// `tol` of each other.
pub(crate) fn height_order(
    vertices: &[crate::geometry::Point2],
    s: Direction,
    tol: f64,
) -> Result<(Vec<usize>, Vec<f64>)> {
    let heights: Vec<f64> = vertices.iter().map(|&p| height(p, s)).collect();
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| heights[a].total_cmp(&heights[b]).then(a.cmp(&b)));
    for w in order.windows(2) {
        if heights[w[1]] - heights[w[0]] <= tol {
            return Err(Error::DegenerateDirection(
                w[0].min(w[1]),
                w[0].max(w[1]),
                s.dx(),
                s.dy(),
            ));
        }
    }
    Ok((order, heights))
}

/// Persistence diagrams of the lower-star filtration of `g` along `s`.
pub fn lower_star_diagrams(g: &PlaneGraph, s: Direction, tol: f64) -> Result<Diagram> {
    let s = s.normalized();
    let n = g.vertex_count();
    let (order, heights) = height_order(g.vertices(), s, tol)?;
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }

    // Edges keyed by the rank of their upper endpoint.
    let mut lower_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (index, &(i, j)) in g.edges().iter().enumerate() {
        if i == j {
            continue;
        }
        let (lo, hi) = if rank[i] < rank[j] { (i, j) } else { (j, i) };
        lower_edges[rank[hi]].push((rank[lo], index));
    }

    let mut uf = ElderUnionFind::new(n);
    let mut dim0 = Vec::with_capacity(n);
    let mut dim1 = Vec::new();
    for (r, edges) in lower_edges.iter_mut().enumerate() {
        let h = heights[order[r]];
        edges.sort_unstable();
        for &(lower, _) in edges.iter() {
            match uf.union(r, lower) {
                Some((_, younger)) => {
                    dim0.push(PersistencePair::new(heights[order[younger]], h));
                }
                None => dim1.push(PersistencePair::essential(h)),
            }
        }
    }
    for root in uf.roots() {
        dim0.push(PersistencePair::essential(heights[order[root]]));
    }
    Ok(Diagram::new(s, dim0, dim1))
}

/// The only channel from reconstruction code to the hidden graph: a direction
/// goes in, its diagrams come out, and every call is logged.
#[derive(Debug)]
pub struct DiagramOracle {
    graph: PlaneGraph,
    tolerance: f64,
    log: Mutex<Vec<Direction>>,
    cache: Option<Mutex<HashMap<(u64, u64), Diagram>>>,
}

impl DiagramOracle {
    pub fn new(graph: PlaneGraph) -> Self {
        DiagramOracle {
            graph,
            tolerance: DEFAULT_TOLERANCE,
            log: Mutex::new(Vec::new()),
            cache: None,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// Memoize diagrams by exact direction. Queries are still counted.
    pub fn with_cache(mut self, enabled: bool) -> Self {
        self.cache = enabled.then(|| Mutex::new(HashMap::new()));
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn query(&self, s: Direction) -> Result<Diagram> {
        let s = s.normalized();
        self.log.lock().expect("oracle log poisoned").push(s);
        let Some(cache) = &self.cache else {
            return lower_star_diagrams(&self.graph, s, self.tolerance);
        };
        let key = (s.dx().to_bits(), s.dy().to_bits());
        if let Some(d) = cache.lock().expect("oracle cache poisoned").get(&key) {
            return Ok(d.clone());
        }
        let d = lower_star_diagrams(&self.graph, s, self.tolerance)?;
        cache
            .lock()
            .expect("oracle cache poisoned")
            .insert(key, d.clone());
        Ok(d)
    }

    pub fn query_count(&self) -> usize {
        self.log.lock().expect("oracle log poisoned").len()
    }

    pub fn query_log(&self) -> Vec<Direction> {
        self.log.lock().expect("oracle log poisoned").clone()
    }
}

/// Free-function form of [`DiagramOracle::query`].
pub fn oracle_query(o: &DiagramOracle, s: Direction) -> Result<Diagram> {
    o.query(s)
}
