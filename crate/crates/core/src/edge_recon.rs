//! Edge recovery by bow-tie indegree differencing.
//!
//! For a candidate pair `(v, v')`, two directions `s ± θ` around the normal
//! of `v' - v` define a bow tie at `v` holding `v'` and no other vertex. The
//! number of edges below `v` can be read off each direction's diagrams (finite
//! dim-0 deaths plus dim-1 births at the height of `v`), and the two counts
//! differ by exactly one iff `(v, v')` is an edge.

use std::f64::consts::{FRAC_PI_8, PI};

use crate::error::{Error, Result};
use crate::geometry::{height, line_angle_mod_pi, Direction, Point2};
use crate::persistence::{height_order, lower_star_diagrams, Diagram, DiagramOracle};
use crate::plane_graph::{Edge, PlaneGraph};
use crate::union_find::ElderUnionFind;

/// Shrink factor applied to the bow-tie width on a degenerate direction.
pub const SHRINK_FACTOR: f64 = 0.9;

/// Maximum number of width shrinks per pair.
pub const MAX_SHRINKS: usize = 64;

/// Largest vertex count accepted by [`enumerate_compatible_graphs`].
pub const ENUMERATION_LIMIT: usize = 12;

/// Sequential or rayon-backed probing of vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Symmetric difference of the half-planes below `center` in `s1` and `s2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BowTie {
    pub center: Point2,
    pub s1: Direction,
    pub s2: Direction,
    pub half_width: f64,
}

impl BowTie {
    /// Strictly inside: the point is below the center in exactly one of the
    /// two directions, by more than `tol` on both sides.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        let a = height(p, self.s1) - height(self.center, self.s1);
        let b = height(p, self.s2) - height(self.center, self.s2);
        (a < -tol && b > tol) || (a > tol && b < -tol)
    }

    /// Strictly outside: on the same side of both lines, away from them.
    pub fn excludes(&self, p: Point2, tol: f64) -> bool {
        let a = height(p, self.s1) - height(self.center, self.s1);
        let b = height(p, self.s2) - height(self.center, self.s2);
        (a < -tol && b < -tol) || (a > tol && b > tol)
    }
}

/// The smallest angle between cyclically adjacent lines from `v` to every
/// other vertex, for each `v`.
pub fn vertex_angular_gaps(points: &[Point2]) -> Result<Vec<f64>> {
    let gap_at = |i: usize| -> Result<f64> {
        let mut angles = Vec::with_capacity(points.len().saturating_sub(1));
        for (j, &q) in points.iter().enumerate() {
            if j != i {
                angles.push(
                    line_angle_mod_pi(points[i], q)
                        .map_err(|_| Error::DegeneratePoints(i.min(j), i.max(j)))?,
                );
            }
        }
        angles.sort_by(f64::total_cmp);
        let Some((&first, &last)) = angles.first().zip(angles.last()) else {
            return Ok(PI);
        };
        let wrap = first + PI - last;
        Ok(angles.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::min))
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..points.len()).into_par_iter().map(gap_at).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..points.len()).map(gap_at).collect()
    }
}

/// Half of the smallest angular gap over all vertices; `π/8` for two or fewer
/// vertices.
pub fn global_bowtie_width(points: &[Point2]) -> Result<f64> {
    let gaps = vertex_angular_gaps(points)?;
    if points.len() <= 2 {
        return Ok(FRAC_PI_8);
    }
    let (v, min) = gaps
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least three vertices");
    if min <= 0.0 {
        return Err(Error::ZeroBowTieWidth(v));
    }
    Ok(0.5 * min)
}

/// A bow tie at `points[v]` isolating `points[w]`, together with the number
/// of times its width had to shrink.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDirections {
    pub bowtie: BowTie,
    pub shrinks: usize,
}

fn isolates(bowtie: &BowTie, points: &[Point2], v: usize, w: usize, tol: f64) -> bool {
    points.iter().enumerate().all(|(k, &p)| {
        k == v
            || if k == w {
                bowtie.contains(p, tol)
            } else {
                bowtie.excludes(p, tol)
            }
    })
}

/// Directions `s ± θ`, where `s` is the counter-clockwise unit normal of
/// `points[w] - points[v]`. Shrinks `θ` until the bow tie holds only `w` and
/// neither direction puts two vertices at equal height.
pub fn pair_directions(
    points: &[Point2],
    v: usize,
    w: usize,
    theta: f64,
    tol: f64,
) -> Result<PairDirections> {
    let (a, b) = (points[v], points[w]);
    let s = Direction::unit(b.x - a.x, b.y - a.y)
        .map_err(|_| Error::DegeneratePoints(v.min(w), v.max(w)))?
        .perp();
    let mut theta = theta;
    for shrinks in 0..=MAX_SHRINKS {
        let bowtie = BowTie {
            center: a,
            s1: s.rotate(theta),
            s2: s.rotate(-theta),
            half_width: theta,
        };
        if isolates(&bowtie, points, v, w, tol)
            && height_order(points, bowtie.s1, tol).is_ok()
            && height_order(points, bowtie.s2, tol).is_ok()
        {
            return Ok(PairDirections { bowtie, shrinks });
        }
        theta *= SHRINK_FACTOR;
    }
    Err(Error::RetryExhausted(v, w, MAX_SHRINKS))
}

/// Edges at `v` whose other endpoint lies below it, read from `d`.
pub fn indegree_from_diagrams(d: &Diagram, v: Point2, tol: f64) -> usize {
    let h = height(v, d.direction);
    let deaths = d
        .dim0
        .iter()
        .filter(|p| !p.is_essential() && (p.death - h).abs() <= tol)
        .count();
    let cycles = d.dim1.iter().filter(|p| (p.birth - h).abs() <= tol).count();
    deaths + cycles
}

/// Outcome of probing one vertex pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeProbe {
    pub exists: bool,
    pub indegrees: (usize, usize),
    /// Width shrinks plus re-issued query pairs.
    pub retries: usize,
    pub bowtie: BowTie,
}

/// Decides whether `points[v]`–`points[w]` is an edge with two oracle queries
/// (more only if the oracle reports a degenerate direction).
pub fn edge_exists(
    o: &DiagramOracle,
    points: &[Point2],
    v: usize,
    w: usize,
    theta: f64,
) -> Result<EdgeProbe> {
    let tol = o.tolerance();
    let mut theta = theta;
    let mut retries = 0;
    loop {
        let pd = pair_directions(points, v, w, theta, tol)?;
        retries += pd.shrinks;
        let bowtie = pd.bowtie;
        let diagrams = o
            .query(bowtie.s1)
            .and_then(|d1| o.query(bowtie.s2).map(|d2| (d1, d2)));
        match diagrams {
            Ok((d1, d2)) => {
                let i1 = indegree_from_diagrams(&d1, points[v], tol);
                let i2 = indegree_from_diagrams(&d2, points[v], tol);
                return Ok(EdgeProbe {
                    exists: i1.abs_diff(i2) == 1,
                    indegrees: (i1, i2),
                    retries,
                    bowtie,
                });
            }
            Err(Error::DegenerateDirection(..)) if retries < MAX_SHRINKS => {
                retries += 1;
                theta = bowtie.half_width * SHRINK_FACTOR;
            }
            Err(Error::DegenerateDirection(..)) => {
                return Err(Error::RetryExhausted(v, w, retries))
            }
            Err(e) => return Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeReconstruction {
    /// Sorted `(i, j)` pairs, `i < j`, indexing the input points.
    pub edges: Vec<Edge>,
    pub theta: f64,
    pub retries: usize,
}

/// Every edge among `points`, probing each unordered pair once from its
/// smaller index.
pub fn reconstruct_edges(o: &DiagramOracle, points: &[Point2]) -> Result<EdgeReconstruction> {
    reconstruct_edges_with(o, points, Execution::default())
}

pub fn reconstruct_edges_with(
    o: &DiagramOracle,
    points: &[Point2],
    exec: Execution,
) -> Result<EdgeReconstruction> {
    if points.len() < 2 {
        return Ok(EdgeReconstruction {
            edges: Vec::new(),
            theta: FRAC_PI_8,
            retries: 0,
        });
    }
    let theta = global_bowtie_width(points)?;
    let pairs: Vec<Edge> = (0..points.len())
        .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
        .collect();
    let probe = |&(i, j): &Edge| edge_exists(o, points, i, j, theta).map(|p| ((i, j), p));

    let probes: Vec<(Edge, EdgeProbe)> = match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            pairs.par_iter().map(probe).collect::<Result<_>>()?
        }
        _ => pairs.iter().map(probe).collect::<Result<_>>()?,
    };
    Ok(EdgeReconstruction {
        edges: probes
            .iter()
            .filter(|(_, p)| p.exists)
            .map(|(e, _)| *e)
            .collect(),
        theta,
        retries: probes.iter().map(|(_, p)| p.retries).sum(),
    })
}

/// Every edge set on `points` whose diagrams along `s` equal `d`.
///
/// Vertices are swept bottom to top. Each partial edge set is extended at
/// vertex `v` by every subset of edges down to already-swept vertices, and
/// kept only if the dim-0 deaths (with their births) and dim-1 births it
/// produces at the height of `v` are exactly those of `d`. Planarity is not
/// required. Output rows are sorted edge lists in lexicographic order.
pub fn enumerate_compatible_graphs(
    points: &[Point2],
    s: Direction,
    d: &Diagram,
    tol: f64,
) -> Result<Vec<Vec<Edge>>> {
    let n = points.len();
    if n > ENUMERATION_LIMIT {
        return Err(Error::Overflow {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let s = s.normalized();
    let (order, heights) = height_order(points, s, tol)?;
    let birth_of = |rank: usize| heights[order[rank]];

    struct Row {
        edges: Vec<Edge>,
        uf: ElderUnionFind,
    }
    let mut rows = vec![Row {
        edges: Vec::new(),
        uf: ElderUnionFind::new(n),
    }];

    for r in 0..n {
        let h = birth_of(r);
        let mut want_deaths: Vec<f64> = d
            .dim0
            .iter()
            .filter(|p| !p.is_essential() && (p.death - h).abs() <= tol)
            .map(|p| p.birth)
            .collect();
        want_deaths.sort_by(f64::total_cmp);
        let want_cycles = d.dim1.iter().filter(|p| (p.birth - h).abs() <= tol).count();
        let want_edges = want_deaths.len() + want_cycles;

        let mut next = Vec::new();
        for row in &rows {
            for mask in 0u32..(1 << r) {
                if mask.count_ones() as usize != want_edges {
                    continue;
                }
                let mut uf = row.uf.clone();
                let mut deaths = Vec::new();
                let mut cycles = 0;
                for lower in (0..r).filter(|b| mask & (1 << b) != 0) {
                    match uf.union(r, lower) {
                        Some((_, younger)) => deaths.push(birth_of(younger)),
                        None => cycles += 1,
                    }
                }
                deaths.sort_by(f64::total_cmp);
                let deaths_match = deaths
                    .iter()
                    .zip(&want_deaths)
                    .all(|(a, b)| (a - b).abs() <= tol);
                if cycles == want_cycles && deaths.len() == want_deaths.len() && deaths_match {
                    let mut edges = row.edges.clone();
                    let v = order[r];
                    edges.extend(
                        (0..r)
                            .filter(|b| mask & (1 << b) != 0)
                            .map(|b| (order[b].min(v), order[b].max(v))),
                    );
                    next.push(Row { edges, uf });
                }
            }
        }
        rows = next;
    }

    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut edges = row.edges;
        edges.sort_unstable();
        let g = PlaneGraph::new(points.to_vec(), edges.iter().copied())?;
        if lower_star_diagrams(&g, s, tol)?.approx_eq(d, tol) {
            out.push(edges);
        }
    }
    out.sort();
    Ok(out)
}
