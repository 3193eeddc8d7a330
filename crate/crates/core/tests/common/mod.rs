#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use phrecon::plane_graph::Edge;
use phrecon::{height, Direction, PlaneGraph, Point2};

pub const TOL: f64 = 1e-9;

pub fn points(coords: &[(f64, f64)]) -> Vec<Point2> {
    coords.iter().map(|&(x, y)| Point2::new(x, y)).collect()
}

/// The worked example: three vertices are stated outright, the fourth is the
/// one reproducing the stated angular gaps.
pub fn worked_example() -> PlaneGraph {
    PlaneGraph::new(
        points(&[(0.25, 0.0), (1.0, 1.0), (-1.0, 2.0), (0.0, -1.0)]),
        [(0, 1), (0, 3), (1, 3), (1, 2)],
    )
    .unwrap()
}

/// Delaunay edges by exhaustive empty-circumcircle search.
pub fn brute_force_delaunay(p: &[Point2]) -> BTreeSet<Edge> {
    let n = p.len();
    let mut edges = BTreeSet::new();
    if n == 2 {
        edges.insert((0, 1));
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (p[i], p[j], p[k]);
                let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
                if d.abs() < 1e-15 {
                    continue;
                }
                let sq = |q: Point2| q.x * q.x + q.y * q.y;
                let ux = (sq(a) * (b.y - c.y) + sq(b) * (c.y - a.y) + sq(c) * (a.y - b.y)) / d;
                let uy = (sq(a) * (c.x - b.x) + sq(b) * (a.x - c.x) + sq(c) * (b.x - a.x)) / d;
                let center = Point2::new(ux, uy);
                let r = center.distance(&a);
                let empty = (0..n)
                    .filter(|&m| m != i && m != j && m != k)
                    .all(|m| center.distance(&p[m]) > r * (1.0 + 1e-12));
                if empty {
                    edges.extend([(i, j), (j, k), (i, k)]);
                }
            }
        }
    }
    edges
}

/// Components of the subgraph induced by vertices at or below `t`.
pub fn components_below(g: &PlaneGraph, s: Direction, t: f64) -> (usize, usize, usize) {
    let v = g.vertices();
    let alive: Vec<bool> = v.iter().map(|&p| height(p, s) <= t).collect();
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(i, j)| alive[i] && alive[j])
        .collect();
    let mut adj = vec![Vec::new(); v.len()];
    for &(i, j) in &edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; v.len()];
    let mut comps = 0;
    for start in 0..v.len() {
        if !alive[start] || seen[start] {
            continue;
        }
        comps += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let nv = alive.iter().filter(|&&a| a).count();
    (comps, nv, edges.len())
}

/// Every vertex of `g` is at a distinct height along `s` by more than `gap`.
pub fn tie_free(g: &PlaneGraph, s: Direction, gap: f64) -> bool {
    let mut h: Vec<f64> = g.vertices().iter().map(|&p| height(p, s)).collect();
    h.sort_by(f64::total_cmp);
    h.windows(2).all(|w| w[1] - w[0] > gap)
}
