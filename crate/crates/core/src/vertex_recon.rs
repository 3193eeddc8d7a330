//! Vertex coordinates from three directional zero-dimensional diagrams.
//!
//! Births along `(1, 0)` and `(0, 1)` give a grid of vertical and horizontal
//! filtration lines that contains every vertex. A third direction is chosen so
//! that, inside the grid's bounding box, a line perpendicular to it meets at
//! most one horizontal line. Each third-family line then passes through
//! exactly one vertex, and ordering both families bottom-to-top pairs every
//! horizontal line with the slanted line through the same vertex.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::geometry::{filtration_line, height, intersect_lines, Direction, Line, Point2};
use crate::persistence::{Diagram, DiagramOracle};

/// Parallel filtration lines sharing one unit normal, offsets ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct LineFamily {
    direction: Direction,
    offsets: Vec<f64>,
}

impl LineFamily {
    /// Lines at the given heights; fails if two heights are within `tol`.
    pub fn new(direction: Direction, mut offsets: Vec<f64>, tol: f64) -> Result<Self> {
        offsets.sort_by(f64::total_cmp);
        if let Some(w) = offsets.windows(2).find(|w| w[1] - w[0] <= tol) {
            return Err(Error::DuplicateHeights(w[0]));
        }
        Ok(LineFamily {
            direction: direction.normalized(),
            offsets,
        })
    }

    /// The filtration lines of a known point set.
    pub fn from_points(points: &[Point2], s: Direction, tol: f64) -> Result<Self> {
        let s = s.normalized();
        LineFamily::new(s, points.iter().map(|&p| height(p, s)).collect(), tol)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn line(&self, i: usize) -> Line {
        filtration_line(self.direction, self.offsets[i]).expect("family direction is non-zero")
    }

    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        (0..self.len()).map(|i| self.line(i))
    }

    /// Whether some line of the family passes within `tol` of `p`.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        let h = height(p, self.direction);
        let i = self.offsets.partition_point(|&o| o < h - tol);
        self.offsets.get(i).is_some_and(|&o| (o - h).abs() <= tol)
    }
}

/// One filtration line per zero-dimensional birth of `d`.
pub fn lines_from_dgm0(d: &Diagram, tol: f64) -> Result<LineFamily> {
    LineFamily::new(d.direction, d.births0().collect(), tol)
}

/// Unit direction perpendicular to `(w, h / 2)` with positive y-component.
pub fn third_direction_from_gaps(w: f64, h: f64) -> Result<Direction> {
    Direction::unit(-h / 2.0, w)
}

/// Picks the third direction from the vertical family `f1` and the
/// horizontal family `f2`: `w` is the full width of `f1`, `h` the smallest gap
/// of `f2`.
pub fn third_direction(f1: &LineFamily, f2: &LineFamily) -> Result<Direction> {
    if f1.len() != f2.len() {
        return Err(Error::FamilySizeMismatch(f1.len(), f2.len()));
    }
    if f1.len() < 2 {
        return Direction::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    }
    let w = f1.offsets[f1.len() - 1] - f1.offsets[0];
    let h = f2
        .offsets
        .windows(2)
        .map(|p| p[1] - p[0])
        .fold(f64::INFINITY, f64::min);
    third_direction_from_gaps(w, h)
}

/// Pairs the i-th lowest line of `f2` with the i-th lowest line of `f3`
/// (heights read off on `leftmost`) and intersects them.
pub fn match_and_intersect(
    f2: &LineFamily,
    f3: &LineFamily,
    leftmost: &Line,
) -> Result<Vec<Point2>> {
    if f2.len() != f3.len() {
        return Err(Error::FamilySizeMismatch(f2.len(), f3.len()));
    }
    let sorted_by_crossing = |f: &LineFamily| -> Result<Vec<Line>> {
        let mut keyed = f
            .lines()
            .map(|l| intersect_lines(&l, leftmost).map(|p| (p.y, l)))
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(keyed.into_iter().map(|(_, l)| l).collect())
    };
    let rows = sorted_by_crossing(f2)?;
    let slants = sorted_by_crossing(f3)?;
    rows.iter()
        .zip(&slants)
        .map(|(a, b)| intersect_lines(a, b))
        .collect()
}

/// Vertex coordinates of the hidden graph from exactly three oracle queries:
/// `(1, 0)`, `(0, 1)`, then the derived third direction. Points come out in
/// ascending y.
pub fn reconstruct_vertices(o: &DiagramOracle) -> Result<Vec<Point2>> {
    let tol = o.tolerance();
    let d1 = o.query(Direction::X)?;
    let d2 = o.query(Direction::Y)?;
    let f1 = lines_from_dgm0(&d1, tol)?;
    let f2 = lines_from_dgm0(&d2, tol)?;
    let s3 = third_direction(&f1, &f2)?;
    let d3 = o.query(s3)?;
    let f3 = lines_from_dgm0(&d3, tol)?;
    if f3.len() != f2.len() {
        return Err(Error::FamilySizeMismatch(f2.len(), f3.len()));
    }
    match f1.len() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![locate_point(&d1, &d2)?]),
        _ => match_and_intersect(&f2, &f3, &f1.line(0)),
    }
}

/// The single vertex of a one-vertex graph from two diagrams in independent
/// directions.
pub fn locate_point(a: &Diagram, b: &Diagram) -> Result<Point2> {
    for d in [a, b] {
        if d.dim0.len() != 1 {
            return Err(Error::WrongCardinality(d.dim0.len()));
        }
    }
    let la = filtration_line(a.direction, a.dim0[0].birth)?;
    let lb = filtration_line(b.direction, b.dim0[0].birth)?;
    intersect_lines(&la, &lb)
}

/// Every point where a line of each family passes within `tol`, in
/// lexicographic order. Quadratic in the family size.
pub fn triple_intersections(
    f1: &LineFamily,
    f2: &LineFamily,
    f3: &LineFamily,
    tol: f64,
) -> Vec<Point2> {
    let mut out = Vec::new();
    for a in f1.lines() {
        for b in f2.lines() {
            if let Ok(p) = intersect_lines(&a, &b) {
                if f3.contains(p, tol) {
                    out.push(p);
                }
            }
        }
    }
    out.sort_by(Point2::lex_cmp);
    out
}
