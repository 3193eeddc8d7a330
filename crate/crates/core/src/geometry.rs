//! Planar primitives: points, directions, lines and their intersections.
//!
//! Everything is plain `f64`. A single absolute tolerance (see
//! [`DEFAULT_TOLERANCE`]) is used for on-line and equal-height tests; inputs are
//! assumed to be O(1)-scaled.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for equal-height and on-line tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Environment variable that overrides [`DEFAULT_TOLERANCE`].
pub const TOLERANCE_ENV: &str = "PHRECON_TOLERANCE";

/// Two unit normals whose cross product is at or below this are parallel.
pub const PARALLEL_EPS: f64 = 1e-12;

/// Tolerance from `PHRECON_TOLERANCE`, or the default when unset or unparsable.
pub fn tolerance_from_env() -> f64 {
    std::env::var(TOLERANCE_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t >= 0.0)
        .unwrap_or(DEFAULT_TOLERANCE)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point2 { x, y })
        } else {
            Err(Error::NonFinite(x, y))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Largest per-coordinate difference.
    pub fn max_abs_diff(&self, other: &Point2) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Lexicographic total order on (x, y).
    pub fn lex_cmp(&self, other: &Point2) -> Ordering {
        self.x.total_cmp(&other.x).then(self.y.total_cmp(&other.y))
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2 { x, y }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Signed area of the parallelogram spanned by `b - a` and `c - a`.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// A non-zero direction vector.
///
/// Directions built with [`Direction::unit`] (and everything the toolkit
/// derives from them) are unit length; [`Direction::new`] keeps the raw
/// components so that scaling behaviour can be observed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Direction {
    dx: f64,
    dy: f64,
}

impl Direction {
    pub const X: Direction = Direction { dx: 1.0, dy: 0.0 };
    pub const Y: Direction = Direction { dx: 0.0, dy: 1.0 };

    /// Raw direction; rejects zero and non-finite vectors.
    pub fn new(dx: f64, dy: f64) -> Result<Self> {
        if !(dx.is_finite() && dy.is_finite()) || (dx == 0.0 && dy == 0.0) {
            return Err(Error::ZeroDirection(dx, dy));
        }
        Ok(Direction { dx, dy })
    }

    /// Unit direction along `(dx, dy)`.
    pub fn unit(dx: f64, dy: f64) -> Result<Self> {
        Direction::new(dx, dy).map(|d| d.normalized())
    }

    /// Unit direction at `angle` radians counter-clockwise from +x.
    pub fn from_angle(angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        Direction { dx: cos, dy: sin }
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn norm(&self) -> f64 {
        self.dx.hypot(self.dy)
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Direction {
            dx: self.dx / n,
            dy: self.dy / n,
        }
    }

    pub fn is_unit(&self) -> bool {
        (self.dx * self.dx + self.dy * self.dy - 1.0).abs() <= 1e-12
    }

    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        Direction::new(self.dx * alpha, self.dy * alpha)
    }

    /// Counter-clockwise rotation by `angle` radians.
    pub fn rotate(&self, angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        Direction {
            dx: self.dx * cos - self.dy * sin,
            dy: self.dx * sin + self.dy * cos,
        }
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(&self) -> Self {
        Direction {
            dx: -self.dy,
            dy: self.dx,
        }
    }

    pub fn negated(&self) -> Self {
        Direction {
            dx: -self.dx,
            dy: -self.dy,
        }
    }

    /// z-component of the cross product.
    pub fn cross(&self, other: &Direction) -> f64 {
        self.dx * other.dy - self.dy * other.dx
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.dx * other.dx + self.dy * other.dy
    }

    /// Unsigned angle to `other`, in `[0, π]`.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        self.cross(other).atan2(self.dot(other)).abs()
    }
}

impl TryFrom<[f64; 2]> for Direction {
    type Error = Error;

    fn try_from([dx, dy]: [f64; 2]) -> Result<Self> {
        Direction::new(dx, dy)
    }
}

impl From<Direction> for [f64; 2] {
    fn from(d: Direction) -> Self {
        [d.dx, d.dy]
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

/// Height of `p` in direction `s`: the dot product `p · s`.
pub fn height(p: Point2, s: Direction) -> f64 {
    p.x * s.dx + p.y * s.dy
}

/// The line `{q : q · normal = offset}`, stored canonically: unit normal with
/// positive x-component (or zero x and positive y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    normal: Direction,
    offset: f64,
}

impl Line {
    pub fn new(normal: Direction, offset: f64) -> Self {
        let n = normal.norm();
        let (mut dx, mut dy, mut offset) = (normal.dx / n, normal.dy / n, offset / n);
        if dx < 0.0 || (dx == 0.0 && dy < 0.0) {
            dx = -dx;
            dy = -dy;
            offset = -offset;
        }
        Line {
            normal: Direction { dx, dy },
            offset,
        }
    }

    /// The line through `p` perpendicular to `normal`.
    pub fn through(p: Point2, normal: Direction) -> Self {
        let unit = normal.normalized();
        Line::new(unit, height(p, unit))
    }

    pub fn normal(&self) -> Direction {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Signed distance from `p` to the line.
    pub fn residual(&self, p: Point2) -> f64 {
        height(p, self.normal) - self.offset
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.residual(p).abs() <= tol
    }

    /// Foot of the perpendicular from the origin.
    pub fn anchor(&self) -> Point2 {
        Point2::new(self.offset * self.normal.dx, self.offset * self.normal.dy)
    }

    /// Point at signed arc length `t` from the anchor.
    pub fn point_at(&self, t: f64) -> Point2 {
        let a = self.anchor();
        let along = self.normal.perp();
        Point2::new(a.x + t * along.dx, a.y + t * along.dy)
    }
}

/// The filtration line at height `h` for direction `s`: through `h·s`,
/// perpendicular to `s`.
pub fn filtration_line(s: Direction, h: f64) -> Result<Line> {
    if !(s.dx.is_finite() && s.dy.is_finite()) || (s.dx == 0.0 && s.dy == 0.0) {
        return Err(Error::ZeroDirection(s.dx, s.dy));
    }
    let u = s.normalized();
    Ok(Line::new(u, h))
}

/// Intersection point of two non-parallel lines.
pub fn intersect_lines(a: &Line, b: &Line) -> Result<Point2> {
    let det = a.normal.cross(&b.normal);
    if det.abs() <= PARALLEL_EPS {
        return Err(Error::ParallelLines);
    }
    let x = (a.offset * b.normal.dy - b.offset * a.normal.dy) / det;
    let y = (a.normal.dx * b.offset - b.normal.dx * a.offset) / det;
    Ok(Point2::new(x, y))
}

/// Counter-clockwise rotation of `s` by `angle` radians.
pub fn rotate(s: Direction, angle: f64) -> Direction {
    s.rotate(angle)
}

/// Angle in `[0, π)` of the undirected line through `u` and `v`.
pub fn line_angle_mod_pi(u: Point2, v: Point2) -> Result<f64> {
    let (mut dx, mut dy) = (v.x - u.x, v.y - u.y);
    if dx == 0.0 && dy == 0.0 {
        return Err(Error::CoincidentPoints(u.x, u.y));
    }
    // Pick the representative in the upper half-plane so the result does not
    // depend on the order of the endpoints.
    if dy < 0.0 || (dy == 0.0 && dx < 0.0) {
        dx = -dx;
        dy = -dy;
    }
    let angle = dy.atan2(dx);
    Ok(if angle >= PI { 0.0 } else { angle })
}
