//! Deterministic SVG drawings of a graph, its filtration lines and bow ties.

use std::fmt::Write;

use crate::edge_recon::{global_bowtie_width, pair_directions};
use crate::error::{Error, Result};
use crate::geometry::{Direction, Line, Point2};
use crate::plane_graph::PlaneGraph;
use crate::vertex_recon::{third_direction, LineFamily};

const CANVAS: f64 = 512.0;
const PADDING: f64 = 32.0;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RenderOptions {
    /// Overlay the three filtration-line families used for vertex recovery.
    pub lines: bool,
    /// Shade the bow tie at the first vertex isolating the second.
    pub bowtie: Option<(usize, usize)>,
}

/// World-to-canvas mapping with y pointing up in the world.
struct Frame {
    min: Point2,
    max: Point2,
    scale: f64,
}

impl Frame {
    fn fit(vertices: &[Point2]) -> Frame {
        let (mut lo, mut hi) = (Point2::new(0.0, 0.0), Point2::new(1.0, 1.0));
        if let Some(first) = vertices.first() {
            lo = *first;
            hi = *first;
            for p in vertices {
                lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
            }
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let scale = (CANVAS - 2.0 * PADDING) / span;
        let pad = PADDING / scale;
        Frame {
            min: Point2::new(lo.x - pad, lo.y - pad),
            max: Point2::new(lo.x - pad + CANVAS / scale, lo.y - pad + CANVAS / scale),
            scale,
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (
            (p.x - self.min.x) * self.scale,
            (self.max.y - p.y) * self.scale,
        )
    }

    /// Portion of `line` inside the frame, as two world points.
    fn clip(&self, line: &Line) -> Option<(Point2, Point2)> {
        let origin = line.anchor();
        let along = line.normal().perp();
        let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
        for (o, d, lo, hi) in [
            (origin.x, along.dx(), self.min.x, self.max.x),
            (origin.y, along.dy(), self.min.y, self.max.y),
        ] {
            if d.abs() < 1e-15 {
                if o < lo || o > hi {
                    return None;
                }
                continue;
            }
            let (a, b) = ((lo - o) / d, (hi - o) / d);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
        (t0 < t1).then(|| (line.point_at(t0), line.point_at(t1)))
    }

    fn diagonal(&self) -> f64 {
        (self.max.x - self.min.x).hypot(self.max.y - self.min.y)
    }
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

pub fn render_svg(g: &PlaneGraph, opts: &RenderOptions, tol: f64) -> Result<String> {
    let v = g.vertices();
    let frame = Frame::fit(v);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {c} {c}" width="{c}" height="{c}">"#,
        c = CANVAS
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    if let Some((i, j)) = opts.bowtie {
        let n = v.len();
        if i >= n || j >= n || i == j {
            return Err(Error::IndexOutOfRange {
                index: if i >= n || i == j { i } else { j },
                len: n,
            });
        }
        let theta = global_bowtie_width(v)?;
        let bowtie = pair_directions(v, i, j, theta, tol)?.bowtie;
        let (a, b) = (v[i], v[j]);
        let toward = Direction::unit(b.x - a.x, b.y - a.y)?;
        let reach = frame.diagonal();
        for sign in [1.0, -1.0] {
            let tip = |angle: f64| {
                let d = toward.rotate(angle);
                Point2::new(a.x + sign * reach * d.dx(), a.y + sign * reach * d.dy())
            };
            let (p0, p1, p2) = (
                frame.map(a),
                frame.map(tip(-bowtie.half_width)),
                frame.map(tip(bowtie.half_width)),
            );
            writeln!(
                out,
                r##"<path class="bowtie" d="M{} {} L{} {} L{} {} Z" fill="#999999" fill-opacity="0.4" stroke="none"/>"##,
                fmt(p0.0), fmt(p0.1), fmt(p1.0), fmt(p1.1), fmt(p2.0), fmt(p2.1)
            )
            .unwrap();
        }
    }

    if opts.lines && !v.is_empty() {
        let f1 = LineFamily::from_points(v, Direction::X, tol)?;
        let f2 = LineFamily::from_points(v, Direction::Y, tol)?;
        let s3 = third_direction(&f1, &f2)?;
        let f3 = LineFamily::from_points(v, s3, tol)?;
        for (family, class, color) in [
            (&f1, "filtration s1", "#1f4fbf"),
            (&f2, "filtration s2", "#000000"),
            (&f3, "filtration s3", "#c0269e"),
        ] {
            for line in family.lines() {
                let Some((p, q)) = frame.clip(&line) else {
                    continue;
                };
                let (p, q) = (frame.map(p), frame.map(q));
                writeln!(
                    out,
                    r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="1" stroke-dasharray="4 3"/>"#,
                    fmt(p.0), fmt(p.1), fmt(q.0), fmt(q.1)
                )
                .unwrap();
            }
        }
    }

    for &(i, j) in g.edges() {
        let (p, q) = (frame.map(v[i]), frame.map(v[j]));
        writeln!(
            out,
            r##"<path class="edge" d="M{} {} L{} {}" stroke="#333333" stroke-width="2"/>"##,
            fmt(p.0),
            fmt(p.1),
            fmt(q.0),
            fmt(q.1)
        )
        .unwrap();
    }
    for &p in v {
        let (x, y) = frame.map(p);
        writeln!(
            out,
            r##"<circle class="vertex" cx="{}" cy="{}" r="4" fill="#d62728"/>"##,
            fmt(x),
            fmt(y)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
