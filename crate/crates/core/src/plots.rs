//! Figure data: Poincaré-disk geodesic trees with three leaves, the graph of
//! κ, and the torus helix `x ↦ (C(x), κ(x))`.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use serde::Serialize;

use crate::cover::{devadoss_gamma, kappa, CirclePoint};
use crate::error::{Error, Result};
use crate::fmt::sig;
use crate::projline::{ProjPoint, POINT_TOL};
use crate::tangent::{cayley, stereo_param, UnitComplex};

const CANVAS: f64 = 1000.0;
const DISK_RADIUS: f64 = 480.0;
const SVG_DIGITS: usize = 9;
const ARC_SEGMENTS: usize = 64;

/// A hyperbolic geodesic between two ideal points of the Poincaré disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ArcDescriptor {
    Diameter { t1: CirclePoint, t2: CirclePoint },
    Circular { t1: CirclePoint, t2: CirclePoint, center: [f64; 2], radius: f64 },
}

impl ArcDescriptor {
    pub fn endpoints(&self) -> (CirclePoint, CirclePoint) {
        match *self {
            ArcDescriptor::Diameter { t1, t2 } | ArcDescriptor::Circular { t1, t2, .. } => (t1, t2),
        }
    }

    /// `‖c‖² − 1 − r²`; zero for a circle meeting the unit circle at right angles.
    pub fn orthogonality_residual(&self) -> f64 {
        match *self {
            ArcDescriptor::Diameter { .. } => 0.0,
            ArcDescriptor::Circular { center: [x, y], radius, .. } => x * x + y * y - 1.0 - radius * radius,
        }
    }

    /// The point of the arc closest to the origin.
    pub fn midpoint(&self) -> [f64; 2] {
        match *self {
            ArcDescriptor::Diameter { .. } => [0.0, 0.0],
            ArcDescriptor::Circular { center: [x, y], radius, .. } => {
                let s = 1.0 - radius / x.hypot(y);
                [x * s, y * s]
            }
        }
    }

    /// `segments + 1` points along the arc inside the disk, from `t1` to `t2`.
    pub fn polyline(&self, segments: usize) -> Vec<[f64; 2]> {
        let (t1, t2) = self.endpoints();
        let (p, q) = (unit(t1), unit(t2));
        match *self {
            ArcDescriptor::Diameter { .. } => (0..=segments)
                .map(|i| {
                    let s = i as f64 / segments as f64;
                    [p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]
                })
                .collect(),
            ArcDescriptor::Circular { center: [cx, cy], radius, .. } => {
                let a1 = (p[1] - cy).atan2(p[0] - cx);
                let a2 = (q[1] - cy).atan2(q[0] - cx);
                let mut span = a2 - a1;
                span -= TAU * ((span + PI) / TAU).floor();
                (0..=segments)
                    .map(|i| {
                        let a = a1 + span * i as f64 / segments as f64;
                        [cx + radius * a.cos(), cy + radius * a.sin()]
                    })
                    .collect()
            }
        }
    }
}

fn unit(t: CirclePoint) -> [f64; 2] {
    let z = UnitComplex::from_turns(t.value());
    [z.re(), z.im()]
}

/// The geodesic joining `e(t1)` and `e(t2)`.
pub fn ideal_geodesic(t1: CirclePoint, t2: CirclePoint) -> Result<ArcDescriptor> {
    let d = t1.distance(t2);
    if d <= POINT_TOL {
        return Err(Error::CoincidentIdealPoints);
    }
    if (d - 0.5).abs() <= POINT_TOL {
        return Ok(ArcDescriptor::Diameter { t1, t2 });
    }
    let (p, q) = (unit(t1), unit(t2));
    let s = 1.0 + p[0] * q[0] + p[1] * q[1];
    let center = [(p[0] + q[0]) / s, (p[1] + q[1]) / s];
    let radius = (center[0] * center[0] + center[1] * center[1] - 1.0).sqrt();
    Ok(ArcDescriptor::Circular { t1, t2, center, radius })
}

/// A schematic rooted tree on four ideal points with its internal edge length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tree3Figure {
    pub points: [ProjPoint; 4],
    /// Angles of the Cayley images, in turns.
    pub angles: [CirclePoint; 4],
    /// Leaf indices grouped by the two internal vertices.
    pub pairs: [[usize; 2]; 2],
    /// One geodesic per pair, `None` where the pair coincides.
    pub arcs: [Option<ArcDescriptor>; 2],
    pub vertices: [[f64; 2]; 2],
    pub gamma: ProjPoint,
    /// `γ = ∞`: two leaves collided and the tree sits on the boundary.
    pub boundary: bool,
}

pub fn tree3_figure(p0: ProjPoint, p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> Result<Tree3Figure> {
    let points = [p0, p1, p2, p3];
    let gamma = devadoss_gamma(p0, p1, p2, p3)?;
    let angles = points.map(|p| cayley(p).turns());
    let mut order = [0, 1, 2, 3];
    order.sort_by(|&i, &j| angles[i].value().total_cmp(&angles[j].value()));
    let gap = |i: usize, j: usize| angles[order[i]].distance(angles[order[j]]);
    let pairs = if gap(0, 1) + gap(2, 3) <= gap(1, 2) + gap(3, 0) {
        [[order[0], order[1]], [order[2], order[3]]]
    } else {
        [[order[1], order[2]], [order[3], order[0]]]
    };
    let mut arcs = [None; 2];
    let mut vertices = [[0.0; 2]; 2];
    for (slot, [i, j]) in pairs.iter().enumerate() {
        match ideal_geodesic(angles[*i], angles[*j]) {
            Ok(arc) => {
                vertices[slot] = arc.midpoint();
                arcs[slot] = Some(arc);
            }
            Err(Error::CoincidentIdealPoints) => vertices[slot] = unit(angles[*i]),
            Err(e) => return Err(e),
        }
    }
    Ok(Tree3Figure { points, angles, pairs, arcs, vertices, gamma, boundary: gamma.is_infinite() })
}

fn px(p: [f64; 2]) -> (String, String) {
    (sig(CANVAS / 2.0 + DISK_RADIUS * p[0], SVG_DIGITS), sig(CANVAS / 2.0 - DISK_RADIUS * p[1], SVG_DIGITS))
}

fn svg_open(out: &mut String) {
    let c = sig(CANVAS, SVG_DIGITS);
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#
    );
}

fn svg_polyline(out: &mut String, pts: &[[f64; 2]], style: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&p| {
            let (x, y) = px(p);
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(out, r#"<polyline points="{}" {style}/>"#, coords.join(" "));
}

impl Tree3Figure {
    pub fn gamma_label(&self) -> String {
        sig(self.gamma.value(), 12)
    }

    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        svg_open(&mut out);
        let (cx, cy) = px([0.0, 0.0]);
        let _ = writeln!(
            out,
            r#"<circle cx="{cx}" cy="{cy}" r="{}" fill="none" stroke="black"/>"#,
            sig(DISK_RADIUS, SVG_DIGITS)
        );
        for arc in self.arcs.iter().flatten() {
            svg_polyline(&mut out, &arc.polyline(ARC_SEGMENTS), r#"fill="none" stroke="gray" stroke-dasharray="4 4""#);
        }
        for (slot, pair) in self.pairs.iter().enumerate() {
            for &leaf in pair {
                svg_polyline(
                    &mut out,
                    &[unit(self.angles[leaf]), self.vertices[slot]],
                    r#"fill="none" stroke="black""#,
                );
            }
        }
        let edge_style = if self.boundary { r#"fill="none" stroke="red""# } else { r#"fill="none" stroke="blue""# };
        svg_polyline(&mut out, &self.vertices, edge_style);
        for (i, &t) in self.angles.iter().enumerate() {
            let (x, y) = px(unit(t));
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="5"/>"#);
            let (lx, ly) = px(unit(t).map(|c| c * 1.035));
            let _ = writeln!(out, r#"<text x="{lx}" y="{ly}" font-size="20">x{i}</text>"#);
        }
        let label =
            if self.boundary { "γ = inf (boundary)".to_string() } else { format!("γ = {}", self.gamma_label()) };
        let _ = writeln!(out, r#"<text x="20" y="40" font-size="24">{label}</text>"#);
        out.push_str("</svg>\n");
        out
    }

    /// One row per arc, then a row with γ.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,t1,t2,cx,cy,r\n");
        let f = |x: f64| sig(x, 12);
        for arc in self.arcs.iter().flatten() {
            match *arc {
                ArcDescriptor::Diameter { t1, t2 } => {
                    let _ = writeln!(out, "diameter,{},{},0,0,inf", f(t1.value()), f(t2.value()));
                }
                ArcDescriptor::Circular { t1, t2, center, radius } => {
                    let _ = writeln!(
                        out,
                        "circular,{},{},{},{},{}",
                        f(t1.value()),
                        f(t2.value()),
                        f(center[0]),
                        f(center[1]),
                        f(radius)
                    );
                }
            }
        }
        let _ = writeln!(out, "gamma,{},,,,", self.gamma_label());
        out
    }
}

/// `k` samples `(angle of C(x), κ(x))` along one positive loop of P¹(ℝ),
/// `x = stereo_param(j/(k − 1))`. The first and last samples coincide.
pub fn helix_samples(k: usize) -> Result<Vec<(CirclePoint, CirclePoint)>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k}, need at least 2 samples")));
    }
    Ok((0..k)
        .map(|j| {
            let x = stereo_param(CirclePoint::new(j as f64 / (k - 1) as f64));
            (cayley(x).turns(), kappa(x))
        })
        .collect())
}

/// `k` samples `(t, κ(stereo_param(t)))` for `t` in `[0, 1]`.
pub fn kappa_graph(k: usize) -> Result<Vec<(f64, CirclePoint)>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k}, need at least 2 samples")));
    }
    Ok((0..k)
        .map(|j| {
            let t = j as f64 / (k - 1) as f64;
            (t, kappa(stereo_param(CirclePoint::new(t))))
        })
        .collect())
}

/// Plots pairs in the unit square, breaking the line wherever either
/// coordinate wraps around.
pub fn torus_svg(samples: &[(f64, f64)], title: &str) -> String {
    let mut out = String::new();
    svg_open(&mut out);
    let to_disk = |(x, y): (f64, f64)| [(x - 0.5) * 2.0, (y - 0.5) * 2.0];
    let frame = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)].map(to_disk);
    svg_polyline(&mut out, &frame, r#"fill="none" stroke="gray""#);
    let mut run: Vec<[f64; 2]> = Vec::new();
    for (i, &s) in samples.iter().enumerate() {
        if let Some(&prev) = i.checked_sub(1).and_then(|j| samples.get(j)) {
            if (s.0 - prev.0).abs() > 0.5 || (s.1 - prev.1).abs() > 0.5 {
                if run.len() > 1 {
                    svg_polyline(&mut out, &run, r#"fill="none" stroke="blue""#);
                }
                run.clear();
            }
        }
        run.push(to_disk(s));
    }
    if run.len() > 1 {
        svg_polyline(&mut out, &run, r#"fill="none" stroke="blue""#);
    }
    let _ = writeln!(out, r#"<text x="20" y="15" font-size="12">{title}</text>"#);
    out.push_str("</svg>\n");
    out
}
