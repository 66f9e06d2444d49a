#![allow(dead_code)]

use proptest::prelude::*;
use threeleaf::projline::{MobiusMap, ProjPoint};

/// Points of P¹(ℝ) drawn from the round measure, ∞ included.
pub fn proj_point() -> impl Strategy<Value = ProjPoint> {
    (0.0..std::f64::consts::PI).prop_map(ProjPoint::from_angle)
}

pub fn affine(lo: f64, hi: f64) -> impl Strategy<Value = ProjPoint> {
    (lo..hi).prop_map(ProjPoint::affine)
}

/// Invertible real 2×2 matrices with determinant bounded away from 0.
pub fn mobius() -> impl Strategy<Value = MobiusMap> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
        .prop_filter("well-conditioned", |(a, b, c, d)| {
            let det: f64 = a * d - b * c;
            det.abs() > 0.1 * (a * a + b * b + c * c + d * d)
        })
        .prop_map(|(a, b, c, d)| MobiusMap::new(a, b, c, d).unwrap())
}

pub fn chordal_close(p: ProjPoint, q: ProjPoint, tol: f64) -> bool {
    p.chordal(&q) <= tol
}

pub fn pt(x: f64) -> ProjPoint {
    ProjPoint::affine(x)
}
