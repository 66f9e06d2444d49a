//! The three-fold cover `κ : P¹(ℝ) → ℝ/ℤ`, its logit companion `ϰ = D ∘ κ`,
//! and the internal-edge length of a three-leaf tree.
//!
//! P¹(ℝ) splits into `[I] = [−∞, 0]`, `[II] = [0, 1]`, `[III] = [1, ∞]`, which
//! `σ(x) = 1/(1 − x)` permutes cyclically. On each open piece κ is a Möbius
//! map onto `(0, 1)`: `σ` on (I), the identity on (II), `σ⁻¹` on (III).

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::projline::{cross_ratio, MobiusMap, ProjPoint, POINT_TOL};

/// An element of ℝ/ℤ, stored in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct CirclePoint(f64);

impl CirclePoint {
    pub fn new(t: f64) -> Self {
        let r = t - t.floor();
        // t slightly below an integer can round up to exactly 1.0
        CirclePoint(if r >= 1.0 { 0.0 } else { r + 0.0 })
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Signed representative of `other − self` in `[−1/2, 1/2)`.
    pub fn step_to(self, other: CirclePoint) -> f64 {
        let d = other.0 - self.0;
        d - (d + 0.5).floor()
    }

    pub fn distance(self, other: CirclePoint) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(1.0 - d)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for CirclePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for CirclePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        f64::deserialize(d).map(CirclePoint::new)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalTag {
    /// `(−∞, 0)`
    I,
    /// `(0, 1)`
    II,
    /// `(1, ∞)`
    III,
    Zero,
    One,
    Infinity,
}

impl IntervalTag {
    pub fn is_boundary(self) -> bool {
        matches!(self, IntervalTag::Zero | IntervalTag::One | IntervalTag::Infinity)
    }

    pub fn name(self) -> &'static str {
        match self {
            IntervalTag::I => "I",
            IntervalTag::II => "II",
            IntervalTag::III => "III",
            IntervalTag::Zero => "0",
            IntervalTag::One => "1",
            IntervalTag::Infinity => "inf",
        }
    }
}

/// Classifies with the global point tolerance.
pub fn interval_classify(p: ProjPoint) -> IntervalTag {
    classify_with_tol(p, POINT_TOL)
}

/// Classifies `p`, snapping to a boundary tag when within chordal distance `tol`
/// of 0, 1 or ∞. `tol = 0` gives the exact decomposition.
pub fn classify_with_tol(p: ProjPoint, tol: f64) -> IntervalTag {
    if p.chordal(&ProjPoint::INFINITY) <= tol {
        IntervalTag::Infinity
    } else if p.chordal(&ProjPoint::ZERO) <= tol {
        IntervalTag::Zero
    } else if p.chordal(&ProjPoint::ONE) <= tol {
        IntervalTag::One
    } else {
        // canonical form has b > 0 here
        let (a, b) = (p.a(), p.b());
        if a < 0.0 {
            IntervalTag::I
        } else if a < b {
            IntervalTag::II
        } else {
            IntervalTag::III
        }
    }
}

/// The piecewise Möbius three-fold cover. {0, 1, ∞} all map to `0 ∈ ℝ/ℤ`.
pub fn kappa(p: ProjPoint) -> CirclePoint {
    let (a, b) = (p.a(), p.b());
    let t = match interval_classify(p) {
        IntervalTag::I => b / (b - a),
        IntervalTag::II => a / b,
        IntervalTag::III => (a - b) / a,
        _ => 0.0,
    };
    CirclePoint::new(t)
}

/// `κ′`: `(1 − x)⁻²` on (I), `1` on (II), `x⁻²` on (III), extended continuously.
pub fn kappa_prime(p: ProjPoint) -> f64 {
    let (a, b) = (p.a(), p.b());
    match interval_classify(p) {
        IntervalTag::I => (b / (b - a)).powi(2),
        IntervalTag::II | IntervalTag::Zero | IntervalTag::One => 1.0,
        IntervalTag::III => (b / a).powi(2),
        IntervalTag::Infinity => 0.0,
    }
}

/// The Möbius map that κ agrees with on the open interval `tag`.
pub fn branch_map(tag: IntervalTag) -> Option<MobiusMap> {
    let sigma = MobiusMap::sigma();
    match tag {
        IntervalTag::I => Some(sigma),
        IntervalTag::II => Some(MobiusMap::IDENTITY),
        IntervalTag::III => Some(sigma.compose(&sigma)),
        _ => None,
    }
}

/// The logit `D(x) = log(x/(1 − x)) = −log|1 − x⁻¹|` on `[0, 1]`, with
/// `D(0) = D(1) = ∞`.
pub fn logit_d(p: ProjPoint) -> Result<ProjPoint> {
    let (a, b) = (p.a(), p.b());
    if b <= 0.0 || a < 0.0 || a > b {
        return Err(Error::Domain(p.value()));
    }
    if a == 0.0 || a == b {
        return Ok(ProjPoint::INFINITY);
    }
    Ok(ProjPoint::affine((a / (b - a)).ln()))
}

/// The logistic function `1/(1 + e^{−γ})`, inverse of [`logit_d`].
pub fn logistic(gamma: f64) -> f64 {
    1.0 / (1.0 + (-gamma).exp())
}

/// `ϰ = D ∘ κ`, a three-fold cover of P¹(ℝ) marked at ∞.
///
/// Evaluated through the branch formulas `−log|x|`, `−log|σ⁻¹(x)|`,
/// `−log|σ⁻²(x)|` on the exact decomposition, so points very close to (but
/// not at) 0, 1, ∞ keep their finite, large values.
pub fn varkappa(p: ProjPoint) -> ProjPoint {
    let (a, b) = (p.a(), p.b());
    let v = match classify_with_tol(p, 0.0) {
        IntervalTag::I => (b / -a).ln(),
        IntervalTag::II => (a / (b - a)).ln(),
        IntervalTag::III => ((a - b) / b).ln(),
        _ => return ProjPoint::INFINITY,
    };
    ProjPoint::affine(v)
}

/// `ϰ′ = D′(κ) κ′` with `D′(y) = 1/(y(1 − y))`; infinite at 0, 1, ∞.
pub fn varkappa_prime(p: ProjPoint) -> f64 {
    let y = kappa(p).value();
    if y == 0.0 {
        return f64::INFINITY;
    }
    kappa_prime(p) / (y * (1.0 - y))
}

/// Signed internal-edge length `γ = ϰ(ρ)` of the three-leaf tree with cross-ratio
/// `ρ = [p0 : p1 : p2 : p3]`. For `ρ ∈ (0, 1)`, `ρ = 1/(1 + e^{−γ})`.
pub fn devadoss_gamma(p0: ProjPoint, p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> Result<ProjPoint> {
    Ok(varkappa(cross_ratio(p0, p1, p2, p3)?))
}

/// Winding number of a closed circle-valued path. The segment from the last
/// sample back to the first closes the loop.
pub fn circle_winding(samples: &[CirclePoint]) -> Result<i64> {
    if samples.len() < 2 {
        return Ok(0);
    }
    let mut total = 0.0;
    let n = samples.len();
    for i in 0..n {
        let step = samples[i].step_to(samples[(i + 1) % n]);
        if step.abs() >= 0.25 {
            return Err(Error::LiftStepTooLarge { index: i, step });
        }
        total += step;
    }
    Ok(total.round() as i64)
}

/// Degree of κ along a closed loop of points.
pub fn kappa_winding(samples: &[ProjPoint]) -> Result<i64> {
    let images: Vec<CirclePoint> = samples.iter().map(|&p| kappa(p)).collect();
    circle_winding(&images)
}

/// `k` points `tan(πs)`, `s = −1/2 + j/k`, tracing P¹(ℝ) once in the positive
/// direction starting from ∞.
pub fn projective_loop(k: usize) -> Vec<ProjPoint> {
    (0..k)
        .map(|j| {
            if j == 0 {
                ProjPoint::INFINITY
            } else {
                ProjPoint::from_angle(std::f64::consts::PI * (-0.5 + j as f64 / k as f64))
            }
        })
        .collect()
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub(crate) fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (1.0 - x), 0.5 * w));
    }
    out
}

/// `∫ κ′ dx` over each of (I), (II), (III).
///
/// Each piece is pulled back to `(0, 1)` by the Möbius map that carries
/// `(0, 1)` onto it (`σ⁻¹`, identity, `σ`), and integrated by Gauss–Legendre.
pub fn kappa_prime_integrals(nodes: usize) -> [f64; 3] {
    let sigma = MobiusMap::sigma();
    let pieces = [sigma.inverse(), MobiusMap::IDENTITY, sigma];
    let rule = gauss_legendre(nodes);
    pieces.map(|phi| {
        let [_, _, c, d] = phi.entries();
        let det = phi.det();
        rule.iter()
            .map(|&(u, w)| {
                let x = phi.apply(ProjPoint::affine(u));
                w * kappa_prime(x) * det / (c * u + d).powi(2)
            })
            .sum()
    })
}
