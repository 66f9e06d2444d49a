//! Homogeneous arithmetic on the real projective line.
//!
//! Points are stored as canonical homogeneous pairs `[a : b]` with
//! `max(|a|, |b|) = 1` and the first nonzero entry of `(b, a)` positive, so
//! `∞ = [1 : 0]` is an ordinary value and no operation here divides.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Chordal distance below which two points are treated as equal.
pub const POINT_TOL: f64 = 1e-12;

/// A point of P¹(ℝ) in canonical homogeneous coordinates.
#[derive(Clone, Copy, PartialEq)]
pub struct ProjPoint {
    a: f64,
    b: f64,
}

impl ProjPoint {
    pub const ZERO: ProjPoint = ProjPoint { a: 0.0, b: 1.0 };
    pub const ONE: ProjPoint = ProjPoint { a: 1.0, b: 1.0 };
    pub const INFINITY: ProjPoint = ProjPoint { a: 1.0, b: 0.0 };

    /// The point `[a : b]`. Fails on `(0, 0)` or non-finite entries.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::ZeroPoint(a, b));
        }
        let scale = a.abs().max(b.abs());
        if scale == 0.0 {
            return Err(Error::ZeroPoint(a, b));
        }
        let (mut a, mut b) = (a / scale, b / scale);
        if b < 0.0 || (b == 0.0 && a < 0.0) {
            a = -a;
            b = -b;
        }
        // normalize signed zeros so equal points compare bitwise equal
        Ok(ProjPoint { a: a + 0.0, b: b + 0.0 })
    }

    /// Embeds an affine real; `±∞` maps to the point at infinity.
    ///
    /// Panics on NaN.
    pub fn affine(x: f64) -> Self {
        Self::try_affine(x).expect("NaN is not a point of the projective line")
    }

    pub fn try_affine(x: f64) -> Result<Self> {
        if x.is_nan() {
            Err(Error::ZeroPoint(x, 1.0))
        } else if x.is_infinite() {
            Ok(Self::INFINITY)
        } else {
            Self::new(x, 1.0)
        }
    }

    /// `tan θ` as the pair `[sin θ : cos θ]`; poles land exactly on ∞ only
    /// when `cos θ` evaluates to zero.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(s, c).expect("sin and cos do not vanish together")
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn is_infinite(&self) -> bool {
        self.b == 0.0
    }

    /// Affine value, `None` at ∞.
    pub fn affine_value(&self) -> Option<f64> {
        (!self.is_infinite()).then(|| self.a / self.b)
    }

    /// Affine value with ∞ reported as `f64::INFINITY`.
    pub fn value(&self) -> f64 {
        self.affine_value().unwrap_or(f64::INFINITY)
    }

    /// `|a_p b_q − a_q b_p| / (‖p‖ ‖q‖)`: sine of the angle between the lines.
    pub fn chordal(&self, other: &ProjPoint) -> f64 {
        let cross = self.a * other.b - other.a * self.b;
        cross.abs() / (self.a.hypot(self.b) * other.a.hypot(other.b))
    }

    pub fn approx_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        self.chordal(other) <= tol
    }

    pub fn neg(&self) -> ProjPoint {
        ProjPoint::new(-self.a, self.b).expect("negation keeps a nonzero pair")
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.a, self.b)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine_value() {
            Some(x) => write!(f, "{x}"),
            None => f.write_str("inf"),
        }
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.affine_value() {
            Some(x) => s.serialize_f64(x),
            None => s.serialize_str("inf"),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Number(f64),
    Text(String),
    Pair([f64; 2]),
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match PointRepr::deserialize(d)? {
            PointRepr::Number(x) => ProjPoint::try_affine(x).map_err(D::Error::custom),
            PointRepr::Text(s) => parse_point(&s).map_err(D::Error::custom),
            PointRepr::Pair([a, b]) => ProjPoint::new(a, b).map_err(D::Error::custom),
        }
    }
}

/// Parses `inf`, a decimal, or an integer ratio `p/q` (kept homogeneous as `[p : q]`).
pub fn parse_point(token: &str) -> Result<ProjPoint> {
    let t = token.trim();
    match t {
        "inf" | "+inf" | "-inf" | "∞" | "infinity" => return Ok(ProjPoint::INFINITY),
        _ => {}
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| Error::Parse(token.into()))?;
        let den: i64 = den.trim().parse().map_err(|_| Error::Parse(token.into()))?;
        return ProjPoint::new(num as f64, den as f64).map_err(|_| Error::Parse(token.into()));
    }
    match t.parse::<f64>() {
        Ok(x) if !x.is_nan() => Ok(ProjPoint::affine(x)),
        _ => Err(Error::Parse(token.into())),
    }
}

/// A real fractional linear transformation `x ↦ (ax + b)/(cx + d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MobiusMap {
    pub const IDENTITY: MobiusMap = MobiusMap { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::DegenerateMatrix(det));
        }
        Ok(MobiusMap { a, b, c, d })
    }

    /// `σ(x) = 1/(1 − x)`, of order three.
    pub fn sigma() -> Self {
        S3Element::Sigma.matrix()
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, p: ProjPoint) -> ProjPoint {
        ProjPoint::new(self.a * p.a + self.b * p.b, self.c * p.a + self.d * p.b)
            .expect("nondegenerate map has trivial kernel")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn scaled(&self, s: f64) -> Result<MobiusMap> {
        MobiusMap::new(s * self.a, s * self.b, s * self.c, s * self.d)
    }

    /// Rescales to determinant ±1.
    pub fn unimodular(&self) -> MobiusMap {
        let s = self.det().abs().sqrt().recip();
        MobiusMap { a: s * self.a, b: s * self.b, c: s * self.c, d: s * self.d }
    }

    /// Equality in PGL₂(ℝ): the entry vectors are parallel.
    pub fn proportional_to(&self, other: &MobiusMap, tol: f64) -> bool {
        let x = self.entries();
        let y = other.entries();
        let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let ny = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let dot: f64 = x.iter().zip(&y).map(|(p, q)| p * q).sum::<f64>() / (nx * ny);
        1.0 - dot.abs() <= tol
    }
}

/// Generators of the Σ₃ action on {0, 1, ∞}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `x ↦ 1 − x`
    Tau01,
    /// `x ↦ (1 − x⁻¹)⁻¹ = x/(x − 1)`
    Tau1Inf,
}

/// One of the six elements of Σ₃ acting on P¹(ℝ) by rational functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum S3Element {
    Identity,
    Tau01,
    Tau1Inf,
    /// `1/(1 − x)`
    Sigma,
    /// `1 − 1/x`
    Sigma2,
    /// `1/x`
    Tau0Inf,
}

impl S3Element {
    pub const ALL: [S3Element; 6] = [
        S3Element::Identity,
        S3Element::Tau01,
        S3Element::Tau1Inf,
        S3Element::Sigma,
        S3Element::Sigma2,
        S3Element::Tau0Inf,
    ];

    // images of (0, 1, ∞) encoded as indices (0, 1, 2)
    fn permutation(self) -> [u8; 3] {
        match self {
            S3Element::Identity => [0, 1, 2],
            S3Element::Tau01 => [1, 0, 2],
            S3Element::Tau1Inf => [0, 2, 1],
            S3Element::Sigma => [1, 2, 0],
            S3Element::Sigma2 => [2, 0, 1],
            S3Element::Tau0Inf => [2, 1, 0],
        }
    }

    fn from_permutation(p: [u8; 3]) -> S3Element {
        *Self::ALL.iter().find(|g| g.permutation() == p).expect("every permutation of three symbols is listed")
    }

    pub fn matrix(self) -> MobiusMap {
        let (a, b, c, d) = match self {
            S3Element::Identity => (1.0, 0.0, 0.0, 1.0),
            S3Element::Tau01 => (-1.0, 1.0, 0.0, 1.0),
            S3Element::Tau1Inf => (1.0, 0.0, 1.0, -1.0),
            S3Element::Sigma => (0.0, 1.0, -1.0, 1.0),
            S3Element::Sigma2 => (1.0, -1.0, 1.0, 0.0),
            S3Element::Tau0Inf => (0.0, 1.0, 1.0, 0.0),
        };
        MobiusMap { a, b, c, d }
    }

    /// `self ∘ other`.
    pub fn compose(self, other: S3Element) -> S3Element {
        let p = self.permutation();
        let q = other.permutation();
        Self::from_permutation([p[q[0] as usize], p[q[1] as usize], p[q[2] as usize]])
    }

    pub fn inverse(self) -> S3Element {
        let p = self.permutation();
        let mut inv = [0u8; 3];
        for (i, &pi) in p.iter().enumerate() {
            inv[pi as usize] = i as u8;
        }
        Self::from_permutation(inv)
    }

    /// Reduces the word `g₁ ∘ g₂ ∘ … ∘ g_k` (rightmost applied first).
    pub fn from_word(word: &[Generator]) -> S3Element {
        word.iter().fold(S3Element::Identity, |acc, g| {
            acc.compose(match g {
                Generator::Tau01 => S3Element::Tau01,
                Generator::Tau1Inf => S3Element::Tau1Inf,
            })
        })
    }

    pub fn apply(self, p: ProjPoint) -> ProjPoint {
        self.matrix().apply(p)
    }
}

#[inline]
fn wedge(p: &ProjPoint, q: &ProjPoint) -> f64 {
    p.a * q.b - q.a * p.b
}

/// `[x₀ : x₁ : x₂ : x₃] = (x₀₁ x₂₃) / (x₀₂ x₁₃)` evaluated homogeneously.
pub fn cross_ratio(p0: ProjPoint, p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> Result<ProjPoint> {
    let num = wedge(&p0, &p1) * wedge(&p2, &p3);
    let den = wedge(&p0, &p2) * wedge(&p1, &p3);
    ProjPoint::new(num, den).map_err(|_| Error::IndeterminateCrossRatio)
}

/// The Möbius map `x ↦ [p0 : x : p2 : p3]`, sending `(p0, p2, p3)` to `(0, 1, ∞)`.
pub fn normalizing_map(p0: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> Result<MobiusMap> {
    if p0.approx_eq(&p2, POINT_TOL) || p0.approx_eq(&p3, POINT_TOL) || p2.approx_eq(&p3, POINT_TOL) {
        return Err(Error::DegenerateAnchor);
    }
    let x23 = wedge(&p2, &p3);
    let x02 = wedge(&p0, &p2);
    MobiusMap::new(-p0.b * x23, p0.a * x23, x02 * p3.b, -x02 * p3.a).map_err(|_| Error::DegenerateAnchor)
}

/// Normalizes a quadruple: returns the map sending `(p0, p2, p3) → (0, 1, ∞)`
/// together with the image of `p1`, which is the cross-ratio.
pub fn normalize_quadruple(
    p0: ProjPoint,
    p1: ProjPoint,
    p2: ProjPoint,
    p3: ProjPoint,
) -> Result<(MobiusMap, ProjPoint)> {
    let m = normalizing_map(p0, p2, p3)?;
    Ok((m, m.apply(p1)))
}
