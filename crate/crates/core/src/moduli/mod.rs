//! Configurations of `n + 1` marked points on P¹(ℝ), rooted at index 0, and
//! the circle coordinates `κ_S` obtained by forgetting all but three leaves.
//!
//! Charts fix the gauge `(x₀, x_{n−1}, x_n) = (0, 1, ∞)`; the remaining
//! `n − 2` affine values are the coordinates. For `n = 3` the single chart
//! coordinate is the cross-ratio itself.

mod metric;
mod scan;

pub use metric::{
    albanese_jacobian, albanese_jacobian_analytic, curve_length, jacobian_rank, metric_eval, metric_matrix,
    seam_distance, singular_values, MetricMatrix, DEFAULT_RANK_TOL, DEFAULT_STEP,
};
pub use scan::{rank_scan, ScanReport};

use serde::{Deserialize, Serialize};

use crate::cover::{kappa, CirclePoint};
use crate::error::{Error, Result};
use crate::projline::{cross_ratio, normalizing_map, ProjPoint, POINT_TOL};

/// An ordered tuple `(x₀, …, x_n)` of marked points, `x₀` being the root.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationRepr", into = "ConfigurationRepr")]
pub struct Configuration {
    points: Vec<ProjPoint>,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationRepr {
    n: usize,
    points: Vec<ProjPoint>,
}

impl TryFrom<ConfigurationRepr> for Configuration {
    type Error = Error;

    fn try_from(r: ConfigurationRepr) -> Result<Self> {
        if r.points.len() != r.n + 1 {
            return Err(Error::InvalidConfiguration(format!(
                "n = {} needs {} points, got {}",
                r.n,
                r.n + 1,
                r.points.len()
            )));
        }
        Configuration::new(r.points)
    }
}

impl From<Configuration> for ConfigurationRepr {
    fn from(c: Configuration) -> Self {
        ConfigurationRepr { n: c.n(), points: c.points }
    }
}

impl Configuration {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::InvalidConfiguration(format!("need at least 4 points (n >= 3), got {}", points.len())));
        }
        Ok(Configuration { points })
    }

    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> ProjPoint {
        self.points[i]
    }

    /// Smallest chordal distance between two marked points.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                best = best.min(p.chordal(q));
            }
        }
        best
    }

    /// True when two marked points coincide up to the point tolerance, i.e. the
    /// configuration sits on the boundary of the compactified moduli space.
    pub fn near_boundary(&self) -> bool {
        self.min_separation() <= POINT_TOL
    }
}

/// Coordinates `(u₁, …, u_{n−2})` in the gauge `x₀ = 0, x_{n−1} = 1, x_n = ∞`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ChartPoint {
    coords: Vec<f64>,
}

impl TryFrom<Vec<f64>> for ChartPoint {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        ChartPoint::new(v)
    }
}

impl From<ChartPoint> for Vec<f64> {
    fn from(u: ChartPoint) -> Vec<f64> {
        u.coords
    }
}

impl ChartPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidChart("need at least one coordinate (n >= 3)".into()));
        }
        let pts: Vec<ProjPoint> = coords
            .iter()
            .map(|&x| {
                if x.is_finite() {
                    Ok(ProjPoint::affine(x))
                } else {
                    Err(Error::InvalidChart(format!("non-finite coordinate {x}")))
                }
            })
            .collect::<Result<_>>()?;
        for (i, p) in pts.iter().enumerate() {
            if p.approx_eq(&ProjPoint::ZERO, POINT_TOL) || p.approx_eq(&ProjPoint::ONE, POINT_TOL) {
                return Err(Error::InvalidChart(format!("coordinate {} hits a gauge point", i + 1)));
            }
            for (j, q) in pts.iter().enumerate().skip(i + 1) {
                if p.approx_eq(q, POINT_TOL) {
                    return Err(Error::InvalidChart(format!("coordinates {} and {} coincide", i + 1, j + 1)));
                }
            }
        }
        Ok(ChartPoint { coords })
    }

    pub fn n(&self) -> usize {
        self.coords.len() + 2
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The marked point with label `idx` in gauge position.
    pub fn marked_point(&self, idx: usize) -> ProjPoint {
        marked_point(&self.coords, idx)
    }
}

pub(crate) fn marked_point(coords: &[f64], idx: usize) -> ProjPoint {
    let n = coords.len() + 2;
    match idx {
        0 => ProjPoint::ZERO,
        i if i == n => ProjPoint::INFINITY,
        i if i == n - 1 => ProjPoint::ONE,
        i => ProjPoint::affine(coords[i - 1]),
    }
}

/// A three-element subset `{i < j < k}` of the leaves `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TripleIndex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl TripleIndex {
    pub fn new(i: usize, j: usize, k: usize, n: usize) -> Result<Self> {
        if 1 <= i && i < j && j < k && k <= n {
            Ok(TripleIndex { i, j, k })
        } else {
            Err(Error::BadIndex([i, j, k], n))
        }
    }

    /// All `C(n, 3)` triples in lexicographic order.
    pub fn all(n: usize) -> Vec<TripleIndex> {
        let mut out = Vec::with_capacity(binomial3(n));
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    out.push(TripleIndex { i, j, k });
                }
            }
        }
        out
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.i, self.j, self.k]
    }

    fn check(&self, n: usize) -> Result<()> {
        TripleIndex::new(self.i, self.j, self.k, n).map(|_| ())
    }
}

pub fn binomial3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Gauge-fixes a configuration.
pub fn chart_coords(c: &Configuration) -> Result<ChartPoint> {
    let n = c.n();
    let m = normalizing_map(c.point(0), c.point(n - 1), c.point(n))?;
    let coords = (1..=n - 2)
        .map(|i| {
            m.apply(c.point(i))
                .affine_value()
                .ok_or_else(|| Error::InvalidChart(format!("point {i} collides with x_{n}")))
        })
        .collect::<Result<Vec<_>>>()?;
    ChartPoint::new(coords)
}

/// The configuration `(0, u₁, …, u_{n−2}, 1, ∞)`.
pub fn chart_embed(u: &ChartPoint) -> Configuration {
    let pts = (0..=u.n()).map(|i| u.marked_point(i)).collect();
    Configuration { points: pts }
}

/// Forgets every leaf outside `s`, keeping the root: `(x₀, x_i, x_j, x_k)`.
pub fn forgetful(c: &Configuration, s: TripleIndex) -> Result<[ProjPoint; 4]> {
    s.check(c.n())?;
    Ok([c.point(0), c.point(s.i), c.point(s.j), c.point(s.k)])
}

/// `κ_S = κ ∘ ρ ∘ ν_S`.
pub fn kappa_s(c: &Configuration, s: TripleIndex) -> Result<CirclePoint> {
    let [p0, p1, p2, p3] = forgetful(c, s)?;
    Ok(kappa(cross_ratio(p0, p1, p2, p3)?))
}

/// The product of all `κ_S`, in lexicographic order of `S`.
pub fn albanese(c: &Configuration) -> Result<Vec<CirclePoint>> {
    TripleIndex::all(c.n()).into_iter().map(|s| kappa_s(c, s)).collect()
}

/// `κ_S` read directly off chart coordinates.
pub(crate) fn chart_cross_ratio(coords: &[f64], s: TripleIndex) -> Result<ProjPoint> {
    cross_ratio(ProjPoint::ZERO, marked_point(coords, s.i), marked_point(coords, s.j), marked_point(coords, s.k))
}

/// Relabels leaves: the new configuration has `x'_{π(i)} = x_i`; the root is fixed.
/// `perm[i − 1]` holds `π(i)`.
pub fn perm_apply(perm: &[usize], c: &Configuration) -> Result<Configuration> {
    let n = c.n();
    if perm.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut seen = vec![false; n + 1];
    for &p in perm {
        if p == 0 || p > n || seen[p] {
            return Err(Error::NotAPermutation(n));
        }
        seen[p] = true;
    }
    let mut points = c.points.clone();
    for (i, &target) in perm.iter().enumerate() {
        points[target] = c.point(i + 1);
    }
    Ok(Configuration { points })
}

/// The chart transition induced by relabeling leaves with `perm`.
pub fn perm_chart(perm: &[usize], u: &ChartPoint) -> Result<ChartPoint> {
    chart_coords(&perm_apply(perm, &chart_embed(u))?)
}
