//! The Albanese Jacobian and the averaged metric `ds² = C(n,3)⁻¹ Σ_S dκ_S²`
//! in chart coordinates.

use nalgebra::{DMatrix, DVector};

use super::{binomial3, chart_cross_ratio, ChartPoint, TripleIndex};
use crate::cover::{kappa, kappa_prime};
use crate::error::{Error, Result};
use crate::projline::ProjPoint;

pub const DEFAULT_STEP: f64 = 1e-6;
pub const DEFAULT_RANK_TOL: f64 = 1e-6;

/// Distance from `u` to the nearest seam: the smallest chordal distance of any
/// `ρ_S` to `{0, 1, ∞}`. Seams are exactly the collisions of marked points.
pub fn seam_distance(u: &ChartPoint) -> Result<f64> {
    let mut best = f64::INFINITY;
    for s in TripleIndex::all(u.n()) {
        let rho = chart_cross_ratio(u.coords(), s)?;
        for mark in [ProjPoint::ZERO, ProjPoint::ONE, ProjPoint::INFINITY] {
            best = best.min(rho.chordal(&mark));
        }
    }
    Ok(best)
}

fn check_seams(u: &ChartPoint, h: f64) -> Result<()> {
    let distance = seam_distance(u)?;
    let margin = 10.0 * h;
    if distance <= margin {
        return Err(Error::SeamTooClose { distance, margin });
    }
    Ok(())
}

fn kappa_vector(coords: &[f64], triples: &[TripleIndex]) -> Result<Vec<f64>> {
    triples.iter().map(|&s| Ok(kappa(chart_cross_ratio(coords, s)?).value())).collect()
}

/// Central-difference Jacobian `∂κ_S/∂u_m`, shape `C(n,3) × (n−2)`.
///
/// The step for coordinate `m` is `h · max(1, |u_m|)`; differences are taken
/// in the lift of ℝ/ℤ nearest the base value.
pub fn albanese_jacobian(u: &ChartPoint, h: f64) -> Result<DMatrix<f64>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step h = {h} must be positive")));
    }
    check_seams(u, h)?;
    let triples = TripleIndex::all(u.n());
    let dim = u.coords().len();
    let mut jac = DMatrix::zeros(triples.len(), dim);
    let mut x = u.coords().to_vec();
    for m in 0..dim {
        let base = x[m];
        let dx = h * base.abs().max(1.0);
        x[m] = base + dx;
        let plus = kappa_vector(&x, &triples)?;
        x[m] = base - dx;
        let minus = kappa_vector(&x, &triples)?;
        x[m] = base;
        for (row, (p, q)) in plus.iter().zip(&minus).enumerate() {
            let mut d = p - q;
            d -= d.round();
            jac[(row, m)] = d / (2.0 * dx);
        }
    }
    Ok(jac)
}

/// Chain-rule Jacobian `κ′(ρ_S) · ∂ρ_S/∂u_m`.
pub fn albanese_jacobian_analytic(u: &ChartPoint) -> Result<DMatrix<f64>> {
    let triples = TripleIndex::all(u.n());
    let dim = u.coords().len();
    let mut jac = DMatrix::zeros(triples.len(), dim);
    for (row, &s) in triples.iter().enumerate() {
        let rho_pt = chart_cross_ratio(u.coords(), s)?;
        let rho = rho_pt.affine_value().ok_or(Error::SeamTooClose { distance: 0.0, margin: 0.0 })?;
        let scale = kappa_prime(rho_pt) * rho;
        // slot values x1, x2, x3 of (0, x_i, x_j, x_k); None is ∞
        let slot = |idx: usize| u.marked_point(idx).affine_value();
        let (x1, x2, x3) = (slot(s.i), slot(s.j), slot(s.k));
        let inv = |p: Option<f64>, q: Option<f64>| match (p, q) {
            (Some(p), Some(q)) => 1.0 / (p - q),
            _ => 0.0,
        };
        let zero = Some(0.0);
        let dlog = [
            (s.i, -inv(zero, x1) - inv(x1, x3)),
            (s.j, inv(x2, x3) + inv(zero, x2)),
            (s.k, -inv(x2, x3) + inv(x1, x3)),
        ];
        for (idx, g) in dlog {
            if (1..=dim).contains(&idx) {
                jac[(row, idx - 1)] = scale * g;
            }
        }
    }
    Ok(jac)
}

/// Singular values in decreasing order.
pub fn singular_values(j: &DMatrix<f64>) -> Result<Vec<f64>> {
    if j.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteEntry);
    }
    if j.is_empty() {
        return Ok(vec![]);
    }
    let mut sv: Vec<f64> = j.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Number of singular values above `rel_tol · σ_max`.
pub fn jacobian_rank(j: &DMatrix<f64>, rel_tol: f64) -> Result<usize> {
    let sv = singular_values(j)?;
    let Some(&smax) = sv.first() else { return Ok(0) };
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > rel_tol * smax).count())
}

/// The averaged metric `G = C(n,3)⁻¹ JᵀJ` at a chart point.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricMatrix(DMatrix<f64>);

impl MetricMatrix {
    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.0[(r, c)]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.0.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    pub fn asymmetry(&self) -> f64 {
        (&self.0 - self.0.transpose()).amax()
    }

    /// Eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.0.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// Eigenvalues bounded below by `−10⁻⁹ ‖G‖`.
    pub fn is_psd(&self) -> bool {
        let norm = self.0.amax();
        self.eigenvalues().first().is_none_or(|&l| l >= -1e-9 * norm)
    }

    pub fn eval(&self, v: &[f64], w: &[f64]) -> Result<f64> {
        for x in [v, w] {
            if x.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
            }
        }
        let v = DVector::from_column_slice(v);
        let w = DVector::from_column_slice(w);
        Ok(v.dot(&(&self.0 * w)))
    }
}

pub fn metric_matrix(u: &ChartPoint, h: f64) -> Result<MetricMatrix> {
    let j = albanese_jacobian(u, h)?;
    Ok(MetricMatrix(j.tr_mul(&j) / binomial3(u.n()) as f64))
}

/// `vᵀ G(u) w`.
pub fn metric_eval(u: &ChartPoint, v: &[f64], w: &[f64], h: f64) -> Result<f64> {
    let dim = u.coords().len();
    for x in [v, w] {
        if x.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: x.len() });
        }
    }
    metric_matrix(u, h)?.eval(v, w)
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

fn local_length(at: Vec<f64>, delta: &[f64], h: f64) -> Result<f64> {
    let g = metric_matrix(&ChartPoint::new(at)?, h)?;
    Ok(g.eval(delta, delta)?.max(0.0).sqrt())
}

/// Length of a sampled curve: `Σ √(Δuᵀ G(mid) Δu)`.
///
/// A segment whose midpoint sits on or near a seam is split in two and each
/// half is measured at its own midpoint, i.e. from its own side of the seam.
pub fn curve_length(samples: &[ChartPoint], h: f64) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument("curve needs at least two samples".into()));
    }
    let dim = samples[0].coords().len();
    let mut total = 0.0;
    for pair in samples.windows(2) {
        let (a, b) = (pair[0].coords(), pair[1].coords());
        if b.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: b.len() });
        }
        let delta: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
        if delta.iter().all(|&d| d == 0.0) {
            continue;
        }
        total += match local_length(lerp(a, b, 0.5), &delta, h) {
            Ok(len) => len,
            Err(Error::SeamTooClose { .. } | Error::InvalidChart(_)) => {
                let half: Vec<f64> = delta.iter().map(|d| 0.5 * d).collect();
                local_length(lerp(a, b, 0.25), &half, h)? + local_length(lerp(a, b, 0.75), &half, h)?
            }
            Err(e) => return Err(e),
        };
    }
    Ok(total)
}
