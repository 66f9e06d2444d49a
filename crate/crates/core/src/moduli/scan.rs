//! Seeded random probe of the rank of the Albanese Jacobian.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metric::{albanese_jacobian, singular_values};
use super::ChartPoint;
use crate::cover::CirclePoint;
use crate::error::{Error, Result};
use crate::fmt::round_sig;
use crate::tangent::stereo_param;

const MAX_DRAWS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub h: f64,
    pub tol: f64,
    pub full_rank_count: usize,
    pub min_rank: usize,
    /// Smallest `σ_min / σ_max` seen over all trials.
    pub worst_sigma_ratio: f64,
    /// A chart point where the rank dropped below `n − 2`, if any.
    pub counterexample: Option<ChartPoint>,
}

struct Trial {
    rank: usize,
    ratio: f64,
    point: ChartPoint,
}

fn draw_chart(rng: &mut ChaCha8Rng, n: usize, h: f64) -> Result<(ChartPoint, nalgebra::DMatrix<f64>)> {
    for _ in 0..MAX_DRAWS {
        let coords: Option<Vec<f64>> =
            (0..n - 2).map(|_| stereo_param(CirclePoint::new(rng.random::<f64>())).affine_value()).collect();
        let Some(coords) = coords else { continue };
        let Ok(u) = ChartPoint::new(coords) else { continue };
        match albanese_jacobian(&u, h) {
            Ok(j) => return Ok((u, j)),
            Err(Error::SeamTooClose { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingExhausted(MAX_DRAWS))
}

fn run_trial(n: usize, seed: u64, trial: usize, h: f64, tol: f64) -> Result<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let (u, mut j) = draw_chart(&mut rng, n, h)?;
    // κ′ decays like u⁻² for large |u|; rescaling the chart coordinate columns
    // leaves the rank unchanged and keeps the singular values comparable.
    for (m, &x) in u.coords().iter().enumerate() {
        j.column_mut(m).scale_mut(1.0 + x * x);
    }
    let sv = singular_values(&j)?;
    let smax = sv[0];
    let rank = if smax == 0.0 { 0 } else { sv.iter().filter(|&&s| s > tol * smax).count() };
    let ratio = if smax == 0.0 { 0.0 } else { sv[n - 3] / smax };
    Ok(Trial { rank, ratio, point: u })
}

/// Samples `trials` charts from the round measure on P¹(ℝ)ⁿ⁻² and records the
/// rank of the Albanese Jacobian at each. Trial `t` draws from the ChaCha8
/// stream `(seed, t)`, so the report does not depend on scheduling.
pub fn rank_scan(n: usize, trials: usize, seed: u64, h: f64, tol: f64) -> Result<ScanReport> {
    if !(3..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {n} outside 3..=8")));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if !(h > 0.0 && h.is_finite()) || !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument("h and tol must be positive".into()));
    }
    let results: Vec<Trial> =
        (0..trials).into_par_iter().map(|t| run_trial(n, seed, t, h, tol)).collect::<Result<_>>()?;
    let full = n - 2;
    let full_rank_count = results.iter().filter(|t| t.rank == full).count();
    let min_rank = results.iter().map(|t| t.rank).min().unwrap_or(full);
    let worst = results.iter().map(|t| t.ratio).fold(f64::INFINITY, f64::min);
    let counterexample = results.iter().find(|t| t.rank < full).map(|t| t.point.clone());
    Ok(ScanReport {
        n,
        trials,
        seed,
        h,
        tol,
        full_rank_count,
        min_rank,
        worst_sigma_ratio: round_sig(worst, 12),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_is_always_rank_one() {
        let r = rank_scan(3, 200, 1, 1e-6, 1e-6).unwrap();
        assert_eq!(r.full_rank_count, 200);
        assert_eq!(r.min_rank, 1);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn deterministic() {
        let a = rank_scan(4, 100, 42, 1e-6, 1e-6).unwrap();
        let b = rank_scan(4, 100, 42, 1e-6, 1e-6).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = rank_scan(4, 100, 43, 1e-6, 1e-6).unwrap();
        assert_ne!(a.worst_sigma_ratio, c.worst_sigma_ratio);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(rank_scan(4, 0, 0, 1e-6, 1e-6), Err(Error::InvalidArgument(_))));
        assert!(matches!(rank_scan(2, 10, 0, 1e-6, 1e-6), Err(Error::InvalidArgument(_))));
        assert!(matches!(rank_scan(9, 10, 0, 1e-6, 1e-6), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn report_field_order() {
        let r = rank_scan(4, 5, 0, 1e-6, 1e-6).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let keys = [
            "\"n\"",
            "\"trials\"",
            "\"seed\"",
            "\"h\"",
            "\"tol\"",
            "\"full_rank_count\"",
            "\"min_rank\"",
            "\"worst_sigma_ratio\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
    }
}
