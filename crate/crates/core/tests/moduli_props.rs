mod common;

use common::pt;
use proptest::prelude::*;
use proptest::sample::subsequence;
use threeleaf::cover::{devadoss_gamma, kappa, logit_d, varkappa, varkappa_prime, CirclePoint};
use threeleaf::moduli::{
    albanese, albanese_jacobian, albanese_jacobian_analytic, chart_coords, chart_embed, curve_length, forgetful,
    jacobian_rank, kappa_s, metric_eval, metric_matrix, perm_chart, seam_distance, ChartPoint, Configuration,
    TripleIndex, DEFAULT_STEP,
};
use threeleaf::projline::{cross_ratio, MobiusMap, ProjPoint};

const H: f64 = DEFAULT_STEP;

/// Chart points with coordinates in `(−3, 4)` kept away from seams.
fn chart(n: usize) -> impl Strategy<Value = ChartPoint> {
    proptest::collection::vec(-3.0..4.0f64, n - 2).prop_filter_map("near a seam", |v| {
        let u = ChartPoint::new(v).ok()?;
        (seam_distance(&u).ok()? > 1e-2).then_some(u)
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

/// Central-difference differential of `u ↦ φ(u)` applied to `v`.
fn push_forward(perm: &[usize], u: &ChartPoint, v: &[f64]) -> Option<Vec<f64>> {
    let eps = 1e-6;
    let shift = |s: f64| ChartPoint::new(u.coords().iter().zip(v).map(|(x, d)| x + s * eps * d).collect()).ok();
    let plus = perm_chart(perm, &shift(1.0)?).ok()?;
    let minus = perm_chart(perm, &shift(-1.0)?).ok()?;
    Some(plus.coords().iter().zip(minus.coords()).map(|(p, m)| (p - m) / (2.0 * eps)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chart_round_trip(u in (3usize..7).prop_flat_map(chart)) {
        let back = chart_coords(&chart_embed(&u)).unwrap();
        for (x, y) in u.coords().iter().zip(back.coords()) {
            prop_assert!((x - y).abs() <= 1e-14 * x.abs().max(1.0));
        }
    }

    #[test]
    fn gauge_invariance(
        u in (3usize..7).prop_flat_map(chart),
        (a, b, c, d) in (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64),
    ) {
        prop_assume!((a * d - b * c).abs() > 0.2);
        let m = MobiusMap::new(a, b, c, d).unwrap();
        let moved = Configuration::new(chart_embed(&u).points().iter().map(|&p| m.apply(p)).collect()).unwrap();
        let back = chart_coords(&moved).unwrap();
        for (x, y) in u.coords().iter().zip(back.coords()) {
            prop_assert!((x - y).abs() < 1e-9 * x.abs().max(1.0));
        }
    }

    #[test]
    fn forgetful_then_kappa(u in chart(5), s in subsequence((1..=5usize).collect::<Vec<_>>(), 3)) {
        let c = chart_embed(&u);
        let s = TripleIndex::new(s[0], s[1], s[2], 5).unwrap();
        let [p0, p1, p2, p3] = forgetful(&c, s).unwrap();
        let direct = kappa(cross_ratio(p0, p1, p2, p3).unwrap());
        prop_assert_eq!(kappa_s(&c, s).unwrap(), direct);
        // Devadoss length of the forgotten tree is ϰ of the same cross-ratio
        let gamma = devadoss_gamma(p0, p1, p2, p3).unwrap();
        prop_assert_eq!(gamma, varkappa(cross_ratio(p0, p1, p2, p3).unwrap()));
        let via_kappa = logit_d(pt(direct.value())).unwrap().value();
        prop_assert!((via_kappa - gamma.value()).abs() < 1e-8 * gamma.value().abs().max(1.0));
    }

    #[test]
    fn finite_differences_match_chain_rule(u in (3usize..7).prop_flat_map(chart)) {
        let fd = albanese_jacobian(&u, H).unwrap();
        let an = albanese_jacobian_analytic(&u).unwrap();
        let scale = an.amax().max(1e-12);
        prop_assert!((fd - &an).amax() < 1e-5 * scale);
    }

    #[test]
    fn metric_is_symmetric_psd_and_matches_rank(u in (3usize..7).prop_flat_map(chart)) {
        let g = metric_matrix(&u, H).unwrap();
        prop_assert!(g.asymmetry() <= 1e-12 * g.matrix().amax());
        prop_assert!(g.is_psd());
        let j = albanese_jacobian(&u, H).unwrap();
        prop_assert_eq!(jacobian_rank(g.matrix(), 1e-9).unwrap(), jacobian_rank(&j, 1e-6).unwrap());
    }

    #[test]
    fn permutations_act_by_isometries(
        (n, u, perm) in (4usize..7).prop_flat_map(|n| (Just(n), chart(n), permutation(n))),
        seed in proptest::collection::vec(-1.0..1.0f64, 4),
    ) {
        let v = &seed[..n - 2];
        let Ok(u2) = perm_chart(&perm, &u) else { return Ok(()) };
        prop_assume!(seam_distance(&u2).unwrap() > 1e-2);
        let v2 = push_forward(&perm, &u, v).unwrap();
        let before = metric_eval(&u, v, v, H).unwrap();
        let after = metric_eval(&u2, &v2, &v2, H).unwrap();
        prop_assert!((before - after).abs() <= 1e-4 * before, "{before} vs {after}");
    }

    #[test]
    fn n3_metric_is_dkappa_squared(x in -3.0..4.0f64) {
        let Ok(u) = ChartPoint::new(vec![x]) else { return Ok(()) };
        prop_assume!(seam_distance(&u).unwrap() > 1e-2);
        let k = threeleaf::cover::kappa_prime(pt(x));
        let g = metric_eval(&u, &[1.0], &[1.0], H).unwrap();
        prop_assert!((g - k * k).abs() < 1e-6 * k * k);
        // dγ = D′(κ) dκ
        let d = 1e-6;
        let gp = varkappa(pt(x + d)).value();
        let gm = varkappa(pt(x - d)).value();
        let fd = (gp - gm) / (2.0 * d);
        prop_assert!((fd - varkappa_prime(pt(x))).abs() < 1e-5 * fd.abs().max(1.0));
    }
}

#[test]
fn collisions_send_kappa_to_zero() {
    let mut last = f64::INFINITY;
    for k in 1..=12 {
        let eps = 10f64.powi(-k);
        let c =
            Configuration::new(vec![pt(0.0), pt(0.3), pt(0.3 + eps), pt(0.7), pt(1.0), ProjPoint::INFINITY]).unwrap();
        for s in TripleIndex::all(5).into_iter().filter(|s| s.i == 1 && s.j == 2) {
            let d = kappa_s(&c, s).unwrap().distance(CirclePoint::new(0.0));
            assert!(d < 10.0 * eps, "{s:?}: {d}");
        }
        let d = kappa_s(&c, TripleIndex::new(1, 2, 3, 5).unwrap()).unwrap().distance(CirclePoint::new(0.0));
        assert!(d <= last);
        last = d;
    }
}

#[test]
fn albanese_entries_follow_relabeling() {
    // swapping leaves 1 and 2 sends κ_{12k} to −κ_{12k}
    let c = chart_embed(&ChartPoint::new(vec![0.2, 0.45, 3.0]).unwrap());
    let swapped = threeleaf::moduli::perm_apply(&[2, 1, 3, 4, 5], &c).unwrap();
    let (a, b) = (albanese(&c).unwrap(), albanese(&swapped).unwrap());
    for (s, (x, y)) in TripleIndex::all(5).iter().zip(a.iter().zip(&b)) {
        if s.i == 1 && s.j == 2 {
            assert!(x.distance(CirclePoint::new(-y.value())) < 1e-12);
        }
    }
}

#[test]
fn branch_two_segment_length_is_euclidean() {
    let samples: Vec<ChartPoint> = (0..=100).map(|i| ChartPoint::new(vec![0.3 + 0.003 * i as f64]).unwrap()).collect();
    let len = curve_length(&samples, H).unwrap();
    assert!((len - 0.3).abs() < 1e-6);
    let (head, tail) = samples.split_at(40);
    let mut first = head.to_vec();
    first.push(tail[0].clone());
    let split = curve_length(&first, H).unwrap() + curve_length(tail, H).unwrap();
    assert!((split - len).abs() < 1e-12);
}
