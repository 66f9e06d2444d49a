mod common;

use common::{chordal_close, mobius, proj_point, pt};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use threeleaf::projline::{MobiusMap, ProjPoint};
use threeleaf::tangent::{
    cayley, cayley_inv, group_add, group_mul_int, group_neg, l_map, su11_conjugate, torsion_point, Rational,
    UnitComplex,
};

fn unimodular() -> impl Strategy<Value = MobiusMap> {
    mobius().prop_map(|m| {
        let m = if m.det() < 0.0 {
            let [a, b, c, d] = m.entries();
            MobiusMap::new(b, a, d, c).unwrap()
        } else {
            m
        };
        m.unimodular()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(a in proj_point(), b in proj_point(), c in proj_point()) {
        let lhs = group_add(group_add(a, b), c);
        let rhs = group_add(a, group_add(b, c));
        prop_assert!(chordal_close(lhs, rhs, 1e-9));
        prop_assert!(chordal_close(group_add(a, b), group_add(b, a), 1e-12));
        prop_assert!(chordal_close(group_add(a, ProjPoint::ZERO), a, 1e-12));
        prop_assert!(chordal_close(group_add(a, group_neg(a)), ProjPoint::ZERO, 1e-12));
    }

    #[test]
    fn tangent_is_the_exponential(x in -1.5..1.5f64, y in -1.5..1.5f64) {
        let s = x + y;
        prop_assume!((s.cos()).abs() > 1e-3);
        let sum = group_add(pt(x.tan()), pt(y.tan()));
        prop_assert!(chordal_close(sum, pt(s.tan()), 1e-9));
    }

    #[test]
    fn l_transports_addition(a in proj_point(), b in proj_point()) {
        let lhs = l_map(group_add(a, b));
        let rhs = l_map(a) * l_map(b);
        prop_assert!((lhs.re() - rhs.re()).abs() < 1e-12 && (lhs.im() - rhs.im()).abs() < 1e-12);
    }

    #[test]
    fn cayley_round_trip(x in proj_point()) {
        let z = cayley(x);
        prop_assert!(chordal_close(cayley_inv(z.to_complex()).unwrap(), x, 1e-12));
    }

    #[test]
    fn su11_is_unimodular_and_intertwines(m in unimodular(), xs in proptest::array::uniform10(proj_point())) {
        let s = su11_conjugate(&m).unwrap();
        prop_assert!((s.det() - 1.0).abs() < 1e-10);
        for x in xs {
            let lhs = s.apply(cayley(x).conj());
            let rhs = cayley(m.apply(x)).conj();
            prop_assert!((lhs.re() - rhs.re()).abs() < 1e-9 && (lhs.im() - rhs.im()).abs() < 1e-9);
            prop_assert!(chordal_close(s.transport(x), m.apply(x), 1e-9));
        }
    }

    #[test]
    fn su11_images_stay_on_the_circle(m in unimodular(), t in 0.0..1.0f64) {
        let s = su11_conjugate(&m).unwrap();
        let e = UnitComplex::from_turns(t).to_complex();
        let w = (s.u * e + s.v) / (s.v.conj() * e + s.u.conj());
        prop_assert!((w.conj() - w.inv()).norm() < 1e-10);
    }

    #[test]
    fn tripling_formula(w in 0.05..5.0f64) {
        let expected = (3.0 * w * w - 1.0) / (w.powi(3) - 3.0 * w);
        prop_assume!((w.powi(3) - 3.0 * w).abs() > 1e-3);
        prop_assert!(chordal_close(group_mul_int(3, pt(1.0 / w)), pt(expected), 1e-9));
    }
}

#[test]
fn special_values() {
    assert_eq!(group_add(pt(1.0), pt(1.0)), ProjPoint::INFINITY);
    assert_eq!(group_add(ProjPoint::INFINITY, ProjPoint::INFINITY), ProjPoint::ZERO);
    for x in [0.5, -2.0, 3.0, 0.125] {
        assert_eq!(group_add(pt(x), ProjPoint::INFINITY), ProjPoint::new(-1.0, x).unwrap());
    }
}

#[test]
fn infinity_is_the_only_two_torsion_point() {
    let mut order_two = Vec::new();
    for den in 1..=24i64 {
        for num in 0..den {
            let q = Rational::new(num, den).unwrap();
            let p = torsion_point(q);
            if p.chordal(&ProjPoint::ZERO) > 1e-9 && group_add(p, p).chordal(&ProjPoint::ZERO) < 1e-9 {
                order_two.push(p);
            }
        }
    }
    assert!(!order_two.is_empty());
    assert!(order_two.iter().all(|p| p.is_infinite()));
}

#[test]
fn torsion_orders() {
    for den in 1..=24i64 {
        for num in 1..den {
            let q = Rational::new(num, den).unwrap();
            let p = torsion_point(q);
            assert!(group_mul_int(q.den(), p).chordal(&ProjPoint::ZERO) < 1e-9, "{q}");
        }
    }
}

/// Least-squares fit of all monomials of total degree ≤ 9 to `x +_L y` on a
/// Chebyshev grid of radius 0.1 around the origin.
#[test]
fn formal_group_expansion() {
    const R: f64 = 0.1;
    const DEG: usize = 9;
    let nodes: Vec<f64> = (0..15).map(|i| (std::f64::consts::PI * (i as f64 + 0.5) / 15.0).cos()).collect();
    let monomials: Vec<(usize, usize)> = (0..=DEG).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect();
    let rows = nodes.len() * nodes.len();
    let mut a = DMatrix::zeros(rows, monomials.len());
    let mut rhs = DVector::zeros(rows);
    for (r, (s, t)) in nodes.iter().flat_map(|&s| nodes.iter().map(move |&t| (s, t))).enumerate() {
        for (c, &(i, j)) in monomials.iter().enumerate() {
            a[(r, c)] = s.powi(i as i32) * t.powi(j as i32);
        }
        rhs[r] = group_add(pt(R * s), pt(R * t)).value();
    }
    let fit = a.svd(true, true).solve(&rhs, 1e-14).unwrap();
    let coeff = |i: usize, j: usize| {
        let c = monomials.iter().position(|&m| m == (i, j)).unwrap();
        fit[c] / R.powi((i + j) as i32)
    };
    // (x + y)/(1 − xy) = x + y + xy(x + y) + x²y²(x + y) + …
    let expected = |i: usize, j: usize| match (i, j) {
        (1, 0) | (0, 1) | (2, 1) | (1, 2) | (3, 2) | (2, 3) => 1.0,
        _ => 0.0,
    };
    for &(i, j) in monomials.iter().filter(|m| m.0 + m.1 <= 5) {
        assert!((coeff(i, j) - expected(i, j)).abs() < 1e-4, "x^{i} y^{j}: {}", coeff(i, j));
    }
}

#[test]
fn sigma_tilde_entries() {
    let s = su11_conjugate(&MobiusMap::sigma()).unwrap();
    assert!((s.u - Complex64::new(0.5, -1.0)).norm() < 1e-12);
    assert!((s.v - Complex64::new(0.0, 0.5)).norm() < 1e-12);
}
