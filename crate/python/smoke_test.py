"""Smoke test for the threeleaf Python extension.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`.
"""

import math

import threeleaf as tl


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    assert tl.cross_ratio(0, 0.5, 1, "inf") == 0.5
    assert tl.cross_ratio(0, "1/3", "1/2", math.inf) == tl.cross_ratio(0, 1 / 3, 0.5, "inf")
    assert tl.group_add(1, 1) == math.inf
    assert tl.group_add("inf", "inf") == 0.0
    assert tl.group_mul(3, 0.5) == 5.5
    assert close(tl.torsion_point(1, 8), math.tan(math.pi / 8))

    assert tl.kappa(2.0) == 0.5 and tl.kappa(-1.0) == 0.5
    assert tl.interval(-3) == "I"
    assert close(tl.devadoss_gamma(0, 1 / (1 + math.exp(-1.0)), 1, "inf"), 1.0, 1e-9)
    loop = [math.inf] + [math.tan(math.pi * (-0.5 + j / 1000)) for j in range(1, 1000)]
    assert tl.kappa_winding(loop) == 3

    p = tl.ProjPoint(1, 0)
    assert p.is_infinite() and tl.kappa(p) == 0.0
    sigma = tl.MobiusMap.sigma()
    assert sigma.apply(0) == 1.0 and sigma.apply(1) == math.inf
    (ur, ui), (vr, vi) = tl.su11_conjugate(sigma)
    assert (ur, ui, vr, vi) == (0.5, -1.0, 0.0, 0.5)
    re, im = tl.cayley("inf")
    assert close(re, 0.0) and close(im, 1.0)

    assert tl.chart_coords([-1, 0, 1, "inf"]) == [0.5]
    assert len(tl.albanese([0, 0.2, 0.6, 1, "inf"])) == 4
    g = tl.metric_matrix([0.3, 0.7])
    assert len(g) == 2 and close(g[0][1], g[1][0])
    assert tl.jacobian_rank(tl.albanese_jacobian([0.3, 0.7])) == 2
    assert close(tl.curve_length([[0.3 + 0.01 * i] for i in range(31)]), 0.3, 1e-6)

    report = tl.rank_scan(4, 20, seed=1)
    assert report["min_rank"] == 2 and report["counterexample"] is None
    assert report == tl.rank_scan(4, 20, seed=1)

    try:
        tl.cross_ratio(0, 0, 0, "inf")
    except ArithmeticError:
        pass
    else:
        raise AssertionError("expected ArithmeticError")
    try:
        tl.kappa("abc")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("threeleaf smoke test: ok")


if __name__ == "__main__":
    main()
