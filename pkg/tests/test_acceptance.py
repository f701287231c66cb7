"""Acceptance suite: one test per release criterion, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report lines alongside the pass/fail status.
"""

import math
import time

import numpy as np

import bohrlab as bl
from bohrlab import (
    GkH, T31, T32, T33, T34, T35, T36, TA, TildeG0H, W0H,
)
from bohrlab.series import TermRule
from bohrlab.verify import Status

LN2 = math.log(2.0)


def report(cid: str, detail: str) -> None:
    print(f"ACCEPTANCE {cid} [PASS] {detail}")


def test_c1_q1_root_and_closed_form_agreement():
    t0 = time.perf_counter()
    res = bl.solve_radius(T31(0.5), tol=1e-12)
    assert abs(res.r - 0.2) <= 1e-12

    rng = np.random.default_rng(20240811)
    worst = 0.0
    count = 0
    while count < 100:
        beta = float(rng.uniform(0.0, 1.0))
        if not (0.0 < beta < 1.0):
            continue
        count += 1
        solved = bl.solve_radius(T31(beta), tol=1e-12).r
        closed = bl.solve_q1_closed_form(beta)
        worst = max(worst, abs(solved - closed))
    assert worst <= 10.0 * 1e-12
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    report("C1", f"r1(1/2)={res.r:.15f}; worst |bisect-closed| over 100 beta = "
                 f"{worst:.3e}; {elapsed:.2f}s")


def test_c2_theorem_a_radius_and_monotonicity():
    res = bl.solve_radius(TA(1), tol=1e-12)
    golden = math.sqrt(5.0) - 2.0
    assert abs(res.r - golden) <= 1e-12
    roots = [bl.solve_radius(TA(n), tol=1e-10).r for n in range(1, 9)]
    assert all(b > a for a, b in zip(roots, roots[1:]))
    report("C2", f"rA(1)={res.r:.12f} (sqrt5-2={golden:.12f}); "
                 f"rA(1..8) strictly increasing to {roots[-1]:.6f}")


def test_c3_r3_alpha0_vs_independent_oracle():
    t0 = time.perf_counter()
    # independent oracle: plain bisection on the closed form
    # -4 log(1-r) - 2r + 1 - 2 log 2, no series machinery involved
    def closed_form(r):
        return -4.0 * math.log1p(-r) - 2.0 * r + 1.0 - 2.0 * LN2

    lo, hi = 1e-12, 0.9
    assert closed_form(lo) < 0.0 < closed_form(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if closed_form(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    oracle = 0.5 * (lo + hi)

    res = bl.solve_radius(T33(0.0), tol=1e-11)  # series path
    assert abs(res.r - oracle) <= 1e-10
    assert abs(res.r - 0.1632) < 1e-4
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    report("C3", f"series r3(0)={res.r:.12f} vs oracle {oracle:.12f} "
                 f"(diff {abs(res.r - oracle):.2e}); {elapsed:.2f}s")


def test_c4_distance_constants():
    target = 2.0 * LN2 - 1.0
    w = bl.boundary_distance_lower(W0H(0.0), eps=5e-11)
    g = bl.boundary_distance_lower(GkH(1, 1.0), eps=5e-11)
    for enc in (w, g):
        assert enc.contains(target)
        assert enc.width <= 1e-10
    report("C4", f"W0H(0) width={w.width:.2e}, GkH(1,1) width={g.width:.2e}; "
                 f"both enclose 2ln2-1={target:.10f}")


def test_c5_sharpness_suite():
    t0 = time.perf_counter()
    asserted = ([T31(b) for b in (0.1, 0.3, 0.5, 0.7, 0.9)]
                + [T32(b) for b in (0.1, 0.3, 0.5, 0.7, 0.9)]
                + [T33(a) for a in (0.0, 0.25, 0.5, 0.75)]
                + [T34(a) for a in (0.0, 0.25, 0.5, 0.75)]
                + [T35(1, a) for a in (1.0, 2.0)]
                + [T36(1, a) for a in (1.0, 2.0)])
    worst = 0.0
    for problem in asserted:
        gap = bl.sharpness_gap(problem)
        assert abs(gap) <= 1e-6, (problem, gap)
        worst = max(worst, abs(gap))
    # k = 2: attainment by the lacunary extremal is an open point; the
    # gap is computed and reported, not asserted to vanish.
    recorded = {repr(p): bl.sharpness_gap(p) for p in (T35(2, 1.0), T36(2, 1.0))}
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    report("C5", f"22 asserted gaps all <= 1e-6 (worst {worst:.2e}); "
                 f"k=2 recorded: {recorded}; {elapsed:.1f}s")


def test_c6_fuzz_suite():
    t0 = time.perf_counter()
    truncation = 48
    campaigns = [
        (TildeG0H(0.5), (T31(0.5), T32(0.5))),
        (W0H(0.25), (T33(0.25), T34(0.25))),
        (GkH(2, 1.0), (T35(2, 1.0), T36(2, 1.0))),
    ]
    total_checks = 0
    worst = math.inf
    for params, theorems in campaigns:
        ext_mags = bl.extremal_model(params, truncation).coeff_mag_sums()
        radii = {t: 0.9 * bl.solve_radius(t, tol=1e-10).r for t in theorems}
        for i in range(1000):
            model = bl.sample_admissible_model(params, 1000 + i, truncation)
            # termwise extremal dominance for every sampled index
            assert np.all(model.coeff_mag_sums()[2:] <= ext_mags[2:] + 1e-15)
            for theorem in theorems:
                verdict = bl.check_theorem(model, params, theorem, radii[theorem])
                assert verdict.status is not Status.FAILS, (theorem, i, verdict)
                worst = min(worst, verdict.margin)
                total_checks += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    report("C6", f"{total_checks} checks over 3000 samples, zero FAILS, "
                 f"min margin {worst:.4f}; termwise dominance held; {elapsed:.1f}s")


def test_c7_area_quadrature_oracle():
    from test_verify import disk_area_quadrature, model_from

    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(5):
        a_entries = [(n, complex(rng.normal(), rng.normal()) * 0.3) for n in (2, 4, 6)]
        b_entries = [(n, complex(rng.normal(), rng.normal()) * 0.25) for n in (3, 5)]
        model = model_from(a_entries, b_entries, size=7)
        for r in (0.3, 0.6):
            direct = bl.area_ratio(model, r)
            quad = disk_area_quadrature(model, r)
            worst = max(worst, abs(direct - quad))
            assert abs(direct - quad) <= 1e-6
    report("C7", f"area identity vs 2-D quadrature, 5 models x r in (0.3, 0.6): "
                 f"worst |diff| = {worst:.2e}")


def test_c8_theorem_b_spot_checks():
    ident = bl.theorem_b_functional([0.0, 1.0], 1.0 / 3.0)
    assert abs(ident - 43.0 / 81.0) <= 1e-12
    assert ident <= 1.0 + 1e-12

    a = 1.0 / 3.0
    coeffs = [a] + [-(1.0 - a * a) * a ** (n - 1) for n in range(1, 80)]
    mobius = bl.theorem_b_functional(coeffs, 1.0 / 3.0)
    assert abs(mobius - (2.0 / 3.0 + (16.0 / 9.0) * 0.09)) <= 1e-12
    assert mobius <= 1.0 + 1e-12
    report("C8", f"f(z)=z -> {ident:.12f} (=43/81); Moebius(1/3) -> {mobius:.12f}; both <= 1")


def test_c9_series_soundness_and_refinement():
    # Closed forms evaluated at 50 digits: double-precision log1p noise at
    # small r exceeds the width of the tightest enclosures, so the oracle
    # must be more accurate than what it certifies.
    from mpmath import mp

    mp.dps = 50
    families = (
        ("geometric", lambda r: TermRule(
            term=lambda n: r ** n, start=2, ratio_bound=lambda n: r,
            term_block=lambda ns: r ** ns),
         lambda r: mp.mpf(r) ** 2 / (1.0 - mp.mpf(r)), bl.eval_tail_bounded),
        ("log", lambda r: TermRule(
            term=lambda n: r ** n / n, start=2, ratio_bound=lambda n: r,
            term_block=lambda ns: r ** ns / ns),
         lambda r: -mp.log1p(-mp.mpf(r)) - mp.mpf(r), bl.eval_tail_bounded),
        ("alt-log", lambda r: TermRule(
            term=lambda n: (-1.0) ** (n - 1) * r ** n / n, start=2,
            ratio_bound=lambda n: r,
            term_block=lambda ns: np.where(ns % 2 == 0, -1.0, 1.0) * r ** ns / ns),
         lambda r: mp.log1p(mp.mpf(r)) - mp.mpf(r), bl.eval_alternating),
    )
    rng = np.random.default_rng(314159)
    for i in range(1000):
        name, make_rule, closed, evaluator = families[i % 3]
        r = float(rng.uniform(0.0, 0.95))
        if name == "alt-log" and r == 0.0:
            r = 0.01
        eps = float(10.0 ** rng.uniform(-13.0, -3.0))
        coarse = evaluator(make_rule(r), eps)
        truth = closed(r)
        assert coarse.lo <= truth <= coarse.hi, (name, r, eps)
        fine = evaluator(make_rule(r), eps / 10.0)
        assert fine.lo <= truth <= fine.hi
        pad = fine.width + 1e-300
        assert fine.lo >= coarse.lo - pad and fine.hi <= coarse.hi + pad
    report("C9", "1000 random (r, eps) draws: 50-digit closed forms inside "
                 "enclosures; eps/10 refinements contained")
