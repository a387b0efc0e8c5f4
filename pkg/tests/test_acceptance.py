"""Acceptance suite: one check per criterion, each printing a single PASS/FAIL line.

Run under pytest (the lines are repeated in the terminal summary) or directly
with ``python3 tests/test_acceptance.py``.
"""
import math
import os
import sys
import time

import scipy.special as sp

sys.path.insert(0, os.path.dirname(__file__))

from oracles import fd_friedrichs_eigenvalues  # noqa: E402

import test_properties as props  # noqa: E402
from l2stokes.defect import CubicCutoff, CutoffPair, HarmonicFormSpec, defect  # noqa: E402
from l2stokes.geometry import WarpedModel, circle, sphere  # noqa: E402
from l2stokes.spectrum import SingularRadialProblem, friedrichs_spectrum, scalar_cone_spectrum  # noqa: E402
from l2stokes.stokes import (  # noqa: E402
    complex_variety_report,
    discreteness_degrees,
    friedrichs_identity_degrees,
    propagate_uniqueness,
    two_factor_failure,
)
from l2stokes.varieties import (  # noqa: E402
    VarietyParams,
    chart_distortion,
    pullback_metric_check,
    sample_chart_points,
    variety_singular_set,
)

LINES: list[str] = []


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}" + (f" ({detail})" if detail else "")
    LINES.append(line)
    print(line)
    return ok


def best_time(fn, repeat=50):
    """Best-of-``repeat`` wall time in seconds; the minimum filters scheduler noise."""
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def wall(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_01_two_factor_failure():
    s1, s2, s3 = sphere(1), sphere(2), sphere(3)
    torus_cone = WarpedModel.of((s1, 1), (s1, 1))
    warped = WarpedModel.of((s3, 1), (s2, "3/2"))
    a, b = two_factor_failure(torus_cone), two_factor_failure(warped)
    t = max(best_time(lambda: two_factor_failure(torus_cone)), best_time(lambda: two_factor_failure(warped)))
    ok = a == {1} and b == {2, 3} and t < 1e-3
    assert report(1, "two-factor failure sets {1} and {2,3}", ok, f"got {sorted(a)}, {sorted(b)}; {t * 1e6:.0f} us")


def test_criterion_02_defect_numerics():
    s1 = sphere(1)
    model = WarpedModel.of((s1, 1), (s1, 1))
    target = 4 * math.pi**2

    def work():
        crit = defect(model)
        off = defect(model, form=HarmonicFormSpec.unit(model, 2, 0))
        other_phi = CutoffPair(CubicCutoff(1.0, 0.3, 0.8), CubicCutoff(1.0, 0.125, 0.25))
        swapped = defect(model, other_phi)
        return crit, off, swapped

    (crit, off, swapped), elapsed = wall(work)
    rel = abs(abs(crit.defect) - target) / target
    swap_rel = abs(swapped.defect - crit.defect) / abs(crit.defect)
    ok = rel <= 1e-6 and off.beta == 2 and abs(off.defect) <= 1e-8 and swap_rel <= 2e-6 and elapsed < 1.0
    assert report(2, "torus-cone defect 4 pi^2, beta = 2 null, phi-independence", ok,
                  f"rel {rel:.1e}, k=0 {abs(off.defect):.1e}, swap {swap_rel:.1e}, {elapsed:.3f} s")


def test_criterion_03_complex_bookkeeping():
    r2, r3 = complex_variety_report(2), complex_variety_report(3)
    ok = r2.unique == {0, 3, 4} and r2.unknown == {1, 2} and r3.unique == {0, 1, 4, 5, 6}
    mismatch = [n for n in range(1, 11)
                if propagate_uniqueness(2 * n, set(range(n - 1))) != complex_variety_report(n).unique]
    t = max(best_time(lambda: complex_variety_report(n)) for n in (2, 3, 10))
    t = max(t, best_time(lambda: propagate_uniqueness(20, set(range(9)))))
    ok = ok and not mismatch and t < 1e-3
    assert report(3, "complex variety unique degrees reproduced by propagation", ok,
                  f"mismatch at n={mismatch}; {t * 1e6:.0f} us")


def test_criterion_04_discreteness_degrees():
    bad = [n for n in range(1, 11)
           if not (discreteness_degrees(n) == friedrichs_identity_degrees(n)
                   == set(range(2 * n + 1)) - {n - 1, n, n + 1})]
    assert report(4, "discreteness degrees {0..2n} minus {n-1, n, n+1}", not bad, f"bad n={bad}")


def test_criterion_05_circle_cone_spectrum():
    table, elapsed = wall(lambda: scalar_cone_spectrum(circle(2 * math.pi), 1.0, 5))
    expected = [(5.78319, 1), (14.68197, 2), (26.37462, 2)]
    bessel = [sp.jn_zeros(0, 1)[0] ** 2, sp.jn_zeros(1, 1)[0] ** 2, sp.jn_zeros(2, 1)[0] ** 2]
    fd = [fd_friedrichs_eigenvalues(nu, 1, 10_000)[0] for nu in (0.0, 1.0, 2.0)]
    vals = table.eigenvalues
    ok = table.multiplicities == [m for _, m in expected] and len(vals) == 3
    ok = ok and all(abs(v - b) <= 1e-4 * b for v, b in zip(vals, bessel))
    ok = ok and all(abs(v - e) <= 1e-5 * e for v, (e, _) in zip(vals, expected))
    fd_err = max(abs(v - f) / f for v, f in zip(vals, fd))
    ok = ok and fd_err <= 1e-3 and all(b > a for a, b in zip(vals, vals[1:])) and elapsed < 5.0
    assert report(5, "circle cone spectrum 5.78319(1), 14.68197(2), 26.37462(2)", ok,
                  f"fd rel {fd_err:.1e}; {elapsed:.3f} s")


def test_criterion_06_flat_ball():
    table, elapsed = wall(lambda: scalar_cone_spectrum(sphere(2), 1.0, 1))
    rel = abs(table.eigenvalues[0] - math.pi**2) / math.pi**2
    ok = rel <= 1e-6 and table.multiplicities == [1] and elapsed < 1.0
    assert report(6, "unit ball in R^3 ground state pi^2", ok, f"rel {rel:.1e}; {elapsed:.3f} s")


def test_criterion_07_sine_branch():
    vals = friedrichs_spectrum(SingularRadialProblem(0.5, 1.0), 3)
    rel = max(abs(v - (i * math.pi) ** 2) / (i * math.pi) ** 2 for i, v in enumerate(vals, 1))
    assert report(7, "nu = 1/2 gives pi^2, 4 pi^2, 9 pi^2", rel <= 1e-10, f"rel {rel:.1e}")


def test_criterion_08_quasi_isometry():
    params = VarietyParams(4, 3, 3, 2)

    def work():
        samples = sample_chart_points(params, 1000, r_min=1e-3, r_max=0.5)
        return pullback_metric_check(params, samples), chart_distortion(4, 3, 1, samples)

    (dist, cone), elapsed = wall(work)
    alpha, r_max = 1.5, 0.5
    bound = (1 + alpha**2 * r_max ** (2 * (alpha - 1))) * (1 + 1e-4)
    radial_err = abs(cone.max_radial_ratio - 2.0)
    ok = dist.samples == 1000 and dist.max_ratio <= bound and radial_err <= 1e-8 and elapsed < 10.0
    assert report(8, "quasi-isometry distortion within 1 + alpha^2 r^(2(alpha-1))", ok,
                  f"max {dist.max_ratio:.6f} vs {bound:.6f}, alpha=1 radial err {radial_err:.1e}; {elapsed:.2f} s")


def test_criterion_09_singular_sets():
    params = VarietyParams(4, 3, 3, 2)
    v = variety_singular_set(params, "V", samples=1000)
    w = variety_singular_set(params, "W", samples=1000)
    apex = (0.0,) * 7 + (1.0,)
    ok = v.isolated == (apex,) and [s["kind"] for s in v.strata] == ["RP^2"]
    ok = ok and w.isolated == (apex,) and w.strata == ()
    ok = ok and min(v.audit["smooth_samples"], w.audit["smooth_samples"]) >= 1000
    ok = ok and v.audit["max_singular_gradient"] == 0.0 and w.audit["max_singular_gradient"] == 0.0
    assert report(9, "singular sets: V = apex + RP^2, W = apex", ok,
                  f"min rel gradient {min(v.audit['min_relative_gradient'], w.audit['min_relative_gradient']):.3f}")


PROPERTIES = [
    ("scale", props.test_critical_degree_is_scale_invariant),
    ("beta", props.test_beta_vanishes_exactly_at_critical_degree),
    ("ftc", props.test_quadrature_fundamental_theorem),
    ("interlace", props.test_bessel_zeros_interlace),
    ("monotone", props.test_first_zero_increases_with_order),
    ("scaling", props.test_radius_scaling_law),
    ("propagate", props.test_propagation_closure),
]


def test_criterion_10_property_suites():
    props.CALLS.clear()
    failures = []
    for name, fn in PROPERTIES:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - every failure is reported, then asserted
            failures.append(f"{name}: {type(exc).__name__}")
    short = {name: props.CALLS[name] for name, _ in PROPERTIES if props.CALLS[name] < props.MIN_EXAMPLES}
    ok = not failures and not short
    counts = ", ".join(f"{name} {props.CALLS[name]}" for name, _ in PROPERTIES)
    assert report(10, "randomized property suites, >= 100 cases each", ok,
                  f"{counts}" + (f"; failures {failures}" if failures else "") + (f"; short {short}" if short else ""))


if __name__ == "__main__":
    results = []
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
                results.append(True)
            except AssertionError:
                results.append(False)
    sys.exit(0 if all(results) else 1)
