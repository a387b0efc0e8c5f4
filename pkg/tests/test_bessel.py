import math
import os
import subprocess
import sys

import mpmath
import numpy as np
import pytest
import scipy.special as sp

from oracles import bessel_series

ORDERS = [0.0, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 25.5, 60.0]
ARGS = [1e-3, 0.7, 2.0, 2.5, 5.0, 11.3, 29.0, 31.0, 45.0, 80.0, 200.0, 1e4]


def _mp(nu, x):
    with mpmath.workdps(40):
        return float(mpmath.besselj(nu, x))


def test_special_values(kernel):
    assert kernel.bessel_j(0, 0) == 1.0
    assert kernel.bessel_j(2.5, 0) == 0.0
    assert abs(kernel.bessel_j(0.5, math.pi)) < 1e-10
    assert abs(kernel.bessel_j(0, 2.404826)) < 1e-6
    x = 3.3
    assert kernel.bessel_j(0.5, x) == pytest.approx(math.sqrt(2 / (math.pi * x)) * math.sin(x), rel=1e-13)
    assert kernel.bessel_j(1.5, x) == pytest.approx(
        math.sqrt(2 / (math.pi * x)) * (math.sin(x) / x - math.cos(x)), rel=1e-12)


def test_j0_zero_against_power_series(kernel):
    j01 = kernel.bessel_zeros(0, 1)[0]
    assert abs(bessel_series(0, j01)) < 1e-14
    assert abs(bessel_series(0, 2.404826)) < 1e-6


@pytest.mark.parametrize("nu", ORDERS)
def test_against_mpmath(kernel, nu):
    for x in ARGS:
        ref = _mp(nu, x)
        got = kernel.bessel_j(nu, x)
        # relative near extrema, absolute near zeros of J
        scale = max(abs(ref), 1e-3 * math.sqrt(2 / (math.pi * max(x, nu, 1.0))))
        assert abs(got - ref) <= 1e-10 * scale, (nu, x, got, ref)


def test_against_scipy_grid(kernel):
    rng = np.random.default_rng(7)
    nus = rng.uniform(0, 40, 300)
    xs = rng.uniform(0, 120, 300)
    got = np.array([kernel.bessel_j(n, x) for n, x in zip(nus, xs)])
    ref = sp.jv(nus, xs)
    envelope = np.maximum(np.abs(ref), 1e-4 / np.sqrt(1 + xs))
    assert np.max(np.abs(got - ref) / envelope) < 1e-9


def test_domain_and_overflow_guards(kernel):
    with pytest.raises(ValueError):
        kernel.bessel_j(-1, 1.0)
    with pytest.raises(ValueError):
        kernel.bessel_j(0, -1.0)
    with pytest.raises(OverflowError):
        kernel.bessel_j(500.0, 1e3)
    assert kernel.bessel_j(0, math.inf) == 0.0
    with pytest.raises(OverflowError):
        kernel.bessel_zeros(101.0, 1)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 7.0, 33.3])
def test_zeros_against_scipy_and_mpmath(kernel, nu):
    zeros = kernel.bessel_zeros(nu, 6)
    assert len(zeros) == 6
    assert all(b - a > math.pi * 0.9 for a, b in zip(zeros, zeros[1:]))
    if float(nu).is_integer():
        ref = sp.jn_zeros(int(nu), 6)
    else:
        with mpmath.workdps(30):
            ref = [float(mpmath.besseljzero(nu, i)) for i in range(1, 7)]
    np.testing.assert_allclose(zeros, ref, rtol=1e-12)


def test_half_integer_zeros_are_multiples_of_pi(kernel):
    zs = kernel.bessel_zeros(0.5, 5)
    np.testing.assert_allclose(zs, [math.pi * i for i in range(1, 6)], rtol=1e-14)


def test_zero_scan_limits(kernel):
    assert kernel.bessel_zeros(0, 0) == []
    zs = kernel.bessel_zeros(0, 100, xmax=10.0)
    assert len(zs) == 3 and zs[-1] < 10.0


def test_backends_agree():
    from l2stokes import bessel
    ext = bessel.compiled_backend()
    if ext is None:
        pytest.skip("compiled kernel not built")
    py = bessel.python_backend()
    for nu in ORDERS:
        for x in ARGS:
            a, b = py.bessel_j(nu, x), ext.bessel_j(nu, x)
            assert a == pytest.approx(b, rel=1e-13, abs=1e-300)
        np.testing.assert_allclose(py.bessel_zeros(nu, 4), ext.bessel_zeros(nu, 4), rtol=1e-14)


def test_env_var_forces_fallback():
    code = "from l2stokes import bessel; print(bessel.BACKEND)"
    env = dict(os.environ, L2STOKES_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_tiny_orders_behave_like_order_zero(kernel):
    for nu in (5e-324, 1e-300, 1e-12):
        assert kernel.bessel_j(nu, 5e-324) == pytest.approx(1.0)
        np.testing.assert_allclose(kernel.bessel_zeros(nu, 3), sp.jn_zeros(0, 3), rtol=1e-10)
