"""Real projective varieties ``|x|^{2p} = |y|^{2q} z^{2(p-q)}`` and their warped-product normal forms.

``V`` has an isolated singular point at [0,0,1] plus the stratum {[0,y,0]};
the modified ``W`` (extra ``|y|^{2p}`` term) keeps only [0,0,1]. Near [0,0,1]
both are quasi-isometric to ``dr^2 + r^2 g_{S^{n-1}} + r^{2p/q} g_{S^{m-1}}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InconsistencyError, NumericError, ParameterError
from .geometry import WarpedModel, sphere
from .stokes import two_factor_failure

__all__ = [
    "VarietyParams",
    "SingularSet",
    "Distortion",
    "defining_polynomial",
    "gradient",
    "variety_singular_set",
    "quasi_isometry_model",
    "lst_failure_condition",
    "vfg_normal_form",
    "parity_family",
    "sample_chart_points",
    "pullback_metric_check",
    "chart_distortion",
]

FD_STEP = 1e-6
MIN_SAMPLE_RADIUS = 1e-3
MIN_RELATIVE_GRADIENT = 1e-8


@dataclass(frozen=True)
class VarietyParams:
    n: int
    m: int
    p: int
    q: int

    def __post_init__(self):
        problems = []
        for name in ("n", "m", "p", "q"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                problems.append(f"{name} must be a positive integer, got {value!r}")
        if not problems and self.p <= self.q:
            problems.append(f"need p > q, got p={self.p}, q={self.q}")
        if problems:
            raise ParameterError("; ".join(problems))

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def dim(self) -> int:
        """Real dimension of the hypersurface in RP^{n+m}."""
        return self.n + self.m - 1

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "p": self.p, "q": self.q}


def _split(params: VarietyParams, pts: np.ndarray):
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if pts.shape[1] != params.n + params.m + 1:
        raise ParameterError(f"points need {params.n + params.m + 1} homogeneous coordinates")
    return pts[:, : params.n], pts[:, params.n: params.n + params.m], pts[:, -1]


def _terms(params: VarietyParams, pts, which: str):
    """Monomial blocks A, B[, C] with F = A - B - C, and their gradients."""
    x, y, z = _split(params, pts)
    p, q = params.p, params.q
    e = 2 * (p - q)
    nx2 = np.sum(x * x, axis=1)
    ny2 = np.sum(y * y, axis=1)
    zero_y = np.zeros_like(y)
    zero_x = np.zeros_like(x)
    zero_z = np.zeros_like(z)

    a = nx2**p
    grad_a = (np.hstack([2 * p * (nx2 ** (p - 1))[:, None] * x, zero_y, zero_z[:, None]]))
    b = ny2**q * z**e
    grad_b = np.hstack([
        zero_x,
        2 * q * (ny2 ** (q - 1) * z**e)[:, None] * y,
        (e * ny2**q * z ** (e - 1))[:, None],
    ])
    terms = [(a, grad_a), (b, grad_b)]
    if which == "W":
        c = ny2**p
        grad_c = np.hstack([zero_x, 2 * p * (ny2 ** (p - 1))[:, None] * y, zero_z[:, None]])
        terms.append((c, grad_c))
    elif which != "V":
        raise ParameterError(f"variety must be 'V' or 'W', got {which!r}")
    return terms


def defining_polynomial(params: VarietyParams, pts, which: str = "V") -> np.ndarray:
    (a, _), *rest = _terms(params, pts, which)
    return a - sum(t for t, _ in rest)


def gradient(params: VarietyParams, pts, which: str = "V") -> np.ndarray:
    (_, ga), *rest = _terms(params, pts, which)
    return ga - sum(g for _, g in rest)


def _relative_gradient(params, pts, which):
    terms = _terms(params, pts, which)
    (_, ga), *rest = terms
    full = ga - sum(g for _, g in rest)
    scale = sum(np.linalg.norm(g, axis=1) for _, g in terms)
    return np.linalg.norm(full, axis=1) / scale, np.linalg.norm(full, axis=1)


def _random_unit(rng, k, size):
    v = rng.standard_normal((size, k))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _points_on(params: VarietyParams, which: str, rng, size: int) -> np.ndarray:
    """Random points of the variety with x != 0, half in the chart z = 1 near the origin."""
    n, m, p, q = params.n, params.m, params.p, params.q
    y = _random_unit(rng, m, size) * rng.uniform(0.05, 1.5, size)[:, None]
    z = np.ones(size)
    z[size // 2:] = rng.uniform(-1.0, 1.0, size - size // 2)
    z[z == 0] = 0.5
    rhs = np.sum(y * y, axis=1) ** q * z ** (2 * (p - q))
    if which == "W":
        rhs = rhs + np.sum(y * y, axis=1) ** p
    x = _random_unit(rng, n, size) * (rhs ** (1.0 / (2 * p)))[:, None]
    return np.hstack([x, y, z[:, None]])


@dataclass(frozen=True)
class SingularSet:
    which: str
    params: VarietyParams
    isolated: tuple[tuple[float, ...], ...]
    strata: tuple[dict, ...]
    audit: dict

    def to_dict(self) -> dict:
        return {
            "variety": self.which,
            "params": self.params.to_dict(),
            "isolated": [list(pt) for pt in self.isolated],
            "strata": list(self.strata),
            "audit": dict(self.audit),
        }


def variety_singular_set(params: VarietyParams, which: str = "V", samples: int = 2000,
                         seed: int = 0) -> SingularSet:
    """Singular set of V or W with a numeric gradient audit.

    The audit checks that the homogeneous gradient vanishes exactly at the
    listed singular points and is bounded away from zero (relative to its
    monomial parts) at ``samples`` random points of the variety off that set.
    """
    if which not in ("V", "W"):
        raise ParameterError(f"variety must be 'V' or 'W', got {which!r}")
    n, m = params.n, params.m
    apex = tuple([0.0] * (n + m) + [1.0])
    strata = ()
    rng = np.random.default_rng(seed)
    singular_pts = [np.array(apex)]
    if which == "V":
        strata = ({"kind": f"RP^{m - 1}", "dim": m - 1, "points": "[0, y, 0] with y != 0"},)
        ys = _random_unit(rng, m, 64) * rng.uniform(0.1, 3.0, 64)[:, None]
        singular_pts.extend(np.concatenate([np.zeros(n), y, [0.0]]) for y in ys)
    singular_pts = np.array(singular_pts)
    on_set = np.max(np.abs(defining_polynomial(params, singular_pts, which)))
    sing_grad = np.max(np.linalg.norm(gradient(params, singular_pts, which), axis=1))

    pts = _points_on(params, which, rng, samples)
    residual = np.abs(defining_polynomial(params, pts, which))
    size = sum(np.abs(t) for t, _ in _terms(params, pts, which))
    rel_residual = float(np.max(residual / size))
    rel_grad, _ = _relative_gradient(params, pts, which)

    audit = {
        "smooth_samples": int(samples),
        "singular_samples": int(len(singular_pts)),
        "max_singular_gradient": float(sing_grad),
        "max_singular_residual": float(on_set),
        "max_relative_residual": rel_residual,
        "min_relative_gradient": float(np.min(rel_grad)),
    }
    if on_set != 0.0 or sing_grad != 0.0:
        raise InconsistencyError(f"listed singular points of {which} fail the audit: {audit}")
    if rel_residual > 1e-10 or audit["min_relative_gradient"] < MIN_RELATIVE_GRADIENT:
        raise InconsistencyError(f"sampled smooth points of {which} fail the audit: {audit}")
    return SingularSet(which, params, (apex,), strata, audit)


def quasi_isometry_model(params: VarietyParams) -> WarpedModel:
    """``((S^{n-1}, 1), (S^{m-1}, p/q))``."""
    if params.n < 2 or params.m < 2:
        raise ParameterError("the sphere factors S^{n-1}, S^{m-1} need n, m >= 2")
    return WarpedModel.of((sphere(params.n - 1), 1), (sphere(params.m - 1), params.alpha))


def lst_failure_condition(params: VarietyParams) -> tuple[bool, set[int]]:
    """(p(m-1) == q(n-1), {n-1, m-1} or empty), cross-checked against the warped-model detector."""
    holds = params.p * (params.m - 1) == params.q * (params.n - 1)
    degrees = {params.n - 1, params.m - 1} if holds else set()
    if holds:
        detected = two_factor_failure(quasi_isometry_model(params))
        if detected != degrees:
            raise InconsistencyError(f"failure degrees {sorted(degrees)} != model detection {sorted(detected)}")
    return holds, degrees


def vfg_normal_form(k: int, l: int, n: int, m: int) -> WarpedModel:
    """Local model of ``{f(|x|^2) = g(|y|^2)}`` for f, g vanishing to orders k >= l at 0."""
    if not all(isinstance(v, int) and v >= 1 for v in (k, l)):
        raise ParameterError(f"vanishing orders must be positive integers, got {k!r}, {l!r}")
    if k < l:
        raise ParameterError(f"need k >= l, got k={k}, l={l}")
    if n < 2 or m < 2:
        raise ParameterError("the sphere factors need n, m >= 2")
    return WarpedModel.of((sphere(n - 1), 1), (sphere(m - 1), Fraction(k, l)))


def parity_family(k: int) -> VarietyParams:
    """(n, m, p, q) = (2k+2, 2k+1, 2k+1, 2k): failure condition holds and dim V is even."""
    return VarietyParams(2 * k + 2, 2 * k + 1, 2 * k + 1, 2 * k)


def sample_chart_points(params: VarietyParams, count: int, r_min: float = MIN_SAMPLE_RADIUS,
                        r_max: float = 0.5, seed: int = 0) -> list[tuple[float, np.ndarray, np.ndarray]]:
    rng = np.random.default_rng(seed)
    rs = rng.uniform(r_min, r_max, count)
    vs = _random_unit(rng, params.n, count)
    ws = _random_unit(rng, params.m, count)
    return list(zip(rs.tolist(), vs, ws))


def _tangent_basis(v: np.ndarray) -> np.ndarray:
    k = v.shape[0]
    q, _ = np.linalg.qr(np.column_stack([v, np.eye(k)]))
    return q[:, 1:k]


def _exp_sphere(v, basis, s):
    u = basis @ s
    t = np.linalg.norm(u)
    if t == 0:
        return v
    return math.cos(t) * v + math.sin(t) / t * u


@dataclass(frozen=True)
class Distortion:
    max_ratio: float
    min_ratio: float
    max_radial_ratio: float
    bound: float
    samples: int
    r_max: float

    def to_dict(self) -> dict:
        return {
            "max_ratio": self.max_ratio,
            "min_ratio": self.min_ratio,
            "max_radial_ratio": self.max_radial_ratio,
            "bound": self.bound,
            "samples": self.samples,
            "r_max": self.r_max,
        }


def pullback_metric_check(params: VarietyParams,
                          samples: Iterable[tuple[float, Sequence[float], Sequence[float]]]) -> Distortion:
    """Quasi-isometry constant between the induced metric and the warped model at sample points.

    The embedding ``(r, v, w) -> (r v, r^alpha w)`` is differentiated by central
    differences in exponential coordinates on both spheres; the returned
    ratios are generalized eigenvalues of the two Gram matrices.
    """
    return chart_distortion(params.n, params.m, params.alpha, samples)


def chart_distortion(n: int, m: int, alpha,
                     samples: Iterable[tuple[float, Sequence[float], Sequence[float]]]) -> Distortion:
    """:func:`pullback_metric_check` for any exponent alpha >= 1, including the cone alpha = 1."""
    if n < 1 or m < 1:
        raise ParameterError(f"n, m must be positive, got {n}, {m}")
    alpha = float(Fraction(alpha))
    if alpha < 1:
        raise ParameterError(f"alpha must be >= 1, got {alpha}")
    max_ratio, min_ratio, max_radial = 1.0, math.inf, 1.0
    count = 0
    r_max = 0.0
    for r, v, w in samples:
        r = float(r)
        if not 0 < r <= 1:
            raise ParameterError(f"sample radius must lie in (0, 1], got {r}")
        if r < MIN_SAMPLE_RADIUS:
            raise NumericError(f"r = {r} is too small for a finite-difference step of {FD_STEP}")
        v = np.asarray(v, dtype=float)
        w = np.asarray(w, dtype=float)
        v, w = v / np.linalg.norm(v), w / np.linalg.norm(w)
        ev, ew = _tangent_basis(v), _tangent_basis(w)
        dim = 1 + (n - 1) + (m - 1)

        def embed(c):
            rr = c[0]
            return np.concatenate([rr * _exp_sphere(v, ev, c[1:n]), rr**alpha * _exp_sphere(w, ew, c[n:])])

        base = np.zeros(dim)
        base[0] = r
        jac = np.empty((n + m, dim))
        for i in range(dim):
            step = np.zeros(dim)
            step[i] = FD_STEP
            jac[:, i] = (embed(base + step) - embed(base - step)) / (2 * FD_STEP)
        gram = jac.T @ jac
        model_diag = np.concatenate([[1.0], np.full(n - 1, r * r), np.full(m - 1, r ** (2 * alpha))])
        scale = 1.0 / np.sqrt(model_diag)
        sym = gram * scale[:, None] * scale[None, :]
        eig = np.linalg.eigvalsh(0.5 * (sym + sym.T))
        if eig[0] <= 0:
            raise NumericError(f"degenerate finite-difference Jacobian at r = {r}")
        max_ratio = max(max_ratio, float(eig[-1]))
        min_ratio = min(min_ratio, float(eig[0]))
        max_radial = max(max_radial, float(sym[0, 0]))
        r_max = max(r_max, r)
        count += 1
    if count == 0:
        raise ParameterError("pullback_metric_check needs at least one sample")
    bound = 1.0 + alpha**2 * r_max ** (2 * (alpha - 1))
    return Distortion(max_ratio, min_ratio, max_radial, bound, count, r_max)
