"""Friedrichs spectra of the scalar Laplacian on truncated cones ``(0, R] x N``, metric ``dr^2 + r^2 g_N``.

Separating variables with ``u(r, y) = r^{-d/2} v(r) e_mu(y)`` reduces the
Laplacian to the radial operator ``-v'' + (nu^2 - 1/4) r^{-2} v`` with
``nu = sqrt(mu + (d-1)^2/4)``. The Friedrichs extension picks the branch
``v ~ r^{nu + 1/2}`` at 0, i.e. ``v = sqrt(r) J_nu(sqrt(lam) r)``, and Dirichlet
at r = R gives ``lam = (j_{nu,i} / R)^2``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable

from ._bessel_py import MAX_ORDER
from .bessel import bessel_zeros
from .errors import BracketError, ModeBudgetError, ParameterError
from .geometry import CrossSection, SpectrumKind

__all__ = [
    "Endpoint",
    "SingularRadialProblem",
    "SpectrumEntry",
    "SpectrumTable",
    "ode_index",
    "classify_endpoint",
    "friedrichs_spectrum",
    "cross_section_spectrum",
    "scalar_cone_spectrum",
]

_MERGE_RTOL = 1e-12


class Endpoint(enum.Enum):
    LIMIT_CIRCLE = "LIMIT_CIRCLE"
    LIMIT_POINT = "LIMIT_POINT"


def ode_index(mu: float, d: int) -> float:
    """Order nu of the radial Bessel problem for a cross-section eigenvalue mu on a d-dimensional N."""
    if mu < 0 or d < 1:
        raise ParameterError(f"ode_index needs mu >= 0 and d >= 1, got mu={mu}, d={d}")
    return math.sqrt(mu + 0.25 * (d - 1) ** 2)


def classify_endpoint(nu: float) -> Endpoint:
    """Weyl classification of r = 0 for ``-v'' + (nu^2 - 1/4) r^-2 v``; nu = 1 counts as limit point."""
    if nu < 0:
        raise ParameterError(f"nu must be >= 0, got {nu}")
    return Endpoint.LIMIT_CIRCLE if nu < 1 else Endpoint.LIMIT_POINT


@dataclass(frozen=True)
class SingularRadialProblem:
    """``-v'' + (nu^2 - 1/4) r^-2 v`` on (0, R], Friedrichs at 0, Dirichlet at R."""

    nu: float
    R: float = 1.0
    outer_bc: str = "dirichlet"
    extension: str = "friedrichs"

    def __post_init__(self):
        if not (self.nu >= 0 and math.isfinite(self.nu)):
            raise ParameterError(f"nu must be a finite number >= 0, got {self.nu!r}")
        if not (self.R > 0 and math.isfinite(self.R)):
            raise ParameterError(f"R must be positive, got {self.R!r}")
        if self.outer_bc != "dirichlet" or self.extension != "friedrichs":
            raise ParameterError("only the Friedrichs extension with Dirichlet at R is supported")

    @property
    def endpoint(self) -> Endpoint:
        return classify_endpoint(self.nu)


def friedrichs_spectrum(problem: SingularRadialProblem, count: int) -> list[float]:
    """The lowest ``count`` eigenvalues ``(j_{nu,i} / R)^2``."""
    if not isinstance(count, int) or count < 1:
        raise ParameterError(f"count must be a positive integer, got {count!r}")
    zeros = bessel_zeros(problem.nu, count)
    if len(zeros) != count:
        raise BracketError(f"found {len(zeros)} of {count} zeros of J_{problem.nu}")
    return [(z / problem.R) ** 2 for z in zeros]


def _merge_modes(modes: Iterable[tuple[float, int]]) -> list[tuple[float, int]]:
    merged: list[list] = []
    for mu, mult in sorted(modes):
        if merged and math.isclose(mu, merged[-1][0], rel_tol=_MERGE_RTOL, abs_tol=1e-300):
            merged[-1][1] += mult
        else:
            merged.append([mu, mult])
    return [(mu, mult) for mu, mult in merged]


def _sphere_harmonics_dim(ell: int, d: int) -> int:
    # harmonic homogeneous polynomials of degree ell in d+1 variables
    lower = math.comb(ell + d - 2, d) if ell >= 2 else 0
    return math.comb(ell + d, d) - lower


def cross_section_spectrum(section: CrossSection, cutoff: float) -> list[tuple[float, int]]:
    """All scalar Laplace eigenvalues mu <= cutoff of ``section`` with their multiplicities."""
    kind = section.spectrum_kind
    if kind is SpectrumKind.ROUND_SPHERE:
        (radius,) = section.params
        d = section.dim
        out = []
        for ell in itertools.count():
            mu = ell * (ell + d - 1) / radius**2
            if mu > cutoff:
                break
            out.append((mu, _sphere_harmonics_dim(ell, d)))
        return out
    if kind is SpectrumKind.FLAT_TORUS:
        sides = section.params
        if cutoff < 0:
            return []
        bounds = [int(math.floor(L * math.sqrt(cutoff) / (2 * math.pi))) for L in sides]
        modes = []
        for m in itertools.product(*(range(-b, b + 1) for b in bounds)):
            mu = sum((2 * math.pi * mi / L) ** 2 for mi, L in zip(m, sides))
            if mu <= cutoff:
                modes.append((mu, 1))
        return _merge_modes(modes)
    return _merge_modes((mu, mult) for mu, mult in section.params if mu <= cutoff)


@dataclass(frozen=True)
class SpectrumEntry:
    eigenvalue: float
    multiplicity: int
    mu: float
    branch: int
    labels: tuple[tuple[float, int], ...] = ()


@dataclass(frozen=True)
class SpectrumTable:
    """Sorted eigenvalues with finite multiplicities.

    ``excluded_bound`` is a lower bound for every eigenvalue coming from a
    cross-section mode that was not examined; it exceeds the last entry.
    """

    entries: tuple[SpectrumEntry, ...]
    excluded_bound: float = math.inf
    section: str = ""
    R: float = 1.0
    modes_examined: int = 0

    def __post_init__(self):
        values = [e.eigenvalue for e in self.entries]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ParameterError("spectrum table eigenvalues must be strictly increasing")
        if any(not (1 <= e.multiplicity < math.inf) for e in self.entries):
            raise ParameterError("multiplicities must be finite positive integers")
        if values and not self.excluded_bound > values[-1]:
            raise ParameterError("table is not certified: an unexamined mode may lie below its maximum")

    @property
    def eigenvalues(self) -> list[float]:
        return [e.eigenvalue for e in self.entries]

    @property
    def multiplicities(self) -> list[int]:
        return [e.multiplicity for e in self.entries]

    def to_dict(self) -> dict:
        return {
            "section": self.section,
            "R": self.R,
            "entries": [
                {"eigenvalue": e.eigenvalue, "multiplicity": e.multiplicity, "mu": e.mu, "branch": e.branch}
                for e in self.entries
            ],
            "excluded_bound": self.excluded_bound,
            "modes_examined": self.modes_examined,
        }

    def to_table(self, sep: str = "\t") -> str:
        lines = [sep.join(("eigenvalue", "multiplicity", "mu", "branch"))]
        for e in self.entries:
            lines.append(sep.join((f"{e.eigenvalue:.12g}", str(e.multiplicity), f"{e.mu:.12g}", str(e.branch))))
        return "\n".join(lines) + "\n"


def _initial_cutoff(section: CrossSection) -> float:
    if section.spectrum_kind is SpectrumKind.ROUND_SPHERE:
        return 4.0 * section.dim / section.params[0] ** 2
    if section.spectrum_kind is SpectrumKind.FLAT_TORUS:
        return 4.0 * (2 * math.pi / min(section.params)) ** 2
    return math.inf


def scalar_cone_spectrum(section: CrossSection, R: float = 1.0, count: int = 5,
                         max_modes: int = 20000) -> SpectrumTable:
    """Lowest eigenvalues (at least ``count`` with multiplicity) of the Friedrichs Laplacian on the cone.

    The cross-section cutoff is doubled until every unexamined mode is
    certified, through monotonicity of j_{nu,1} in nu, to lie above the
    largest reported eigenvalue. The full multiplicity of the last eigenvalue
    is reported, so the total may exceed ``count``.
    """
    if not isinstance(count, int) or count < 1:
        raise ParameterError(f"count must be a positive integer, got {count!r}")
    if not (R > 0 and math.isfinite(R)):
        raise ParameterError(f"R must be positive, got {R!r}")
    d = section.dim
    cutoff = _initial_cutoff(section)
    while True:
        modes = cross_section_spectrum(section, cutoff)
        if not modes:
            raise ModeBudgetError(f"{section.name} has no scalar modes below {cutoff}")
        if len(modes) > max_modes:
            raise ModeBudgetError(
                f"needed more than {max_modes} cross-section modes (cutoff {cutoff:g}) to certify the table"
            )
        candidates = []
        for mu, mult in modes:
            for branch, lam in enumerate(friedrichs_spectrum(SingularRadialProblem(ode_index(mu, d), R), count), 1):
                candidates.append((lam, mult, mu, branch))
        candidates.sort()
        entries: list[list] = []
        total = 0
        for lam, mult, mu, branch in candidates:
            if entries and math.isclose(lam, entries[-1][0], rel_tol=_MERGE_RTOL):
                entries[-1][1] += mult
                entries[-1][4].append((mu, branch))
                total += mult
                continue
            if total >= count:
                break
            entries.append([lam, mult, mu, branch, [(mu, branch)]])
            total += mult
        largest = entries[-1][0]
        if math.isinf(cutoff):
            bound = math.inf
        else:
            nu_c = ode_index(cutoff, d)
            if nu_c > MAX_ORDER:
                raise ModeBudgetError(f"certification needs Bessel orders above {MAX_ORDER:g}")
            bound = (bessel_zeros(nu_c, 1)[0] / R) ** 2
        if bound > largest:
            return SpectrumTable(
                tuple(SpectrumEntry(lam, mult, mu, br, tuple(lb)) for lam, mult, mu, br, lb in entries),
                excluded_bound=bound,
                section=section.name,
                R=R,
                modes_examined=len(modes),
            )
        cutoff *= 2.0
