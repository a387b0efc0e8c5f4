"""Warped-product model metrics ``dr^2 + r^(2a1) g1 + r^(2a2) g2`` and their exponent calculus.

Everything in this module is exact: exponents are :class:`fractions.Fraction`
and no floating point enters the degree bookkeeping.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import DegreeError, ParameterError, UnsupportedModelError

__all__ = [
    "SpectrumKind",
    "CrossSection",
    "WarpedModel",
    "sphere",
    "circle",
    "torus",
    "explicit",
    "as_fraction",
    "critical_degree",
    "beta_exponent",
    "volume_weight",
    "form_norm_weight",
]


class SpectrumKind(enum.Enum):
    ROUND_SPHERE = "round_sphere"
    FLAT_TORUS = "flat_torus"
    EXPLICIT = "explicit"


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal strings like ``"1.5"`` or ``"3/2"`` to a Fraction.

    Floats are converted through their shortest repr so that ``1.5`` becomes
    ``3/2`` rather than a 53-bit binary expansion.
    """
    if isinstance(value, bool):
        raise ParameterError(f"not a number: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParameterError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"not a rational number: {value!r}") from exc
    raise ParameterError(f"not a rational number: {value!r}")


def _sphere_volume(d: int, radius: float) -> float:
    # |S^d| = 2 pi^((d+1)/2) / Gamma((d+1)/2)
    return 2.0 * math.pi ** ((d + 1) / 2) / math.gamma((d + 1) / 2) * radius**d


@dataclass(frozen=True)
class CrossSection:
    """A closed oriented Riemannian factor N.

    ``params`` holds the spectrum generator: the radius for a round sphere,
    the side lengths for a flat torus, or a tuple of ``(eigenvalue,
    multiplicity)`` pairs for an explicit spectrum.
    """

    name: str
    dim: int
    betti: tuple[int, ...]
    volume: float
    spectrum_kind: SpectrumKind
    params: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ParameterError(f"cross-section dimension must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "betti", tuple(int(b) for b in self.betti))
        if len(self.betti) != self.dim + 1:
            raise ParameterError(
                f"betti must have dim+1={self.dim + 1} entries, got {len(self.betti)}"
            )
        if any(b < 0 for b in self.betti) or self.betti[0] < 1:
            raise ParameterError(f"invalid Betti numbers {self.betti}")
        if self.betti != self.betti[::-1]:
            raise ParameterError(f"Betti numbers {self.betti} violate Poincare duality")
        if not (self.volume > 0 and math.isfinite(self.volume)):
            raise ParameterError(f"volume must be positive, got {self.volume!r}")
        if self.spectrum_kind is SpectrumKind.ROUND_SPHERE:
            (radius,) = self.params
            expected = _sphere_volume(self.dim, radius)
        elif self.spectrum_kind is SpectrumKind.FLAT_TORUS:
            if len(self.params) != self.dim:
                raise ParameterError("a flat torus needs one side length per dimension")
            expected = math.prod(self.params)
        else:
            expected = None
        if expected is not None and not math.isclose(self.volume, expected, rel_tol=1e-12):
            raise ParameterError(
                f"volume {self.volume} does not match the standard value {expected} for {self.name}"
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "betti": list(self.betti),
            "volume": self.volume,
            "spectrum_kind": self.spectrum_kind.value,
            "params": [list(p) if isinstance(p, tuple) else p for p in self.params],
        }


def sphere(d: int, radius: float = 1.0) -> CrossSection:
    """Round sphere S^d of the given radius."""
    if not isinstance(d, int) or d < 1:
        raise ParameterError(f"sphere dimension must be a positive integer, got {d!r}")
    if not radius > 0:
        raise ParameterError(f"sphere radius must be positive, got {radius!r}")
    betti = [0] * (d + 1)
    betti[0] = betti[d] = 1
    name = f"S^{d}" if radius == 1 else f"S^{d}(r={radius:g})"
    return CrossSection(name, d, tuple(betti), _sphere_volume(d, radius),
                        SpectrumKind.ROUND_SPHERE, (float(radius),))


def circle(circumference: float = 2 * math.pi) -> CrossSection:
    return sphere(1, circumference / (2 * math.pi))


def torus(sides: Sequence[float]) -> CrossSection:
    """Flat torus R^d / (L1 Z x ... x Ld Z)."""
    sides = tuple(float(s) for s in sides)
    if not sides or any(not s > 0 for s in sides):
        raise ParameterError(f"torus side lengths must be positive, got {sides!r}")
    d = len(sides)
    betti = tuple(math.comb(d, k) for k in range(d + 1))
    return CrossSection(f"T^{d}", d, betti, math.prod(sides), SpectrumKind.FLAT_TORUS, sides)


def explicit(name: str, dim: int, betti: Sequence[int], volume: float,
             modes: Sequence[tuple[float, int]]) -> CrossSection:
    """Cross-section with a user-supplied scalar spectrum ``[(eigenvalue, multiplicity), ...]``."""
    modes = tuple((float(mu), int(mult)) for mu, mult in modes)
    if any(mu < 0 or mult < 1 for mu, mult in modes):
        raise ParameterError("explicit modes need eigenvalue >= 0 and multiplicity >= 1")
    return CrossSection(name, dim, tuple(betti), float(volume), SpectrumKind.EXPLICIT, modes)


@dataclass(frozen=True)
class WarpedModel:
    """``(0, inf) x N1 [x N2]`` with metric ``dr^2 + sum_i r^(2 alpha_i) g_i``."""

    factors: tuple[tuple[CrossSection, Fraction], ...]

    def __post_init__(self):
        factors = tuple((n, as_fraction(a)) for n, a in self.factors)
        if not 1 <= len(factors) <= 2:
            raise UnsupportedModelError(f"models have one or two factors, got {len(factors)}")
        for n, a in factors:
            if a < 1:
                raise ParameterError(f"alpha must be >= 1, got {a} for factor {n.name}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, *pairs) -> "WarpedModel":
        """``WarpedModel.of((sphere(3), 1), (sphere(2), "3/2"))``."""
        return cls(tuple(pairs))

    @property
    def total_dim(self) -> int:
        return 1 + sum(n.dim for n, _ in self.factors)

    def factor(self, index: int) -> tuple[CrossSection, Fraction]:
        """Return the factor with 1-based ``index``."""
        if index not in range(1, len(self.factors) + 1):
            raise ParameterError(f"factor index must be in 1..{len(self.factors)}, got {index!r}")
        return self.factors[index - 1]

    def to_dict(self) -> dict:
        return {
            "factors": [{"section": n.to_dict(), "alpha": str(a)} for n, a in self.factors],
            "total_dim": self.total_dim,
        }


def _two_factor_roles(model: WarpedModel, target: int):
    if len(model.factors) != 2:
        raise UnsupportedModelError("this operation needs a two-factor model")
    n_t, a_t = model.factor(target)
    n_o, a_o = model.factor(3 - target)
    return (n_o.dim, a_o), (n_t.dim, a_t)


def critical_degree(model: WarpedModel, target: int = 2) -> Fraction:
    """Degree k = (a1 n1 + a2 n2) / (2 a2), with the target factor in role 2.

    The result may be non-integral; callers check integrality and range.
    """
    (n1, a1), (n2, a2) = _two_factor_roles(model, target)
    return (a1 * n1 + a2 * n2) / (2 * a2)


def beta_exponent(model: WarpedModel, k: int, target: int = 2) -> Fraction:
    """Radial exponent a1 n1 + a2 (n2 - 2k) of ``psi(r) r^beta`` in ``*(psi dr ^ omega)``."""
    (n1, a1), (n2, a2) = _two_factor_roles(model, target)
    if not isinstance(k, int) or not 0 <= k <= model.total_dim - 1:
        raise DegreeError(f"degree must be in 0..{model.total_dim - 1}, got {k!r}")
    return a1 * n1 + a2 * (n2 - 2 * k)


def volume_weight(model: WarpedModel) -> Fraction:
    """Exponent of r in the volume density, sum of alpha_i n_i."""
    return sum((a * n.dim for n, a in model.factors), Fraction(0))


def form_norm_weight(model: WarpedModel, target: int, k: int) -> Fraction:
    """Exponent of r in |pi^* omega|^2 for a k-form omega pulled back from the target factor."""
    _, a = model.factor(target)
    return -2 * a * k
