"""Integration-by-parts defect for the test forms mu = phi omega, nu = psi dr ^ omega.

On a two-factor warped model, with omega a harmonic k-form on the target factor,
both pairings reduce to one-dimensional radial integrals:

    (d mu, nu)     = Vol(N_other) |omega|^2 * int phi' psi r^beta dr
    (mu, d^t nu)   = Vol(N_other) |omega|^2 * int phi c r^beta dr,
    c(r)           = -(psi'(r) + beta psi(r) / r) = -r^-beta (psi r^beta)'.

Orientation ``dr ^ dvol_1 ^ dvol_2`` is taken as positive. With that choice the
defect ``(d mu, nu) - (mu, d^t nu)`` equals ``-Vol(N_other) |omega|^2 psi(0)``
when beta = 0 and vanishes when beta > 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegreeError, ParameterError, SingularEvaluationError, UnsupportedModelError
from .geometry import WarpedModel, beta_exponent
from .quadrature import quadrature

__all__ = [
    "SIGN",
    "CubicCutoff",
    "CutoffPair",
    "HarmonicFormSpec",
    "RadialCoefficient",
    "DefectResult",
    "codifferential_coefficient",
    "defect",
    "default_cutoffs",
]

SIGN = -1


def _smoothstep_down(t: float) -> float:
    return 1.0 - t * t * (3.0 - 2.0 * t)


@dataclass(frozen=True)
class CubicCutoff:
    """``height`` on [0, flat_end], cubic Hermite descent to 0 on [flat_end, support_end], then 0.

    C^1 everywhere, C^inf away from the two knots.
    """

    height: float = 1.0
    flat_end: float = 0.25
    support_end: float = 0.5

    def __post_init__(self):
        if not 0 <= self.flat_end < self.support_end or not math.isfinite(self.support_end):
            raise ParameterError(
                f"cutoff needs 0 <= flat_end < support_end, got {self.flat_end}, {self.support_end}"
            )
        if not math.isfinite(self.height):
            raise ParameterError("cutoff height must be finite")

    @property
    def knots(self) -> tuple[float, float]:
        return (self.flat_end, self.support_end)

    def __call__(self, r: float) -> float:
        if r <= self.flat_end:
            return self.height
        if r >= self.support_end:
            return 0.0
        t = (r - self.flat_end) / (self.support_end - self.flat_end)
        return self.height * _smoothstep_down(t)

    def derivative(self, r: float) -> float:
        if r <= self.flat_end or r >= self.support_end:
            return 0.0
        w = self.support_end - self.flat_end
        t = (r - self.flat_end) / w
        return self.height * 6.0 * t * (t - 1.0) / w

    def scaled(self, c: float) -> "CubicCutoff":
        return CubicCutoff(self.height * c, self.flat_end, self.support_end)

    def to_dict(self) -> dict:
        return {"height": self.height, "flat_end": self.flat_end, "support_end": self.support_end}


@dataclass(frozen=True)
class CutoffPair:
    phi: CubicCutoff = field(default_factory=lambda: CubicCutoff(1.0, 0.25, 0.5))
    psi: CubicCutoff = field(default_factory=lambda: CubicCutoff(1.0, 0.125, 0.25))

    def __post_init__(self):
        if self.phi.height != 1.0:
            raise ParameterError("phi must equal 1 near r = 0")
        if self.psi.support_end > self.phi.flat_end:
            raise ParameterError(
                f"supp psi = [0, {self.psi.support_end}] is not inside {{phi = 1}} = [0, {self.phi.flat_end}]"
            )

    def to_dict(self) -> dict:
        return {"phi": self.phi.to_dict(), "psi": self.psi.to_dict()}


def default_cutoffs() -> CutoffPair:
    return CutoffPair()


@dataclass(frozen=True)
class HarmonicFormSpec:
    target: int
    degree: int
    norm_sq: float

    def __post_init__(self):
        if not self.norm_sq > 0:
            raise ParameterError(f"norm_sq must be positive, got {self.norm_sq!r}")

    @classmethod
    def unit(cls, model: WarpedModel, target: int, degree: int) -> "HarmonicFormSpec":
        """A parallel harmonic form of unit pointwise norm, so |omega|^2 = Vol(N_target).

        Such forms exist on flat tori in every degree and on spheres in degrees 0 and dim.
        """
        section, _ = model.factor(target)
        return cls(target, degree, section.volume)

    def validate(self, model: WarpedModel) -> None:
        section, _ = model.factor(self.target)
        if not isinstance(self.degree, int) or not 0 <= self.degree <= section.dim:
            raise DegreeError(f"form degree {self.degree!r} outside 0..{section.dim} of {section.name}")
        if section.betti[self.degree] < 1:
            raise DegreeError(f"{section.name} has no harmonic {self.degree}-forms")

    def to_dict(self) -> dict:
        return {"target": self.target, "degree": self.degree, "norm_sq": self.norm_sq}


@dataclass(frozen=True)
class RadialCoefficient:
    """``c(r) = -(psi'(r) + beta psi(r)/r)`` so that ``d^t nu = c(r) omega``."""

    psi: CubicCutoff
    beta: Fraction

    def __call__(self, r: float) -> float:
        b = float(self.beta)
        if r == 0:
            if self.beta == 0:
                return -self.psi.derivative(0.0)
            if self.psi(0.0) != 0:
                raise SingularEvaluationError(
                    f"c(r) ~ -{b} psi(0)/r is singular at r = 0; integrate against r^beta instead"
                )
            return -(1.0 + b) * self.psi.derivative(0.0)
        if r < 0:
            raise ParameterError("c(r) is defined for r >= 0")
        return -(self.psi.derivative(r) + b * self.psi(r) / r)

    def weighted(self, r: float) -> float:
        """``c(r) r^beta = -(psi' r^beta + beta psi r^(beta-1))``, finite wherever r > 0."""
        b = float(self.beta)
        if self.beta == 0:
            return -self.psi.derivative(r)
        return -(self.psi.derivative(r) * r**b + b * self.psi(r) * r ** (b - 1.0))


def codifferential_coefficient(model: WarpedModel, psi: CubicCutoff, k: int, target: int = 2) -> RadialCoefficient:
    return RadialCoefficient(psi, beta_exponent(model, k, target))


@dataclass(frozen=True)
class DefectResult:
    """``closed_form`` keeps the Vol(N_other) factor of the radial reduction; ``form_normalized`` drops it."""

    beta: Fraction
    d_mu_nu: float
    mu_dt_nu: float
    defect: float
    closed_form: float
    form_normalized: float
    other_volume: float
    tol: float

    @property
    def abs_error(self) -> float:
        return abs(self.defect - self.closed_form)

    @property
    def within_contract(self) -> bool:
        return self.abs_error <= self.tol * (1.0 + abs(self.defect))

    def to_dict(self) -> dict:
        return {
            "beta": str(self.beta),
            "d_mu_nu": self.d_mu_nu,
            "mu_dt_nu": self.mu_dt_nu,
            "defect": self.defect,
            "closed_form": self.closed_form,
            "form_normalized": self.form_normalized,
            "abs_error": self.abs_error,
            "sign_convention": SIGN,
        }


def defect(model: WarpedModel, cutoffs: CutoffPair | None = None, form: HarmonicFormSpec | None = None,
           tol: float = 1e-10) -> DefectResult:
    """``(d mu, nu) - (mu, d^t nu)`` by radial quadrature, next to its closed form.

    ``form`` defaults to the unit-norm harmonic form in the critical degree of
    factor 2. Raises :class:`UnsupportedModelError` for beta < 0.
    """
    cutoffs = cutoffs or default_cutoffs()
    if len(model.factors) != 2:
        raise UnsupportedModelError("the pairing defect needs a two-factor model")
    if form is None:
        from .geometry import critical_degree

        k = critical_degree(model, 2)
        if k.denominator != 1:
            raise DegreeError(f"critical degree {k} is not an integer; pass an explicit form")
        form = HarmonicFormSpec.unit(model, 2, int(k))
    form.validate(model)
    beta = beta_exponent(model, form.degree, form.target)
    if beta < 0:
        raise UnsupportedModelError(f"beta = {beta} < 0 is not supported")
    other, _ = model.factor(3 - form.target)
    scale = other.volume * form.norm_sq
    phi, psi = cutoffs.phi, cutoffs.psi
    coeff = RadialCoefficient(psi, beta)
    b = float(beta)
    knots = sorted({*phi.knots, *psi.knots})
    qtol = 0.25 * tol / scale

    def lhs(r):
        return phi.derivative(r) * psi(r) * (r**b if b else 1.0)

    def rhs(r):
        return phi(r) * coeff.weighted(r)

    upper = phi.support_end
    d_mu_nu = scale * quadrature(lhs, (0.0, upper), qtol, points=knots)
    mu_dt_nu = scale * quadrature(rhs, (0.0, upper), qtol, points=knots)
    boundary = psi(0.0) if beta == 0 else 0.0
    return DefectResult(
        beta=beta,
        d_mu_nu=d_mu_nu,
        mu_dt_nu=mu_dt_nu,
        defect=d_mu_nu - mu_dt_nu,
        closed_form=SIGN * scale * boundary,
        form_normalized=SIGN * form.norm_sq * boundary,
        other_volume=other.volume,
        tol=tol,
    )
