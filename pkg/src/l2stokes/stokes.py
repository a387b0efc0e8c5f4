"""Per-degree decisions on the L2-Stokes property ``d_{k,max} = d_{k,min}``.

Known analytic results are consumed as rules (axioms with a citation string);
nothing here analyses operators. The engine only reproduces their degree
bookkeeping, including the star-duality / adjoint propagation used for
complex varieties with isolated singularities.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InconsistencyError, ParameterError, UnsupportedModelError
from .geometry import CrossSection, WarpedModel, critical_degree

__all__ = [
    "Status",
    "Verdict",
    "StokesReport",
    "RULES",
    "cheeger_cone_criterion",
    "cone_report",
    "two_factor_failure",
    "two_factor_report",
    "complex_variety_report",
    "propagate_uniqueness",
    "derive_uniqueness",
    "friedrichs_identity_degrees",
    "discreteness_degrees",
]


class Status(enum.Enum):
    UNIQUE = "UNIQUE"
    FAILS = "FAILS"
    UNKNOWN = "UNKNOWN"


RULES: dict[str, str] = {
    "cheeger-cone": "Cheeger: on a cone or horn over compact N^n, L2ST holds iff H^{n/2}(N; R) = 0",
    "warped-pairing": (
        "boundary pairing on dr^2 + r^{2a1} g1 + r^{2a2} g2: if H^k(N_t) != 0 and "
        "beta = a1 n1 + a2 (n2 - 2k) vanishes, (d mu, nu) != (mu, d^t nu) for mu = phi omega, "
        "nu = psi dr ^ omega"
    ),
    "pardon-stern": (
        "Pardon-Stern: d omega, d^t omega in L2 implies omega/r in L2 for k <= n-2, hence "
        "D_k = d_k + d^t_{k-1} has max = min, giving d_k and d^t_{k-1} uniqueness"
    ),
    "hodge-star": "Hodge star intertwines D_k and D_{2n-k}: d_k = +- * d^t_{2n-k-1} *",
    "adjoint": "d^t_{j,max} = (d_{j,min})^*, so d^t_j uniqueness is d_j uniqueness",
    "top-degree": "d_{2n} is the zero map on top-degree forms, trivially max = min",
    "friedrichs-identity": (
        "where D_k and D_{k+1} have max = min, d_{k-1,min} d^t_{k-1,min} + d^t_{k,min} d_{k,min} is the "
        "Friedrichs extension, and the Kahler identity splits it as 2 (+)_{p+q=k} Delta^F_{p,q,del}"
    ),
    "discreteness": (
        "the Friedrichs Laplacian is discrete when f/r in L2 on its domain and r^{-1}[eps, inf) is compact"
    ),
    "dolbeault": "the same propagation applied to the Dolbeault complex, bidegrees with p+q != n-1, n",
    "quasi-isometry": "dom(d_min), dom(d_max) and hence L2ST depend only on the quasi-isometry class of the metric",
}

_NO_RULE = "no applicable rule"


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule: str | None = None
    citation: str = _NO_RULE

    def __post_init__(self):
        if self.status is Status.UNKNOWN:
            if self.rule is not None or self.citation != _NO_RULE:
                raise ParameterError("UNKNOWN verdicts carry no rule")
        elif self.rule not in RULES:
            raise ParameterError(f"unregistered rule {self.rule!r}")
        elif self.citation != RULES[self.rule]:
            object.__setattr__(self, "citation", RULES[self.rule])

    @classmethod
    def by(cls, status: Status, rule: str) -> "Verdict":
        return cls(status, rule, RULES[rule])

    def to_dict(self) -> dict:
        return {"status": self.status.value, "rule": self.rule, "citation": self.citation}


UNKNOWN = Verdict(Status.UNKNOWN)


@dataclass(frozen=True)
class StokesReport:
    context: Mapping
    verdicts: Mapping[int, Verdict]
    extras: Mapping[str, object] = field(default_factory=dict)

    def degrees(self, status: Status) -> set[int]:
        return {k for k, v in self.verdicts.items() if v.status is status}

    @property
    def unique(self) -> set[int]:
        return self.degrees(Status.UNIQUE)

    @property
    def fails(self) -> set[int]:
        return self.degrees(Status.FAILS)

    @property
    def unknown(self) -> set[int]:
        return self.degrees(Status.UNKNOWN)

    def citations(self) -> list[str]:
        used = {v.rule for v in self.verdicts.values() if v.rule}
        used.update(self.extras.get("rules", ()))
        return [RULES[r] for r in sorted(used)]

    def to_dict(self) -> dict:
        out = {
            "context": dict(self.context),
            "verdicts": {str(k): v.to_dict() for k, v in sorted(self.verdicts.items())},
            "unique": sorted(self.unique),
            "fails": sorted(self.fails),
            "unknown": sorted(self.unknown),
        }
        for key, value in self.extras.items():
            if key == "rules":
                continue
            out[key] = sorted(value) if isinstance(value, (set, frozenset)) else value
        return out


def _full_report(context, total_dim, decided: Mapping[int, Verdict], extras=None) -> StokesReport:
    verdicts = {k: decided.get(k, UNKNOWN) for k in range(total_dim + 1)}
    return StokesReport(context, verdicts, extras or {})


def cheeger_cone_criterion(section: CrossSection) -> Verdict:
    """L2ST on the cone/horn over a compact N holds iff there is no middle-degree cohomology."""
    n = section.dim
    if n % 2 == 1 or section.betti[n // 2] == 0:
        return Verdict.by(Status.UNIQUE, "cheeger-cone")
    return Verdict.by(Status.FAILS, "cheeger-cone")


def cone_report(section: CrossSection, gamma=1) -> StokesReport:
    """Degrees 0..dim+1 of the cone (gamma = 1) or horn (gamma > 1) over ``section``.

    A failing cone is only pinned down in the middle degree n/2; the other
    degrees are left UNKNOWN.
    """
    verdict = cheeger_cone_criterion(section)
    total = section.dim + 1
    if verdict.status is Status.UNIQUE:
        decided = {k: verdict for k in range(total + 1)}
    else:
        decided = {section.dim // 2: verdict}
    context = {"kind": "cone", "section": section.to_dict(), "gamma": str(Fraction(gamma))}
    return _full_report(context, total, decided)


def two_factor_failure(model: WarpedModel) -> set[int]:
    """Degrees at which the boundary-pairing obstruction detects failure, trying both factors."""
    if len(model.factors) != 2:
        raise UnsupportedModelError("two_factor_failure needs a two-factor model")
    failing = set()
    for target in (1, 2):
        k = critical_degree(model, target)
        if k.denominator != 1:
            continue
        k = int(k)
        section, _ = model.factor(target)
        if 0 <= k <= section.dim and 0 <= k <= model.total_dim and section.betti[k] != 0:
            failing.add(k)
    return failing


def two_factor_report(model: WarpedModel, known_unique: Iterable[int] = ()) -> StokesReport:
    """Report for a two-factor model; undetected degrees stay UNKNOWN.

    ``known_unique`` lets callers merge degrees proven unique elsewhere; an
    overlap with the failure set raises :class:`InconsistencyError`.
    """
    failing = two_factor_failure(model)
    known_unique = set(known_unique)
    clash = failing & known_unique
    if clash:
        raise InconsistencyError(f"degrees {sorted(clash)} are both FAILS and UNIQUE")
    decided = {k: Verdict.by(Status.FAILS, "warped-pairing") for k in failing}
    context = {
        "kind": "two-factor",
        "model": model.to_dict(),
        "critical_degrees": {str(t): str(critical_degree(model, t)) for t in (1, 2)},
    }
    return _full_report(context, model.total_dim, decided)


def _check_degrees(total_dim: int, base: Iterable[int]) -> set[int]:
    if not isinstance(total_dim, int) or total_dim < 0 or total_dim % 2:
        raise ParameterError(f"total dimension must be an even non-negative integer, got {total_dim!r}")
    base = set(base)
    bad = sorted(k for k in base if not isinstance(k, int) or not 0 <= k <= total_dim)
    if bad:
        raise ParameterError(f"degrees {bad} outside 0..{total_dim}")
    return base


def derive_uniqueness(total_dim: int, base: Iterable[int], include_trivial: bool = True) -> dict[int, str]:
    """Closure of the propagation rules, mapping each derived degree to the rule that first produced it.

    ``base`` are the degrees k at which ``D_k = d_k + d^t_{k-1}`` is known to have
    max = min. Rules: D_k unique gives d_k and d^t_{k-1} unique; D_k <-> D_{2n-k}
    and d_k <-> d_{2n-k-1} under the Hodge star; d^t_j unique iff d_j unique.
    """
    base = _check_degrees(total_dim, base)
    top = total_dim
    big_d = {k: "pardon-stern" for k in base}
    d: dict[int, str] = {}
    dt: dict[int, str] = {}
    if include_trivial:
        d[top] = "top-degree"
    changed = True
    while changed:
        changed = False

        def add(table, key, rule):
            nonlocal changed
            if key not in table:
                table[key] = rule
                changed = True

        for k in list(big_d):
            add(big_d, top - k, "hodge-star")
        for k in big_d:
            add(d, k, big_d[k])
            if k >= 1:
                add(dt, k - 1, big_d[k])
        for j in list(dt):
            add(d, j, "adjoint")
        for j in list(d):
            if j < top:
                add(dt, j, "adjoint")
        for k in list(d):
            if 0 <= top - k - 1:
                add(d, top - k - 1, "hodge-star")
    return dict(sorted(d.items()))


def propagate_uniqueness(total_dim: int, base: Iterable[int], include_trivial: bool = True) -> set[int]:
    """Degrees k with d_{k,max} = d_{k,min} derived from the D-uniqueness degrees ``base``.

    With ``include_trivial`` the top degree (where d is the zero map) is always
    included, so an empty base yields ``{total_dim}``.
    """
    return set(derive_uniqueness(total_dim, base, include_trivial))


def friedrichs_identity_degrees(n: int) -> set[int]:
    """Degrees where the Friedrichs Laplacian is the min-min Laplacian and splits by bidegree."""
    _check_complex_dim(n)
    return set(range(2 * n + 1)) - {n - 1, n, n + 1}


def discreteness_degrees(n: int) -> set[int]:
    """Degrees where the Friedrichs Laplacian of a complex variety with isolated singularities is discrete."""
    _check_complex_dim(n)
    # the base degrees k <= n-2 give f/r in L2, the star image covers k >= n+2
    base = set(range(n - 1))
    return base | {2 * n - k for k in base}


def _check_complex_dim(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParameterError(f"complex dimension must be a positive integer, got {n!r}")


def complex_variety_report(n: int) -> StokesReport:
    """Degrees 0..2n for a complex projective variety of complex dimension n with isolated singularities."""
    _check_complex_dim(n)
    derived = derive_uniqueness(2 * n, range(n - 1))
    decided = {k: Verdict.by(Status.UNIQUE, rule) for k, rule in derived.items()}
    expected = set(range(2 * n + 1)) - {n - 1, n}
    if set(decided) != expected:
        raise InconsistencyError(f"derived unique degrees {sorted(decided)} != {sorted(expected)}")
    dolbeault = sorted(
        (p, q) for p in range(n + 1) for q in range(n + 1) if p + q not in (n - 1, n)
    )
    extras = {
        "dolbeault_unique": [list(pq) for pq in dolbeault],
        "hodge_decomposition": friedrichs_identity_degrees(n),
        "discrete": discreteness_degrees(n),
        "rules": ["dolbeault", "friedrichs-identity", "discreteness"],
    }
    return _full_report({"kind": "complex", "n": n}, 2 * n, decided, extras)
