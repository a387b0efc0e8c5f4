"""Command-line front end.

    l2stokes complex --dim 3
    l2stokes two-factor --factor1 S3 --alpha1 1 --factor2 S2 --alpha2 3/2
    l2stokes defect                       # circle x circle cone, critical degree
    l2stokes spectrum --section circle --count 5 --format table
    l2stokes variety --n 4 --m 3 --p 3 --q 2
    l2stokes cone --section T2
    l2stokes --config run.json            # {"command": "complex", "dim": 3}

Every run prints one JSON report (or a tab-separated table). Exit codes:
0 success, 2 validation error, 3 numeric error.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bessel import BACKEND
from .defect import CubicCutoff, CutoffPair, HarmonicFormSpec, defect
from .errors import InconsistencyError, NumericError, ValidationError
from .geometry import CrossSection, WarpedModel, as_fraction, circle, critical_degree, sphere, torus
from .spectrum import SingularRadialProblem, classify_endpoint, friedrichs_spectrum, scalar_cone_spectrum
from .stokes import (
    RULES,
    cheeger_cone_criterion,
    complex_variety_report,
    cone_report,
    derive_uniqueness,
    two_factor_report,
)
from .varieties import (
    VarietyParams,
    lst_failure_condition,
    pullback_metric_check,
    quasi_isometry_model,
    sample_chart_points,
    variety_singular_set,
)

VERBS = ("cone", "two-factor", "complex", "defect", "spectrum", "variety")
FORMATS = ("json", "table")
SIG_DIGITS = 12


class CommandError(ValidationError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass
class Command:
    verb: str
    params: dict = field(default_factory=dict)
    output: str | None = None
    fmt: str = "json"
    timing: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CommandError([message])


_NUM = r"[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?"


def parse_real(text: str) -> float:
    """Positive-or-zero reals, also accepting ``pi`` multiples such as ``2pi`` or ``0.5pi``."""
    text = str(text).strip()
    m = re.fullmatch(rf"({_NUM})?\*?pi", text)
    if m:
        return (float(m.group(1)) if m.group(1) else 1.0) * math.pi
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"not finite: {text}")
    return value


def parse_section(text: str) -> CrossSection:
    """``S2``, ``sphere:2[:radius]``, ``circle[:circumference]``, ``T2``, ``torus:L1,L2,...``."""
    text = str(text).strip()
    if m := re.fullmatch(r"S(\d+)", text):
        return sphere(int(m.group(1)))
    if m := re.fullmatch(r"T(\d+)", text):
        return torus([2 * math.pi] * int(m.group(1)))
    kind, _, rest = text.partition(":")
    if kind == "sphere":
        dim, _, radius = rest.partition(":")
        return sphere(int(dim), parse_real(radius) if radius else 1.0)
    if kind == "circle":
        return circle(parse_real(rest) if rest else 2 * math.pi)
    if kind == "torus":
        return torus([parse_real(s) for s in rest.split(",")])
    raise ValueError(f"unknown cross-section {text!r}")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", dest="format", default="json", help="json or table")
    p.add_argument("--output", default=None, help="write the report to this path")
    p.add_argument("--config", default=None, help="flat JSON object of flag values")
    p.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-stability)")


# (flag, dest, default, converter)
_SPECS: dict[str, list[tuple[str, str, object, object]]] = {
    "cone": [("--section", "section", "S2", parse_section)],
    "two-factor": [
        ("--factor1", "factor1", "circle", parse_section),
        ("--alpha1", "alpha1", "1", as_fraction),
        ("--factor2", "factor2", "circle", parse_section),
        ("--alpha2", "alpha2", "1", as_fraction),
    ],
    "complex": [("--dim", "dim", None, int)],
    "defect": [
        ("--factor1", "factor1", "circle", parse_section),
        ("--alpha1", "alpha1", "1", as_fraction),
        ("--factor2", "factor2", "circle", parse_section),
        ("--alpha2", "alpha2", "1", as_fraction),
        ("--target", "target", "2", int),
        ("--degree", "degree", None, int),
        ("--norm-sq", "norm_sq", None, parse_real),
        ("--psi0", "psi0", "1", parse_real),
        ("--phi-flat", "phi_flat", "0.25", parse_real),
        ("--phi-support", "phi_support", "0.5", parse_real),
        ("--psi-flat", "psi_flat", "0.125", parse_real),
        ("--psi-support", "psi_support", "0.25", parse_real),
        ("--tol", "tol", "1e-10", parse_real),
    ],
    "spectrum": [
        ("--section", "section", "circle", parse_section),
        ("--outer-radius", "outer_radius", "1", parse_real),
        ("--count", "count", "5", int),
        ("--nu", "nu", None, parse_real),
    ],
    "variety": [
        ("--n", "n", None, int),
        ("--m", "m", None, int),
        ("--p", "p", None, int),
        ("--q", "q", None, int),
        ("--samples", "samples", "1000", int),
        ("--r-max", "r_max", "0.5", parse_real),
        ("--seed", "seed", "0", int),
    ],
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="l2stokes", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"l2stokes {__version__}")
    parser.add_argument("--config", default=None, help="flat JSON object; may name the verb as 'command'")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)
    for verb in VERBS:
        sp = sub.add_parser(verb)
        for flag, dest, _, _ in _SPECS[verb]:
            sp.add_argument(flag, dest=dest, default=None)
        _common(sp)
    return parser


def _load_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CommandError([f"cannot read config {path}: {exc}"]) from exc
    if not isinstance(data, dict) or any(isinstance(v, (dict, list)) for v in data.values()):
        raise CommandError([f"config {path} must be a flat JSON object"])
    return {str(k).replace("-", "_"): v for k, v in data.items()}


def _find_config(argv) -> str | None:
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def parse(argv=None, config: dict | None = None) -> Command:
    """Build a validated :class:`Command` from argv and/or a config mapping; flags override config."""
    argv = list(sys.argv[1:] if argv is None else argv)
    cfg = dict(config or {})
    path = _find_config(argv)
    if path:
        cfg.update(_load_config(path))
    cfg = {str(k).replace("-", "_"): v for k, v in cfg.items()}
    verb_from_cfg = cfg.pop("command", None)
    if not any(a in VERBS for a in argv):
        if verb_from_cfg is None:
            raise CommandError([f"missing verb; expected one of {', '.join(VERBS)}"])
        if verb_from_cfg not in VERBS:
            raise CommandError([f"unknown verb {verb_from_cfg!r}; expected one of {', '.join(VERBS)}"])
        argv = [verb_from_cfg] + argv
    ns = build_parser().parse_args(argv)
    if ns.verb is None:
        raise CommandError([f"missing verb; expected one of {', '.join(VERBS)}"])
    specs = _SPECS[ns.verb]
    allowed = {dest for _, dest, _, _ in specs} | {"format", "output", "timing"}
    problems = [f"unknown key {k!r} for {ns.verb}" for k in sorted(cfg) if k not in allowed]

    def pick(dest, default):
        value = getattr(ns, dest, None)
        if value is None or value is False:
            value = cfg.get(dest, default)
        return value

    params = {}
    for flag, dest, default, convert in specs:
        raw = pick(dest, default)
        if raw is None:
            if default is None and dest not in ("degree", "norm_sq", "nu"):
                problems.append(f"{flag} is required")
            params[dest] = None
            continue
        try:
            params[dest] = convert(str(raw))
        except (ValueError, ValidationError, ZeroDivisionError) as exc:
            problems.append(f"{flag}: invalid value {raw!r} ({exc})")
    fmt = str(pick("format", "json"))
    if fmt not in FORMATS:
        problems.append(f"--format must be one of {FORMATS}, got {fmt!r}")
    problems.extend(_validate(ns.verb, params))
    if problems:
        raise CommandError(problems)
    return Command(ns.verb, params, pick("output", None), fmt, bool(pick("timing", False)))


def _validate(verb, params) -> list[str]:
    problems = []
    for key in ("alpha1", "alpha2"):
        if isinstance(params.get(key), Fraction) and params[key] < 1:
            problems.append(f"--{key}: alpha must be >= 1, got {params[key]}")
    if verb == "complex" and isinstance(params.get("dim"), int) and params["dim"] < 1:
        problems.append("--dim must be >= 1")
    if verb == "defect":
        if params.get("target") not in (1, 2, None):
            problems.append("--target must be 1 or 2")
        if isinstance(params.get("tol"), float) and not params["tol"] > 0:
            problems.append("--tol must be positive")
    if verb == "spectrum":
        if isinstance(params.get("count"), int) and params["count"] < 1:
            problems.append("--count must be >= 1")
        if isinstance(params.get("outer_radius"), float) and not params["outer_radius"] > 0:
            problems.append("--outer-radius must be positive")
        if isinstance(params.get("nu"), float) and params["nu"] < 0:
            problems.append("--nu must be >= 0")
    if verb == "variety":
        if all(isinstance(params.get(k), int) for k in "pq") and params["p"] <= params["q"]:
            problems.append(f"need p > q, got p={params['p']}, q={params['q']}")
        for k in "nmpq":
            if isinstance(params.get(k), int) and params[k] < 1:
                problems.append(f"--{k} must be >= 1")
        if isinstance(params.get("samples"), int) and params["samples"] < 1:
            problems.append("--samples must be >= 1")
        r_max = params.get("r_max")
        if isinstance(r_max, float) and not 1e-3 < r_max <= 1:
            problems.append("--r-max must lie in (1e-3, 1]")
    return problems


def _echo(value):
    if isinstance(value, CrossSection):
        return value.to_dict()
    if isinstance(value, Fraction):
        return str(value)
    return value


def _model(params) -> WarpedModel:
    return WarpedModel.of((params["factor1"], params["alpha1"]), (params["factor2"], params["alpha2"]))


def _run_cone(p):
    section = p["section"]
    verdict = cheeger_cone_criterion(section)
    report = cone_report(section)
    return [{"kind": "cheeger-cone", "verdict": verdict.to_dict(), "report": report.to_dict()}], report.citations()


def _run_two_factor(p):
    report = two_factor_report(_model(p))
    return [{"kind": "two-factor", "failing_degrees": sorted(report.fails), "report": report.to_dict()}], \
        report.citations()


def _run_complex(p):
    n = p["dim"]
    report = complex_variety_report(n)
    derivation = derive_uniqueness(2 * n, range(n - 1))
    result = {"kind": "complex", "report": report.to_dict(),
              "derivation": {str(k): rule for k, rule in derivation.items()}}
    return [result], report.citations()


def _run_defect(p):
    model = _model(p)
    target = p["target"]
    k = p["degree"]
    if k is None:
        crit = critical_degree(model, target)
        if crit.denominator != 1:
            raise ValidationError(f"critical degree {crit} of factor {target} is not an integer; pass --degree")
        k = int(crit)
    form = (HarmonicFormSpec(target, k, p["norm_sq"]) if p["norm_sq"] is not None
            else HarmonicFormSpec.unit(model, target, k))
    cutoffs = CutoffPair(CubicCutoff(1.0, p["phi_flat"], p["phi_support"]),
                         CubicCutoff(p["psi0"], p["psi_flat"], p["psi_support"]))
    res = defect(model, cutoffs, form, p["tol"])
    out = {"kind": "defect", "model": model.to_dict(), "k": k, "target": target,
           "cutoffs": cutoffs.to_dict(), "form": form.to_dict(), **res.to_dict(),
           "within_contract": res.within_contract}
    return [out], [RULES["warped-pairing"]]


def _run_spectrum(p):
    R = p["outer_radius"]
    if p["nu"] is not None:
        problem = SingularRadialProblem(p["nu"], R)
        values = friedrichs_spectrum(problem, p["count"])
        out = {"kind": "radial-spectrum", "nu": p["nu"], "R": R,
               "endpoint": classify_endpoint(p["nu"]).value, "eigenvalues": values}
        return [out], [RULES["discreteness"]]
    table = scalar_cone_spectrum(p["section"], R, p["count"])
    return [{"kind": "cone-spectrum", "bessel_backend": BACKEND, **table.to_dict()}], [RULES["discreteness"]]


def _run_variety(p):
    params = VarietyParams(p["n"], p["m"], p["p"], p["q"])
    out = {"kind": "variety", "params": params.to_dict(), "alpha": str(params.alpha)}
    out["singular_sets"] = [variety_singular_set(params, which, seed=p["seed"]).to_dict() for which in "VW"]
    citations = [RULES["quasi-isometry"]]
    if params.n >= 2 and params.m >= 2:
        out["model"] = quasi_isometry_model(params).to_dict()
        holds, degrees = lst_failure_condition(params)
        out["failure_condition"] = holds
        out["failing_degrees"] = sorted(degrees)
        if holds:
            citations.append(RULES["warped-pairing"])
    samples = sample_chart_points(params, p["samples"], r_max=p["r_max"], seed=p["seed"])
    out["distortion"] = pullback_metric_check(params, samples).to_dict()
    return [out], citations


_RUNNERS = {
    "cone": _run_cone,
    "two-factor": _run_two_factor,
    "complex": _run_complex,
    "defect": _run_defect,
    "spectrum": _run_spectrum,
    "variety": _run_variety,
}


def _round(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return float(f"{value:.{SIG_DIGITS}g}")
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_round(v) for v in items]
    return value


def run(cmd: Command) -> dict:
    """Execute a command and return the report document."""
    start = time.perf_counter()
    results, citations = _RUNNERS[cmd.verb](cmd.params)
    elapsed = (time.perf_counter() - start) * 1e3 if cmd.timing else None
    report = {
        "command": cmd.verb,
        "inputs": {k: _echo(v) for k, v in sorted(cmd.params.items())},
        "results": results,
        "citations": sorted(set(citations)),
        "version": __version__,
        "elapsed_ms": elapsed,
    }
    return _round(report)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = []
    for res in report["results"]:
        if res.get("kind") == "cone-spectrum":
            lines.append("\t".join(("eigenvalue", "multiplicity", "mu", "branch")))
            for e in res["entries"]:
                lines.append("\t".join(str(e[c]) for c in ("eigenvalue", "multiplicity", "mu", "branch")))
            continue
        for key, value in res.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            lines.append(f"{key}\t{value}")
    return "\n".join(lines) + "\n"


def _error_doc(exc, code) -> str:
    problems = getattr(exc, "problems", [str(exc)])
    doc = {"error": {"type": type(exc).__name__, "message": str(exc), "problems": problems},
           "exit_code": code, "version": __version__}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    try:
        cmd = parse(argv)
        text = render(run(cmd), cmd.fmt)
    except ValidationError as exc:
        sys.stdout.write(_error_doc(exc, 2))
        return 2
    except (NumericError, InconsistencyError, OverflowError) as exc:
        sys.stdout.write(_error_doc(exc, 3))
        return 3
    if cmd.output:
        Path(cmd.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
