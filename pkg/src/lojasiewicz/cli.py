"""Command-line front end.

Every subcommand first builds a ProblemSpec (from flags or ``--problem``),
then runs it.  ``--dump-spec`` prints the spec instead of running, and the
printed spec re-ingests to the same run.

Exit codes: 0 success, 1 input error, 2 numeric failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from . import bounds as B
from .cad import CADError, cad2d, describe_cell, growth_check
from .estimate import (
    CurveSpec,
    EstimationError,
    PolyAbsSum,
    PolyNorm,
    Residual,
    curve_csv,
    envelope,
    envelope_csv,
    estimate_error_exponent,
    estimate_loja_cloud,
    estimate_loja_on_curve,
    finite_set_distance,
    line_set_distance,
    newton_min_exponent,
    newton_polygon,
    extremal_family,
    sample_region,
)
from .formulas import (
    Atom,
    FormulaError,
    PointSet,
    dist_1d,
    dist_to_finite,
    formula_from_json,
    residual_binary,
    residual_psi,
    residual_sdp,
)
from .polyalg import PolynomialError, default_names, format_poly, parse_poly
from .realroots import (
    isolate_roots,
    realizable_sign_conditions_1d,
    root_multiplicity,
    thom_encode_roots,
)

TASKS = (
    "parse", "roots", "thom", "signcond1d", "cad2d", "growth-check", "dist",
    "residual", "bounds", "estimate-loja", "estimate-errorbound", "newton-slope",
    "sos-rate",
)

DEFAULT_VARIABLES = {
    "roots": ["x"], "thom": ["x"], "signcond1d": ["x"],
    "cad2d": ["x", "y"], "growth-check": ["x", "y"], "newton-slope": ["eps", "y"],
}

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


class ProblemError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path


@dataclass
class ProblemSpec:
    task: str
    variables: list = field(default_factory=list)
    polynomials: list = field(default_factory=list)
    formula: Any = None
    points: Any = None
    point: Any = None
    constraints: dict = field(default_factory=lambda: {"g": [], "h": []})
    matrix: Any = None
    curve: Any = None
    f: list = field(default_factory=list)
    g: list = field(default_factory=list)
    example_paper: Any = None
    params: dict = field(default_factory=dict)
    seed: int = 0

    def to_json(self) -> dict:
        return {"version": __version__, **asdict(self)}

    @classmethod
    def from_json(cls, obj) -> "ProblemSpec":
        if not isinstance(obj, dict):
            raise ProblemError("", "a problem file must hold a JSON object")
        known = set(cls.__dataclass_fields__) | {"version"}
        for k in obj:
            if k not in known:
                raise ProblemError(f"/{k}", "unknown field")
        if obj.get("task") not in TASKS:
            raise ProblemError("/task", f"expected one of {list(TASKS)}")
        kw = {k: v for k, v in obj.items() if k != "version"}
        spec = cls(**kw)
        spec.validate()
        return spec

    # -- validation ---------------------------------------------------------
    def validate(self):
        _expect(isinstance(self.variables, list), "/variables", "expected a list")
        for i, v in enumerate(self.variables):
            _expect(isinstance(v, str) and _IDENT.match(v), f"/variables/{i}", "expected an identifier")
        _expect(len(set(self.variables)) == len(self.variables), "/variables", "duplicate names")
        _expect(isinstance(self.seed, int) and not isinstance(self.seed, bool), "/seed", "expected an integer")
        _expect(isinstance(self.params, dict), "/params", "expected an object")
        for key in ("polynomials", "f", "g"):
            val = getattr(self, key)
            _expect(isinstance(val, list), f"/{key}", "expected a list")
            for i, s in enumerate(val):
                self.poly(s, f"/{key}/{i}")
        _expect(isinstance(self.constraints, dict), "/constraints", "expected an object")
        for key in self.constraints:
            _expect(key in ("g", "h"), f"/constraints/{key}", "expected only 'g' and 'h'")
        for key in ("g", "h"):
            for i, s in enumerate(self.constraints.get(key, [])):
                self.poly(s, f"/constraints/{key}/{i}")
        if self.formula is not None:
            self.get_formula()
        if self.curve is not None:
            _expect(isinstance(self.curve, list), "/curve", "expected a list")
            for i, s in enumerate(self.curve):
                _parse(s, ["t"], f"/curve/{i}")
        if self.points is not None:
            self.point_set()
        if self.point is not None:
            self.rational_vector(self.point, "/point")
        if self.matrix is not None:
            _expect(isinstance(self.matrix, list), "/matrix", "expected a list of rows")
            for i, row in enumerate(self.matrix):
                self.rational_vector(row, f"/matrix/{i}")
        if self.example_paper is not None:
            ex = self.example_paper
            _expect(isinstance(ex, dict) and set(ex) == {"d", "n"}, "/example_paper", "expected {d, n}")
            _expect(isinstance(ex["d"], int) and ex["d"] >= 1, "/example_paper/d", "expected an integer >= 1")
            _expect(isinstance(ex["n"], int) and 1 <= ex["n"] <= 3, "/example_paper/n", "expected 1 <= n <= 3")

    # -- typed accessors ----------------------------------------------------
    def names(self, arity: int | None = None) -> list[str]:
        if self.variables:
            return list(self.variables)
        if self.task in DEFAULT_VARIABLES:
            return list(DEFAULT_VARIABLES[self.task])
        return default_names(arity or 1)

    def poly(self, text, path):
        return _parse(text, self.names(), path)

    def polys(self, key="polynomials"):
        return [self.poly(s, f"/{key}/{i}") for i, s in enumerate(getattr(self, key))]

    def get_formula(self):
        try:
            names = self.variables or None
            return formula_from_json(self.formula, names, "/formula")
        except FormulaError as exc:
            path, _, msg = str(exc).partition(": ")
            if not path.startswith("/formula"):
                path, msg = "/formula", str(exc)
            raise ProblemError(path, msg) from None

    def rational_vector(self, row, path):
        _expect(isinstance(row, list), path, "expected a list of numbers")
        out = []
        for i, v in enumerate(row):
            try:
                out.append(Fraction(str(v)))
            except (ValueError, ZeroDivisionError):
                raise ProblemError(f"{path}/{i}", f"not a rational number: {v!r}") from None
        return out

    def point_set(self):
        _expect(isinstance(self.points, list) and self.points, "/points", "expected a nonempty list")
        pts = [self.rational_vector(p, f"/points/{i}") for i, p in enumerate(self.points)]
        try:
            return PointSet(tuple(pts))
        except FormulaError as exc:
            raise ProblemError("/points", str(exc)) from None

    def param(self, key, kind=int, default=None, required=False):
        if key not in self.params or self.params[key] is None:
            if required:
                raise ProblemError(f"/params/{key}", "required")
            return default
        v = self.params[key]
        try:
            if kind is int:
                if isinstance(v, bool) or int(v) != v:
                    raise ValueError
                return int(v)
            if kind is Fraction:
                return Fraction(str(v))
            return kind(v)
        except (TypeError, ValueError, ZeroDivisionError):
            raise ProblemError(f"/params/{key}", f"expected {kind.__name__}") from None


def _expect(cond, path, msg):
    if not cond:
        raise ProblemError(path, msg)


def _parse(text, names, path):
    if not isinstance(text, str):
        raise ProblemError(path, "expected a polynomial string")
    try:
        return parse_poly(text, names)
    except PolynomialError as exc:
        raise ProblemError(path, str(exc)) from None


# ---------------------------------------------------------------------------
# task runners: spec -> (report, csv text or None)

def _frac(q) -> str:
    return str(q)


def run_parse(spec):
    out = []
    for P in spec.polys():
        out.append({
            "polynomial": format_poly(P, spec.names()),
            "arity": P.arity,
            "degree": None if P.is_zero() else P.degree(),
            "terms": [[list(m), _frac(c)] for m, c in sorted(P.items(), reverse=True)],
        })
    return {"polynomials": out}, None


def _univariate(spec):
    polys = spec.polys()
    for i, P in enumerate(polys):
        _expect(P.arity == 1, f"/polynomials/{i}", "expected a univariate polynomial")
    _expect(polys, "/polynomials", "at least one polynomial is required")
    return polys


def _root_json(r, P):
    return {
        "interval": [_frac(r.low), _frac(r.high)],
        "exact": None if r.exact_value is None else _frac(r.exact_value),
        "approx": float(r),
        "multiplicity": root_multiplicity(P, r),
    }


def run_roots(spec):
    width = spec.param("width", Fraction)
    out = []
    for P in _univariate(spec):
        roots = isolate_roots(P)
        if width is not None:
            roots = [r.refine(width) for r in roots]
        out.append({"polynomial": format_poly(P), "roots": [_root_json(r, P) for r in roots]})
    return {"results": out}, None


def run_thom(spec):
    out = []
    for P in _univariate(spec):
        encs = thom_encode_roots(P)
        out.append({"polynomial": format_poly(P), "encodings": [list(e.signs) for e in encs],
                    "text": [str(e) for e in encs]})
    return {"results": out}, None


def run_signcond1d(spec):
    polys = _univariate(spec)
    cells = realizable_sign_conditions_1d(polys)
    return {
        "family": [format_poly(P) for P in polys],
        "cell_count": len(cells),
        "cells": [{"cell": c.describe(), "kind": c.kind, "signs": str(s),
                   "sample": None if c.sample is None else _frac(c.sample)} for s, c in cells],
    }, None


def _bivariate(spec):
    _expect(len(spec.names()) == 2, "/variables", "expected exactly two variables")
    polys = spec.polys()
    _expect(polys, "/polynomials", "at least one polynomial is required")
    return spec, polys


def run_cad2d(spec):
    spec, polys = _bivariate(spec)
    D = cad2d(polys)
    return {
        "family": [format_poly(P, spec.names()) for P in polys],
        "projection": [format_poly(P, spec.names()[:1]) for P in D.projection],
        "base_cells": [c.describe() for c in D.base_cells],
        "section_counts": D.section_counts(),
        "cell_count": len(D),
        "cells": [describe_cell(c) for c in D.cells],
    }, None


def run_growth(spec):
    spec, polys = _bivariate(spec)
    if spec.formula is not None:
        selector = spec.get_formula()
    else:
        selector = Atom(polys[0], "eq0")
    p = spec.param("p", int, required=True)
    lo = spec.param("x_min", Fraction, Fraction(10))
    hi = spec.param("x_max", Fraction, Fraction(10**6))
    samples = spec.param("samples", int, 21)
    rep = growth_check(polys, selector, p, (lo, hi), samples)
    return {
        "fitted_exponent": rep.fitted_exponent,
        "window": list(rep.window),
        "claimed_p": rep.claimed_p,
        "pass": rep.passed,
        "tolerance": rep.tolerance,
        "sample_count": rep.sample_count,
    }, None


def run_dist(spec):
    _expect(spec.point is not None, "/point", "required")
    x = spec.rational_vector(spec.point, "/point")
    if spec.points is not None:
        M = spec.point_set()
        _expect(len(x) == M.arity, "/point", f"expected {M.arity} coordinates")
        sq, val = dist_to_finite(M, x)
        return {"kind": "finite", "squared": _frac(sq), "value": val}, None
    _expect(spec.formula is not None, "/formula", "either points or a formula is required")
    _expect(len(x) == 1, "/point", "expected one coordinate")
    try:
        res = dist_1d(spec.get_formula(), x[0])
    except FormulaError as exc:
        raise ProblemError("/formula", str(exc)) from None
    out = {"kind": "line", "value": float(res), "exact": _frac(res.value) if res.is_rational else None}
    if not res.is_rational:
        lo, hi = res.value.enclosure(Fraction(1, 10**12))
        out["enclosure"] = [_frac(lo), _frac(hi)]
        out["nearest_root_of"] = format_poly(res.value.root.polynomial)
    return out, None


def run_residual(spec):
    kind = spec.params.get("kind", "psi")
    _expect(kind in ("psi", "binary", "sdp"), "/params/kind", "expected psi, binary or sdp")
    g = [spec.poly(s, f"/constraints/g/{i}") for i, s in enumerate(spec.constraints.get("g", []))]
    h = [spec.poly(s, f"/constraints/h/{i}") for i, s in enumerate(spec.constraints.get("h", []))]
    if kind == "sdp":
        _expect(spec.matrix is not None, "/matrix", "required for kind sdp")
        X = [spec.rational_vector(r, f"/matrix/{i}") for i, r in enumerate(spec.matrix)]
        try:
            res = residual_sdp(X, g)
        except FormulaError as exc:
            raise ProblemError("/matrix", str(exc)) from None
        return {"kind": "sdp", "lam_min": res.lam_min, "lam_min_part": res.lam_min_part,
                "minor_part": _frac(res.minor_part), "worst_minor": list(res.worst_minor),
                "constraint_part": _frac(res.constraint_part), "dist_part": res.dist_part,
                "value": res.value}, None
    _expect(spec.point is not None, "/point", "required")
    x = spec.rational_vector(spec.point, "/point")
    try:
        if kind == "psi":
            return {"kind": "psi", "value": _frac(residual_psi(g, h, x))}, None
        res = residual_binary(g, h, x)
    except FormulaError as exc:
        raise ProblemError("/point", str(exc)) from None
    return {"kind": "binary", "equality_radicand": _frac(res.equality_radicand),
            "inequality_radicand": _frac(res.inequality_radicand),
            "binary_part": _frac(res.binary_part), "value": res.value}, None


def run_bounds(spec):
    d = spec.param("d", int, required=True)
    n = spec.param("n", int, required=True)
    rep = B.comparator_bounds(
        d, n, spec.param("r", int, 1), spec.param("s", int, 0),
        spec.param("dbar", int), spec.param("rbar", int), spec.param("k", int))
    return rep.to_json(), None


def _curve_setup(spec):
    if spec.example_paper is not None:
        ex = extremal_family(spec.example_paper["d"], spec.example_paper["n"])
        return ex.f, ex.g, ex.curve, ex.region, ex.n
    _expect(spec.f, "/f", "f terms are required without example_paper")
    _expect(spec.g, "/g", "g components are required without example_paper")
    f, g = PolyAbsSum(spec.polys("f")), PolyNorm(spec.polys("g"))
    curve = None
    if spec.curve is not None:
        curve = CurveSpec(tuple(_parse(s, ["t"], f"/curve/{i}") for i, s in enumerate(spec.curve)))
    region = spec.get_formula() if spec.formula is not None else None
    return f, g, curve, region, len(spec.names())


def run_estimate_loja(spec):
    f, g, curve, region, n = _curve_setup(spec)
    mode = spec.params.get("mode", "curve")
    if mode == "curve":
        _expect(curve is not None, "/curve", "required for mode curve")
        est = estimate_loja_on_curve(
            f, g, curve, spec.param("t_max", float, 1e-2),
            spec.param("decades", int, 6), spec.param("samples_per_decade", int, 10))
        report = {"mode": "curve", **est.to_json()}
        report["seed"] = spec.seed
        csv_text = curve_csv(est)
    elif mode == "cloud":
        box = spec.params.get("box") or [[-1, 1]] * n
        S = sample_region(region, box, spec.param("count", int, 20000), spec.seed)
        est = estimate_loja_cloud(f, g, S, spec.param("g_ceiling", float, 0.5))
        report = {"mode": "cloud", "acceptance": S.acceptance, **est.to_json()}
        csv_text = None
    else:
        raise ProblemError("/params/mode", "expected curve or cloud")
    if spec.example_paper is not None:
        d, nn = spec.example_paper["d"], spec.example_paper["n"]
        report["expected"] = d**nn
        if d >= 2:
            report["loja_bound"] = B.loja_bound(d, nn)
    return report, csv_text


def run_estimate_errorbound(spec):
    g = [spec.poly(s, f"/constraints/g/{i}") for i, s in enumerate(spec.constraints.get("g", []))]
    h = [spec.poly(s, f"/constraints/h/{i}") for i, s in enumerate(spec.constraints.get("h", []))]
    _expect(g or h, "/constraints", "at least one constraint is required")
    psi = Residual(g, h)
    if spec.points is not None:
        M = spec.point_set()
        dist = finite_set_distance(M)
        n, target = M.arity, "finite"
    else:
        # the feasible set itself, which must lie on the line
        n = len(spec.names())
        _expect(n == 1, "/variables", "without points the feasible set must lie on the line")
        from .formulas import constraint_formula
        dist = line_set_distance(constraint_formula(g, h))
        target = "line"
    box = spec.params.get("box") or [[-1, 1]] * n
    region = spec.get_formula() if spec.formula is not None else None
    S = sample_region(region, box, spec.param("count", int, 20000), spec.seed)
    table = envelope(psi, dist, S, spec.param("bins", int, 24))
    est = estimate_error_exponent(table)
    report = {"target": target, "rho_hat": est.exponent, "log_kappa": est.intercept,
              "gamma_hat": est.slope, **est.to_json()}
    report["seed"] = spec.seed
    report["rows"] = len(table)
    d = max([P.degree() for P in g + h] + [2])
    report["finite_error_bound"] = B.finite_error_bound(d, n)
    return report, envelope_csv(table)


def run_newton(spec):
    _expect(len(spec.names()) == 2, "/variables", "expected (eps, y)")
    P = spec.polys()[0] if spec.polynomials else None
    _expect(P is not None, "/polynomials", "one polynomial is required")
    try:
        gamma = newton_min_exponent(P)
    except ValueError as exc:
        raise ProblemError("/polynomials/0", str(exc)) from None
    return {"gamma1": _frac(gamma), "gamma1_float": float(gamma),
            "degree": P.degree(), "hull": [list(p) for p in newton_polygon(P)]}, None


def run_sos_rate(spec):
    args = [spec.param(k, float, required=True) for k in ("c", "f_norm")]
    ints = [spec.param(k, int, required=True) for k in ("deg_f", "n", "rho", "t")]
    return {"rate": B.sos_rate(*args, *ints)}, None


RUNNERS = {
    "parse": run_parse, "roots": run_roots, "thom": run_thom, "signcond1d": run_signcond1d,
    "cad2d": run_cad2d, "growth-check": run_growth, "dist": run_dist, "residual": run_residual,
    "bounds": run_bounds, "estimate-loja": run_estimate_loja,
    "estimate-errorbound": run_estimate_errorbound, "newton-slope": run_newton,
    "sos-rate": run_sos_rate,
}


def execute(spec: ProblemSpec) -> tuple[dict, str | None]:
    report, csv_text = RUNNERS[spec.task](spec)
    return {"version": __version__, "command": spec.task, **report}, csv_text


# ---------------------------------------------------------------------------
# argument parsing

def _json_arg(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lojasiewicz", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="task", required=True, metavar="COMMAND")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--problem", help="JSON problem file (flags below are then ignored)")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--csv", help="write plot data here (estimators only)")
    common.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    common.add_argument("--dump-spec", action="store_true", help="print the problem spec and exit")
    common.add_argument("--vars", help="comma-separated variable names")
    common.add_argument("--poly", action="append", default=[], help="polynomial (repeatable)")
    common.add_argument("--formula", type=_json_arg, help="formula JSON")
    common.add_argument("--points", type=_json_arg, help="finite point set as JSON list")
    common.add_argument("--x", type=_json_arg, help="query point as JSON list")

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    add("parse", "parse and print polynomials canonically")
    add("roots", "isolate real roots").add_argument("--width", help="refine to this width")
    add("thom", "Thom encodings of real roots")
    add("signcond1d", "sign conditions of a univariate family on the line")
    add("cad2d", "cylindrical decomposition of the plane")
    p = add("growth-check", "growth exponent of a graph cell")
    p.add_argument("--p", type=int, required=False)
    p.add_argument("--window", nargs=2)
    p.add_argument("--samples", type=int)
    add("dist", "distance to a finite set or a closed subset of the line")
    p = add("residual", "residual functions")
    p.add_argument("--kind", choices=["psi", "binary", "sdp"], default="psi")
    p.add_argument("--g", action="append", default=[], help="constraint g <= 0")
    p.add_argument("--h", action="append", default=[], help="constraint h = 0")
    p.add_argument("--matrix", type=_json_arg)
    p = add("bounds", "closed-form exponent bounds")
    for k in ("d", "n", "r", "s", "dbar", "rbar", "k"):
        p.add_argument(f"--{k}", type=int)
    p.add_argument("--table", action="store_true", help="print an aligned table instead of JSON")
    p = add("estimate-loja", "Lojasiewicz exponent estimate")
    p.add_argument("--example-paper", action="store_true", help="built-in exponential-dependence example")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--f", action="append", default=[], help="f = sum of |term| (repeatable)")
    p.add_argument("--g", action="append", default=[], help="g = norm of components (repeatable)")
    p.add_argument("--curve", action="append", default=[], help="curve component in t")
    p.add_argument("--mode", choices=["curve", "cloud"], default="curve")
    p.add_argument("--t-max", type=float)
    p.add_argument("--decades", type=int)
    p.add_argument("--samples-per-decade", type=int)
    p.add_argument("--count", type=int)
    p = add("estimate-errorbound", "error-bound exponent from the residual envelope")
    p.add_argument("--g", action="append", default=[], help="constraint g <= 0")
    p.add_argument("--h", action="append", default=[], help="constraint h = 0")
    p.add_argument("--box", type=_json_arg)
    p.add_argument("--count", type=int)
    p.add_argument("--bins", type=int)
    add("newton-slope", "first Puiseux exponent from the Newton polygon")
    p = add("sos-rate", "SOS relaxation gap bound")
    for k in ("c", "f-norm"):
        p.add_argument(f"--{k}", type=float)
    for k in ("deg", "n", "rho", "t"):
        p.add_argument(f"--{k}", type=int)
    return ap


def spec_from_args(a) -> ProblemSpec:
    spec = ProblemSpec(task=a.task)
    if a.vars:
        spec.variables = [v.strip() for v in a.vars.split(",")]
    spec.polynomials = list(a.poly)
    spec.formula = a.formula
    spec.points = a.points
    spec.point = a.x
    params: dict = {}
    t = a.task
    if t == "roots" and a.width:
        params["width"] = a.width
    elif t == "growth-check":
        params["p"] = a.p
        if a.window:
            params["x_min"], params["x_max"] = a.window
        if a.samples:
            params["samples"] = a.samples
    elif t == "residual":
        params["kind"] = a.kind
        spec.constraints = {"g": list(a.g), "h": list(a.h)}
        spec.matrix = a.matrix
    elif t == "bounds":
        params.update({k: getattr(a, k) for k in ("d", "n", "r", "s", "dbar", "rbar", "k")
                       if getattr(a, k) is not None})
    elif t == "estimate-loja":
        if a.example_paper:
            spec.example_paper = {"d": a.d, "n": a.n}
        spec.f, spec.g = list(a.f), list(a.g)
        spec.curve = list(a.curve) or None
        params["mode"] = a.mode
        for k in ("t_max", "decades", "samples_per_decade", "count"):
            if getattr(a, k) is not None:
                params[k] = getattr(a, k)
    elif t == "estimate-errorbound":
        spec.constraints = {"g": list(a.g), "h": list(a.h)}
        for k in ("box", "count", "bins"):
            if getattr(a, k) is not None:
                params[k] = getattr(a, k)
    elif t == "sos-rate":
        params.update({"c": a.c, "f_norm": a.f_norm, "deg_f": a.deg, "n": a.n,
                       "rho": a.rho, "t": a.t})
    spec.params = {k: v for k, v in params.items() if v is not None}
    if a.seed is not None:
        spec.seed = a.seed
    spec.validate()
    return spec


def _write(path, text, stdout):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            a = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        if a.problem:
            try:
                with open(a.problem, encoding="utf-8") as fh:
                    obj = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise ProblemError("", f"cannot read problem file: {exc}") from None
            spec = ProblemSpec.from_json(obj)
            if spec.task != a.task:
                raise ProblemError("/task", f"file is for {spec.task!r}, not {a.task!r}")
            if a.seed is not None:
                spec.seed = a.seed
        else:
            spec = spec_from_args(a)
        if a.dump_spec:
            _write(a.out, json.dumps(spec.to_json(), indent=2, sort_keys=True) + "\n", stdout)
            return 0
        report, csv_text = execute(spec)
        if a.task == "bounds" and getattr(a, "table", False):
            rep = B.comparator_bounds(**{k: report["inputs"][k] for k in report["inputs"]})
            _write(a.out, rep.table() + "\n", stdout)
        else:
            _write(a.out, json.dumps(report, indent=2, sort_keys=True) + "\n", stdout)
        if a.csv and csv_text is not None:
            _write(a.csv, csv_text, stdout)
        return 0
    except (ProblemError, PolynomialError, FormulaError, B.BoundDomainError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except (EstimationError, CADError, ArithmeticError) as exc:
        stderr.write(f"numeric failure: {exc}\n")
        return 2


def main():
    sys.exit(run())
