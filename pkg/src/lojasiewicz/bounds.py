"""Closed-form exponent bounds, evaluated exactly.

Integer bounds are Python ints (arbitrary precision); gradient-inequality
exponents are exact Fractions in (0, 1).  Bounds whose constants are only
known up to O(.) are carried as strings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


class BoundDomainError(ValueError):
    pass


def _need(cond: bool, msg: str):
    if not cond:
        raise BoundDomainError(msg)


def _ints(**kw):
    for k, v in kw.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise BoundDomainError(f"{k} must be an integer, got {v!r}")


def loja_bound(d: int, n: int) -> int:
    """(8d)^(2(n+7)): exponent N with |g|^N <= c|f| on a compact set."""
    _ints(d=d, n=n)
    _need(d >= 2, "d must be at least 2")
    _need(n >= 1, "n must be at least 1")
    return (8 * d) ** (2 * (n + 7))


def finite_error_bound(d: int, n: int) -> int:
    """Error-bound exponent when the feasible set is finite; same value as loja_bound."""
    return loja_bound(d, n)


def belim_degree_bound(d: int, k: int) -> int:
    """Degree bound for block elimination over k blocks."""
    _ints(d=d, k=k)
    _need(d >= 2, "d must be at least 2")
    _need(k >= 1, "k must be at least 1")
    return (8 * d * d * (2 * k * (2 * d + 2) + 2) * (2 * d + 3)
            * (2 * d + 6) ** 2 * (2 * d + 5) ** (2 * k - 2))


def belim_majorant(d: int, k: int) -> int:
    """(8d)^(2k+4), the simple majorant of belim_degree_bound."""
    _ints(d=d, k=k)
    _need(d >= 2 and k >= 1, "need d >= 2 and k >= 1")
    return (8 * d) ** (2 * k + 4)


def definable_set_bound(d: int, n: int) -> int:
    """(8d)^(2n+10), the exponent bound for a function on a bounded definable set."""
    _ints(d=d, n=n)
    _need(d >= 2, "d must be at least 2")
    _need(n >= 1, "n must be at least 1")
    return (8 * d) ** (2 * n + 10)


# interface name
prop264_bound = definable_set_bound


def example_lower_bound(d: int, n: int) -> int:
    """d^n, attained along the curve (t, t^d, t^(d^2), ...)."""
    _ints(d=d, n=n)
    _need(d >= 1 and n >= 1, "need d, n >= 1")
    return d**n


def central_binomial(n: int) -> int:
    """C(n, floor(n/2))."""
    return math.comb(n, n // 2)


# -- prior bounds ----------------------------------------------------------

def kurdyka_spodzieja(dbar: int, n: int, s: int, rbar: int) -> int:
    _need(dbar >= 1 and n >= 1 and s >= 0 and rbar >= 0, "need dbar, n >= 1 and s, rbar >= 0")
    _need(n + s + rbar >= 1, "exponent n+s+rbar-1 must be nonnegative")
    return dbar * (6 * dbar - 3) ** (n + s + rbar - 1)


def kurdyka_spodzieja_isolated(dbar: int, n: int, s: int, rbar: int) -> Fraction:
    _need(dbar >= 1 and n >= 1 and s >= 0 and rbar >= 0, "need dbar, n >= 1 and s, rbar >= 0")
    return Fraction((2 * dbar - 1) ** (n + s + rbar) + 1, 2)


def lmp15(d: int, n: int, r: int, s: int) -> int:
    _need(d >= 1 and n >= 1 and r >= 0 and s >= 0, "need d, n >= 1 and r, s >= 0")
    return min((d + 1) * (3 * d) ** (n + r + s - 1), d * (6 * d - 3) ** (n + r - 1))


def lmp15_compact(d: int, n: int, r: int) -> Fraction:
    _need(d >= 1 and n >= 1 and r >= 0, "need d, n >= 1 and r >= 0")
    return Fraction((2 * d - 1) ** (n + r) + 1, 2)


def kollar(d: int, n: int) -> int:
    _need(d >= 1 and n >= 1, "need d, n >= 1")
    return central_binomial(n - 1) * d**n


def oss21_nash(dbar: int, n: int) -> int:
    _need(dbar >= 1 and n >= 1, "need dbar, n >= 1")
    return 2 * (2 * dbar - 1) ** (3 * n + 1)


def oss21b_ball(dbar: int, n: int) -> int:
    _need(dbar >= 1 and n >= 1, "need dbar, n >= 1")
    return dbar ** (4 * n + 1)


def gwozdziewicz_gradient(d: int, n: int) -> Fraction:
    _need(d >= 2 and n >= 1, "need d >= 2 and n >= 1")
    return 1 - Fraction(1, (d - 1) ** n + 1)


def dacunto_kurdyka_gradient(d: int, n: int) -> Fraction:
    _need(d >= 2 and n >= 1, "need d >= 2 and n >= 1")
    first = Fraction(d * (3 * d - 4) ** (n - 1))
    second = Fraction(2 * d) * Fraction(3 * d - 3) ** (n - 2)
    return 1 - 1 / max(first, second)


def nash_gradient(d: int, n: int) -> Fraction:
    _need(d >= 1 and n >= 1, "need d, n >= 1")
    return 1 - Fraction(1, 2 * (2 * d - 1) ** (3 * n + 1))


def nash_gradient_nondegenerate(d: int, n: int) -> Fraction:
    _need(d >= 1 and n >= 1, "need d, n >= 1")
    return 1 - Fraction(1, max(2 * d * (2 * d - 1), d * (3 * d - 2) ** n) + 1)


def convex_bly14(d: int, n: int) -> Fraction:
    _need(d >= 1 and n >= 1, "need d, n >= 1")
    return min(Fraction((2 * d - 1) ** n + 1, 2), Fraction(central_binomial(n - 1) * d**n))


def convex_li10(d: int, n: int) -> int:
    _need(d >= 1 and n >= 1, "need d, n >= 1")
    return (d - 1) ** n + 1


SYMBOLIC = {
    "general_error_bound": "d^O(n^2)",
    "finite_error_bound_order": "d^O(n)",
    "semidefinite_error_bound": "max{d,p}^O(p^4)",
    "solerno_exponent": "D^(c1*n), D = sum of degrees",
    "solerno_constant": "2^(tau*D^(c2*n^2))",
}

GRADIENT_ENTRIES = {
    "gwozdziewicz_gradient",
    "dacunto_kurdyka_gradient",
    "nash_gradient",
    "nash_gradient_nondegenerate",
}


@dataclass
class BoundReport:
    inputs: dict
    entries: dict = field(default_factory=dict)
    omitted: dict = field(default_factory=dict)
    symbolic: dict = field(default_factory=lambda: dict(SYMBOLIC))

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction) and v.denominator != 1:
                return {"exact": str(v), "float": float(v)}
            return int(v)

        return {
            "inputs": dict(self.inputs),
            "entries": {k: enc(v) for k, v in self.entries.items()},
            "omitted": dict(self.omitted),
            "symbolic": dict(self.symbolic),
        }

    def table(self) -> str:
        rows = [(k, str(v)) for k, v in self.entries.items()]
        rows += [(k, f"omitted: {why}") for k, why in self.omitted.items()]
        rows += [(k, v) for k, v in self.symbolic.items()]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def comparator_bounds(d: int, n: int, r: int = 1, s: int = 0,
                      dbar: int | None = None, rbar: int | None = None,
                      k: int | None = None) -> BoundReport:
    """Every closed-form bound at the given parameters.

    ``dbar`` and ``rbar`` default to d and r; ``k`` (elimination blocks)
    defaults to n.  Entries outside their formula's domain are listed in
    ``omitted`` with the reason.
    """
    dbar = d if dbar is None else dbar
    rbar = r if rbar is None else rbar
    k = n if k is None else k
    report = BoundReport({"d": d, "n": n, "r": r, "s": s, "dbar": dbar, "rbar": rbar, "k": k})
    plan = [
        ("loja_bound", loja_bound, (d, n)),
        ("finite_error_bound", finite_error_bound, (d, n)),
        ("definable_set_bound_at_n_plus_2", definable_set_bound, (d, n + 2)),
        ("belim_degree_bound", belim_degree_bound, (d, k)),
        ("belim_majorant", belim_majorant, (d, k)),
        ("example_lower_bound", example_lower_bound, (d, n)),
        ("kurdyka_spodzieja", kurdyka_spodzieja, (dbar, n, s, rbar)),
        ("kurdyka_spodzieja_isolated", kurdyka_spodzieja_isolated, (dbar, n, s, rbar)),
        ("lmp15", lmp15, (d, n, r, s)),
        ("lmp15_compact", lmp15_compact, (d, n, r)),
        ("kollar", kollar, (d, n)),
        ("oss21_nash", oss21_nash, (dbar, n)),
        ("oss21b_ball", oss21b_ball, (dbar, n)),
        ("convex_bly14", convex_bly14, (d, n)),
        ("convex_li10", convex_li10, (d, n)),
        ("gwozdziewicz_gradient", gwozdziewicz_gradient, (d, n)),
        ("dacunto_kurdyka_gradient", dacunto_kurdyka_gradient, (d, n)),
        ("nash_gradient", nash_gradient, (d, n)),
        ("nash_gradient_nondegenerate", nash_gradient_nondegenerate, (d, n)),
    ]
    for name, fn, args in plan:
        try:
            report.entries[name] = fn(*args)
        except BoundDomainError as exc:
            report.omitted[name] = str(exc)
    return report


# -- rates -----------------------------------------------------------------

def sos_rate(c: float, f_norm: float, deg_f: int, n: int, rho: int, t: int) -> float:
    """Gap bound c * |f| * deg^(7/5) * t^(-1/(2.5 n rho)) at relaxation order t."""
    if t <= 0:
        raise BoundDomainError("relaxation order t must be positive")
    if min(c, f_norm, deg_f, n, rho) <= 0:
        raise BoundDomainError("all parameters must be positive")
    return c * f_norm * deg_f ** 1.4 * t ** (-1.0 / (2.5 * n * rho))


def descent_rate(rho: int, k: int) -> float:
    """k^(1 - rho): sublinear rate of a feasible descent scheme."""
    if rho < 1 or k < 1:
        raise BoundDomainError("need rho >= 1 and k >= 1")
    return float(k) ** (1 - rho)
