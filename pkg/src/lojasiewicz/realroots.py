"""Real roots of univariate rational polynomials: isolation, counting, signs,
Thom encodings and the sign-condition decomposition of the line."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import _upoly as up
from .polyalg import Polynomial, PolynomialError, derivatives, sturm_sequence


def _univariate(P: Polynomial, name: str = "polynomial") -> list[Fraction]:
    if not isinstance(P, Polynomial) or P.arity != 1:
        raise PolynomialError(f"{name} must be a univariate Polynomial")
    return P.to_dense()


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class IsolatingInterval:
    """A real root of ``polynomial``: the unique one in [low, high].

    Either ``low == high`` (an exact rational root) or the open interval
    (low, high) contains the root and neither endpoint is a root.
    """

    low: Fraction
    high: Fraction
    polynomial: Polynomial = field(compare=False)

    def __post_init__(self):
        if self.low > self.high:
            raise ValueError("low must not exceed high")

    @cached_property
    def squarefree(self) -> list[Fraction]:
        return up.sqfree(self.polynomial.to_dense())

    @property
    def is_exact(self) -> bool:
        return self.low == self.high

    @property
    def exact_value(self) -> Fraction | None:
        return self.low if self.low == self.high else None

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    def refine(self, width) -> "IsolatingInterval":
        """A new interval for the same root with ``high - low <= width``."""
        lo, hi = up.refine_to(self.squarefree, self.low, self.high, Fraction(width))
        return self._with(lo, hi)

    def _with(self, lo, hi) -> "IsolatingInterval":
        if (lo, hi) == (self.low, self.high):
            return self
        out = IsolatingInterval(lo, hi, self.polynomial)
        out.__dict__["squarefree"] = self.squarefree
        return out

    def __float__(self):
        if self.is_exact:
            return float(self.low)
        r = self.refine(Fraction(1, 2**60) * max(1, abs(self.low)))
        return float((r.low + r.high) / 2)

    def approx(self, digits: int = 17) -> float:
        return float(self)

    def __repr__(self):
        if self.is_exact:
            return f"Root({self.low})"
        return f"Root({self.polynomial} in ({self.low}, {self.high}))"


@dataclass(frozen=True)
class ThomEncoding:
    """Signs of P, P', ..., P^(D) at a root of P (entry 0 is always 0)."""

    polynomial: Polynomial = field(compare=False)
    signs: tuple[int, ...]

    def __post_init__(self):
        if not self.signs or self.signs[0] != 0:
            raise ValueError("a Thom encoding starts with the sign 0 of P at its root")

    def __str__(self):
        return "(" + ",".join({-1: "-", 0: "0", 1: "+"}[s] for s in self.signs) + ")"


@dataclass(frozen=True)
class SignCondition:
    """Signs in {-1, 0, 1} for each member of an indexed family."""

    signs: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.signs[i]

    def __len__(self):
        return len(self.signs)

    def __iter__(self):
        return iter(self.signs)

    def __str__(self):
        return "(" + ",".join({-1: "-", 0: "0", 1: "+"}[s] for s in self.signs) + ")"


@dataclass(frozen=True)
class Cell1D:
    """A point or open interval of the line.

    ``sample`` is an exact rational point of the cell, or ``None`` for a point
    cell whose coordinate is irrational (then ``root`` identifies it).
    Interval cells record their boundary roots (``None`` = unbounded).
    """

    kind: str  # "point" | "interval"
    sample: Fraction | None
    root: IsolatingInterval | None = None
    left: IsolatingInterval | None = None
    right: IsolatingInterval | None = None

    @property
    def is_point(self) -> bool:
        return self.kind == "point"

    def coordinate(self):
        """Exact coordinate object: a Fraction or an IsolatingInterval."""
        if self.sample is not None:
            return self.sample
        return self.root

    def describe(self) -> str:
        if self.is_point:
            return f"{{{self.sample if self.sample is not None else self.root}}}"
        lo = "-oo" if self.left is None else _short(self.left)
        hi = "+oo" if self.right is None else _short(self.right)
        return f"({lo}, {hi})"

    def contains(self, x) -> bool:
        """Membership of a rational x."""
        x = Fraction(x)
        if self.is_point:
            return compare_to_root(x, self.root) == 0
        if self.left is not None and compare_to_root(x, self.left) <= 0:
            return False
        if self.right is not None and compare_to_root(x, self.right) >= 0:
            return False
        return True


def _short(r: IsolatingInterval) -> str:
    if r.is_exact:
        return str(r.low)
    return f"{float(r):.6g}"


# ---------------------------------------------------------------------------

def isolate_roots(P: Polynomial) -> list[IsolatingInterval]:
    """Sorted isolating intervals for the distinct real roots of P."""
    dense = up.strip(_univariate(P))
    if not dense:
        raise PolynomialError("cannot isolate the roots of the zero polynomial")
    sq, ivs = up.isolate(dense)
    out = []
    for lo, hi in ivs:
        r = IsolatingInterval(lo, hi, P)
        r.__dict__["squarefree"] = sq
        out.append(r)
    return out


def root_multiplicity(P: Polynomial, root: IsolatingInterval) -> int:
    """Multiplicity of ``root`` as a root of P (via repeated gcd with P')."""
    m = 0
    for D in derivatives(P):
        if sign_at_root(D, root) != 0:
            return m
        m += 1
    return m


def count_roots_in(P: Polynomial, a, b) -> int:
    """Number of distinct real roots of P in (a, b) by Sturm's theorem."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    if P(a) == 0 or P(b) == 0:
        raise ValueError("an endpoint is a root; perturb the interval")
    seq = [s.to_dense() for s in sturm_sequence(P)]
    return up.count_roots(seq, a, b)


def sign_at_root(Q: Polynomial, root: IsolatingInterval) -> int:
    """Exact sign of Q at the root isolated by ``root``."""
    q = _univariate(Q, "Q")
    s, _, _ = up.sign_at(q, root.squarefree, root.low, root.high)
    return s


def compare_to_root(x, root: IsolatingInterval) -> int:
    """Sign of x - root for rational x."""
    s, _, _ = up.compare_rational(Fraction(x), root.squarefree, root.low, root.high)
    return s


def roots_equal(r1: IsolatingInterval, r2: IsolatingInterval) -> bool:
    if r1.is_exact:
        return compare_to_root(r1.low, r2) == 0
    if r2.is_exact:
        return compare_to_root(r2.low, r1) == 0
    lo, hi = max(r1.low, r2.low), min(r1.high, r2.high)
    if lo >= hi:
        return False
    g = up.gcd(r1.squarefree, r2.squarefree)
    if len(g) < 2:
        return False
    # endpoints are non-roots of both square-free parts, hence of g
    return _sign(up.evaluate(g, lo)) * _sign(up.evaluate(g, hi)) < 0


def compare_roots(r1: IsolatingInterval, r2: IsolatingInterval) -> int:
    """Sign of r1 - r2."""
    if r1.is_exact:
        return compare_to_root(r1.low, r2)
    if r2.is_exact:
        return -compare_to_root(r2.low, r1)
    if roots_equal(r1, r2):
        return 0
    while not (r1.high <= r2.low or r2.high <= r1.low):
        r1 = r1.refine(r1.width / 2)
        r2 = r2.refine(r2.width / 2)
        if r1.is_exact or r2.is_exact:
            return compare_roots(r1, r2)
    return -1 if r1.high <= r2.low else 1


def thom_signs_at(P: Polynomial, root: IsolatingInterval) -> tuple[int, ...]:
    return tuple(sign_at_root(D, root) for D in derivatives(P))


def thom_encode_roots(P: Polynomial) -> list[ThomEncoding]:
    """Thom encodings (signs of Der(P)) of the real roots of P, increasing order."""
    if P.is_zero():
        raise PolynomialError("thom_encode_roots of the zero polynomial")
    if P.degree() < 1:
        raise PolynomialError("thom_encode_roots needs degree >= 1")
    return [ThomEncoding(P, thom_signs_at(P, r)) for r in isolate_roots(P)]


def root_from_thom(P: Polynomial, signs: Sequence[int]) -> IsolatingInterval | None:
    """The root of P whose derivative signs are ``signs`` (None if none)."""
    signs = tuple(signs)
    for r in isolate_roots(P):
        if thom_signs_at(P, r) == signs:
            return r
    return None


def _product_squarefree(family: Sequence[Polynomial]) -> Polynomial:
    acc = [Fraction(1)]
    for P in family:
        d = up.strip(P.to_dense())
        if len(d) > 1:
            acc = up.sqfree(up.mul(acc, up.sqfree(d)))
    return Polynomial.from_dense(acc)


def line_decomposition(family: Sequence[Polynomial]) -> list[Cell1D]:
    """Ordered cells of the line cut by all real roots of the family."""
    prod = _product_squarefree(family)
    roots = isolate_roots(prod) if prod.degree() >= 1 else []
    cells: list[Cell1D] = []
    if not roots:
        return [Cell1D("interval", Fraction(0))]
    first = roots[0]
    cells.append(Cell1D("interval", Fraction(math.floor(first.low) - 1), right=first))
    for i, r in enumerate(roots):
        cells.append(Cell1D("point", r.exact_value, root=r))
        nxt = roots[i + 1] if i + 1 < len(roots) else None
        if nxt is None:
            cells.append(Cell1D("interval", Fraction(math.floor(r.high) + 1), left=r))
        else:
            a, b = r.high, nxt.low
            sample = a if a == b else up.simplest_between(a, b)
            cells.append(Cell1D("interval", sample, left=r, right=nxt))
    return cells


def signs_on_cell(family: Sequence[Polynomial], cell: Cell1D) -> SignCondition:
    if cell.sample is not None:
        return SignCondition(tuple(_sign(P(cell.sample)) for P in family))
    return SignCondition(tuple(sign_at_root(P, cell.root) for P in family))


def realizable_sign_conditions_1d(family: Sequence[Polynomial]) -> list[tuple[SignCondition, Cell1D]]:
    """Sign vector of the family on every cell of the line decomposition.

    The cells are the points given by all real roots of all members and the
    open intervals between them, listed from left to right.
    """
    family = list(family)
    for i, P in enumerate(family):
        _univariate(P, f"family[{i}]")
        if P.is_zero():
            raise PolynomialError(f"family[{i}] is the zero polynomial")
    return [(signs_on_cell(family, c), c) for c in line_decomposition(family)]
