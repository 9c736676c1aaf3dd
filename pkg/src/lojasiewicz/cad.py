"""Cylindrical decomposition of the plane adapted to a polynomial family.

Cells are kept extensionally: a base cell of the line, a stack index above it,
an exact sample point and the sign vector of the family there.  Irrational
base points are handled exactly in Q(alpha), so every sign is decided without
rounding.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from . import _upoly as up
from ._algebraic import RealAlgebraic
from .formulas import Formula, eval_with_signs
from .polyalg import (
    Polynomial,
    PolynomialError,
    content_wrt_last,
    discriminant_wrt_last,
    divide_exact,
    gcd_wrt_last,
    resultant_wrt_last,
    squarefree_part_wrt_last,
)
from .realroots import Cell1D, line_decomposition


class CADError(RuntimeError):
    """An internal consistency check failed (a defect, not an input error)."""


Coordinate = Union[Fraction, RealAlgebraic]


# ---------------------------------------------------------------------------
# projection

def _check_family(family: Sequence[Polynomial]) -> list[Polynomial]:
    family = list(family)
    if not family:
        raise PolynomialError("the family must be nonempty")
    for i, F in enumerate(family):
        if not isinstance(F, Polynomial) or F.arity != 2:
            raise PolynomialError(f"family[{i}] must be a Polynomial in two variables")
        if F.is_zero():
            raise PolynomialError(f"family[{i}] is identically zero")
    return family


def _in_y(F: Polynomial) -> int:
    return F.degree_in(1)


def project2d(family: Sequence[Polynomial]) -> list[Polynomial]:
    """Univariate projection polynomials whose roots delimit the base cells.

    Per member: its content in X2 and, for the square-free primitive part,
    the leading and trailing coefficients and the discriminant.  Per pair:
    the resultant of the square-free primitive parts (of their cofactors when
    they share a factor).  Constants and duplicates are dropped.
    """
    family = _check_family(family)
    out: dict[Polynomial, None] = {}

    def add(P: Polynomial):
        if not P.is_zero() and P.degree() >= 1:
            out.setdefault(P.normalized(), None)

    parts = []
    for F in family:
        add(content_wrt_last(F))
        S = squarefree_part_wrt_last(F)
        if _in_y(S) >= 1:
            coeffs = S.coefficients_last()
            add(coeffs[-1])
            add(coeffs[0])
            add(discriminant_wrt_last(S))
            parts.append(S)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            A, B = parts[i], parts[j]
            g = gcd_wrt_last(A, B)
            if _in_y(g) >= 1:
                A, B = divide_exact(A, g), divide_exact(B, g)
                if _in_y(A) < 1 or _in_y(B) < 1:
                    continue
            add(resultant_wrt_last(A, B))
    return list(out)


# ---------------------------------------------------------------------------
# fibers

@dataclass
class FiberRoot:
    """A real root in X2 of a square-free polynomial over Q or Q(alpha)."""

    K: object
    sq: list
    lo: Fraction
    hi: Fraction

    def refine(self, width) -> "FiberRoot":
        self.lo, self.hi = up.refine_to(self.sq, self.lo, self.hi, Fraction(width), self.K)
        return self

    def __float__(self):
        if self.lo == self.hi:
            return float(self.lo)
        self.refine(Fraction(1, 2**60) * max(1, abs(self.lo), abs(self.hi)))
        return float((self.lo + self.hi) / 2)

    def compare(self, q) -> int:
        """Sign of root - q."""
        s, self.lo, self.hi = up.compare_rational(Fraction(q), self.sq, self.lo, self.hi, self.K)
        return -s


def _field_of(x: Coordinate):
    if isinstance(x, RealAlgebraic):
        return x
    return up.QQ


def fiber(F: Polynomial, x: Coordinate) -> list:
    """Coefficients in X2 (low first) of F(x, X2) over Q or Q(alpha)."""
    coeffs = F.coefficients_last()
    if isinstance(x, RealAlgebraic):
        return up.strip([x.element(c.to_dense()) for c in coeffs], x)
    return up.strip([up.evaluate(c.to_dense(), x) for c in coeffs])


def fiber_sections(family: Sequence[Polynomial], x: Coordinate) -> tuple[list, list[FiberRoot]]:
    """Square-free product of the non-vanishing fibers and its sorted roots."""
    K = _field_of(x)
    acc = [K.one]
    for F in family:
        f = fiber(F, x)
        if len(f) > 1:
            acc = up.sqfree(up.mul(acc, up.sqfree(f, K), K), K)
    if len(acc) < 2:
        return acc, []
    sq, ivs = up.isolate(acc, K)
    return sq, [FiberRoot(K, sq, lo, hi) for lo, hi in ivs]


def sign_at_point(F: Polynomial, x: Coordinate, y) -> int:
    """Exact sign of F at (x, y); y is a rational or a FiberRoot above x."""
    K = _field_of(x)
    f = fiber(F, x)
    if isinstance(y, FiberRoot):
        if y.K is not K:
            raise CADError("fiber root does not lie above this base point")
        s, y.lo, y.hi = up.sign_at(f, y.sq, y.lo, y.hi, K)
        return s
    return K.sign(up.evaluate(f, Fraction(y), K)) if f else 0


# ---------------------------------------------------------------------------
# decomposition

@dataclass(frozen=True)
class Point2D:
    x: Coordinate
    y: Union[Fraction, FiberRoot]

    def floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def is_rational(self) -> bool:
        return isinstance(self.x, Fraction) and isinstance(self.y, Fraction)


@dataclass(frozen=True)
class Cell2D:
    base_index: int
    stack_index: int
    sample: Point2D
    signs: tuple[int, ...]

    @property
    def is_section(self) -> bool:
        return self.stack_index % 2 == 1

    @property
    def dimension(self) -> int:
        return (self.base_index % 2 == 0) + (self.stack_index % 2 == 0)


@dataclass
class CylDecomp:
    family: list[Polynomial]
    projection: list[Polynomial]
    base_cells: list[Cell1D]
    base_points: list[Coordinate]
    stacks: list[list[Cell2D]] = field(default_factory=list)

    @property
    def cells(self) -> list[Cell2D]:
        return [c for s in self.stacks for c in s]

    def __len__(self):
        return sum(len(s) for s in self.stacks)

    def section_counts(self) -> list[int]:
        return [len(s) // 2 for s in self.stacks]


def _base_coordinate(cell: Cell1D) -> Coordinate:
    if cell.sample is not None:
        return cell.sample
    r = cell.root
    return RealAlgebraic(r.squarefree, r.low, r.high)


def _gap_sample(lo_root: FiberRoot | None, hi_root: FiberRoot | None) -> Fraction:
    if lo_root is None and hi_root is None:
        return Fraction(0)
    if lo_root is None:
        return Fraction(math.floor(hi_root.lo) - 1)
    if hi_root is None:
        return Fraction(math.floor(lo_root.hi) + 1)
    a, b = lo_root.hi, hi_root.lo
    return a if a == b else up.simplest_between(a, b)


def _section_sample(r: FiberRoot):
    if r.lo == r.hi and r.K is up.QQ:
        return r.lo
    return r


def cad2d(family: Sequence[Polynomial]) -> CylDecomp:
    """Sign-invariant cylindrical decomposition of the plane for the family."""
    family = _check_family(family)
    proj = project2d(family)
    base = line_decomposition(proj)
    out = CylDecomp(family, proj, base, [_base_coordinate(c) for c in base])
    for i, x in enumerate(out.base_points):
        _, roots = fiber_sections(family, x)
        stack = []
        bounds = [None] + roots + [None]
        for k in range(len(roots) + 1):
            y = _gap_sample(bounds[k], bounds[k + 1])
            stack.append(_make_cell(family, i, 2 * k, x, y))
            if k < len(roots):
                stack.append(_make_cell(family, i, 2 * k + 1, x, _section_sample(roots[k])))
        out.stacks.append(stack)
    return out


def _make_cell(family, i, j, x, y) -> Cell2D:
    signs = tuple(sign_at_point(F, x, y) for F in family)
    return Cell2D(i, j, Point2D(x, y), signs)


# ---------------------------------------------------------------------------
# membership and sampling

def locate(decomp: CylDecomp, point: Sequence) -> tuple[int, int]:
    """(base index, stack index) of the cell containing a rational point."""
    x, y = (Fraction(v) for v in point)
    matches = [i for i, c in enumerate(decomp.base_cells) if c.contains(x)]
    if len(matches) != 1:
        raise CADError(f"{len(matches)} base cells contain x = {x}")
    i = matches[0]
    _, roots = fiber_sections(decomp.family, x)
    if len(roots) != decomp.section_counts()[i]:
        raise CADError(f"stack over base cell {i} is not delineable at x = {x}")
    j = 0
    for r in roots:
        s = r.compare(y)  # root - y
        if s < 0:
            j += 2
        elif s == 0:
            return i, j + 1
        else:
            break
    return i, j


def contains(decomp: CylDecomp, cell: Cell2D, point: Sequence) -> bool:
    return locate(decomp, point) == (cell.base_index, cell.stack_index)


def _random_between(rng: random.Random, a: Fraction, b: Fraction) -> Fraction:
    # a < b; denominators stay modest
    u = Fraction(rng.randint(1, 4095), 4096)
    return a + (b - a) * u


def _open_range_x(cell: Cell1D, spread: Fraction) -> tuple[Fraction, Fraction]:
    left, right = cell.left, cell.right
    for _ in range(200):
        a = None if left is None else left.high
        b = None if right is None else right.low
        if a is None and b is None:
            return -spread, spread
        if a is None:
            return b - spread, b
        if b is None:
            return a, a + spread
        if a < b:
            return a, b
        left = left.refine(left.width / 4)
        right = right.refine(right.width / 4)
    raise CADError("could not separate the bounds of a base interval")


def _open_range_y(lo_r: FiberRoot | None, hi_r: FiberRoot | None, spread: Fraction):
    for _ in range(200):
        a = None if lo_r is None else lo_r.hi
        b = None if hi_r is None else hi_r.lo
        if a is None and b is None:
            return -spread, spread
        if a is None:
            return b - spread, b
        if b is None:
            return a, a + spread
        if a < b:
            return a, b
        lo_r.refine((lo_r.hi - lo_r.lo) / 4)
        hi_r.refine((hi_r.hi - hi_r.lo) / 4)
    raise CADError("could not separate adjacent sections")


def random_points_in_cell(decomp: CylDecomp, cell: Cell2D, count: int,
                          rng: random.Random | None = None,
                          spread: Fraction = Fraction(10)) -> list[Point2D]:
    """Exact points of the cell, generated through its cylindrical structure.

    Open x-ranges are narrowed by refining the boundary roots so samples are
    spread across the whole cell; unbounded sides extend by ``spread``.
    """
    rng = rng or random.Random(0)
    base = decomp.base_cells[cell.base_index]
    expected = decomp.section_counts()[cell.base_index]
    pts = []
    for _ in range(count):
        if base.is_point:
            x = decomp.base_points[cell.base_index]
        else:
            a, b = _open_range_x(base, spread)
            x = _random_between(rng, a, b)
        _, roots = fiber_sections(decomp.family, x)
        if len(roots) != expected:
            raise CADError(f"stack over base cell {cell.base_index} is not delineable at x = {x}")
        k = cell.stack_index
        if k % 2 == 1:
            y = _section_sample(roots[k // 2])
        else:
            bounds = [None] + roots + [None]
            a, b = _open_range_y(bounds[k // 2], bounds[k // 2 + 1], spread)
            y = _random_between(rng, a, b)
        pts.append(Point2D(x, y))
    return pts


def signs_at(decomp: CylDecomp, point: Point2D) -> tuple[int, ...]:
    return tuple(sign_at_point(F, point.x, point.y) for F in decomp.family)


def describe_cell(cell: Cell2D) -> dict:
    x, y = cell.sample.x, cell.sample.y
    return {
        "base": cell.base_index,
        "stack": cell.stack_index,
        "dimension": cell.dimension,
        "sample": [_coord_text(x), _coord_text(y)],
        "sample_float": [float(x), float(y)],
        "signs": list(cell.signs),
    }


def _coord_text(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return f"root~{float(c):.12g}"


# ---------------------------------------------------------------------------
# growth of a graph cell

@dataclass(frozen=True)
class GrowthReport:
    fitted_exponent: float
    window: tuple[float, float]
    claimed_p: int
    passed: bool
    tolerance: float
    sample_count: int
    intercept: float

    @property
    def pass_(self) -> bool:
        return self.passed


def geometric_grid(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    """``count`` rationals spaced geometrically from lo to hi inclusive."""
    if count < 2:
        raise ValueError("need at least two samples")
    ratio = (float(hi) / float(lo)) ** (1 / (count - 1))
    pts = [lo]
    for k in range(1, count - 1):
        pts.append(Fraction(float(lo) * ratio**k))
    pts.append(hi)
    return pts


def growth_check(family: Sequence[Polynomial], selector: Formula, p: int,
                 window: tuple = (10, 10**6), samples: int = 21,
                 tolerance: float = 0.1) -> GrowthReport:
    """Fit the polynomial growth rate of the graph picked out by ``selector``.

    Above each sample x the family's sections are isolated; the first section
    satisfying the selector gives f(x).  The slope of log|f| against log x is
    compared with ``p``.
    """
    family = _check_family(family)
    if p < 1:
        raise ValueError("p must be at least 1")
    lo, hi = Fraction(window[0]), Fraction(window[1])
    if not 0 < lo < hi:
        raise ValueError("window must satisfy 0 < x_min < x_max")
    logs_x, logs_f = [], []
    for x in geometric_grid(lo, hi, samples):
        _, roots = fiber_sections(family, x)
        value = None
        for r in roots:
            y = _section_sample(r)
            if eval_with_signs(selector, lambda P: sign_at_point(P, x, y)):
                value = float(y)
                break
        if value is None:
            raise CADError(f"no graph point found above x = {x}")
        if value != 0:
            logs_x.append(math.log(x))
            logs_f.append(math.log(abs(value)))
    if len(logs_x) < 2:
        raise CADError("the graph vanishes on the window; nothing to fit")
    slope, intercept = statistics.linear_regression(logs_x, logs_f)
    return GrowthReport(slope, (float(lo), float(hi)), p, slope <= p + tolerance,
                        tolerance, len(logs_x), intercept)
