"""Quantifier-free formulas over polynomial sign atoms, exact distance
descriptions (finite point sets, subsets of the line) and residual functions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Union

from .polyalg import (
    Polynomial,
    PolynomialError,
    default_names,
    eval_poly,
    format_poly,
    parse_poly,
)
from .realroots import (
    Cell1D,
    IsolatingInterval,
    compare_roots,
    compare_to_root,
    line_decomposition,
    sign_at_root,
)

RELATIONS = ("eq0", "gt0", "lt0", "ge0", "le0", "ne0")

_HOLDS = {
    "eq0": lambda s: s == 0,
    "gt0": lambda s: s > 0,
    "lt0": lambda s: s < 0,
    "ge0": lambda s: s >= 0,
    "le0": lambda s: s <= 0,
    "ne0": lambda s: s != 0,
}

_SYMBOL = {"eq0": "= 0", "gt0": "> 0", "lt0": "< 0", "ge0": ">= 0", "le0": "<= 0", "ne0": "!= 0"}


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    polynomial: Polynomial
    relation: str

    def __post_init__(self):
        if self.relation not in _HOLDS:
            raise FormulaError(f"unknown relation {self.relation!r}; expected one of {RELATIONS}")

    @property
    def arity(self) -> int:
        return self.polynomial.arity


@dataclass(frozen=True)
class And:
    children: tuple

    @property
    def arity(self) -> int:
        return _common_arity(self.children)


@dataclass(frozen=True)
class Or:
    children: tuple

    @property
    def arity(self) -> int:
        return _common_arity(self.children)


@dataclass(frozen=True)
class Not:
    child: "Formula"

    @property
    def arity(self) -> int:
        return self.child.arity


Formula = Union[Atom, And, Or, Not]


def _common_arity(children) -> int:
    arities = {c.arity for c in children if c.arity is not None}
    if len(arities) > 1:
        raise FormulaError(f"atoms of mixed arity {sorted(arities)}")
    return arities.pop() if arities else None


def conj(*parts: Formula) -> And:
    return And(tuple(parts))


def disj(*parts: Formula) -> Or:
    return Or(tuple(parts))


TRUE = And(())
FALSE = Or(())


def atoms(phi: Formula) -> Iterator[Atom]:
    if isinstance(phi, Atom):
        yield phi
    elif isinstance(phi, Not):
        yield from atoms(phi.child)
    else:
        for c in phi.children:
            yield from atoms(c)


def polynomials_of(phi: Formula) -> list[Polynomial]:
    """Distinct atom polynomials in first-appearance order."""
    seen: dict[Polynomial, None] = {}
    for a in atoms(phi):
        seen.setdefault(a.polynomial, None)
    return list(seen)


def eval_with_signs(phi: Formula, sign_of: Callable[[Polynomial], int]) -> bool:
    """Truth value given a sign oracle for the atom polynomials."""
    if isinstance(phi, Atom):
        return _HOLDS[phi.relation](sign_of(phi.polynomial))
    if isinstance(phi, Not):
        return not eval_with_signs(phi.child, sign_of)
    if isinstance(phi, And):
        return all(eval_with_signs(c, sign_of) for c in phi.children)
    if isinstance(phi, Or):
        return any(eval_with_signs(c, sign_of) for c in phi.children)
    raise FormulaError(f"not a formula node: {phi!r}")


def eval_formula(phi: Formula, x: Sequence) -> bool:
    """Exact membership of the rational point x in the realization of phi."""
    x = [Fraction(v) for v in x]
    arity = phi.arity
    if arity is not None and arity != len(x):
        raise FormulaError(f"point has {len(x)} coordinates, formula has arity {arity}")
    cache: dict[Polynomial, int] = {}

    def sign_of(P):
        if P not in cache:
            v = eval_poly(P, x)
            cache[P] = (v > 0) - (v < 0)
        return cache[P]

    return eval_with_signs(phi, sign_of)


def format_formula(phi: Formula, names: Sequence[str] | None = None) -> str:
    if isinstance(phi, Atom):
        return f"({format_poly(phi.polynomial, names)} {_SYMBOL[phi.relation]})"
    if isinstance(phi, Not):
        return f"!{format_formula(phi.child, names)}"
    if not phi.children:
        return "true" if isinstance(phi, And) else "false"
    op = " & " if isinstance(phi, And) else " | "
    return "(" + op.join(format_formula(c, names) for c in phi.children) + ")"


# ---------------------------------------------------------------------------
# JSON form: {"arity": n, "node": {"op": "and|or|not|atom", ...}}

def _node_to_json(phi: Formula, names) -> dict:
    if isinstance(phi, Atom):
        return {"op": "atom", "poly": format_poly(phi.polynomial, names), "rel": phi.relation}
    if isinstance(phi, Not):
        return {"op": "not", "arg": _node_to_json(phi.child, names)}
    op = "and" if isinstance(phi, And) else "or"
    return {"op": op, "args": [_node_to_json(c, names) for c in phi.children]}


def formula_to_json(phi: Formula, names: Sequence[str] | None = None, arity: int | None = None) -> dict:
    arity = phi.arity if arity is None else arity
    if arity is None:
        raise FormulaError("arity of an atom-free formula must be given explicitly")
    names = list(names) if names is not None else default_names(arity)
    return {"arity": arity, "node": _node_to_json(phi, names)}


def formula_from_json(obj, names: Sequence[str] | None = None, path: str = "") -> Formula:
    """Parse the JSON form; errors carry a JSON-pointer path."""
    if not isinstance(obj, dict):
        raise FormulaError(f"{path or '/'}: expected an object with 'arity' and 'node'")
    for key in ("arity", "node"):
        if key not in obj:
            raise FormulaError(f"{path}/{key}: missing")
    arity = obj["arity"]
    if not isinstance(arity, int) or arity < 1:
        raise FormulaError(f"{path}/arity: expected a positive integer")
    names = list(names) if names is not None else default_names(arity)
    if len(names) != arity:
        raise FormulaError(f"{path}/arity: {arity} does not match {len(names)} variable names")
    return _node_from_json(obj["node"], names, f"{path}/node")


def _node_from_json(node, names, path) -> Formula:
    if not isinstance(node, dict) or "op" not in node:
        raise FormulaError(f"{path}: expected an object with 'op'")
    op = node["op"]
    if op == "atom":
        if node.get("rel") not in _HOLDS:
            raise FormulaError(f"{path}/rel: expected one of {list(RELATIONS)}")
        if not isinstance(node.get("poly"), str):
            raise FormulaError(f"{path}/poly: expected a polynomial string")
        try:
            P = parse_poly(node["poly"], names)
        except PolynomialError as exc:
            raise FormulaError(f"{path}/poly: {exc}") from None
        return Atom(P, node["rel"])
    if op == "not":
        return Not(_node_from_json(node.get("arg"), names, f"{path}/arg"))
    if op in ("and", "or"):
        args = node.get("args")
        if not isinstance(args, list):
            raise FormulaError(f"{path}/args: expected a list")
        kids = tuple(_node_from_json(a, names, f"{path}/args/{i}") for i, a in enumerate(args))
        return And(kids) if op == "and" else Or(kids)
    raise FormulaError(f"{path}/op: unknown operator {op!r}")


# ---------------------------------------------------------------------------
# finite point sets

@dataclass(frozen=True)
class PointSet:
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(Fraction(c) for c in p) for p in self.points)
        if not pts:
            raise FormulaError("a point set must be nonempty")
        n = len(pts[0])
        if n == 0 or any(len(p) != n for p in pts):
            raise FormulaError("points must share a positive arity")
        if len(set(pts)) != len(pts):
            raise FormulaError("points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    @property
    def arity(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)


def _squared_distance_poly(p, arity: int) -> Polynomial:
    acc = Polynomial.zero(arity)
    for i, c in enumerate(p):
        diff = Polynomial.var(i, arity) - c
        acc = acc + diff * diff
    return acc


def dist_formula_finite(M: PointSet) -> Formula:
    """Formula in (X, T) whose realization is the graph of x -> dist(x, M).

    T >= 0, T^2 <= |X - p|^2 for every p, and T^2 = |X - p|^2 for some p.
    """
    n = M.arity
    T = Polynomial.var(n, n + 1)
    gaps = [T * T - _squared_distance_poly(p, n + 1) for p in M.points]
    return And((
        Atom(T, "ge0"),
        And(tuple(Atom(G, "le0") for G in gaps)),
        Or(tuple(Atom(G, "eq0") for G in gaps)),
    ))


def dist_to_finite(M: PointSet, x: Sequence) -> tuple[Fraction, float]:
    x = [Fraction(v) for v in x]
    if len(x) != M.arity:
        raise FormulaError(f"point has {len(x)} coordinates, point set has arity {M.arity}")
    sq = min(sum((a - b) ** 2 for a, b in zip(x, p)) for p in M.points)
    return sq, math.sqrt(sq)


# ---------------------------------------------------------------------------
# distance to a closed subset of the line

@dataclass(frozen=True)
class ShiftedRoot:
    """The real number scale * root + offset (scale is +1 or -1)."""

    root: IsolatingInterval
    scale: int
    offset: Fraction

    def enclosure(self, width=None) -> tuple[Fraction, Fraction]:
        r = self.root if width is None else self.root.refine(width)
        a, b = self.scale * r.low + self.offset, self.scale * r.high + self.offset
        return min(a, b), max(a, b)

    def __float__(self):
        return self.scale * float(self.root) + float(self.offset)


@dataclass(frozen=True)
class Dist1D:
    value: Union[Fraction, ShiftedRoot]
    nearest: Union[Fraction, IsolatingInterval]
    cell: Cell1D

    def __float__(self):
        return float(self.value)

    @property
    def is_rational(self) -> bool:
        return isinstance(self.value, Fraction)


def _cell_truth(phi: Formula, cell: Cell1D) -> bool:
    if cell.sample is not None:
        return eval_formula(phi, [cell.sample])
    return eval_with_signs(phi, lambda P: sign_at_root(P, cell.root))


def closed_set_cells(phi: Formula) -> list[tuple[Cell1D, bool]]:
    """Cells of the line for phi's atoms with phi's truth value on each."""
    polys = polynomials_of(phi)
    for P in polys:
        if P.arity != 1:
            raise FormulaError("dist_1d needs univariate atoms")
    cells = line_decomposition([P for P in polys if not P.is_constant()])
    return [(c, _cell_truth(phi, c)) for c in cells]


def _reflect(root: IsolatingInterval, x: Fraction) -> IsolatingInterval:
    # the root 2x - r of P(2x - t)
    t = Polynomial.var(0, 1)
    arg = Polynomial.const(2 * x, 1) - t
    P = Polynomial.zero(1)
    for k, c in enumerate(root.polynomial.to_dense()):
        if c:
            P = P + (arg ** k).scale(c)
    return IsolatingInterval(2 * x - root.high, 2 * x - root.low, P)


def dist_1d(phi: Formula, x) -> Dist1D:
    """Exact distance from x to the closed nonempty set defined by phi on the line."""
    x = Fraction(x)
    cells = closed_set_cells(phi)
    if not any(t for _, t in cells):
        raise FormulaError("the set defined by the formula is empty")
    for i, (c, t) in enumerate(cells):
        if t and not c.is_point:
            for j in (i - 1, i + 1):
                if 0 <= j < len(cells) and not cells[j][1]:
                    raise FormulaError(f"the set is not closed: boundary of {c.describe()} is missing")
    here = next(i for i, (c, _) in enumerate(cells) if c.contains(x))
    if cells[here][1]:
        return Dist1D(Fraction(0), x, cells[here][0])
    left = next((cells[j][0] for j in range(here - 1, -1, -1) if cells[j][1]), None)
    right = next((cells[j][0] for j in range(here + 1, len(cells)) if cells[j][1]), None)
    cands = []
    if left is not None:
        cands.append((left, -1))  # distance = x - a
    if right is not None:
        cands.append((right, 1))  # distance = b - x
    if len(cands) == 2:
        a, b = left.root, right.root
        order = _compare_gaps(a, b, x)
        cands = [cands[0]] if order <= 0 else [cands[1]]
    cell, side = cands[0]
    if cell.sample is not None:
        return Dist1D(abs(cell.sample - x), cell.sample, cell)
    return Dist1D(ShiftedRoot(cell.root, side, -side * x), cell.root, cell)


def _compare_gaps(a: IsolatingInterval, b: IsolatingInterval, x: Fraction) -> int:
    """Sign of (x - a) - (b - x), i.e. of 2x - a - b."""
    if a.is_exact and b.is_exact:
        v = 2 * x - a.low - b.low
        return (v > 0) - (v < 0)
    if a.is_exact:
        return compare_to_root(2 * x - a.low, b)
    if b.is_exact:
        return compare_to_root(2 * x - b.low, a)
    # 2x - a against b, with 2x - a the root of the reflected polynomial
    return compare_roots(_reflect(a, x), b)


# ---------------------------------------------------------------------------
# residual functions

def _point(x, arity_of: Sequence[Polynomial]) -> list[Fraction]:
    x = [Fraction(v) for v in x]
    for P in arity_of:
        if P.arity != len(x):
            raise FormulaError(f"point has {len(x)} coordinates, constraint has arity {P.arity}")
    return x


def residual_psi(g: Sequence[Polynomial], h: Sequence[Polynomial], x: Sequence) -> Fraction:
    """Sum of |h_j(x)| plus sum of max(g_i(x), 0); zero exactly on the feasible set."""
    x = _point(x, list(g) + list(h))
    return sum((abs(eval_poly(H, x)) for H in h), Fraction(0)) + sum(
        (max(eval_poly(G, x), Fraction(0)) for G in g), Fraction(0)
    )


def constraint_formula(g: Sequence[Polynomial], h: Sequence[Polynomial]) -> Formula:
    return And(tuple(Atom(G, "le0") for G in g) + tuple(Atom(H, "eq0") for H in h))


@dataclass(frozen=True)
class BinaryResidual:
    equality_radicand: Fraction
    inequality_radicand: Fraction
    binary_part: Fraction
    value: float


def residual_binary(g: Sequence[Polynomial], h: Sequence[Polynomial], x: Sequence) -> BinaryResidual:
    """Residual for polynomial constraints plus x_k in {0, 1}.

    sqrt(sum h_j^2) + sqrt(sum max(g_i, 0)^2) + sum |x_k (1 - x_k)|, with
    the radicands and the binary term kept exact.
    """
    x = _point(x, list(g) + list(h))
    eq = sum((eval_poly(H, x) ** 2 for H in h), Fraction(0))
    ineq = sum((max(eval_poly(G, x), Fraction(0)) ** 2 for G in g), Fraction(0))
    binary = sum((abs(v * (1 - v)) for v in x), Fraction(0))
    return BinaryResidual(eq, ineq, binary, math.sqrt(eq) + math.sqrt(ineq) + float(binary))


# ---------------------------------------------------------------------------
# semidefinite residual

def jacobi_eigenvalues(A, tol: float = 1e-12, max_sweeps: int = 50) -> list[float]:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending."""
    n = len(A)
    a = [[float(v) for v in row] for row in A]
    scale = max((abs(v) for row in a for v in row), default=0.0) or 1.0
    for _ in range(max_sweeps):
        off = math.sqrt(sum(a[i][j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p][q] == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2 * a[p][q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p], a[k][q] = c * akp - s * akq, s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k], a[q][k] = c * apk - s * aqk, s * apk + c * aqk
    return sorted(a[i][i] for i in range(n))


def exact_det(M) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(v) for v in row] for row in M]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


@dataclass(frozen=True)
class SDPResidual:
    lam_min: float
    lam_min_part: float
    minor_part: Fraction
    worst_minor: tuple[int, ...]
    constraint_part: Fraction
    dist_part: float | None

    @property
    def value(self) -> float | None:
        """max(dist(X, M), max(-lambda_min, 0)) when the distance is known."""
        if self.dist_part is None:
            return None
        return max(self.dist_part, self.lam_min_part)


def residual_sdp(X, g: Sequence[Polynomial] = (), dist_hook: Callable | None = None) -> SDPResidual:
    """Semidefinite residual parts of a symmetric rational matrix.

    ``g`` are constraints g_i(X) <= 0 in the p*p entries (row-major).  With no
    constraints the distance to M is 0; otherwise ``dist_hook(X)`` supplies it.
    """
    X = [[Fraction(v) for v in row] for row in X]
    p = len(X)
    if any(len(row) != p for row in X):
        raise FormulaError("matrix must be square")
    if any(X[i][j] != X[j][i] for i in range(p) for j in range(i)):
        raise FormulaError("matrix must be symmetric")
    lam = jacobi_eigenvalues(X)[0] if p else 0.0
    worst, worst_I = Fraction(0), ()
    for k in range(1, p + 1):
        for I in itertools.combinations(range(p), k):
            v = -exact_det([[X[i][j] for j in I] for i in I])
            if v > worst:
                worst, worst_I = v, I
    flat = [v for row in X for v in row]
    constraint = residual_psi(g, [], flat) if g else Fraction(0)
    if dist_hook is not None:
        dist = float(dist_hook(X))
    else:
        dist = 0.0 if not g else None
    return SDPResidual(lam, max(-lam, 0.0), worst, worst_I, constraint, dist)
