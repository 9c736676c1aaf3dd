"""Exact arithmetic in Q(alpha) for a real algebraic number alpha.

alpha is given by a square-free rational polynomial ``m`` and an isolating
interval.  ``m`` need not be irreducible: whenever a zero test finds a
nontrivial factor of ``m``, the field replaces ``m`` by the factor that still
vanishes at alpha (dynamic evaluation).  Elements stay valid because they are
only ever read modulo the current ``m``.
"""

from __future__ import annotations

from fractions import Fraction

from . import _upoly as up


def _xgcd(a, b):
    """Monic g = gcd(a, b) and s with s*a = g mod b."""
    r0, r1 = up.strip(a), up.strip(b)
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = up.divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, up.strip(_sub(s0, up.mul(q, s1)))
    inv = 1 / r0[-1]
    return [c * inv for c in r0], [c * inv for c in s0]


def _sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _add(a, b):
    n = max(len(a), len(b))
    return up.strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


class RealAlgebraic:
    """A real algebraic number, doubling as the field Q(alpha) it generates."""

    exact_rational = False

    def __init__(self, m, lo, hi):
        m = up.monic(up.strip([Fraction(c) for c in m]))
        if len(m) < 2:
            raise ValueError("defining polynomial must have positive degree")
        self.m = up.sqfree(m)
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        if self.lo == self.hi:
            self.m = [-self.lo, Fraction(1)]
        self.zero = AlgElem(self, [])
        self.one = AlgElem(self, [Fraction(1)])

    # -- state -------------------------------------------------------------
    def _set_m(self, m):
        self.m = up.monic(m)
        if len(self.m) == 2:
            self.lo = self.hi = -self.m[0]

    def _refine(self):
        lo, hi = up.refine(self.m, self.lo, self.hi)
        self.lo, self.hi = lo, hi
        if lo == hi:
            self.m = [-lo, Fraction(1)]

    @property
    def rational_value(self) -> Fraction | None:
        return self.lo if self.lo == self.hi else None

    def interval(self, width=None) -> tuple[Fraction, Fraction]:
        if width is not None:
            while self.hi - self.lo > width:
                self._refine()
        return self.lo, self.hi

    def __float__(self):
        lo, hi = self.interval(Fraction(1, 2**60) * max(1, abs(self.lo)))
        return float((lo + hi) / 2)

    def compare(self, q) -> int:
        """Sign of alpha - q for rational q."""
        s, self.lo, self.hi = up.compare_rational(Fraction(q), self.m, self.lo, self.hi)
        if self.lo == self.hi:
            self.m = [-self.lo, Fraction(1)]
        return -s

    def __repr__(self):
        if self.lo == self.hi:
            return f"RealAlgebraic({self.lo})"
        return f"RealAlgebraic(root of {self.m} in ({self.lo}, {self.hi}))"

    # -- field protocol used by _upoly --------------------------------------
    def element(self, coeffs) -> "AlgElem":
        return AlgElem(self, [Fraction(c) for c in coeffs])

    def generator(self) -> "AlgElem":
        return AlgElem(self, [Fraction(0), Fraction(1)])

    def coerce(self, q) -> "AlgElem":
        if isinstance(q, AlgElem):
            return q
        return AlgElem(self, [Fraction(q)])

    def _reduce(self, coeffs):
        coeffs = up.strip(coeffs)
        if len(coeffs) >= len(self.m):
            coeffs = up.rem(coeffs, self.m)
        return coeffs

    def is_zero(self, a) -> bool:
        if not isinstance(a, AlgElem):
            return a == 0
        r = self._reduce(a.c)
        if not r:
            return True
        if len(r) == 1:
            return False
        if self.lo == self.hi:
            return up.evaluate(r, self.lo) == 0
        g = up.gcd(self.m, r)
        if len(g) > 1:
            # lo, hi are non-roots of m, hence of its factor g
            if _sgn(up.evaluate(g, self.lo)) * _sgn(up.evaluate(g, self.hi)) < 0:
                self._set_m(g)
                return True
            self._set_m(up.quo(self.m, g))
        return False

    def _enclose(self, r):
        # rational enclosure of r(alpha) excluding 0; r(alpha) must be nonzero
        while True:
            if self.lo == self.hi:
                v = up.evaluate(r, self.lo)
                return v, v
            lo, hi = up.interval_eval(r, self.lo, self.hi)
            if lo > 0 or hi < 0:
                return lo, hi
            self._refine()

    def sign(self, a) -> int:
        if not isinstance(a, AlgElem):
            return _sgn(a)
        if self.is_zero(a):
            return 0
        r = self._reduce(a.c)
        if len(r) == 1:
            return _sgn(r[0])
        lo, _ = self._enclose(r)
        return 1 if lo > 0 else -1

    def abs_bounds(self, a) -> tuple[Fraction, Fraction]:
        if not isinstance(a, AlgElem):
            a = abs(Fraction(a))
            return a, a
        if self.is_zero(a):
            return Fraction(0), Fraction(0)
        lo, hi = self._enclose(self._reduce(a.c))
        lo, hi = abs(lo), abs(hi)
        return min(lo, hi), max(lo, hi)

    def inverse(self, a) -> "AlgElem":
        if self.is_zero(a):
            raise ZeroDivisionError("division by zero in Q(alpha)")
        r = self._reduce(a.c)
        g, s = _xgcd(r, self.m)
        if len(g) != 1:  # cannot happen once is_zero has split m
            raise ArithmeticError("inverse failed: element shares a factor with m")
        return AlgElem(self, self._reduce(s))

    def to_float(self, a) -> float:
        if not isinstance(a, AlgElem):
            return float(a)
        r = self._reduce(a.c)
        if len(r) <= 1:
            return float(r[0]) if r else 0.0
        if self.is_zero(a):
            return 0.0
        lo, hi = self.interval(Fraction(1, 2**64) * max(1, abs(self.lo)))
        return float(up.evaluate(r, (lo + hi) / 2))


class AlgElem:
    """An element of Q(alpha): a rational polynomial read modulo m at alpha."""

    __slots__ = ("K", "c")

    def __init__(self, K: RealAlgebraic, coeffs):
        self.K = K
        self.c = K._reduce(list(coeffs))

    def _lift(self, other):
        if isinstance(other, AlgElem):
            return other.c
        if isinstance(other, (int, Fraction)):
            return [Fraction(other)] if other else []
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.K, _add(self.c, o))

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.K, [-x for x in self.c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.K, _sub(self.c, o))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.K, _sub(o, self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgElem(self.K, [x * other for x in self.c])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.K, up.mul(self.c, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgElem(self.K, [x / other for x in self.c])
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self * self.K.inverse(other)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.K, o) * self.K.inverse(self)

    def __float__(self):
        return self.K.to_float(self)

    def __repr__(self):
        return f"AlgElem({self.c})"
