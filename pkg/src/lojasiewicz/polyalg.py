"""Exact sparse multivariate polynomials over the rationals.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients.  Everything downstream (root
isolation, cylindrical decomposition, formula evaluation) is built on the
operations here, so no floating point is ever involved.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

#: Degree of the zero polynomial.
NEG_INF = -math.inf

Monomial = tuple  # tuple[int, ...]


class PolynomialError(ValueError):
    pass


class PolynomialSyntaxError(PolynomialError):
    """Raised by :func:`parse_poly`; ``pos`` is the 0-based offending offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("float coefficients are not allowed; use Fraction")
    return Fraction(c)


class Polynomial:
    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Monomial, object] | None = None):
        if arity < 0:
            raise PolynomialError("arity must be non-negative")
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != arity:
                raise PolynomialError(f"monomial {mono} does not have length {arity}")
            if any(e < 0 for e in mono):
                raise PolynomialError(f"negative exponent in {mono}")
            c = _frac(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self.arity = arity
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls(arity)

    @classmethod
    def const(cls, c, arity: int) -> "Polynomial":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def var(cls, index: int, arity: int) -> "Polynomial":
        if not 0 <= index < arity:
            raise PolynomialError(f"variable index {index} out of range for arity {arity}")
        mono = [0] * arity
        mono[index] = 1
        return cls(arity, {tuple(mono): 1})

    @classmethod
    def from_dense(cls, coeffs: Sequence) -> "Polynomial":
        """Univariate polynomial from coefficients listed lowest degree first."""
        return cls(1, {(i,): c for i, c in enumerate(coeffs) if c})

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.arity = arity
        p._terms = terms
        p._hash = None
        return p

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolynomialError("polynomial is not constant")
        return self._terms.get((0,) * self.arity, Fraction(0))

    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def degree_in(self, index: int):
        if not self._terms:
            return NEG_INF
        return max(m[index] for m in self._terms)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        """Leading monomial and coefficient in graded lexicographic order."""
        if not self._terms:
            raise PolynomialError("zero polynomial has no leading term")
        mono = max(self._terms, key=_grlex_key)
        return mono, self._terms[mono]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.arity != self.arity:
                raise PolynomialError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other, self.arity)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolynomialError("exponent must be a natural number")
        result = Polynomial.const(1, self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = _frac(c)
        if not c:
            return Polynomial.zero(self.arity)
        return Polynomial._raw(self.arity, {m: v * c for m, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.const(other, self.arity)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, arity={self.arity})"

    def __str__(self):
        return format_poly(self)

    # -- structural helpers ----------------------------------------------
    def __call__(self, *point):
        return eval_poly(self, point)

    def to_dense(self) -> list[Fraction]:
        """Coefficients of a univariate polynomial, lowest degree first."""
        if self.arity != 1:
            raise PolynomialError("to_dense needs a univariate polynomial")
        if not self._terms:
            return []
        out = [Fraction(0)] * (self.degree() + 1)
        for (e,), c in self._terms.items():
            out[e] = c
        return out

    def partial_eval(self, index: int, value) -> "Polynomial":
        """Substitute ``value`` for variable ``index`` and drop that variable."""
        value = _frac(value)
        out: dict = {}
        for m, c in self._terms.items():
            rest = m[:index] + m[index + 1:]
            s = out.get(rest, 0) + c * value ** m[index]
            if s:
                out[rest] = s
            else:
                out.pop(rest, None)
        return Polynomial._raw(self.arity - 1, out)

    def coefficients_last(self) -> list["Polynomial"]:
        """View as a polynomial in the last variable: coefficient list, low first."""
        if self.arity == 0:
            raise PolynomialError("a constant has no last variable")
        if not self._terms:
            return []
        coeffs: list[dict] = [dict() for _ in range(self.degree_in(self.arity - 1) + 1)]
        for m, c in self._terms.items():
            coeffs[m[-1]][m[:-1]] = c
        return [Polynomial._raw(self.arity - 1, t) for t in coeffs]

    @classmethod
    def from_coefficients_last(cls, coeffs: Sequence["Polynomial"], arity: int) -> "Polynomial":
        out: dict = {}
        for k, c in enumerate(coeffs):
            for m, v in c._terms.items():
                out[m + (k,)] = v
        return cls._raw(arity, out)

    def embed(self, arity: int) -> "Polynomial":
        """Same polynomial with trailing variables appended."""
        pad = (0,) * (arity - self.arity)
        return Polynomial._raw(arity, {m + pad: c for m, c in self._terms.items()})

    def numeric_content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "Polynomial":
        """Integer coprime coefficients with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.numeric_content()
        if self.leading_term()[1] < 0:
            c = -c
        return self.scale(1 / c)


def _grlex_key(mono):
    return (sum(mono), mono)


# ---------------------------------------------------------------------------
# evaluation and calculus

def eval_poly(P: Polynomial, point: Sequence) -> Fraction:
    if len(point) != P.arity:
        raise PolynomialError(f"point has length {len(point)}, polynomial arity is {P.arity}")
    pt = [_frac(v) for v in point]
    total = Fraction(0)
    for m, c in P.items():
        t = c
        for v, e in zip(pt, m):
            if e:
                t *= v ** e
        total += t
    return total


def derivative(P: Polynomial, var_index: int) -> Polynomial:
    if not 0 <= var_index < P.arity:
        raise PolynomialError(f"variable index {var_index} out of range for arity {P.arity}")
    out = {}
    for m, c in P.items():
        e = m[var_index]
        if e:
            mm = list(m)
            mm[var_index] = e - 1
            out[tuple(mm)] = c * e
    return Polynomial._raw(P.arity, out)


def derivatives(P: Polynomial) -> list[Polynomial]:
    """Der(P) = [P, P', ..., P^(deg P)] for univariate nonzero P."""
    if P.arity != 1 or P.is_zero():
        raise PolynomialError("Der(P) needs a nonzero univariate polynomial")
    out = [P]
    for _ in range(int(P.degree())):
        out.append(derivative(out[-1], 0))
    return out


# ---------------------------------------------------------------------------
# division

def divide_exact(P: Polynomial, Q: Polynomial) -> Polynomial:
    """Return P / Q, raising PolynomialError if Q does not divide P."""
    if Q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if P.arity != Q.arity:
        raise PolynomialError("arity mismatch")
    lmq, lcq = Q.leading_term()
    quotient: dict = {}
    rem = P
    while rem:
        lm, lc = rem.leading_term()
        shift = tuple(a - b for a, b in zip(lm, lmq))
        if any(s < 0 for s in shift):
            raise PolynomialError("inexact polynomial division")
        c = lc / lcq
        quotient[shift] = quotient.get(shift, 0) + c
        term = Polynomial._raw(P.arity, {shift: c})
        rem = rem - term * Q
    return Polynomial(P.arity, quotient)


def _dense_divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        a.pop()
        while a and not a[-1]:
            a.pop()
    return q, a


def poly_divmod(A: Polynomial, B: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Univariate Euclidean division over Q."""
    if A.arity != 1 or B.arity != 1:
        raise PolynomialError("poly_divmod is univariate")
    if B.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q, r = _dense_divmod(A.to_dense(), B.to_dense())
    return Polynomial.from_dense(q), Polynomial.from_dense(r)


def poly_gcd(A: Polynomial, B: Polynomial) -> Polynomial:
    """Monic univariate gcd over Q (zero if both are zero)."""
    a, b = A.to_dense(), B.to_dense()
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    if not a:
        return Polynomial.zero(1)
    lc = a[-1]
    return Polynomial.from_dense([c / lc for c in a])


def sturm_sequence(P: Polynomial) -> list[Polynomial]:
    """Signed remainder sequence P, P', -rem(P, P'), ... ending at the gcd."""
    if P.arity != 1:
        raise PolynomialError("sturm_sequence needs a univariate polynomial")
    if P.is_zero():
        raise PolynomialError("sturm_sequence of the zero polynomial")
    seq = [P.to_dense(), derivative(P, 0).to_dense()]
    if not seq[1]:
        return [P]
    while True:
        _, r = _dense_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [Polynomial.from_dense(s) for s in seq]


# ---------------------------------------------------------------------------
# resultants, contents, square-free parts (in the last variable)

def _prem(A: list, B: list) -> list:
    """Pseudo-remainder of coefficient lists over the ring of polynomials."""
    lcb = B[-1]
    db = len(B) - 1
    R = list(A)
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= db:
        lcr = R[-1]
        k = len(R) - 1 - db
        R = [c * lcb for c in R]
        for i, bc in enumerate(B):
            R[k + i] = R[k + i] - lcr * bc
        R.pop()
        while R and R[-1].is_zero():
            R.pop()
        e -= 1
    if e > 0 and R:
        f = lcb ** e
        R = [c * f for c in R]
    return R if R else []


def _check_last(F: Polynomial, name: str):
    if F.arity < 1:
        raise PolynomialError(f"{name} must have at least one variable")
    if F.is_zero() or F.degree_in(F.arity - 1) < 1:
        raise PolynomialError(f"{name} has degree 0 in the last variable")


def resultant_wrt_last(F: Polynomial, G: Polynomial) -> Polynomial:
    """Resultant in the last variable via the subresultant remainder sequence.

    Agrees with the Sylvester determinant (F's coefficients in the first rows).
    """
    if F.arity != G.arity:
        raise PolynomialError("arity mismatch")
    _check_last(F, "F")
    _check_last(G, "G")
    ring = F.arity - 1
    one = Polynomial.const(1, ring)
    A, B = F.coefficients_last(), G.coefficients_last()
    a, b = len(A) - 1, len(B) - 1
    s = 1
    if a < b:
        A, B = B, A
        if (a * b) % 2:
            s = -1
    g = h = one
    while True:
        da, db = len(A) - 1, len(B) - 1
        if db == 0:
            # only reached with the original inputs when deg B = 0
            return (B[-1] ** da).scale(s)
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return Polynomial.zero(ring)
        div = g * h ** delta
        B = [divide_exact(c, div) for c in R]
        g = A[-1]
        if delta >= 1:
            h = divide_exact(g ** delta, h ** (delta - 1))
        if len(B) == 1:
            da = len(A) - 1
            res = divide_exact(B[0] ** da, h ** (da - 1)) if da >= 1 else one
            return res.scale(s)


def discriminant_wrt_last(F: Polynomial) -> Polynomial:
    """(-1)^(m(m-1)/2) Res(F, dF) / lc(F), m = degree in the last variable."""
    _check_last(F, "F")
    m = F.degree_in(F.arity - 1)
    if m == 1:
        return Polynomial.const(1, F.arity - 1)
    res = resultant_wrt_last(F, derivative(F, F.arity - 1))
    out = divide_exact(res, F.coefficients_last()[-1])
    return -out if (m * (m - 1) // 2) % 2 else out


def content_wrt_last(F: Polynomial) -> Polynomial:
    """Monic gcd of the coefficients of F in its last variable (arity ≤ 2)."""
    if F.arity > 2:
        raise PolynomialError("content is only available for arity ≤ 2")
    coeffs = F.coefficients_last()
    if F.arity == 1:
        return Polynomial.const(1 if coeffs else 0, 0)
    g = Polynomial.zero(1)
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.degree() == 0:
            break
    return g


def primitive_part_wrt_last(F: Polynomial) -> Polynomial:
    if F.is_zero():
        return F
    c = content_wrt_last(F)
    return divide_exact(F, c.embed(F.arity)).normalized()


def gcd_wrt_last(F: Polynomial, G: Polynomial) -> Polynomial:
    """Gcd in Q[x][y] for arity ≤ 2, normalized (primitive PRS)."""
    if F.arity != G.arity:
        raise PolynomialError("arity mismatch")
    if F.arity == 1:
        return poly_gcd(F, G)
    if F.is_zero():
        return G.normalized()
    if G.is_zero():
        return F.normalized()
    c = poly_gcd(content_wrt_last(F), content_wrt_last(G)).embed(F.arity)
    A = primitive_part_wrt_last(F).coefficients_last()
    B = primitive_part_wrt_last(G).coefficients_last()
    if len(A) < len(B):
        A, B = B, A
    while B:
        if len(B) == 1:
            A = [Polynomial.const(1, F.arity - 1)]
            break
        R = _prem(A, B)
        A = B
        B = primitive_part_wrt_last(Polynomial.from_coefficients_last(R, F.arity)).coefficients_last() if R else []
    pp = Polynomial.from_coefficients_last(A, F.arity)
    return (c * primitive_part_wrt_last(pp)).normalized()


def squarefree_part_wrt_last(F: Polynomial) -> Polynomial:
    """Square-free part of the primitive part of F as a polynomial in the last variable."""
    pp = primitive_part_wrt_last(F)
    if pp.degree_in(pp.arity - 1) < 1:
        return pp
    g = gcd_wrt_last(pp, derivative(pp, pp.arity - 1))
    return divide_exact(pp, g).normalized()


# ---------------------------------------------------------------------------
# text I/O

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("NAT", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("VAR", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("^" if op == "**" else op, op, start))
        pos = m.end()
    out.append(("EOF", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = {n: i for i, n in enumerate(names)}
        self.arity = len(names)
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise PolynomialSyntaxError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                raise PolynomialSyntaxError("negative exponent", self.text, tok[2])
            e = self.take("NAT")[1]
            return base ** e
        return base

    def base(self) -> Polynomial:
        tok = self.peek()
        kind = tok[0]
        if kind == "NAT":
            self.take()
            value = Fraction(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den = self.take("NAT")
                if den[1] == 0:
                    raise PolynomialSyntaxError("zero denominator", self.text, den[2])
                value = Fraction(tok[1], den[1])
            return Polynomial.const(value, self.arity)
        if kind == "VAR":
            self.take()
            if tok[1] not in self.names:
                raise PolynomialSyntaxError(f"unknown variable {tok[1]!r}", self.text, tok[2])
            return Polynomial.var(self.names[tok[1]], self.arity)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            # implicit unary minus inside a product, e.g. "x*-y"
            self.take()
            return -self.factor()
        what = "end of input" if kind == "EOF" else repr(tok[1])
        raise PolynomialSyntaxError(f"unexpected {what}", self.text, tok[2])


def parse_poly(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` into the expanded polynomial over ``variables`` (in order)."""
    if len(set(variables)) != len(variables):
        raise PolynomialError(f"duplicate variable names in {list(variables)}")
    p = _Parser(text, variables)
    out = p.expr()
    p.take("EOF")
    return out


def default_names(arity: int) -> list[str]:
    return ["x"] if arity == 1 else [f"x{i + 1}" for i in range(arity)]


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(P: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text, terms in descending graded lexicographic order."""
    names = list(names) if names is not None else default_names(P.arity)
    if not P:
        return "0"
    parts = []
    for mono in sorted(P._terms, key=_grlex_key, reverse=True):
        c = P._terms[mono]
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        a = abs(c)
        if not factors:
            body = _fmt_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _fmt_coeff(a) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def variables_of(polys: Iterable[Polynomial]) -> int:
    arities = {p.arity for p in polys}
    if len(arities) > 1:
        raise PolynomialError(f"mixed arities {sorted(arities)}")
    return arities.pop() if arities else 0
