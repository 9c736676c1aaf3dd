"""Dense univariate polynomials over an exact ordered field.

Coefficient lists are lowest degree first and stripped (no zero leading
coefficient; the zero polynomial is ``[]``).  The field object supplies exact
sign decisions, so the same Sturm/bisection code isolates roots over Q and over
a real algebraic extension Q(alpha).
"""

from __future__ import annotations

import math
from fractions import Fraction


class Rationals:
    exact_rational = True

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(q) -> Fraction:
        return Fraction(q)

    @staticmethod
    def sign(a) -> int:
        return (a > 0) - (a < 0)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def abs_bounds(a) -> tuple[Fraction, Fraction]:
        a = abs(Fraction(a))
        return a, a


QQ = Rationals()


def strip(p, K=QQ) -> list:
    p = list(p)
    while p and K.is_zero(p[-1]):
        p.pop()
    return p


def deriv(p) -> list:
    return [p[i] * i for i in range(1, len(p))]


def evaluate(p, x, K=QQ):
    acc = K.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _integral(p) -> list:
    """Positive multiple of a rational coefficient list with integer entries."""
    if all(type(c) is int for c in p):
        return p
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    out = [int(c * den) for c in p]
    g = math.gcd(*out)
    return [c // g for c in out] if g > 1 else out


def psign(p, x, K=QQ) -> int:
    """Sign of p(x); over Q this runs in integer arithmetic."""
    if not K.exact_rational:
        return K.sign(evaluate(p, x, K))
    if not p:
        return 0
    p = _integral(p)
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    # b^n p(a/b) by homogeneous Horner
    acc, bp = p[-1], 1
    for c in reversed(p[:-1]):
        bp *= b
        acc = acc * a + c * bp
    return (acc > 0) - (acc < 0)


def divmod_(a, b, K=QQ):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    q = [K.zero] * max(len(a) - len(b) + 1, 0)
    inv = K.one / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b[:-1]):
            a[k + i] = a[k + i] - c * bc
        a.pop()
        a = strip(a, K)
    return strip(q, K), a


def rem(a, b, K=QQ):
    return divmod_(a, b, K)[1]


def monic(p, K=QQ):
    if not p:
        return p
    inv = K.one / p[-1]
    return [c * inv for c in p[:-1]] + [K.one]


def gcd(a, b, K=QQ):
    a, b = strip(a, K), strip(b, K)
    while b:
        a, b = b, rem(a, b, K)
    return monic(a, K)


def mul(a, b, K=QQ):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return strip(out, K)


def quo(a, b, K=QQ):
    return divmod_(a, b, K)[0]


def sqfree(p, K=QQ):
    p = strip(p, K)
    if len(p) <= 2:
        return monic(p, K)
    g = gcd(p, deriv(p), K)
    return monic(quo(p, g, K), K) if len(g) > 1 else monic(p, K)


def sturm(p, K=QQ) -> list:
    seq = [strip(p, K)]
    d = strip(deriv(seq[0]), K)
    if not d:
        return seq
    seq.append(d)
    while True:
        r = rem(seq[-2], seq[-1], K)
        if not r:
            return seq
        seq.append([-c for c in r])


def variations(seq, x, K=QQ) -> int:
    count = 0
    last = 0
    for s in seq:
        v = psign(s, x, K)
        if v:
            if last and v != last:
                count += 1
            last = v
    return count


def count_roots(seq, a, b, K=QQ) -> int:
    """Distinct roots in (a, b] of seq[0] (exact when neither endpoint is a root)."""
    return variations(seq, a, K) - variations(seq, b, K)


def cauchy_bound(p, K=QQ) -> Fraction:
    """Integer B with every real root strictly inside (-B, B)."""
    lower_lc, _ = K.abs_bounds(p[-1])
    top = max((K.abs_bounds(c)[1] for c in p[:-1]), default=Fraction(0))
    return Fraction(math.floor(1 + top / lower_lc) + 1)


def interval_eval(p, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Rational enclosure of {p(x) : lo ≤ x ≤ hi} for rational coefficients."""
    acc_lo = acc_hi = Fraction(0)
    for c in reversed(p):
        cands = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(cands) + c, max(cands) + c
    return acc_lo, acc_hi


# ---------------------------------------------------------------------------
# simplest rationals

def _simplest_nonneg(a, b):
    # 0 <= a < b, b None meaning +inf; open interval
    fl = math.floor(a)
    if b is None or fl + 1 < b:
        return Fraction(fl + 1)
    # x = fl + 1/y with y in (1/(b - fl), 1/(a - fl))
    y = _simplest_nonneg(1 / (b - fl), None if a == fl else 1 / (a - fl))
    return fl + 1 / y


def simplest_between(a, b) -> Fraction:
    """Rational with smallest denominator strictly between a < b (None = infinite)."""
    a = None if a is None else Fraction(a)
    b = None if b is None else Fraction(b)
    if a is not None and b is not None and not a < b:
        raise ValueError("empty interval")
    if (a is None or a < 0) and (b is None or b > 0):
        return Fraction(0)
    if a is not None and a >= 0:
        return _simplest_nonneg(a, b)
    return -_simplest_nonneg(-b, None if a is None else -a)


def simplest_in_closed(a, b) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if a == b:
        return a
    if a <= 0 <= b:
        return Fraction(0)
    if b < 0:
        return -simplest_in_closed(-b, -a)
    if a.denominator == 1:
        return a
    if b.denominator == 1 and math.ceil(a) == b:
        return b
    return simplest_between(a, b)


# ---------------------------------------------------------------------------
# isolation over K

def _integer_lc(p) -> int | None:
    # leading coefficient after clearing denominators (rational fields only)
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in p:
        num = math.gcd(num, (c * den).numerator)
    return abs((p[-1] * den).numerator // num) if num else None


def refine(sq, lo, hi, K=QQ):
    """Halve an isolating interval of the square-free ``sq``; may hit the root exactly."""
    if lo == hi:
        return lo, hi
    mid = (lo + hi) / 2
    sm = psign(sq, mid, K)
    if sm == 0:
        return mid, mid
    slo = psign(sq, lo, K)
    return (lo, mid) if slo != sm else (mid, hi)


def refine_to(sq, lo, hi, width, K=QQ):
    if K.exact_rational:
        sq = _integral(sq)
    while hi - lo > width:
        lo, hi = refine(sq, lo, hi, K)
    return lo, hi


def _exact_rational_root(sq, lo, hi):
    lc = _integer_lc(sq)
    if lc is None or lc > 10**12:
        return lo, hi
    lo, hi = refine_to(sq, lo, hi, Fraction(1, 2 * lc * lc))
    if lo == hi:
        return lo, hi
    cand = simplest_in_closed(lo, hi)
    if psign(sq, cand) == 0:
        return cand, cand
    return lo, hi


def isolate(p, K=QQ) -> tuple[list, list]:
    """Isolating intervals (sorted) of the distinct real roots of p.

    Returns ``(sq, intervals)`` with ``sq`` the monic square-free part.  Each
    interval is either ``(r, r)`` for an exact rational root or an open
    ``(lo, hi)`` whose endpoints are not roots and bracket a sign change of sq.
    """
    p = strip(p, K)
    if not p:
        raise ValueError("cannot isolate the roots of the zero polynomial")
    sq = sqfree(p, K)
    if len(sq) == 1:
        return sq, []
    seq = sturm(sq, K)
    B = cauchy_bound(sq, K)
    monic_sq = sq
    if K.exact_rational:
        seq = [_integral(f) for f in seq]
        sq = seq[0]
    out = []

    def rec(a, b, k):
        if k == 0:
            return
        if k == 1:
            out.append((a, b))
            return
        m = (a + b) / 2
        if psign(sq, m, K) == 0:
            delta = (b - a) / 4
            while True:
                l, r = m - delta, m + delta
                if (not psign(sq, l, K) == 0 and not psign(sq, r, K) == 0
                        and count_roots(seq, l, r, K) == 1):
                    break
                delta /= 2
            rec(a, l, count_roots(seq, a, l, K))
            out.append((m, m))
            rec(r, b, count_roots(seq, r, b, K))
            return
        kl = count_roots(seq, a, m, K)
        rec(a, m, kl)
        rec(m, b, k - kl)

    rec(-B, B, count_roots(seq, -B, B, K))
    if K.exact_rational:
        out = [iv if iv[0] == iv[1] else _exact_rational_root(sq, *iv) for iv in out]
    return monic_sq, out


def sign_at(h, sq, lo, hi, K=QQ):
    """Sign of h at the root of sq isolated by (lo, hi).

    Returns ``(sign, lo, hi)``; the interval may have been refined.
    """
    h = strip(h, K)
    if not h:
        return 0, lo, hi
    if len(h) == 1:
        return K.sign(h[0]), lo, hi
    if lo == hi:
        return psign(h, lo, K), lo, hi
    g = gcd(sq, h, K)
    if len(g) > 1:
        # g divides sq, so it is square-free with at most one root in (lo, hi)
        if psign(g, lo, K) * psign(g, hi, K) < 0:
            return 0, lo, hi
    seq = sturm(h, K)
    if K.exact_rational:
        sq, h, seq = _integral(sq), _integral(h), [_integral(f) for f in seq]
    while True:
        if lo == hi:
            return psign(h, lo, K), lo, hi
        slo = psign(h, lo, K)
        if slo and psign(h, hi, K) and count_roots(seq, lo, hi, K) == 0:
            return slo, lo, hi
        lo, hi = refine(sq, lo, hi, K)


def compare_rational(q, sq, lo, hi, K=QQ):
    """Sign of (q - root).  Returns ``(sign, lo, hi)``."""
    if lo == hi:
        return K.sign(q - lo), lo, hi
    if q <= lo:
        return -1, lo, hi
    if q >= hi:
        return 1, lo, hi
    sq_q = psign(sq, q, K)
    if sq_q == 0:
        return 0, lo, hi
    # root lies in (lo, q) iff sq changes sign there
    if psign(sq, lo, K) != sq_q:
        return 1, lo, q
    return -1, q, hi
