"""Independent oracles shared by the unit tests and the acceptance suite."""
from fractions import Fraction

import sympy

from conftest import X, to_sympy
from lojasiewicz.polyalg import derivatives, eval_poly
from lojasiewicz.realroots import realizable_sign_conditions_1d


def sign(v):
    return (v > 0) - (v < 0)


def thom_lemma_holds(P, rng):
    """Each sign vector over the derivatives of P is realized on one cell."""
    fam = derivatives(P)
    cells = realizable_sign_conditions_1d(fam)
    by_signs = {}
    for s, cell in cells:
        if s.signs in by_signs:
            return False
        by_signs[s.signs] = cell
    grid = [Fraction(k, 8) for k in range(-80, 81)] + [Fraction(rng.randint(-999, 999), 97) for _ in range(50)]
    for x in grid:
        sv = tuple(sign(eval_poly(F, [x])) for F in fam)
        if sv not in by_signs or not by_signs[sv].contains(x):
            return False
    return True


# -- brute-force sign-condition oracle ---------------------------------------

def oracle_sign_sequence(family, rng, per_gap=10):
    """Sign vectors cell by cell, computed from sympy roots and random gap samples."""
    exprs = [to_sympy(F) for F in family]
    roots = set()
    for e in exprs:
        if sympy.degree(e, X) > 0:
            roots.update(sympy.real_roots(e, X))
    roots = sorted(roots, key=lambda r: sympy.N(r, 60))
    approx = [Fraction(str(sympy.N(r, 40))) for r in roots]

    def signs_at_rational(q):
        return tuple(sign(eval_poly(F, [q])) for F in family)

    def signs_at_root(r):
        mp = sympy.minimal_polynomial(r, X)
        out = []
        for e in exprs:
            if sympy.rem(e, mp, X) == 0:
                out.append(0)
            else:
                out.append(1 if sympy.N(e.subs(X, r), 60) > 0 else -1)
        return tuple(out)

    def gap_samples(lo, hi):
        vals = set()
        for _ in range(per_gap):
            t = Fraction(rng.randint(1, 999), 1000)
            vals.add(signs_at_rational(lo + (hi - lo) * t))
        assert len(vals) == 1, "sign changed inside a gap"
        return vals.pop()

    if not roots:
        return [gap_samples(Fraction(-10), Fraction(10))]
    eps = Fraction(1, 10**30)
    seq = [gap_samples(approx[0] - 10, approx[0] - eps)]
    for i, r in enumerate(roots):
        seq.append(signs_at_root(r))
        hi = approx[i + 1] - eps if i + 1 < len(roots) else approx[i] + 10
        seq.append(gap_samples(approx[i] + eps, hi))
    return seq
