import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import settings, strategies as st

from lojasiewicz.polyalg import Polynomial

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

X, Y = sympy.symbols("x y")


def to_sympy(P, symbols=None):
    if symbols is None:
        symbols = (X, Y)[: P.arity] if P.arity <= 2 else sympy.symbols(f"x1:{P.arity + 1}")
    expr = sympy.Integer(0)
    for mono, c in P.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, mono):
            term *= s**e
        expr += term
    return expr


def from_sympy(expr, symbols):
    poly = sympy.Poly(expr, *symbols)
    return Polynomial(len(symbols), {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


@st.composite
def univariate(draw, max_degree=6, coeff=5, nonzero=True):
    deg = draw(st.integers(0 if not nonzero else 1, max_degree))
    cs = draw(st.lists(st.integers(-coeff, coeff), min_size=deg + 1, max_size=deg + 1))
    if nonzero and cs[-1] == 0:
        cs[-1] = 1
    return Polynomial.from_dense(cs)


@st.composite
def bivariate(draw, max_degree=3, coeff=4, max_terms=5):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)),
        st.integers(-coeff, coeff).filter(bool), min_size=1, max_size=max_terms))
    return Polynomial(2, terms)


def random_univariate(rng: random.Random, max_degree=6, coeff=5):
    deg = rng.randint(1, max_degree)
    cs = [rng.randint(-coeff, coeff) for _ in range(deg)] + [rng.choice([-2, -1, 1, 2, 3])]
    return Polynomial.from_dense(cs)


@pytest.fixture
def rng():
    return random.Random(20240917)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line; the lines are repeated in the terminal summary."""
    def record(number, label, ok, elapsed, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}  {label}  [{elapsed:.2f}s]"
        if detail:
            line += f"  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
