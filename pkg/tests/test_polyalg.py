from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import X, Y, bivariate, from_sympy, to_sympy, univariate
from lojasiewicz.polyalg import (
    NEG_INF,
    Polynomial,
    PolynomialError,
    PolynomialSyntaxError,
    content_wrt_last,
    derivative,
    discriminant_wrt_last,
    divide_exact,
    eval_poly,
    format_poly,
    gcd_wrt_last,
    parse_poly,
    poly_divmod,
    poly_gcd,
    resultant_wrt_last,
    squarefree_part_wrt_last,
    sturm_sequence,
)

XY = ["x", "y"]


def sylvester_det(f, g):
    # sympy.resultant gets the sign wrong for e.g. (y+1, y^3); the Sylvester
    # determinant is the definition
    a, b = sympy.Poly(f, Y).all_coeffs(), sympy.Poly(g, Y).all_coeffs()
    m, n = len(a) - 1, len(b) - 1
    rows = [[0] * i + a + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + b + [0] * (m - 1 - i) for i in range(m)]
    return sympy.expand(sympy.Matrix(rows).det())


def P(text, names=XY):
    return parse_poly(text, names)


class TestParsing:
    def test_binomial_square(self):
        assert format_poly(P("(x+y)^2"), XY) == "x^2 + 2*x*y + y^2"

    def test_rationals_and_implicit_sign(self):
        assert P("-3/4*x + 1/2") == Polynomial(2, {(1, 0): Fraction(-3, 4), (0, 0): Fraction(1, 2)})

    def test_zero_has_negative_infinite_degree(self):
        assert P("x - x").degree() == NEG_INF
        assert format_poly(P("0"), XY) == "0"

    @pytest.mark.parametrize("text, pos", [("x+", 2), ("x*)", 2), ("2^x", 2), ("z", 0), ("x^", 2)])
    def test_errors_carry_positions(self, text, pos):
        with pytest.raises(PolynomialSyntaxError) as info:
            P(text)
        assert info.value.pos == pos

    @given(bivariate())
    def test_format_parse_round_trip(self, F):
        assert P(format_poly(F, XY)) == F


class TestArithmetic:
    @given(bivariate(), bivariate(), bivariate())
    def test_ring_laws(self, A, B, C):
        assert (A + B) * C == A * C + B * C
        assert A * B == B * A
        assert (A - A).is_zero()

    @given(bivariate(), bivariate())
    def test_product_matches_sympy(self, A, B):
        assert sympy.expand(to_sympy(A * B) - to_sympy(A) * to_sympy(B)) == 0

    @given(bivariate(), st.integers(-3, 3), st.integers(-3, 3))
    def test_eval_matches_sympy(self, A, a, b):
        assert eval_poly(A, [a, b]) == to_sympy(A).subs({X: a, Y: b})

    @given(bivariate())
    def test_derivative_matches_sympy(self, A):
        assert to_sympy(derivative(A, 1)) == sympy.diff(to_sympy(A), Y)

    @given(bivariate(), bivariate())
    def test_exact_division(self, A, B):
        assert divide_exact(A * B, B) == A

    def test_inexact_division_raises(self):
        with pytest.raises(PolynomialError):
            divide_exact(P("x^2+1"), P("x+1"))


class TestUnivariate:
    @given(univariate(), univariate())
    def test_divmod(self, A, B):
        q, r = poly_divmod(A, B)
        assert q * B + r == A
        assert r.is_zero() or r.degree() < B.degree()

    @given(univariate(), univariate())
    def test_gcd_matches_sympy(self, A, B):
        g = poly_gcd(A, B)
        expected = sympy.Poly(sympy.gcd(to_sympy(A), to_sympy(B)), X).monic()
        assert sympy.Poly(to_sympy(g), X).monic() == expected

    @pytest.mark.parametrize("text, expected", [
        ("x^2+1", ["x^2 + 1", "2*x", "-1"]),
        ("x^2-2", ["x^2 - 2", "2*x", "2"]),
        ("x", ["x", "1"]),
    ])
    def test_sturm_sequences(self, text, expected):
        seq = sturm_sequence(parse_poly(text, ["x"]))
        assert [format_poly(S, ["x"]) for S in seq] == expected


class TestElimination:
    def test_resultant_examples(self):
        assert format_poly(resultant_wrt_last(P("y-x^2"), P("y")), ["x"]) == "x^2"
        assert format_poly(resultant_wrt_last(P("y"), P("y-1")), ["x"]) == "-1"

    def test_discriminant_example(self):
        assert format_poly(discriminant_wrt_last(P("y^2-x")), ["x"]) == "4*x"

    @given(bivariate(), bivariate())
    def test_resultant_matches_sympy(self, A, B):
        if A.degree_in(1) < 1 or B.degree_in(1) < 1:
            return
        ours = resultant_wrt_last(A, B)
        theirs = sylvester_det(to_sympy(A), to_sympy(B))
        assert sympy.expand(to_sympy(ours, (X,)) - theirs) == 0

    @given(bivariate())
    def test_discriminant_matches_sympy(self, A):
        if A.degree_in(1) < 2:
            return
        ours = discriminant_wrt_last(A)
        theirs = sympy.discriminant(to_sympy(A), Y)
        assert sympy.expand(to_sympy(ours, (X,)) - theirs) == 0

    @given(bivariate(), bivariate())
    def test_gcd_matches_sympy_over_rational_functions(self, A, B):
        g = gcd_wrt_last(A * B, A)
        over = dict(gens=(Y,), domain="QQ(x)")
        ours = sympy.Poly(to_sympy(g), **over)
        assert sympy.Poly(to_sympy(A), **over).rem(ours).is_zero
        assert ours.degree() == sympy.Poly(to_sympy(A), **over).degree()

    def test_content(self):
        assert format_poly(content_wrt_last(P("x*y^2 - x^3*y")), ["x"]) == "x"

    @given(bivariate())
    def test_squarefree_part_has_same_zero_fibres(self, A):
        if A.degree_in(1) < 1:
            return
        S = squarefree_part_wrt_last(A * A)
        assert S.degree_in(1) <= A.degree_in(1)
        g = sympy.gcd(to_sympy(S), sympy.diff(to_sympy(S), Y))
        assert sympy.degree(g, Y) == 0


def test_sympy_round_trip_helper():
    F = P("x^3*y - 2/3*y + 5")
    assert from_sympy(to_sympy(F), (X, Y)) == F
