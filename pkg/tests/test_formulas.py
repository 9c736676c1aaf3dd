import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lojasiewicz.formulas import (
    FALSE,
    TRUE,
    Atom,
    FormulaError,
    Not,
    PointSet,
    atoms,
    conj,
    constraint_formula,
    disj,
    dist_1d,
    dist_formula_finite,
    dist_to_finite,
    eval_formula,
    exact_det,
    formula_from_json,
    formula_to_json,
    jacobi_eigenvalues,
    residual_binary,
    residual_psi,
    residual_sdp,
)
from lojasiewicz.polyalg import Polynomial, parse_poly

RELS = ["eq0", "gt0", "lt0", "ge0", "le0", "ne0"]


def U(text, names=("x",)):
    return parse_poly(text, list(names))


def atom(text, rel, names=("x",)):
    return Atom(U(text, names), rel)


class TestEvaluation:
    def test_examples(self):
        unit = conj(atom("x", "gt0"), atom("x-1", "lt0"))
        assert eval_formula(unit, [Fraction(1, 2)])
        assert not eval_formula(unit, [2])
        assert not eval_formula(atom("x^2-2", "eq0"), [Fraction(3, 2)])

    def test_constants_and_negation(self):
        assert eval_formula(TRUE, []) and not eval_formula(FALSE, [])
        assert eval_formula(Not(atom("x", "gt0")), [0])

    def test_arity_mismatch(self):
        with pytest.raises(FormulaError):
            eval_formula(atom("x", "gt0"), [1, 2])

    def test_mixed_arity_rejected(self):
        with pytest.raises(FormulaError):
            conj(atom("x", "gt0"), atom("x+y", "gt0", ("x", "y"))).arity


@st.composite
def formulas_1d(draw, depth=2):
    if depth == 0 or draw(st.booleans()):
        cs = draw(st.lists(st.integers(-3, 3), min_size=2, max_size=4))
        if not any(cs):
            cs[-1] = 1
        return Atom(Polynomial.from_dense(cs), draw(st.sampled_from(RELS)))
    kind = draw(st.sampled_from(["and", "or", "not"]))
    if kind == "not":
        return Not(draw(formulas_1d(depth=depth - 1)))
    kids = draw(st.lists(formulas_1d(depth=depth - 1), min_size=1, max_size=3))
    return conj(*kids) if kind == "and" else disj(*kids)


class TestJson:
    @given(formulas_1d())
    def test_round_trip(self, phi):
        obj = formula_to_json(phi, ["x"])
        back = formula_from_json(obj, ["x"])
        for k in range(-12, 13):
            assert eval_formula(back, [Fraction(k, 4)]) == eval_formula(phi, [Fraction(k, 4)])

    def test_schema(self):
        obj = formula_to_json(conj(atom("x", "ge0"), Not(atom("x-1", "eq0"))), ["x"])
        assert obj["arity"] == 1
        assert obj["node"]["op"] == "and"
        assert obj["node"]["args"][0] == {"op": "atom", "poly": "x", "rel": "ge0"}

    @pytest.mark.parametrize("obj, path", [
        ({"arity": 1, "node": {"op": "xor"}}, "/node/op"),
        ({"arity": 1, "node": {"op": "atom", "poly": "x+", "rel": "ge0"}}, "/node/poly"),
        ({"arity": 1, "node": {"op": "and", "args": [{"op": "atom", "poly": "x", "rel": "gt"}]}},
         "/node/args/0/rel"),
        ({"node": {}}, "/arity"),
    ])
    def test_errors_carry_json_pointers(self, obj, path):
        with pytest.raises(FormulaError) as info:
            formula_from_json(obj, ["x"])
        assert path in str(info.value)


class TestFiniteDistance:
    def test_theta_examples(self):
        theta = dist_formula_finite(PointSet(((Fraction(0),),)))
        assert eval_formula(theta, [3, 3]) and not eval_formula(theta, [3, 2])
        theta = dist_formula_finite(PointSet(((0, 0), (1, 0))))
        assert eval_formula(theta, [Fraction(1, 2), 0, Fraction(1, 2)])
        assert not eval_formula(theta, [Fraction(1, 2), 0, Fraction(1, 3)])
        theta = dist_formula_finite(PointSet(((-1,), (1,))))
        assert eval_formula(theta, [0, 1]) and not eval_formula(theta, [0, Fraction(9, 10)])

    def test_theta_degrees_at_most_two(self):
        theta = dist_formula_finite(PointSet(((0, 1), (2, 3), (4, 5))))
        assert all(a.polynomial.degree() <= 2 for a in atoms(theta))

    def test_dist_examples(self):
        assert dist_to_finite(PointSet(((0, 0), (1, 0))), [Fraction(1, 2), 0]) == (Fraction(1, 4), 0.5)
        assert dist_to_finite(PointSet(((0,),)), [Fraction(3, 2)])[0] == Fraction(9, 4)
        assert dist_to_finite(PointSet(((1, 2),)), [1, 2])[0] == 0

    def test_point_set_validation(self):
        with pytest.raises(FormulaError):
            PointSet(())
        with pytest.raises(FormulaError):
            PointSet(((0, 0), (0, 0)))
        with pytest.raises(FormulaError):
            PointSet(((0, 0), (1,)))

    def test_theta_soundness_random(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(1, 3)
            pts = {tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(rng.randint(1, 5))}
            M = PointSet(tuple(pts))
            x = [Fraction(rng.randint(-20, 20), 4) for _ in range(n)]
            sq, _ = dist_to_finite(M, x)
            theta = dist_formula_finite(M)
            # a rational t with t^2 = sq exists only for square sq; test the squared form through t = sqrt when exact
            r = Fraction(math.isqrt(sq.numerator), math.isqrt(sq.denominator))
            if r * r == sq:
                assert eval_formula(theta, x + [r])
            if sq > 0:
                below = Fraction(r.numerator, r.denominator + 1) if r else sq / 2
                below = min(below, sq / (1 + sq))  # strictly below the distance
                assert below * below < sq
                assert not eval_formula(theta, x + [below])


class TestLineDistance:
    def test_examples(self):
        assert dist_1d(atom("x^2-1", "le0"), 3).value == 2
        assert dist_1d(disj(atom("x", "eq0"), atom("x-2", "eq0")), Fraction(3, 2)).value == Fraction(1, 2)
        d = dist_1d(atom("x^2-2", "eq0"), 0)
        assert not d.is_rational and abs(float(d) - math.sqrt(2)) < 1e-12
        lo, hi = d.value.enclosure(Fraction(1, 10**20))
        assert lo <= Fraction(14142135623730950488, 10**19) <= hi

    def test_inside_is_zero(self):
        assert dist_1d(atom("x^2-1", "le0"), Fraction(1, 3)).value == 0

    def test_empty_and_open_sets_rejected(self):
        with pytest.raises(FormulaError):
            dist_1d(atom("x^2+1", "eq0"), 0)
        with pytest.raises(FormulaError):
            dist_1d(atom("x", "gt0"), -1)

    def test_ties_resolved_exactly(self):
        # sqrt(2) and -sqrt(2) are equidistant from 0; either way the value is sqrt(2)
        d = dist_1d(atom("x^2-2", "eq0"), 0)
        assert abs(float(d) - math.sqrt(2)) < 1e-15
        # between sqrt(2) and sqrt(3) the midpoint is about 1.5731
        phi = atom("(x^2-2)*(x^2-3)", "eq0")
        assert abs(float(dist_1d(phi, Fraction(157, 100))) - (1.57 - math.sqrt(2))) < 1e-12
        assert abs(float(dist_1d(phi, Fraction(158, 100))) - (math.sqrt(3) - 1.58)) < 1e-12
        assert abs(float(dist_1d(phi, Fraction(15731, 10000))) - (1.5731 - math.sqrt(2))) < 1e-12
        assert abs(float(dist_1d(phi, Fraction(15732, 10000))) - (math.sqrt(3) - 1.5732)) < 1e-12

    def test_against_dense_grid(self):
        rng = random.Random(8)
        grid = np.linspace(-6, 6, 120001)
        checked = 0
        while checked < 100:
            cs = [rng.randint(-4, 4) for _ in range(rng.randint(2, 4))] + [1]
            P = Polynomial.from_dense(cs)
            phi = Atom(P, rng.choice(["le0", "ge0", "eq0"]))
            x = Fraction(rng.randint(-16, 16), 4)
            try:
                d = float(dist_1d(phi, x))
            except FormulaError:
                continue
            vals = np.polyval(list(reversed(cs)), grid)
            mask = {"le0": vals <= 0, "ge0": vals >= 0, "eq0": np.abs(vals) < 1e-9}[phi.relation]
            if phi.relation == "eq0":
                # sign changes mark roots on the grid
                mask = np.zeros_like(grid, dtype=bool)
                ch = np.flatnonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))
                mask[ch] = True
                mask[ch + 1] = True
                if not mask.any():
                    continue  # only double roots; the grid cannot see them
            if not mask.any() or abs(d) > 5:
                continue
            brute = np.min(np.abs(grid[mask] - float(x)))
            assert abs(brute - d) <= 2e-4, (cs, phi.relation, x)
            checked += 1


class TestResiduals:
    def test_psi_examples(self):
        assert residual_psi([U("x")], [U("x-1")], [3]) == 5
        assert residual_psi([U("x")], [], [-1]) == 0
        assert residual_psi([], [U("x^2"), U("x-1")], [2]) == 5

    def test_binary_examples(self):
        assert residual_binary([], [], [Fraction(1, 2)]).value == 0.25
        assert residual_binary([], [], [0, 1, 1]).value == 0
        assert residual_binary([U("x-2")], [], [3]).value == 7

    def test_psi_zero_iff_feasible(self):
        rng = random.Random(4)
        for _ in range(200):
            def rp():
                return Polynomial(2, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)
                                      for _ in range(3)})
            g = [rp() for _ in range(rng.randint(0, 2))]
            h = [rp() for _ in range(rng.randint(0, 2))]
            x = [rng.randint(-2, 2), rng.randint(-2, 2)]
            feasible = eval_formula(constraint_formula(g, h), x)
            assert (residual_psi(g, h, x) == 0) == feasible

    def test_arity_mismatch(self):
        with pytest.raises(FormulaError):
            residual_psi([U("x")], [], [1, 2])


class TestSDP:
    def test_examples(self):
        r = residual_sdp([[0, 0], [0, -1]])
        assert r.lam_min_part == pytest.approx(1) and r.minor_part == 1
        r = residual_sdp([[1, 0], [0, 1]])
        assert r.lam_min_part == 0 and r.minor_part == 0
        r = residual_sdp([[0, 1], [1, 0]])
        assert r.lam_min == pytest.approx(-1) and r.minor_part == 1

    def test_non_symmetric_rejected(self):
        with pytest.raises(FormulaError):
            residual_sdp([[0, 1], [2, 0]])

    def test_jacobi_matches_numpy(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            p = int(rng.integers(1, 7))
            A = rng.uniform(-1, 1, (p, p))
            A = (A + A.T) / 2
            got = sorted(jacobi_eigenvalues(A.tolist()))
            assert np.allclose(got, np.linalg.eigvalsh(A), atol=1e-10)

    def test_exact_det(self):
        assert exact_det([[Fraction(1, 2), 1], [1, 3]]) == Fraction(1, 2)
        assert exact_det([[0, 1, 2], [1, 0, 3], [2, 3, 0]]) == 12
        assert exact_det([]) == 1

    def test_interlacing_bound(self):
        rng = random.Random(6)
        for _ in range(100):
            A = [[Fraction(0)] * 4 for _ in range(4)]
            for i in range(4):
                for j in range(i, 4):
                    A[i][j] = A[j][i] = Fraction(rng.randint(-100, 100), 100)
            lam = jacobi_eigenvalues([[float(v) for v in row] for row in A])
            # spectral bound: every eigenvalue of a principal submatrix lies in [-r, r]
            r = max(sum(abs(float(v)) for v in row) for row in A)
            neg = max(-min(lam), 0.0)
            for k in range(1, 5):
                for I in itertools.combinations(range(4), k):
                    det = exact_det([[A[i][j] for j in I] for i in I])
                    assert max(-float(det), 0.0) <= r ** (k - 1) * neg + 1e-9
