"""Acceptance criteria, one test per criterion, each reporting a PASS/FAIL line with timing."""
import io
import json
import math
import random
import time
from fractions import Fraction

from conftest import random_univariate
from oracles import oracle_sign_sequence, thom_lemma_holds
from lojasiewicz import bounds as B
from lojasiewicz.cad import cad2d, contains, random_points_in_cell, signs_at
from lojasiewicz.cli import run
from lojasiewicz.estimate import (
    Residual,
    envelope,
    estimate_error_exponent,
    finite_set_distance,
    newton_min_exponent,
    sample_region,
)
from lojasiewicz.formulas import PointSet
from lojasiewicz.polyalg import Polynomial, parse_poly
from lojasiewicz.realroots import realizable_sign_conditions_1d

GRID = [(d, k) for d in range(2, 17) for k in range(1, 9)]


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_01_extremal_family_reproduction(acceptance):
    ok, notes, worst = True, [], 0.0
    for d, n in [(2, 2), (3, 2)]:
        out, err = io.StringIO(), io.StringIO()
        with Timer() as t:
            code = run(["estimate-loja", "--example-paper", "--d", str(d), "--n", str(n)], out, err)
        worst = max(worst, t.elapsed)
        est = json.loads(out.getvalue())["exponent"] if code == 0 else math.nan
        target = d**n
        this = (code == 0 and abs(est - target) <= 0.05 * target and t.elapsed < 2
                and est <= B.loja_bound(d, n))
        ok &= this
        notes.append(f"({d},{n}) -> {est:.4f} vs {target}")
    assert acceptance(1, "example exponent within 5%, below loja_bound, < 2 s", ok, worst, "; ".join(notes))


def test_02_bound_formula_exactness(acceptance):
    with Timer() as t:
        a, b = B.loja_bound(2, 1), B.belim_degree_bound(2, 1)
    ok = a == 18446744073709551616 and b == 313600 and type(a) is int and type(b) is int
    assert acceptance(2, "loja_bound(2,1) and belim_degree_bound(2,1)", ok, t.elapsed, f"{a}, {b}")


def test_03_majorization(acceptance):
    with Timer() as t:
        ok = all(B.belim_degree_bound(d, k) < (8 * d) ** (2 * k + 4) for d, k in GRID)
    ok &= t.elapsed < 1
    assert acceptance(3, "belim_degree_bound < (8d)^(2k+4) on 2..16 x 1..8", ok, t.elapsed)


def test_04_chain_identity(acceptance):
    with Timer() as t:
        ok = all(B.loja_bound(d, n) == B.prop264_bound(d, n + 2) for d, n in GRID)
    ok &= t.elapsed < 1
    assert acceptance(4, "loja_bound(d,n) == prop264_bound(d,n+2) on the grid", ok, t.elapsed)


def test_05_thom_lemma_suite(acceptance):
    rng = random.Random(505)
    with Timer() as t:
        bad = sum(not thom_lemma_holds(random_univariate(rng, max_degree=6), rng) for _ in range(200))
    ok = bad == 0 and t.elapsed < 30
    assert acceptance(5, "200 random P, sign conditions on Der(P) connected", ok, t.elapsed, f"{bad} failures")


def test_06_sign_condition_oracle(acceptance):
    rng = random.Random(606)
    bad = 0
    with Timer() as t:
        for _ in range(100):
            fam = [random_univariate(rng, max_degree=5) for _ in range(rng.randint(1, 4))]
            got = [s.signs for s, _ in realizable_sign_conditions_1d(fam)]
            bad += got != oracle_sign_sequence(fam, rng)
    ok = bad == 0 and t.elapsed < 30
    assert acceptance(6, "100 families match brute-force sampling", ok, t.elapsed, f"{bad} mismatches")


def test_07_cad_partition(acceptance):
    rng = random.Random(707)
    with Timer() as t:
        D = cad2d([parse_poly("y-x^2", ["x", "y"])])
        ok = len(D) == 9
        for _ in range(500):
            pt = [Fraction(rng.randint(-4000, 4000), 1000), Fraction(rng.randint(-4000, 4000), 1000)]
            ok &= sum(contains(D, c, pt) for c in D.cells) == 1
        for cell in D.cells:
            ok &= all(signs_at(D, p) == cell.signs for p in random_points_in_cell(D, cell, 50, rng))
    ok &= t.elapsed < 10
    assert acceptance(7, "CAD of {y-x^2}: 9 cells, partition, sign invariance", ok, t.elapsed, f"{len(D)} cells")


def test_08_error_exponent_recovery(acceptance):
    x = Polynomial.var(0, 1)
    M = PointSet(((0,),))
    ok, notes, worst = True, [], 0.0
    for d in (2, 3, 4):
        with Timer() as t:
            S = sample_region(None, [(-1, 1)], 20000, seed=d)
            rho = estimate_error_exponent(envelope(Residual(h=[x**d]), finite_set_distance(M), S)).exponent
        worst = max(worst, t.elapsed)
        ok &= abs(rho - d) <= 0.1 * d and rho < (8 * d) ** 16 and t.elapsed < 5
        notes.append(f"d={d}: {rho:.4f}")
    assert acceptance(8, "rho_hat within 10% of d for psi=|x|^d, M={0}", ok, worst, "; ".join(notes))


def test_09_newton_polygon(acceptance):
    with Timer() as t:
        pairs = [(p, q) for p in range(1, 7) for q in range(1, 7) if math.gcd(p, q) == 1]
        ok = all(newton_min_exponent(parse_poly(f"y^{q} - eps^{p}", ["eps", "y"])) == Fraction(p, q)
                 for p, q in pairs)
    assert acceptance(9, "newton_min_exponent(y^q - eps^p) == p/q, coprime p,q <= 6", ok, t.elapsed,
                      f"{len(pairs)} pairs")


def test_10_comparators(acceptance):
    with Timer() as t:
        got = (B.kurdyka_spodzieja(2, 1, 1, 1), B.lmp15(2, 1, 1, 0), B.lmp15_compact(2, 1, 1),
               B.kollar(2, 3), B.dacunto_kurdyka_gradient(3, 2))
    ok = got == (162, 18, 5, 16, Fraction(14, 15))
    assert acceptance(10, "comparator hand values", ok, t.elapsed, ", ".join(map(str, got)))

