"""Empirical exponent estimation.

Łojasiewicz exponents along a curve or over a sample cloud, the envelope of
distance against residual with its small-residual slope, and the first
Puiseux exponent read off a Newton polygon.  Fits are ordinary least squares
in log-log coordinates.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .formulas import And, Atom, Formula, Not, Or, PointSet, closed_set_cells
from .polyalg import Polynomial, eval_poly

MIN_SAMPLES = 8


class EstimationError(RuntimeError):
    """Not enough usable data for a fit (a numeric failure, not bad input)."""


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("LOJASIEWICZ_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# vectorized evaluation

def poly_numpy(P: Polynomial) -> Callable[[np.ndarray], np.ndarray]:
    """Float evaluator of P on an (m, n) array of points."""
    terms = [(np.array(e, dtype=int), float(c)) for e, c in P.items()]

    def f(X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.zeros(X.shape[0])
        for e, c in terms:
            out += c * np.prod(X ** e, axis=1)
        return out

    return f


_REL = {
    "eq0": lambda v: v == 0,
    "gt0": lambda v: v > 0,
    "lt0": lambda v: v < 0,
    "ge0": lambda v: v >= 0,
    "le0": lambda v: v <= 0,
    "ne0": lambda v: v != 0,
}


def formula_mask(phi: Formula, X: np.ndarray) -> np.ndarray:
    """Boolean membership of each row of X in phi's realization (float signs)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if isinstance(phi, Atom):
        return _REL[phi.relation](poly_numpy(phi.polynomial)(X))
    if isinstance(phi, Not):
        return ~formula_mask(phi.child, X)
    if isinstance(phi, And):
        out = np.ones(X.shape[0], dtype=bool)
        for c in phi.children:
            out &= formula_mask(c, X)
        return out
    if isinstance(phi, Or):
        out = np.zeros(X.shape[0], dtype=bool)
        for c in phi.children:
            out |= formula_mask(c, X)
        return out
    raise TypeError(f"not a formula node: {phi!r}")


def _log_fraction(q: Fraction) -> float:
    q = abs(q)
    if q == 0:
        return -math.inf
    return math.log(q.numerator) - math.log(q.denominator)


class PolyAbsSum:
    """f(x) = sum_k |P_k(x)|, with exact evaluation on rational points."""

    def __init__(self, polys: Sequence[Polynomial]):
        self.polys = list(polys)
        self._np = [poly_numpy(P) for P in self.polys]

    def __call__(self, X):
        return sum((np.abs(f(X)) for f in self._np), np.zeros(np.atleast_2d(X).shape[0]))

    def exact(self, x: Sequence[Fraction]) -> Fraction:
        return sum((abs(eval_poly(P, x)) for P in self.polys), Fraction(0))

    def log_exact(self, x) -> float:
        return _log_fraction(self.exact(x))


class PolyNorm:
    """g(x) = sqrt(sum_k P_k(x)^2); exact through the squared value."""

    def __init__(self, polys: Sequence[Polynomial]):
        self.polys = list(polys)
        self._np = [poly_numpy(P) for P in self.polys]

    def __call__(self, X):
        return np.sqrt(sum((f(X) ** 2 for f in self._np), np.zeros(np.atleast_2d(X).shape[0])))

    def exact_squared(self, x) -> Fraction:
        return sum((eval_poly(P, x) ** 2 for P in self.polys), Fraction(0))

    def log_exact(self, x) -> float:
        return 0.5 * _log_fraction(self.exact_squared(x))


class Residual:
    """psi(x) = sum |h_j(x)| + sum max(g_i(x), 0)."""

    def __init__(self, g: Sequence[Polynomial] = (), h: Sequence[Polynomial] = ()):
        self.g, self.h = list(g), list(h)
        self._g = [poly_numpy(P) for P in self.g]
        self._h = [poly_numpy(P) for P in self.h]

    def __call__(self, X):
        m = np.atleast_2d(X).shape[0]
        out = np.zeros(m)
        for f in self._h:
            out += np.abs(f(X))
        for f in self._g:
            out += np.maximum(f(X), 0.0)
        return out

    def exact(self, x) -> Fraction:
        return sum((abs(eval_poly(P, x)) for P in self.h), Fraction(0)) + sum(
            (max(eval_poly(P, x), Fraction(0)) for P in self.g), Fraction(0))

    def log_exact(self, x) -> float:
        return _log_fraction(self.exact(x))


def finite_set_distance(M: PointSet) -> Callable[[np.ndarray], np.ndarray]:
    """Distance to a finite point set (exact set, float arithmetic)."""
    P = np.array([[float(c) for c in p] for p in M.points])

    def dist(X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.sqrt(((X[:, None, :] - P[None, :, :]) ** 2).sum(axis=2)).min(axis=1)

    return dist


def line_set_distance(phi: Formula) -> Callable[[np.ndarray], np.ndarray]:
    """Distance to the closed subset of the line defined by phi.

    The set's components come from the exact cell decomposition; only the
    final distances are floats.
    """
    cells = closed_set_cells(phi)
    comps: list[list[float]] = []
    for c, truth in cells:
        if not truth:
            continue
        if c.is_point:
            v = float(c.coordinate())
            lo = hi = v
        else:
            lo = -math.inf if c.left is None else float(c.left)
            hi = math.inf if c.right is None else float(c.right)
        if comps and comps[-1][1] >= lo:
            comps[-1][1] = max(comps[-1][1], hi)
        else:
            comps.append([lo, hi])
    if not comps:
        raise EstimationError("the set is empty")
    lo = np.array([a for a, _ in comps])
    hi = np.array([b for _, b in comps])

    def dist(X):
        x = np.atleast_2d(np.asarray(X, dtype=float))[:, 0]
        below = np.clip(lo[None, :] - x[:, None], 0, None)
        above = np.clip(x[:, None] - hi[None, :], 0, None)
        return np.min(below + above, axis=1)

    return dist


@dataclass
class CloudDistance:
    """Nearest-neighbour distance to a pre-sampled cloud of the target set."""

    cloud: np.ndarray
    tree: cKDTree = field(init=False, repr=False)

    def __post_init__(self):
        self.cloud = np.atleast_2d(np.asarray(self.cloud, dtype=float))
        self.tree = cKDTree(self.cloud)

    @property
    def density(self) -> float:
        """Median nearest-neighbour spacing inside the cloud."""
        if len(self.cloud) < 2:
            return math.inf
        d, _ = self.tree.query(self.cloud, k=2)
        return float(np.median(d[:, 1]))

    def __call__(self, X):
        d, _ = self.tree.query(np.atleast_2d(np.asarray(X, dtype=float)))
        return d


# ---------------------------------------------------------------------------
# sampling

@dataclass
class SampleSet:
    points: np.ndarray
    box: tuple
    membership: Formula | None
    seed: int
    trials: int

    @property
    def acceptance(self) -> float:
        return len(self.points) / self.trials if self.trials else 0.0

    def __len__(self):
        return len(self.points)

    def values(self, first: Callable, second: Callable) -> np.ndarray:
        """(m, 2) array of (first(x), second(x)) per point."""
        return np.column_stack([first(self.points), second(self.points)])


def sample_region(membership: Formula | None, box: Sequence[tuple[float, float]],
                  count: int, seed: int = 0, batch: int = 4096,
                  max_trials: int = 10**6, min_acceptance: float = 1e-4,
                  threads: int | None = None) -> SampleSet:
    """Seeded uniform rejection samples from ``box`` satisfying ``membership``.

    Batch b draws from ``default_rng([seed, b])`` and batches are consumed in
    index order, so the result does not depend on ``threads`` (default: the
    LOJASIEWICZ_THREADS environment variable, else 1).
    """
    box = tuple((float(a), float(b)) for a, b in box)
    if not box or any(not a < b for a, b in box):
        raise ValueError("box must be a nonempty list of intervals with low < high")
    if count < 1:
        raise ValueError("count must be positive")
    threads = max(1, threads or thread_count())
    lo = np.array([a for a, _ in box])
    hi = np.array([b for _, b in box])

    def draw(b):
        rng = np.random.default_rng([seed, b])
        X = lo + (hi - lo) * rng.random((batch, len(box)))
        idx = np.flatnonzero(formula_mask(membership, X)) if membership is not None else np.arange(batch)
        return X, idx

    kept, have, trials, b = [], 0, 0, 0
    with ThreadPoolExecutor(threads) as pool:
        while have < count:
            for X, idx in pool.map(draw, range(b, b + threads)):
                need = count - have
                if len(idx) >= need:
                    # count trials only up to the draw that completed the sample
                    kept.append(X[idx[:need]])
                    trials += int(idx[need - 1]) + 1
                    have = count
                    break
                kept.append(X[idx])
                have += len(idx)
                trials += batch
                if trials >= max_trials and have / trials < min_acceptance:
                    raise EstimationError(
                        f"acceptance ratio {have / trials:.2e} after {trials} trials; region too thin")
            b += threads
    return SampleSet(np.concatenate(kept), box, membership, seed, trials)


# ---------------------------------------------------------------------------
# fitting

@dataclass(frozen=True)
class ExponentEstimate:
    exponent: float
    intercept: float
    r_squared: float
    sample_count: int
    window: tuple[float, float]
    slope: float | None = None
    flags: tuple[str, ...] = ()
    seed: int | None = None
    data: tuple = field(default=(), compare=False, repr=False)

    def to_json(self) -> dict:
        out = {
            "exponent": self.exponent,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "window": list(self.window),
            "seed": self.seed,
            "sample_count": self.sample_count,
        }
        if self.slope is not None:
            out["slope"] = self.slope
        if self.flags:
            out["flags"] = list(self.flags)
        return out


def fit_line(x, y) -> tuple[float, float, float]:
    """Least-squares slope, intercept and r^2 of y against x."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    A = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    ss_res = float((resid ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else max(0.0, min(1.0, 1 - ss_res / ss_tot))
    return float(slope), float(intercept), r2


@dataclass(frozen=True)
class CurveSpec:
    """A polynomial curve t -> (c_1(t), ..., c_n(t))."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps or any(not isinstance(c, Polynomial) or c.arity != 1 for c in comps):
            raise ValueError("curve components must be univariate polynomials")
        object.__setattr__(self, "components", comps)

    @property
    def arity(self) -> int:
        return len(self.components)

    def point(self, t) -> list[Fraction]:
        t = Fraction(t)
        return [eval_poly(c, [t]) for c in self.components]

    def points(self, ts) -> np.ndarray:
        T = np.asarray(ts, dtype=float)[:, None]
        return np.column_stack([poly_numpy(c)(T) for c in self.components])


def _logs_on_curve(ev, curve: CurveSpec, ts) -> np.ndarray:
    if hasattr(ev, "log_exact"):
        return np.array([ev.log_exact(curve.point(Fraction(t))) for t in ts])
    with np.errstate(divide="ignore"):
        return np.log(np.abs(np.asarray(ev(curve.points(ts)), dtype=float)))


def estimate_loja_on_curve(f_eval, g_eval, curve: CurveSpec, t_max: float = 1e-2,
                           decades: int = 6, samples_per_decade: int = 10) -> ExponentEstimate:
    """Slope of log|f| against log|g| along the curve, t geometric in
    [t_max * 10^-decades, t_max].  A lower estimate of the exponent N in
    |g|^N <= c|f|.
    """
    if not 0 < t_max:
        raise ValueError("t_max must be positive")
    count = decades * samples_per_decade + 1
    ts = t_max * np.logspace(-decades, 0, count)
    lf = _logs_on_curve(f_eval, curve, ts)
    lg = _logs_on_curve(g_eval, curve, ts)
    ok = np.isfinite(lf) & np.isfinite(lg)
    if ok.sum() < MIN_SAMPLES:
        raise EstimationError(f"only {int(ok.sum())} usable samples on the curve")
    slope, intercept, r2 = fit_line(lg[ok], lf[ok])
    flags = () if r2 >= 0.99 else ("low_confidence",)
    rows = tuple((float(t), float(a), float(b)) for t, a, b, k in zip(ts, lf, lg, ok) if k)
    return ExponentEstimate(slope, -intercept, r2, int(ok.sum()),
                            (float(ts[0]), float(ts[-1])), slope, flags, data=rows)


def estimate_loja_cloud(f_eval, g_eval, samples: SampleSet, g_ceiling: float = 0.5,
                        bins: int = 24, quantile: float = 0.05) -> ExponentEstimate:
    """Envelope fit of log|f| against log|g| over sampled points with |g| < g_ceiling.

    In each geometric bin of |g| the low ``quantile`` of log|f| is kept (the
    points where |f| is smallest relative to |g|); the exponent is the slope
    through those bin values.
    """
    if not 0 < g_ceiling < 1:
        raise ValueError("g_ceiling must lie in (0, 1)")
    vals = samples.values(f_eval, g_eval)
    f, g = np.abs(vals[:, 0]), np.abs(vals[:, 1])
    keep = (g > 0) & (g < g_ceiling) & (f > 0)
    if keep.sum() < MIN_SAMPLES:
        raise EstimationError(f"only {int(keep.sum())} samples with 0 < |g| < {g_ceiling} and f != 0")
    lf, lg = np.log(f[keep]), np.log(g[keep])
    edges = np.linspace(lg.min(), lg.max(), bins + 1)
    which = np.clip(np.digitize(lg, edges) - 1, 0, bins - 1)
    xs, ys = [], []
    for b in range(bins):
        sel = which == b
        if sel.sum() == 0:
            continue
        xs.append(float(np.median(lg[sel])))
        ys.append(float(np.quantile(lf[sel], quantile)))
    if len(xs) < 2:
        # a single populated bin: fall back to the ratio envelope
        ratio = lf / lg
        n_hat = float(np.quantile(ratio, 1 - quantile))
        return ExponentEstimate(n_hat, 0.0, 0.0, int(keep.sum()),
                                (float(g[keep].min()), float(g[keep].max())), n_hat,
                                ("single_bin",), samples.seed)
    slope, intercept, r2 = fit_line(xs, ys)
    flags = () if len(xs) >= MIN_SAMPLES else ("few_bins",)
    return ExponentEstimate(slope, -intercept, r2, int(keep.sum()),
                            (float(g[keep].min()), float(g[keep].max())), slope, flags, samples.seed)


# ---------------------------------------------------------------------------
# envelope of distance against residual

@dataclass(frozen=True)
class EnvelopeTable:
    rows: tuple  # (eps, phi, count)

    def __post_init__(self):
        eps = [r[0] for r in self.rows]
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise ValueError("eps must be strictly increasing")
        if any(r[1] < 0 for r in self.rows):
            raise ValueError("phi must be nonnegative")

    def __len__(self):
        return len(self.rows)

    @classmethod
    def from_function(cls, phi: Callable[[float], float], eps_values) -> "EnvelopeTable":
        return cls(tuple((float(e), float(phi(e)), 1) for e in eps_values))


def envelope(psi_eval, dist_eval, samples: SampleSet, bins: int = 24) -> EnvelopeTable:
    """Per geometric bin of psi: (largest psi, largest dist, count).

    Empty bins are dropped.
    """
    if bins < MIN_SAMPLES:
        raise ValueError(f"bins must be at least {MIN_SAMPLES}")
    vals = samples.values(psi_eval, dist_eval)
    psi, dist = vals[:, 0], vals[:, 1]
    keep = psi > 0
    psi, dist = psi[keep], dist[keep]
    if len(psi) == 0:
        raise EstimationError("no sample has a positive residual")
    lo, hi = math.log(psi.min()), math.log(psi.max())
    if hi <= lo:
        raise EstimationError("residual values span no range")
    edges = np.exp(np.linspace(lo, hi, bins + 1))
    which = np.clip(np.searchsorted(edges, psi, side="left") - 1, 0, bins - 1)
    rows = []
    for b in range(bins):
        sel = which == b
        if sel.any():
            # eps is the largest residual seen in the bin, not the bin edge
            rows.append((float(psi[sel].max()), float(dist[sel].max()), int(sel.sum())))
    if len(rows) < MIN_SAMPLES:
        raise EstimationError(f"only {len(rows)} nonempty bins")
    return EnvelopeTable(tuple(rows))


def estimate_error_exponent(table: EnvelopeTable) -> ExponentEstimate:
    """Slope of log phi against log eps on the smallest-eps half of the table.

    The exponent returned is 1/slope, the error-bound exponent rho with
    dist^rho <= kappa * psi; ``intercept`` is log kappa.
    """
    rows = [r for r in table.rows if r[1] > 0]
    half = rows[: max(len(rows) // 2, 2)]
    if len(half) < 2:
        raise EstimationError("need at least two rows with positive phi")
    x = [math.log(r[0]) for r in half]
    y = [math.log(r[1]) for r in half]
    slope, intercept, r2 = fit_line(x, y)
    if slope <= 0:
        raise EstimationError(f"envelope slope {slope:.3g} is not positive")
    flags = []
    if any(b[1] < a[1] for a, b in zip(half, half[1:])):
        flags.append("non_monotone_tail")
    if r2 < 0.99:
        flags.append("low_confidence")
    return ExponentEstimate(1 / slope, intercept / slope, r2, sum(r[2] for r in half),
                            (half[0][0], half[-1][0]), slope, tuple(flags))


# ---------------------------------------------------------------------------
# Newton polygon

def newton_polygon(P: Polynomial) -> list[tuple[int, int]]:
    """Lower convex hull of the support of P(eps, y) as points (j, i) for eps^i y^j."""
    if P.arity != 2:
        raise ValueError("need a polynomial in (eps, y)")
    low: dict[int, int] = {}
    for (i, j), _ in P.items():
        low[j] = min(low.get(j, i), i)
    pts = sorted(low.items())
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below the chord to p
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_min_exponent(P: Polynomial) -> Fraction:
    """Smallest exponent gamma of a Puiseux branch y ~ eps^gamma vanishing at eps = 0.

    Each lower-hull edge that descends in the eps-exponent as the y-exponent
    grows balances two terms at y ~ eps^gamma with gamma = -(di/dj) > 0.
    """
    if P.is_zero():
        raise ValueError("zero polynomial")
    hull = newton_polygon(P)
    gammas = [Fraction(i1 - i2, j2 - j1) for (j1, i1), (j2, i2) in zip(hull, hull[1:]) if i2 < i1]
    if not gammas:
        raise ValueError("no branch vanishing at 0: the Newton polygon has no descending edge")
    return min(gammas)


# ---------------------------------------------------------------------------
# the exponential-dependence example

@dataclass(frozen=True)
class ExtremalFamily:
    d: int
    n: int
    f: PolyAbsSum
    g: PolyNorm
    region: Formula
    curve: CurveSpec

    @property
    def expected(self) -> int:
        return self.d**self.n


def extremal_family(d: int, n: int) -> ExtremalFamily:
    """f = sum |x_{i+1} - x_i^d| + |x_n^d|, g = |x| on the unit ball, and the
    curve (t, t^d, t^(d^2), ...) along which |f| = |t|^(d^n)."""
    if d < 1 or n < 1:
        raise ValueError("need d, n >= 1")
    X = [Polynomial.var(i, n) for i in range(n)]
    terms = [X[i + 1] - X[i] ** d for i in range(n - 1)] + [X[-1] ** d]
    ball = Atom(Polynomial.const(1, n) - sum((x * x for x in X), Polynomial.zero(n)), "ge0")
    t = Polynomial.var(0, 1)
    curve = CurveSpec(tuple(t ** (d**k) for k in range(n)))
    return ExtremalFamily(d, n, PolyAbsSum(terms), PolyNorm(X), ball, curve)


# ---------------------------------------------------------------------------
# output

def curve_csv(est: ExponentEstimate) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "log_f", "log_g"])
    for row in est.data:
        w.writerow([repr(v) for v in row])
    return buf.getvalue()


def envelope_csv(table: EnvelopeTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["eps", "phi", "count"])
    for e, p, c in table.rows:
        w.writerow([repr(e), repr(p), c])
    return buf.getvalue()
