"""Recover the error-bound exponent of psi = |x|^d against M = {0} on [-1, 1].

For each d the script samples the box, builds the (eps, phi) envelope and fits
rho.  The exact answer is d; the general bound is printed by digit count.
"""
import argparse
import sys

from lojasiewicz import bounds as B
from lojasiewicz.estimate import (
    Residual,
    envelope,
    estimate_error_exponent,
    finite_set_distance,
    sample_region,
)
from lojasiewicz.formulas import PointSet
from lojasiewicz.polyalg import Polynomial


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-max", type=int, default=8)
    ap.add_argument("--count", type=int, default=20000)
    ap.add_argument("--bins", type=int, default=24)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)

    x = Polynomial.var(0, 1)
    dist = finite_set_distance(PointSet(((0,),)))
    samples = sample_region(None, [(-1, 1)], a.count, seed=a.seed)
    print(f"{'d':>3} {'rho_hat':>9} {'r^2':>8} {'rows':>5} {'bound digits':>13}")
    for d in range(1, a.d_max + 1):
        table = envelope(Residual(h=[x**d]), dist, samples, bins=a.bins)
        est = estimate_error_exponent(table)
        digits = len(str(B.finite_error_bound(d, 1))) if d >= 2 else "-"
        print(f"{d:>3} {est.exponent:>9.4f} {est.r_squared:>8.5f} {len(table.rows):>5} {digits:>13}")


if __name__ == "__main__":
    sys.exit(main())
