"""Estimate the exponent of the built-in extremal family over a (d, n) grid.

Prints d, n, the exact value d^n, the estimate, its relative error and the
number of digits of the general upper bound.  ``--csv`` also writes the table.
"""
import argparse
import csv
import sys
import time

from lojasiewicz import bounds as B
from lojasiewicz.estimate import estimate_loja_on_curve, extremal_family


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-max", type=int, default=5)
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--csv")
    a = ap.parse_args(argv)

    rows = []
    for d in range(2, a.d_max + 1):
        for n in range(1, a.n_max + 1):
            ex = extremal_family(d, n)
            start = time.perf_counter()
            est = estimate_loja_on_curve(ex.f, ex.g, ex.curve)
            elapsed = time.perf_counter() - start
            exact = d**n
            rows.append((d, n, exact, est.exponent, abs(est.exponent - exact) / exact,
                         len(str(B.loja_bound(d, n))), elapsed))

    print(f"{'d':>3} {'n':>3} {'d^n':>6} {'estimate':>10} {'rel.err':>9} {'bound digits':>13} {'sec':>6}")
    for d, n, exact, est, err, digits, sec in rows:
        print(f"{d:>3} {n:>3} {exact:>6} {est:>10.4f} {err:>9.2e} {digits:>13} {sec:>6.3f}")
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["d", "n", "exact", "estimate", "rel_err", "bound_digits", "seconds"])
            w.writerows(rows)


if __name__ == "__main__":
    sys.exit(main())
