"""Tabulate the exact exponent bounds and the comparator report.

Without arguments prints the headline bounds on a small (d, n) grid as digit
counts; ``--report D N`` prints every comparator for one instance instead.
"""
import argparse
import sys

from lojasiewicz import bounds as B


def grid(d_max, n_max):
    print(f"{'d':>3} {'n':>3} {'loja_bound':>12} {'definable':>9} {'belim':>7} {'majorant':>9}")
    for d in range(2, d_max + 1):
        for n in range(1, n_max + 1):
            cells = [B.loja_bound(d, n), B.definable_set_bound(d, n), B.belim_degree_bound(d, n),
                     B.belim_majorant(d, n)]
            widths = [12, 9, 7, 9]
            print(f"{d:>3} {n:>3} " + " ".join(f"{len(str(v)):>{w}}" for v, w in zip(cells, widths)))
    print("(columns are decimal digit counts)")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-max", type=int, default=6)
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--report", nargs=2, type=int, metavar=("D", "N"))
    a = ap.parse_args(argv)
    if a.report:
        print(B.comparator_bounds(*a.report).table())
    else:
        grid(a.d_max, a.n_max)


if __name__ == "__main__":
    sys.exit(main())
