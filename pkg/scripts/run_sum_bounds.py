#!/usr/bin/env python3
"""Tabulate the grid eigenphase sums against their bracketing bounds.

Shows how S1 = sum 1/(1 - cos^t phi_k) collapses from ~N ln N at t=1 to ~N at
t = nearest-odd(ln N), staying between the telescoped lower bound and the
square-shell upper bound throughout.
"""

import argparse
import math

from powerwalk.search import nearest_odd
from powerwalk.sums import grid_sums
from powerwalk.torus import TorusGrid


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--sizes", default="8,16,32,64,128,256,512", help="comma-separated sides"
    )
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(
        f"{'L':>5} {'t':>3} {'lower':>12} {'S1':>12} {'upper':>12} "
        f"{'S1*t/(NlnN)':>12} {'S3 identity':>12}"
    )
    for side in sizes:
        n = side * side
        for t in (1, nearest_odd(math.log(n))):
            gs = grid_sums(TorusGrid(side), t)
            norm = gs.S1 * t / (n * math.log(n))
            print(
                f"{side:>5} {t:>3} {gs.lower:>12.5g} {gs.S1:>12.5g} "
                f"{gs.upper:>12.5g} {norm:>12.4f} {gs.identity_residual():>12.2e}"
            )


if __name__ == "__main__":
    main()
