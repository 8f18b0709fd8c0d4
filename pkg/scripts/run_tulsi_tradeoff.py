#!/usr/bin/env python3
"""Trace the controlled-search trade-off between oracle and rotation-map calls.

For one grid size, sweeps odd t while keeping t * tan^2(delta) = ln N, from
the single-step controlled search (t=1) to the log-step end (delta ~ 0).
Q_O falls and Q_G rises along the curve while Q_O * Q_G stays ~ N ln N.
"""

import argparse
import math

from powerwalk.search import build_model, nearest_odd
from powerwalk.torus import TorusGrid
from powerwalk.tulsi import build_tulsi, iterate_tulsi, tulsi_success, tune_delta


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--side", type=int, default=65, help="odd grid side")
    args = parser.parse_args()

    n = args.side * args.side
    ln_n = math.log(n)
    top = nearest_odd(ln_n)
    print(f"L={args.side}, N={n}, ln N = {ln_n:.3f}, t up to {top}")
    print(
        f"{'t':>3} {'tan^2(d)':>9} {'delta':>7} {'Q_delta':>8} "
        f"{'p_traj':>8} {'Q_O':>7} {'Q_G':>8} {'QO*QG/(NlnN)':>13}"
    )
    for t in range(1, top + 1, 2):
        model = build_model(TorusGrid(args.side), t)
        delta = tune_delta(model, "original_tulsi" if t == 1 else "balanced")
        tm = build_tulsi(model, delta)
        res = tulsi_success(tm)
        p_traj = iterate_tulsi(tm, res.Q).p_s
        print(
            f"{t:>3} {math.tan(delta) ** 2:>9.3f} {delta:>7.4f} {res.Q:>8} "
            f"{p_traj:>8.4f} {res.Q_O:>7} {res.Q_G:>8} "
            f"{res.Q_O * res.Q_G / (n * ln_n):>13.4f}"
        )


if __name__ == "__main__":
    main()
