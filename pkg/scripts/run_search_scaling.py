#!/usr/bin/env python3
"""Compare single-step and log-step search scaling across grid sizes.

Prints one table per schedule (t=1 and t=nearest-odd(ln N)) with the measured
success probability, the analytic accounting, and fitted log-log slopes of the
oracle query count.
"""

import argparse
import math

from powerwalk.records import fit_loglog_slope
from powerwalk.search import (
    build_model,
    compute_alpha,
    iterate_search,
    nearest_odd,
    success_probability,
)
from powerwalk.torus import TorusGrid


def run_schedule(sizes, schedule):
    rows = []
    for side in sizes:
        n = side * side
        t = 1 if schedule == "t=1" else nearest_odd(math.log(n))
        model = build_model(TorusGrid(side), t)
        alpha, est = compute_alpha(model, method="secular")
        res = success_probability(model)
        p_traj = iterate_search(model, res.Q).p_s
        rows.append((side, n, t, alpha, res.Q, p_traj, res.p_s, res.Q_O, res.Q_G))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--sizes", default="17,33,65,129,257", help="comma-separated odd sides"
    )
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    for schedule in ("t=1", "t=log"):
        rows = run_schedule(sizes, schedule)
        print(f"\n== schedule {schedule} ==")
        print(
            f"{'L':>5} {'N':>7} {'t':>3} {'alpha':>11} {'Q':>7} "
            f"{'p_traj':>8} {'p_bound':>8} {'Q_O':>7} {'Q_G':>8}"
        )
        for side, n, t, alpha, q, p_traj, p_bound, q_o, q_g in rows:
            print(
                f"{side:>5} {n:>7} {t:>3} {alpha:>11.4e} {q:>7} "
                f"{p_traj:>8.4f} {p_bound:>8.4f} {q_o:>7} {q_g:>8}"
            )
        if len(rows) >= 4:
            ns = [r[1] for r in rows]
            slope_raw, _ = fit_loglog_slope(ns, [r[7] for r in rows])
            slope_norm, _ = fit_loglog_slope(
                ns, [r[7] / math.log(n) for r, n in zip(rows, ns)]
            )
            print(f"slope ln Q_O / ln N = {slope_raw:.3f}")
            print(f"slope ln(Q_O/lnN) / ln N = {slope_norm:.3f}")


if __name__ == "__main__":
    main()
