"""Compare the analytic read count against simulated coverage failures for several loss budgets."""
from __future__ import annotations

import argparse

from specrecon.harness import monte_carlo_coverage, monte_carlo_threshold, required_reads


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=10_000)
    ap.add_argument("-L", type=int, default=40)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--ts", type=int, nargs="+", default=[0, 1, 2, 3, 5])
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    limit = monte_carlo_threshold(args.eps, args.trials)
    base = required_reads(args.n, args.eps, 0)[1]
    print(f"n={args.n} L={args.L} eps={args.eps} trials={args.trials} threshold={limit:.4f}")
    print(f"{'t':>3} {'C':>8} {'M':>8} {'M/M0':>6} {'fail':>6}")
    for t in args.ts:
        C, M = required_reads(args.n, args.eps, t)
        rate = monte_carlo_coverage(args.n, args.L, M, t, args.trials, args.seed + t)
        print(f"{t:3d} {C:8.4f} {M:8d} {M / base:6.3f} {rate:6.3f}{'' if rate <= limit else '  over budget'}")


if __name__ == "__main__":
    main()
