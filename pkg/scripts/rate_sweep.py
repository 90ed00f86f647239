"""Exact family sizes and rates along a logarithmic (L, t) schedule (informational trend report)."""
from __future__ import annotations

import argparse
import json

from specrecon.harness import RateSweepConfig, rate_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-a", type=float, default=1.5, help="window coefficient, a > 1 + b/3")
    ap.add_argument("-b", type=float, default=0.5, help="loss coefficient, b < 3")
    ap.add_argument("--ns", type=int, nargs="+", default=list(range(10, 19)))
    ap.add_argument("--limit", type=int, default=22)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rep = rate_sweep(RateSweepConfig(args.a, args.b, tuple(args.ns), limit=args.limit))
    if args.json:
        print(json.dumps({"rows": [r.as_dict() for r in rep.rows], "notices": rep.notices,
                          "trend": rep.trend()}, indent=1))
        return
    print(f"{'n':>3} {'L':>3} {'t':>2} {'lrec':>9} {'rate':>6} {'d=1':>9} {'rate':>6} {'d=2':>9} {'rate':>6}")
    fmt = lambda v: "-" if v is None else f"{v:.3f}"  # noqa: E731
    for r in rep.rows:
        d1, d2 = r.distant_counts.get(1), r.distant_counts.get(2)
        print(f"{r.n:3d} {r.L:3d} {r.t:2d} {str(r.lrec_count):>9} {fmt(r.rate(r.lrec_count)):>6} "
              f"{d1:9d} {fmt(r.rate(d1)):>6} {d2:9d} {fmt(r.rate(d2)):>6}{'  (L > n)' if r.vacuous else ''}")
    for s in rep.notices:
        print("note:", s)
    print("lossy-family rate non-decreasing:", rep.trend())


if __name__ == "__main__":
    main()
