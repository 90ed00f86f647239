"""Exhaustive lossy soundness sweep: every LREC string, every loss pattern, every admissible row."""
from __future__ import annotations

import argparse
import json
import time

from specrecon.sweeps import lossy_soundness_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=[14, 15, 16])
    ap.add_argument("--ball-cap", type=int, default=10**4)
    ap.add_argument("--stop-after", type=int, help="stop once this many mismatches are seen")
    ap.add_argument("--json", help="write per-row results here")
    args = ap.parse_args()

    t0 = time.perf_counter()

    def show(row):
        ex = row.examples[0] if row.examples else ""
        print(f"n={row.n:2d} L={row.L:2d} t={row.t} strings={row.strings:6d} ball={row.ball:4d} "
              f"checked={row.checked:8d} failures={row.failures:5d} {ex}  [{time.perf_counter() - t0:.0f}s]",
              flush=True)

    rows = lossy_soundness_sweep(tuple(args.ns), args.ball_cap, progress=show, stop_after=args.stop_after)
    total = sum(r.checked for r in rows)
    fails = sum(r.failures for r in rows)
    print(f"total: {len(rows)} rows, {total} reconstructions, {fails} mismatches, "
          f"{time.perf_counter() - t0:.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.__dict__ for r in rows], fh, indent=1)


if __name__ == "__main__":
    main()
