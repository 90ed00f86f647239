"""Round-trip random messages through the distant codec and report misdecodes and shared codewords."""
from __future__ import annotations

import argparse
import random
import time

from specrecon.codec import CodecParams, decode_candidates, eliminate, ld_decode, ld_encode
from specrecon.strings import is_substring_distant


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=256)
    ap.add_argument("-d", type=int, default=1)
    ap.add_argument("-c", type=int, help="slack (default: smallest that shrinks)")
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--show", type=int, default=3, help="print this many misdecoded messages")
    args = ap.parse_args()

    p = CodecParams.auto(args.n, args.d) if args.c is None else CodecParams(args.n, args.d, args.c)
    print(f"n={p.n} d={p.d} c={p.c} ell={p.ell} L={p.L} marker={p.marker}")
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    wrong = shared = not_distant = overrun = 0
    for _ in range(args.count):
        w = "".join(rng.choice("01") for _ in range(p.message_len))
        x = ld_encode(w, p)
        not_distant += not is_substring_distant(x, p.L, p.d)
        overrun += len(eliminate(w, p)) > p.n
        if ld_decode(x, p) != w:
            wrong += 1
            k = len(decode_candidates(x, p))
            shared += k > 1
            if wrong <= args.show:
                print(f"misdecoded (preimages={k}): {w}")
    print(f"{args.count} messages in {time.perf_counter() - t0:.1f}s: {wrong} misdecoded, {shared} of them on "
          f"shared codewords, {not_distant} not distant, {overrun} eliminations longer than n")


if __name__ == "__main__":
    main()
