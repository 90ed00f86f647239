"""Command-line front end.

Every subcommand is a thin wrapper over a library call.  Strings and
spectra are read from a positional argument, a file (``-i``) or standard
input.  ``--json`` switches to a machine-readable report (schema ``v1``).
Exit codes: 0 success, 1 reconstruction/decoding failure or a failed
check, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional, Sequence

from . import codec, erroneous, harness, lossy
from .outcome import ParameterError, ReconstructionError
from .spectra import Spectrum, apply_errors, multispectrum
from .strings import as_bits, is_substring_distant

SCHEMA = "v1"
SEED_ENV = "SPECRECON_SEED"


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _read_input(args) -> str:
    if getattr(args, "value", None) is not None:
        return args.value
    if getattr(args, "input", None):
        with open(args.input) as fh:
            return fh.read()
    return sys.stdin.read()


def _read_bits(args) -> str:
    text = "".join(_read_input(args).split())
    try:
        return as_bits(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _read_spectrum(args) -> Spectrum:
    try:
        return Spectrum.from_text(_read_input(args))
    except ValueError as e:
        raise UsageError(str(e)) from None


def _emit(args, command: str, result: dict, text: str):
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": command, "result": result}, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- subcommands -------------------------------------------------------------------

def cmd_spectrum(args) -> int:
    w = _read_bits(args)
    if not 1 <= args.L <= len(w):
        raise UsageError(f"-L must lie in [1, {len(w)}]")
    U = multispectrum(w, args.L).without_provenance()
    _emit(args, "spectrum", {"L": args.L, "reads": list(U.reads)}, U.to_text())
    return 0


def cmd_damage(args) -> int:
    U = _read_spectrum(args)
    rng = random.Random(default_seed() if args.seed is None else args.seed)
    reads = list(U.reads)
    rng.shuffle(reads)
    lost = min(args.lose, len(reads))
    reads = reads[lost:]
    edits = {}
    if args.err:
        if args.s < 1:
            raise UsageError("--err needs -s >= 1")
        for idx in rng.sample(range(len(reads)), min(args.err, len(reads))):
            edits[idx + 1] = sorted(rng.sample(range(1, U.read_len + 1), rng.randint(1, min(args.s, U.read_len))))
    out = apply_errors(Spectrum.of(reads, U.read_len, range(1, len(reads) + 1)), edits).without_provenance()
    _emit(args, "damage", {"L": out.read_len, "reads": list(out.reads), "lost": lost, "erroneous": len(edits)},
          out.to_text())
    return 0


def cmd_reconstruct(args) -> int:
    U = _read_spectrum(args)
    if args.mode == "lossy":
        res = lossy.reconstruct_lossy(U, args.t, n=args.n)
    elif args.mode == "majority":
        res = erroneous.reconstruct_majority(U, args.t, args.s)
    else:
        res = erroneous.reconstruct_erec(U, args.t, args.s, strict=not args.no_strict)
    _emit(args, "reconstruct",
          {"mode": args.mode, "value": res.value, "semantics": res.semantics,
           "start_bounds": list(res.start_bounds)}, res.value)
    return 0


def _codec_params(args) -> codec.CodecParams:
    if args.c is None:
        return codec.CodecParams.auto(args.n, args.d)
    return codec.CodecParams(args.n, args.d, args.c)


def cmd_encode(args) -> int:
    p = _codec_params(args)
    w = _read_bits(args)
    if len(w) != p.message_len:
        raise UsageError(f"message must have length {p.message_len}, got {len(w)}")
    x = codec.ld_encode(w, p)
    _emit(args, "encode", {"n": p.n, "d": p.d, "c": p.c, "L": p.L, "codeword": x}, x)
    return 0


def cmd_decode(args) -> int:
    p = _codec_params(args)
    x = _read_bits(args)
    if len(x) != p.n:
        raise UsageError(f"codeword must have length {p.n}, got {len(x)}")
    w = codec.ld_decode(x, p)
    _emit(args, "decode", {"n": p.n, "d": p.d, "c": p.c, "message": w}, w)
    return 0


def cmd_check(args) -> int:
    w = _read_bits(args)
    if args.constraint == "distant":
        if args.d is None:
            raise UsageError("--constraint distant needs -d")
        res = is_substring_distant(w, args.L, args.d)
        ok, witness, extra = bool(res), res.witness, {"min_distance": res.profile.min_pairwise_distance}
    else:
        if args.t is None:
            raise UsageError(f"--constraint {args.constraint} needs -t")
        if args.constraint == "lrec":
            res = lossy.check_lrec(w, args.L, args.t)
        else:
            res = erroneous.check_erec(w, args.L, args.t, args.s)
        ok, witness, extra = bool(res), res.witness, {"violated": res.constraint, "window_len": res.window_len}
    result = {"constraint": args.constraint, "holds": ok, "witness": list(witness) if witness else None, **extra}
    _emit(args, "check", result, "true" if ok else "false")
    if not ok:
        print(f"violated: witness {witness}", file=sys.stderr)
    return 0 if ok else 1


def cmd_enumerate(args) -> int:
    if args.constraint == "lrec":
        if args.t is None:
            raise UsageError("--constraint lrec needs -t")
        count = lossy.count_lrec(args.n, args.L, args.t, args.limit)
    elif args.constraint == "erec":
        if args.t is None:
            raise UsageError("--constraint erec needs -t")
        count = erroneous.count_erec(args.n, args.L, args.t, args.s, args.limit)
    else:
        if args.d is None:
            raise UsageError("--constraint distant needs -d")
        count = codec.count_distant(args.n, args.L, args.d, args.limit)
    _emit(args, "enumerate", {"constraint": args.constraint, "n": args.n, "L": args.L, "count": count}, str(count))
    return 0


def cmd_simulate_reads(args) -> int:
    C, M = harness.required_reads(args.n, args.eps, args.t)
    if args.M is not None:
        M = args.M
    seed = default_seed() if args.seed is None else args.seed
    rate = harness.monte_carlo_coverage(args.n, args.L, M, args.t, args.trials, seed)
    result = {"n": args.n, "L": args.L, "eps": args.eps, "t": args.t, "C": C, "M": M,
              "trials": args.trials, "seed": seed, "failure_rate": rate}
    _emit(args, "simulate-reads", result, f"C={C:.6f} M={M} failure_rate={rate:.6f}")
    return 0


# -- parser ------------------------------------------------------------------------

def _source(sp):
    sp.add_argument("value", nargs="?", help="inline input (default: -i file or stdin)")
    sp.add_argument("-i", "--input", help="read input from this file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="specrecon", description="Substring-spectrum reconstruction toolkit")
    ap.add_argument("--json", action="store_true", help="emit a JSON report")
    # also accepted after the subcommand; SUPPRESS keeps it from clobbering the top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="write the L-multispectrum of a string")
    _source(sp)
    sp.add_argument("-L", type=int, required=True)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("damage", parents=[common], help="drop and/or corrupt reads of a spectrum (seeded)")
    _source(sp)
    sp.add_argument("--lose", type=int, default=0, help="number of reads to drop")
    sp.add_argument("--err", type=int, default=0, help="number of reads to corrupt")
    sp.add_argument("-s", type=int, default=1, help="max flips per corrupted read")
    sp.add_argument("--seed", type=int, help=f"RNG seed (default: ${SEED_ENV} or 0)")
    sp.set_defaults(func=cmd_damage)

    sp = sub.add_parser("reconstruct", parents=[common], help="reconstruct a string from a spectrum file")
    _source(sp)
    sp.add_argument("--mode", choices=("lossy", "majority", "erec"), required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("-s", type=int, default=1)
    sp.add_argument("-n", type=int, help="original length, tightens start bounds (lossy)")
    sp.add_argument("--no-strict", action="store_true", help="skip the erec search-size precondition")
    sp.set_defaults(func=cmd_reconstruct)

    for name, fn in (("encode", cmd_encode), ("decode", cmd_decode)):
        sp = sub.add_parser(name, parents=[common], help=f"{name} with the substring-distant codec")
        _source(sp)
        sp.add_argument("-n", type=int, required=True, help="codeword length")
        sp.add_argument("-d", type=int, default=1)
        sp.add_argument("-c", type=int, help="block-length slack (default: smallest that shrinks)")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("check", parents=[common], help="test a string against a constraint")
    _source(sp)
    sp.add_argument("--constraint", choices=("lrec", "erec", "distant"), required=True)
    sp.add_argument("-L", type=int, required=True)
    sp.add_argument("-t", type=int)
    sp.add_argument("-s", type=int, default=1)
    sp.add_argument("-d", type=int)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("enumerate", parents=[common], help="count constrained strings exhaustively")
    sp.add_argument("--constraint", choices=("lrec", "erec", "distant"), required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-L", type=int, required=True)
    sp.add_argument("-t", type=int)
    sp.add_argument("-s", type=int, default=1)
    sp.add_argument("-d", type=int)
    sp.add_argument("--limit", type=int, default=22, help="largest n to enumerate")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("simulate-reads", parents=[common], help="read-count estimate and coverage Monte-Carlo")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-L", type=int, required=True)
    sp.add_argument("--eps", type=float, required=True, help="failure budget (natural-log formula)")
    sp.add_argument("-t", type=int, default=0)
    sp.add_argument("-M", type=int, help="override the read count")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, help=f"RNG seed (default: ${SEED_ENV} or 0)")
    sp.set_defaults(func=cmd_simulate_reads)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, ParameterError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (ReconstructionError, codec.CodecError) as e:
        reason = getattr(e, "reason", "decode-failed")
        if args.json:
            print(json.dumps({"schema": SCHEMA, "command": args.command, "error": reason, "message": str(e)},
                             sort_keys=True))
        print(f"failed: {e}", file=sys.stderr)
        return 1
