"""Exhaustive soundness sweeps that pit the reconstruction algorithms against oracles."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .enumeration import all_strings_chunks, min_window_distance, to_bits
from .erroneous import erec_mask, reconstruct_erec, reconstruct_majority, w2_oracle, w3_oracle
from .lossy import LrecParams, lrec_mask, reconstruct_lossy
from .outcome import ReconstructionError
from .spectra import apply_errors, multispectrum, sample_erroneous, sample_errors


@dataclass
class SweepRow:
    n: int
    L: int
    t: int
    strings: int
    ball: int
    checked: int = 0
    failures: int = 0
    examples: List[Tuple[str, Tuple[int, ...], Optional[str], str]] = field(default_factory=list)


def admissible_lrec_params(n: int, ball_cap: int = 10**4) -> Iterator[Tuple[int, int, int]]:
    """``(L, t, ball)`` for every admissible pair whose loss ball has at most ``ball_cap`` members."""
    for L in range(2, n + 1):
        m = n - L + 1
        for t in range(L):
            if not LrecParams.admissible(n, L, t):
                continue
            ball = sum(comb(m, k) for k in range(min(t, m) + 1))
            if ball <= ball_cap:
                yield L, t, ball


def lossy_soundness_row(n: int, L: int, t: int, keep_examples: int = 3,
                        stop_after: Optional[int] = None) -> SweepRow:
    """Reconstruct every loss pattern of every LREC string for one ``(n, L, t)``.

    With ``stop_after`` the scan ends once that many failures are seen, so
    ``strings`` and ``checked`` then count only the part actually scanned.
    """
    m = n - L + 1
    patterns = []
    for k in range(min(t, m - 1) + 1):
        for drop in itertools.combinations(range(m), k):
            kept = [i for i in range(m) if i not in drop]
            patterns.append((drop, kept, kept[0], kept[-1] + L))
    row = SweepRow(n, L, t, 0, len(patterns))
    for chunk in all_strings_chunks(n):
        for v in np.nonzero(lrec_mask(chunk, n, L, t))[0]:
            w = to_bits(int(chunk[v]), n)
            row.strings += 1
            wins = [w[i:i + L] for i in range(m)]
            for drop, kept, a, b in patterns:
                try:
                    got = reconstruct_lossy([wins[i] for i in kept], t).value
                except ReconstructionError:
                    got = None
                row.checked += 1
                if got != w[a:b]:
                    row.failures += 1
                    if len(row.examples) < keep_examples:
                        row.examples.append((w, tuple(d + 1 for d in drop), got, w[a:b]))
                    if stop_after is not None and row.failures >= stop_after:
                        return row
    return row


def lossy_soundness_sweep(ns=(14, 15, 16), ball_cap: int = 10**4, progress=None,
                          stop_after: Optional[int] = None) -> List[SweepRow]:
    """All admissible rows; ``stop_after`` caps the total failure count before returning early."""
    rows = []
    seen = 0
    for n in ns:
        for L, t, _ in admissible_lrec_params(n, ball_cap):
            left = None if stop_after is None else stop_after - seen
            row = lossy_soundness_row(n, L, t, stop_after=left)
            rows.append(row)
            seen += row.failures
            if progress:
                progress(row)
            if stop_after is not None and seen >= stop_after:
                return rows
    return rows


@dataclass
class MajorityRow:
    n: int
    L: int
    t: int
    s: int
    strings: int = 0
    checked: int = 0
    failures: int = 0
    examples: list = field(default_factory=list)


def majority_soundness_row(n: int, L: int, s: int = 1, seeds: int = 100, t: Optional[int] = None,
                           keep_examples: int = 3) -> MajorityRow:
    """Every ``(L-1, 4s+1)``-distant string of length ``n`` against ``seeds`` sampled erroneous spectra.

    ``t`` defaults to the largest value below ``L/2``.  The draws of
    :func:`sample_erroneous` do not depend on the string, so the edit maps are
    drawn once per seed and identical maps are checked once with their
    multiplicity.
    """
    t = (L - 1) // 2 if t is None else t
    row = MajorityRow(n, L, t, s)
    m = n - L + 1
    plans: Dict[tuple, list] = {}
    for seed in range(seeds):
        edits = sample_errors(m, L, t, s, random.Random(seed))
        key = tuple(sorted((p, tuple(v)) for p, v in edits.items()))
        if key in plans:
            plans[key][1] += 1
        else:
            plans[key] = [edits, 1, seed]
    for chunk in all_strings_chunks(n):
        for v in chunk[min_window_distance(chunk, n, L - 1) >= 4 * s + 1]:
            w = to_bits(int(v), n)
            row.strings += 1
            full = multispectrum(w, L)
            for edits, count, seed in plans.values():
                U = apply_errors(full, edits)
                try:
                    got = reconstruct_majority(U.without_provenance(), t, s).value
                except ReconstructionError:
                    got = None
                want = w2_oracle(w, U)
                row.checked += count
                if got != want:
                    row.failures += count
                    if len(row.examples) < keep_examples:
                        row.examples.append((w, seed, got, want))
    return row


def majority_soundness_sweep(n_max: int = 14, s: int = 1, seeds: int = 100, progress=None) -> List[MajorityRow]:
    rows = []
    for n in range(2, n_max + 1):
        for L in range(4 * s + 2, n + 1):
            row = majority_soundness_row(n, L, s, seeds)
            if row.strings:
                rows.append(row)
                if progress:
                    progress(row)
    return rows


@dataclass
class ErecCase:
    w: str
    L: int
    t: int
    s: int
    seed: int
    value: Optional[str] = None
    oracle: frozenset = frozenset()
    oracle_size: int = 0
    r: int = 0
    family_size: int = 0
    error: Optional[str] = None

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def matches_oracle(self) -> bool:
        return self.value is not None and self.value in self.oracle

    @property
    def long_enough(self) -> bool:
        return self.value is not None and len(self.value) >= self.n - self.t

    @property
    def central_ok(self) -> bool:
        """Placed at some start in ``[1, t+1]``, the value covers and agrees with ``w`` on ``2t+1 .. n-4t``."""
        if self.value is None:
            return False
        lo, hi = 2 * self.t + 1, self.n - 4 * self.t
        k = len(self.value)
        for o in range(1, self.t + 2):
            if o <= lo and o + k - 1 >= hi and \
                    self.value[lo - o:hi - o + 1] == self.w[lo - 1:hi]:
                return True
        return False

    @property
    def r_ok(self) -> bool:
        return self.r <= 2 * self.t + 1

    @property
    def family_ok(self) -> bool:
        return self.family_size <= self.n

    @property
    def ok(self) -> bool:
        return all((self.matches_oracle, self.long_enough, self.central_ok, self.r_ok, self.family_ok))


def erec_instances(rows, per_row: int, seed: int = 0) -> Iterator[Tuple[str, int, int, int, int]]:
    """Seeded ``(w, L, t, s, spectrum_seed)`` draws of strings satisfying the EREC constraints."""
    rng = random.Random(seed)
    for n, L, t, s in rows:
        pool = []
        for chunk in all_strings_chunks(n):
            pool.extend(int(v) for v in chunk[erec_mask(chunk, n, L, t, s)])
        if not pool:
            continue
        for w in rng.sample(pool, min(per_row, len(pool))):
            yield to_bits(w, n), L, t, s, rng.randrange(1 << 30)


def run_erec_case(w: str, L: int, t: int, s: int, seed: int) -> ErecCase:
    case = ErecCase(w, L, t, s, seed)
    U = sample_erroneous(w, L, t, s, seed)
    case.oracle, case.oracle_size = w3_oracle(U, t)
    try:
        out = reconstruct_erec(U.without_provenance(), t, s)
    except ReconstructionError as e:
        case.error = e.reason
        return case
    case.value = out.value
    case.r = out.details["r"]
    case.family_size = out.details["family_size"]
    return case


EREC_ROWS = ((18, 9, 1, 1), (18, 10, 1, 1), (18, 12, 1, 1), (18, 10, 2, 1), (18, 11, 2, 1), (18, 12, 2, 1))


def erec_soundness_sweep(rows=EREC_ROWS, per_row: int = 20, seed: int = 0) -> List[ErecCase]:
    return [run_erec_case(*inst) for inst in erec_instances(rows, per_row, seed)]
