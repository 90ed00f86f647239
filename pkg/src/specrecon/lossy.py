"""Reconstruction from spectra with missing reads.

``check_lrec`` decides the three-part window-uniqueness constraints,
``stitch`` greedily glues reads along exact suffix/prefix overlaps, and
``reconstruct_lossy`` drives the stitcher with shrinking overlaps to recover
the longest substring the surviving reads cover.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from .enumeration import ENUMERATION_LIMIT, all_strings_chunks, window_values
from .outcome import ParameterError, ReconstructionError, ReconstructionOutcome, StitchCycleError
from .spectra import Spectrum
from .strings import BitString, as_bits


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


def _clamp(lo: int, hi: int, top: int) -> Tuple[int, int]:
    return max(1, lo), min(hi, top)


def window_lengths(L: int, t: int) -> Tuple[int, int, int]:
    return L - t // 3 - 1, L - (2 * t + 2) // 3 - 1, L - t - 1


def window_constraint_pairs(n: int, L: int, t: int):
    """Yield ``(constraint, length, i, j)`` for every window pair the three constraints compare.

    Pairs are unordered for constraints 1 and 2 (each listed once with
    ``i < j``).  Constraint 3 lists ``(i, j)`` with ``i`` among the first
    ``t + 1`` windows and ``j`` among the last ``t + 1``.  Index ranges that
    would fall outside the string are clamped.
    """
    l1, l2, l3 = window_lengths(L, t)
    m1 = n - l1 + 1
    for i in range(1, m1 + 1):
        for j in range(i + 1, m1 + 1):
            yield 1, l1, i, j
    m2 = n - l2 + 1
    special = set(range(1, min(t + 1, m2) + 1)) | set(range(max(1, m2 - t), m2 + 1))
    for i in range(1, m2 + 1):
        for j in range(i + 1, m2 + 1):
            if i in special or j in special:
                yield 2, l2, i, j
    m3 = n - l3 + 1
    for i in range(1, min(t + 1, m3) + 1):
        for j in range(max(1, m3 - t), m3 + 1):
            yield 3, l3, i, j


@dataclass(frozen=True)
class LrecParams:
    n: int
    L: int
    t: int

    def __post_init__(self):
        if not 1 <= self.L <= self.n:
            raise ParameterError(f"need 1 <= L <= n, got L={self.L}, n={self.n}")
        if self.t < 0:
            raise ParameterError("t must be >= 0")
        if not self.t < self.t_bound:
            raise ParameterError(
                f"t={self.t} too large for n={self.n}, L={self.L}; need t < {self.t_bound}")

    @property
    def t_bound(self) -> int:
        return min(self.L - 1, 3 * (self.L - ceil_log2(self.n) - 1))

    @classmethod
    def admissible(cls, n: int, L: int, t: int) -> bool:
        try:
            cls(n, L, t)
        except ParameterError:
            return False
        return True

    @property
    def l1(self) -> int:
        return window_lengths(self.L, self.t)[0]

    @property
    def l2(self) -> int:
        return window_lengths(self.L, self.t)[1]

    @property
    def l3(self) -> int:
        return window_lengths(self.L, self.t)[2]

    @property
    def I2(self) -> Tuple[int, int]:
        n, l2, t = self.n, self.l2, self.t
        return _clamp(n - l2 - t + 1, n - l2 + 1, n - l2 + 1)

    @property
    def I3(self) -> Tuple[int, int]:
        n, l3, t = self.n, self.l3, self.t
        return _clamp(n - l3 - t + 1, n - l3 + 1, n - l3 + 1)

    def constraint_pairs(self):
        return window_constraint_pairs(self.n, self.L, self.t)


@dataclass(frozen=True)
class ConstraintReport:
    """Result of a constraint check; truthy iff every constraint holds.

    On failure ``constraint`` is the number (1, 2 or 3) of the first violated
    constraint and ``witness`` the offending 1-based window pair.
    """

    ok: bool
    constraint: Optional[int] = None
    witness: Optional[Tuple[int, int]] = None
    window_len: Optional[int] = None

    def __bool__(self):
        return self.ok


def check_lrec(w: BitString, L: int, t: int) -> ConstraintReport:
    as_bits(w)
    p = LrecParams(len(w), L, t)
    for c, k, i, j in p.constraint_pairs():
        if w[i - 1:i - 1 + k] == w[j - 1:j - 1 + k]:
            return ConstraintReport(False, c, (i, j), k)
    return ConstraintReport(True)


def lrec_mask(values: np.ndarray, n: int, L: int, t: int) -> np.ndarray:
    """Vectorized ``check_lrec`` over integer-encoded strings (MSB is position 1)."""
    p = LrecParams(n, L, t)
    ok = np.ones(values.shape, dtype=bool)
    cache = {}
    for _, k, i, j in p.constraint_pairs():
        for pos in (i, j):
            if (k, pos) not in cache:
                cache[(k, pos)] = window_values(values, n, pos, k)
        ok &= cache[(k, i)] != cache[(k, j)]
    return ok


def count_lrec(n: int, L: int, t: int, limit: int = ENUMERATION_LIMIT) -> int:
    """Exhaustive size of the LREC family for ``(n, L, t)``."""
    LrecParams(n, L, t)
    return sum(int(lrec_mask(chunk, n, L, t).sum()) for chunk in all_strings_chunks(n, limit))


def _unique_or_raise(items, what):
    c = Counter(items)
    dup = sorted(s for s, k in c.items() if k > 1)
    if dup:
        raise StitchCycleError({"duplicate": dup[0], "stage": what})


def stitch(A: Iterable[BitString], rho: int, L: int) -> Tuple[BitString, ...]:
    """Glue segments along exact overlaps of length ``L - k - 1`` for ``k = 0..rho``.

    At each overlap length, chains are started from the lexicographically
    smallest segment whose prefix is not any other segment's suffix, then
    extended by the smallest segment whose prefix equals the chain's suffix.
    A matched segment contributes everything past the shared overlap.
    Returns the resulting segments sorted.  Duplicate segments, or a round
    with no valid chain start, raise :class:`StitchCycleError`.
    """
    segs = sorted(A)
    if rho < 0:
        raise ValueError("rho must be >= 0")
    if L - rho - 1 < 1:
        raise ParameterError(f"overlap slack {rho} leaves no overlap for L={L}")
    for s in segs:
        if len(s) < L:
            raise ValueError(f"segment {s!r} shorter than L={L}")
    if len(set(segs)) != len(segs):
        _unique_or_raise(segs, "input")
    for k in range(rho + 1):
        if len(segs) < 2:
            break
        segs = _stitch_round(segs, L - k - 1, k)
    return tuple(segs)


def _stitch_round(segs, ov, k):
    # segs is sorted, so scanning indices in order finds the smallest start
    pre = [s[:ov] for s in segs]
    suf = [s[-ov:] for s in segs]
    alive = [True] * len(segs)
    suf_count: dict = {}
    by_prefix: dict = {}
    for i, (p, q) in enumerate(zip(pre, suf)):
        suf_count[q] = suf_count.get(q, 0) + 1
        by_prefix.setdefault(p, []).append(i)
    left = len(segs)
    out = []
    while left:
        for i in range(len(segs)):
            if alive[i] and suf_count.get(pre[i], 0) - (suf[i] == pre[i]) == 0:
                break
        else:
            raise StitchCycleError({"k": k, "pool": [s for s, a in zip(segs, alive) if a]})
        alive[i] = False
        suf_count[suf[i]] -= 1
        left -= 1
        cur = segs[i]
        while True:
            j = next((j for j in by_prefix.get(suf[i], ()) if alive[j]), None)
            if j is None:
                break
            alive[j] = False
            suf_count[suf[j]] -= 1
            left -= 1
            cur += segs[j][ov:]
            i = j
        out.append(cur)
    out.sort()
    return out


def _reads_of(U) -> Tuple[Tuple[BitString, ...], int]:
    if isinstance(U, Spectrum):
        return U.reads, U.read_len
    reads = tuple(sorted(U))
    if not reads:
        raise ReconstructionError("empty-spectrum")
    return reads, len(reads[0])


def reconstruct_lossy(U, t: int, n: Optional[int] = None) -> ReconstructionOutcome:
    """Recover the longest covered substring from a spectrum with at most ``t`` lost reads.

    ``U`` is a :class:`Spectrum` or an iterable of equal-length reads.  When
    the original length ``n`` is supplied the start bounds are tightened.
    Raises :class:`ReconstructionError` when no branch yields a single string,
    which means the input is outside the algorithm's guarantee.
    """
    reads, L = _reads_of(U)
    if not reads:
        raise ReconstructionError("empty-spectrum")
    if t < 0 or t > L - 2:
        raise ParameterError(f"need 0 <= t <= L - 2, got t={t}, L={L}")
    A0 = stitch(reads, t // 3, L)
    details = {"A0": A0}
    mid = (2 * t + 2) // 3
    if len(A0) == 1:
        value = A0[0]
        details["branch"] = 1
    elif len(A0) == 2:
        out = stitch(A0, t, L)
        if len(out) != 1:
            raise ReconstructionError("two-segments-unstitched", {"A0": A0, "result": out})
        value = out[0]
        details["branch"] = 2
    elif len(A0) == 3:
        value = None
        for y in A0:
            rest = [s for s in A0 if s != y]
            Ai = stitch(rest, mid, L)
            if len(Ai) >= len(rest):
                continue
            Ai2 = stitch(list(Ai) + [y], mid, L)
            if len(Ai2) < len(Ai) + 1 and len(Ai2) == 1:
                value = Ai2[0]
                details.update(branch=3, removed=y)
                break
        if value is None:
            raise ReconstructionError("three-segments-unstitched", {"A0": A0})
    else:
        raise ReconstructionError("too-many-segments", {"A0": A0, "count": len(A0)})
    hi = t + 1 if n is None else min(t + 1, n - len(value) + 1)
    if hi < 1:
        raise ReconstructionError("longer-than-n", {"value": value, "n": n})
    return ReconstructionOutcome(value, "W1", (1, hi), details)


def max_reconstructible_w1(w: BitString, L: int, drop_positions: Iterable[int]) -> BitString:
    """Ground-truth oracle: the substring spanned by the first and last surviving reads."""
    m = len(w) - L + 1
    drop = set(drop_positions)
    kept = [p for p in range(1, m + 1) if p not in drop]
    if not kept:
        raise ValueError("every read was dropped")
    return w[kept[0] - 1:kept[-1] - 1 + L]
