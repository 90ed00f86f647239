"""Binary strings, 1-based windows and Hamming geometry.

Bit strings are plain ``str`` objects over ``"01"``.  Every public index in
this package is 1-based: ``window(w, i, k)`` is the length-``k`` substring
starting at position ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence, Tuple

import numpy as np

BitString = str

_BITS = frozenset("01")


def as_bits(w: str) -> BitString:
    """Validate ``w`` as a nonempty binary string and return it unchanged."""
    if not isinstance(w, str):
        raise TypeError(f"expected a str of 0/1 symbols, got {type(w).__name__}")
    if not w:
        raise ValueError("bit string must be nonempty")
    if not _BITS.issuperset(w):
        raise ValueError(f"bit string may only contain '0' and '1': {w!r}")
    return w


def hamming_distance(a: Sequence, b: Sequence) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")
    if isinstance(a, str) and isinstance(b, str) and _BITS.issuperset(a) and _BITS.issuperset(b) and a:
        return (int(a, 2) ^ int(b, 2)).bit_count()
    return sum(1 for x, y in zip(a, b) if x != y)


def window(w: BitString, i: int, k: int) -> BitString:
    if k < 1 or i < 1 or i + k - 1 > len(w):
        raise IndexError(f"window ({i}, {k}) out of range for length {len(w)}")
    return w[i - 1:i - 1 + k]


def prefix(w: BitString, k: int) -> BitString:
    return w[:k]


def suffix(w: BitString, k: int) -> BitString:
    return w[len(w) - k:] if k > 0 else ""


def windows(w: BitString, k: int) -> list:
    """All length-``k`` windows of ``w`` in position order."""
    return [w[i:i + k] for i in range(len(w) - k + 1)]


@dataclass(frozen=True)
class DistanceProfile:
    min_pairwise_distance: Optional[int]
    witness_pair: Optional[Tuple[int, int]]

    def __post_init__(self):
        if (self.min_pairwise_distance is None) != (self.witness_pair is None):
            raise ValueError("witness_pair must be present iff the minimum distance is finite")


def distance_profile(w: BitString, L: int) -> DistanceProfile:
    """Minimum Hamming distance among all length-``L`` windows of ``w``.

    The witness is the lexicographically smallest pair ``(i, j)``, ``i < j``,
    attaining the minimum.  ``None`` fields mean fewer than two windows.
    """
    as_bits(w)
    if not 1 <= L <= len(w):
        raise ValueError(f"L={L} out of range for length {len(w)}")
    m = len(w) - L + 1
    if m < 2:
        return DistanceProfile(None, None)
    if L <= 63:
        return _profile_numpy(w, L, m)
    vals = [int(w[i:i + L], 2) for i in range(m)]
    best, pair = L + 1, None
    for a in range(m):
        va = vals[a]
        for b in range(a + 1, m):
            dist = (va ^ vals[b]).bit_count()
            if dist < best:
                best, pair = dist, (a + 1, b + 1)
    return DistanceProfile(best, pair)


def _profile_numpy(w: BitString, L: int, m: int, chunk: int = 256) -> DistanceProfile:
    vals = np.array([int(w[i:i + L], 2) for i in range(m)], dtype=np.uint64)
    best, pair = L + 1, None
    for lo in range(0, m - 1, chunk):
        rows = vals[lo:lo + chunk]
        dist = np.bitwise_count(rows[:, None] ^ vals[None, :]).astype(np.int16)
        # keep only j > i
        idx_i = np.arange(lo, lo + len(rows))[:, None]
        dist[np.arange(m)[None, :] <= idx_i] = L + 1
        low = int(dist.min())
        if low < best:
            a, b = np.unravel_index(int(np.argmin(dist)), dist.shape)
            best, pair = low, (lo + int(a) + 1, int(b) + 1)
    return DistanceProfile(best, pair)


def close_window_pairs(w: BitString, L: int, d: int, first_only: bool = False) -> list:
    """Pairs ``(i, j)``, ``i < j``, of length-``L`` windows at distance ``< d``.

    Uses the pigeonhole split: two windows within distance ``d - 1`` agree
    exactly on at least one of ``d`` disjoint blocks, so only pairs sharing a
    block value are compared.  Pairs come back sorted; with ``first_only``
    the scan stops at the lexicographically smallest pair.
    """
    m = len(w) - L + 1
    if m < 2 or d < 1:
        return []
    if d > L:
        # every pair is within distance L < d
        if first_only:
            return [(1, 2)]
        return [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    vals = [int(w[i:i + L], 2) for i in range(m)]
    nblocks = min(d, L)
    cuts = [L * b // nblocks for b in range(nblocks + 1)]
    buckets = []
    for b in range(nblocks):
        lo, hi = cuts[b], cuts[b + 1]
        table: dict = {}
        for i in range(m):
            table.setdefault(w[i + lo:i + hi], []).append(i)
        buckets.append(table)
    found = []
    for i in range(m):
        vi = vals[i]
        partners = set()
        for b in range(nblocks):
            lo, hi = cuts[b], cuts[b + 1]
            for j in buckets[b][w[i + lo:i + hi]]:
                if j > i:
                    partners.add(j)
        hits = sorted(j for j in partners if (vi ^ vals[j]).bit_count() < d)
        if hits:
            if first_only:
                return [(i + 1, hits[0] + 1)]
            found.extend((i + 1, j + 1) for j in hits)
    return found


class DistantCheck:
    """Outcome of :func:`is_substring_distant`; truthy iff the predicate holds.

    ``profile`` is exact either way.  On failure it comes from the violating
    pairs already found; on success it is computed on first access.
    """

    def __init__(self, ok: bool, w: BitString, L: int, profile: Optional[DistanceProfile] = None):
        self.ok = ok
        self._w, self._L = w, L
        self._profile = profile

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"DistantCheck(ok={self.ok})"

    @property
    def witness(self) -> Optional[Tuple[int, int]]:
        return self.profile.witness_pair

    @property
    def profile(self) -> DistanceProfile:
        if self._profile is None:
            self._profile = distance_profile(self._w, self._L)
        return self._profile


def is_substring_distant(w: BitString, L: int, d: int) -> DistantCheck:
    """Decide whether every two length-``L`` windows of ``w`` differ in ``>= d`` places.

    ``d = 1`` is the substring-unique predicate.  On failure the profile's
    witness is the lexicographically smallest pair at minimum distance.
    """
    as_bits(w)
    if not 1 <= L <= len(w):
        raise ValueError(f"L={L} out of range for length {len(w)}")
    if d < 1:
        raise ValueError("d must be >= 1")
    bad = close_window_pairs(w, L, d)
    if not bad:
        return DistantCheck(True, w, L)
    dist = {p: hamming_distance(window(w, p[0], L), window(w, p[1], L)) for p in bad}
    low = min(dist.values())
    pair = min(p for p, v in dist.items() if v == low)
    return DistantCheck(False, w, L, DistanceProfile(low, pair))


def is_substring_unique(w: BitString, L: int) -> bool:
    return len(set(windows(w, L))) == len(w) - L + 1


def hamming_ball_size(n: int, t: int) -> int:
    if not 0 <= t <= n:
        raise ValueError(f"radius {t} out of range for length {n}")
    return sum(comb(n, r) for r in range(t + 1))
