"""Exhaustive enumeration of all binary strings of a given length, as integer arrays.

A string ``w`` of length ``n`` is encoded as ``int(w, 2)``, so position 1 is
the most significant bit.
"""
from __future__ import annotations

from typing import Iterator

import numpy as np

from .outcome import ParameterError

ENUMERATION_LIMIT = 22
CHUNK = 1 << 18


def check_limit(n: int, limit: int = ENUMERATION_LIMIT):
    if n < 1:
        raise ParameterError("n must be positive")
    if n > limit:
        raise ParameterError(f"n={n} exceeds the enumeration limit {limit}")


def all_strings_chunks(n: int, limit: int = ENUMERATION_LIMIT, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    check_limit(n, limit)
    total = 1 << n
    for lo in range(0, total, chunk):
        yield np.arange(lo, min(total, lo + chunk), dtype=np.int64)


def window_values(values: np.ndarray, n: int, pos: int, k: int) -> np.ndarray:
    """Integer value of the length-``k`` window at 1-based ``pos`` for every string."""
    return (values >> (n - pos - k + 1)) & ((1 << k) - 1)


def to_bits(v: int, n: int) -> str:
    return format(v, f"0{n}b")


def min_window_distance(values: np.ndarray, n: int, L: int) -> np.ndarray:
    """Minimum pairwise Hamming distance among the length-``L`` windows, per string.

    Strings with a single window get ``L + 1`` (no pair exists).
    """
    m = n - L + 1
    best = np.full(values.shape, L + 1, dtype=np.int16)
    wins = [window_values(values, n, p, L) for p in range(1, m + 1)]
    for a in range(m):
        for b in range(a + 1, m):
            np.minimum(best, np.bitwise_count(wins[a] ^ wins[b]).astype(np.int16), out=best)
    return best
