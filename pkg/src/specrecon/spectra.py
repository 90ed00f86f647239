"""Multispectra and the two read-noise channels (losses, bounded substitutions)."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Mapping, Optional, Tuple

from .strings import BitString, as_bits, hamming_distance


@dataclass(frozen=True)
class Spectrum:
    """A multiset of equal-length reads.

    Reads are stored in canonical sorted order so reconstruction code never
    sees the ground-truth order.  ``provenance`` (true 1-based start
    positions, aligned with ``reads``) is test-only metadata.
    """

    reads: Tuple[BitString, ...]
    read_len: int
    provenance: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.read_len < 1:
            raise ValueError("read length must be positive")
        for r in self.reads:
            if len(r) != self.read_len:
                raise ValueError(f"read {r!r} does not have length {self.read_len}")
        if self.provenance is not None and len(self.provenance) != len(self.reads):
            raise ValueError("provenance must align with reads")

    @classmethod
    def of(cls, reads: Iterable[BitString], read_len: Optional[int] = None,
           provenance: Optional[Iterable[int]] = None) -> "Spectrum":
        reads = [as_bits(r) for r in reads]
        if read_len is None:
            if not reads:
                raise ValueError("read length is required for an empty spectrum")
            read_len = len(reads[0])
        if provenance is None:
            return cls(tuple(sorted(reads)), read_len)
        pairs = sorted(zip(reads, provenance))
        return cls(tuple(r for r, _ in pairs), read_len, tuple(p for _, p in pairs))

    def __len__(self):
        return len(self.reads)

    def __iter__(self):
        return iter(self.reads)

    def without_provenance(self) -> "Spectrum":
        return Spectrum(self.reads, self.read_len)

    def by_position(self) -> list:
        """``(position, read)`` pairs in ground-truth order (needs provenance)."""
        if self.provenance is None:
            raise ValueError("spectrum carries no provenance")
        return sorted(zip(self.provenance, self.reads))

    # text format: "L=<int>" then one read per line
    def to_text(self) -> str:
        return "\n".join([f"L={self.read_len}", *self.reads]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Spectrum":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("L="):
            raise ValueError("spectrum text must start with a line 'L=<int>'")
        try:
            L = int(lines[0][2:])
        except ValueError:
            raise ValueError(f"bad read-length line: {lines[0]!r}") from None
        return cls.of(lines[1:], read_len=L)


@dataclass(frozen=True)
class LossChannelSpec:
    L: int
    t: int

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("t must be >= 0")


@dataclass(frozen=True)
class ErrorChannelSpec:
    L: int
    t: int
    s: int

    def __post_init__(self):
        if self.t < 0 or self.s < 0:
            raise ValueError("t and s must be >= 0")

    @property
    def reconstructible(self) -> bool:
        return 2 * self.t < self.L


def multispectrum(w: BitString, L: int) -> Spectrum:
    as_bits(w)
    if not 1 <= L <= len(w):
        raise ValueError(f"L={L} out of range for length {len(w)}")
    m = len(w) - L + 1
    return Spectrum.of((w[i:i + L] for i in range(m)), L, range(1, m + 1))


def apply_losses(full: Spectrum, drop_positions: Iterable[int]) -> Spectrum:
    drop = set(drop_positions)
    pos = full.by_position()
    unknown = drop - {p for p, _ in pos}
    if unknown:
        raise ValueError(f"drop positions not in spectrum: {sorted(unknown)}")
    kept = [(p, r) for p, r in pos if p not in drop]
    return Spectrum.of((r for _, r in kept), full.read_len, (p for p, _ in kept))


def _flip(read: str, positions: Iterable[int]) -> str:
    chars = list(read)
    for k in positions:
        if not 1 <= k <= len(read):
            raise ValueError(f"substitution position {k} outside read of length {len(read)}")
        chars[k - 1] = "1" if chars[k - 1] == "0" else "0"
    return "".join(chars)


def apply_errors(full: Spectrum, edits: Mapping[int, Iterable[int]]) -> Spectrum:
    """Flip the listed 1-based symbol positions of the reads starting at the keyed positions."""
    pos = full.by_position()
    present = {p for p, _ in pos}
    unknown = set(edits) - present
    if unknown:
        raise ValueError(f"edited positions not in spectrum: {sorted(unknown)}")
    out = [(p, _flip(r, edits[p]) if p in edits else r) for p, r in pos]
    return Spectrum.of((r for _, r in out), full.read_len, (p for p, _ in out))


def loss_ball_size(n: int, L: int, t: int) -> int:
    m = n - L + 1
    return sum(comb(m, k) for k in range(min(t, m) + 1))


def enumerate_loss_subsets(w: BitString, L: int, t: int, cap: int = 10**5,
                           seed: int = 0) -> Iterator[Spectrum]:
    """Members of the ``t``-losses ball, one per drop set.

    Exhaustive when the ball has at most ``cap`` members, otherwise ``cap``
    uniformly drawn drop sets (with replacement) from a seeded generator.
    """
    if t < 0 or cap < 1:
        raise ValueError("need t >= 0 and cap > 0")
    full = multispectrum(w, L)
    m = len(full)
    size = loss_ball_size(len(w), L, t)
    if size <= cap:
        for k in range(min(t, m) + 1):
            for drop in itertools.combinations(range(1, m + 1), k):
                yield apply_losses(full, drop)
        return
    rng = random.Random(seed)
    weights = [comb(m, k) for k in range(min(t, m) + 1)]
    for _ in range(cap):
        k = rng.choices(range(len(weights)), weights=weights)[0]
        yield apply_losses(full, rng.sample(range(1, m + 1), k))


def sample_errors(m: int, L: int, t: int, s: int, rng: random.Random) -> dict:
    """Draw an edit map: up to ``t`` reads, each with 1..``s`` flipped symbols."""
    if s == 0 or t == 0:
        return {}
    k = rng.randint(0, min(t, m))
    return {p: sorted(rng.sample(range(1, L + 1), rng.randint(1, min(s, L))))
            for p in rng.sample(range(1, m + 1), k)}


def sample_erroneous(w: BitString, L: int, t: int, s: int, seed: int) -> Spectrum:
    full = multispectrum(w, L)
    edits = sample_errors(len(full), L, t, s, random.Random(seed))
    return apply_errors(full, edits)


def is_erroneous_spectrum(U: Spectrum, w: BitString, t: int, s: int) -> bool:
    """Membership test for the ``(t, s)``-erroneous ball, using provenance."""
    pos = U.by_position()
    m = len(w) - U.read_len + 1
    if [p for p, _ in pos] != list(range(1, m + 1)):
        return False
    bad = 0
    for p, r in pos:
        dist = hamming_distance(r, w[p - 1:p - 1 + U.read_len])
        if dist > s:
            return False
        bad += dist > 0
    return bad <= t


def is_loss_spectrum(U: Spectrum, w: BitString, t: int) -> bool:
    full = sorted(multispectrum(w, U.read_len).reads)
    rest = list(full)
    for r in U.reads:
        try:
            rest.remove(r)
        except ValueError:
            return False
    return len(rest) <= t
