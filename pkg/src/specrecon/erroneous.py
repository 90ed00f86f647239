"""Reconstruction from spectra whose reads carry substitution errors.

Two decoders live here.  ``reconstruct_majority`` orders the reads by
near-matching overlaps and takes a per-position vote; it needs the source
string to be strongly substring distant.  ``reconstruct_erec`` searches for
the largest read subset that agrees everywhere, trimming the ends of the
exact-overlap chains and handing each candidate to the lossy decoder.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .enumeration import ENUMERATION_LIMIT, all_strings_chunks, window_values
from .lossy import ConstraintReport, LrecParams, reconstruct_lossy, stitch, window_constraint_pairs, window_lengths
from .outcome import ParameterError, ReconstructionError, ReconstructionOutcome
from .spectra import Spectrum
from .strings import BitString, as_bits, hamming_distance


def majority(values: Iterable[str]) -> str:
    """Most frequent symbol; ties go to the lexicographically smallest."""
    vals = values if isinstance(values, (list, tuple, str)) else list(values)
    if not vals:
        raise ValueError("majority of an empty collection")
    ones = vals.count("1")
    zeros = vals.count("0")
    if ones + zeros == len(vals):
        return "1" if ones > zeros else "0"
    counts: Dict[str, int] = {}
    for v in vals:
        counts[v] = counts.get(v, 0) + 1
    top = max(counts.values())
    return min(v for v, c in counts.items() if c == top)


def _reads(U) -> Tuple[List[BitString], int]:
    if isinstance(U, Spectrum):
        return list(U.reads), U.read_len
    reads = sorted(U)
    if not reads:
        raise ReconstructionError("empty-spectrum")
    return reads, len(reads[0])


def reconstruct_majority(U, t: int, s: int) -> ReconstructionOutcome:
    """Order reads by near-matching overlaps, then vote per position.

    The head read is the unique one whose ``(L-1)``-prefix is at distance at
    least ``2s+1`` from every other read's ``(L-1)``-suffix.  Each following
    read is the unique remaining one whose prefix is within ``2s`` of the
    current read's suffix.  Any ambiguity raises :class:`ReconstructionError`.
    """
    reads, L = _reads(U)
    if not 2 * t < L:
        raise ParameterError(f"need t < L/2, got t={t}, L={L}")
    if s < 0:
        raise ParameterError("s must be >= 0")
    if L < 2:
        raise ParameterError("reads must have length >= 2")
    k = L - 1
    pre = [r[:k] for r in reads]
    suf = [r[1:] for r in reads]
    heads = [i for i in range(len(reads))
             if all(hamming_distance(pre[i], suf[j]) >= 2 * s + 1
                    for j in range(len(reads)) if j != i)]
    if len(heads) != 1:
        raise ReconstructionError("no-unique-head", {"candidates": [reads[i] for i in heads]})
    order = [heads[0]]
    left = set(range(len(reads))) - {heads[0]}
    while left:
        cur = order[-1]
        nxt = [j for j in sorted(left) if hamming_distance(suf[cur], pre[j]) <= 2 * s]
        if len(nxt) != 1:
            raise ReconstructionError("ambiguous-successor",
                                      {"after": reads[cur], "candidates": [reads[j] for j in nxt]})
        order.append(nxt[0])
        left.discard(nxt[0])
    n = len(reads) + L - 1
    votes: List[List[str]] = [[] for _ in range(n)]
    for pos, i in enumerate(order):
        for c, sym in enumerate(reads[i]):
            votes[pos + c].append(sym)
    value = "".join(majority(v) for v in votes)
    return ReconstructionOutcome(value, "W2", (1, 1), {"order": [reads[i] for i in order]})


def w2_oracle(x: BitString, U: Spectrum) -> BitString:
    """Per-position majority over the reads placed at their true positions."""
    votes: List[List[str]] = [[] for _ in range(len(x))]
    for p, r in U.by_position():
        for c, sym in enumerate(r):
            votes[p - 1 + c].append(sym)
    return "".join(majority(v) for v in votes)


# -- EREC constraints -------------------------------------------------------

def log_loglog_bound(n: int) -> float:
    """``log2 n / log2 log2 n``; the moderate-``t`` regime of the subset search."""
    if n < 5:
        return 0.0
    return math.log2(n) / math.log2(math.log2(n))


@dataclass(frozen=True)
class ErecParams:
    n: int
    L: int
    t: int
    s: int

    def __post_init__(self):
        if not 1 <= self.L <= self.n:
            raise ParameterError(f"need 1 <= L <= n, got L={self.L}, n={self.n}")
        if self.t < 0 or self.s < 0:
            raise ParameterError("t and s must be >= 0")
        if not 2 * self.t < self.L:
            raise ParameterError(f"need t < L/2, got t={self.t}, L={self.L}")
        if self.L - self.t - 1 < 1:
            raise ParameterError("windows of length L - t - 1 must be nonempty")

    @property
    def threshold(self) -> int:
        return 2 * self.s + 1

    @property
    def search_feasible(self) -> bool:
        return self.t <= log_loglog_bound(self.n)

    def lengths(self) -> Tuple[int, int, int]:
        return window_lengths(self.L, self.t)


def check_erec(w: BitString, L: int, t: int, s: int) -> ConstraintReport:
    """The three window constraints with "differ" strengthened to "at distance >= 2s+1"."""
    as_bits(w)
    p = ErecParams(len(w), L, t, s)
    for c, k, i, j in window_constraint_pairs(p.n, L, t):
        if hamming_distance(w[i - 1:i - 1 + k], w[j - 1:j - 1 + k]) < p.threshold:
            return ConstraintReport(False, c, (i, j), k)
    return ConstraintReport(True)


def erec_mask(values: np.ndarray, n: int, L: int, t: int, s: int) -> np.ndarray:
    ErecParams(n, L, t, s)
    ok = np.ones(values.shape, dtype=bool)
    cache = {}
    for _, k, i, j in window_constraint_pairs(n, L, t):
        for pos in (i, j):
            if (k, pos) not in cache:
                cache[(k, pos)] = window_values(values, n, pos, k)
        ok &= np.bitwise_count(cache[(k, i)] ^ cache[(k, j)]) >= 2 * s + 1
    return ok


def count_erec(n: int, L: int, t: int, s: int, limit: int = ENUMERATION_LIMIT) -> int:
    return sum(int(erec_mask(c, n, L, t, s).sum()) for c in all_strings_chunks(n, limit))


# -- consensus and the striping ball -----------------------------------------

def striping_ball(w: BitString, k: int) -> frozenset:
    """All strings obtained by deleting ``i`` symbols from the left and ``j`` from the right, ``i + j <= k``."""
    if not 0 <= k < len(w):
        raise ValueError(f"need 0 <= k < |w|, got k={k}, |w|={len(w)}")
    return frozenset(w[i:len(w) - j] for i in range(k + 1) for j in range(k + 1 - i))


@dataclass(frozen=True)
class ConsensusView:
    """Per-position agreement of reads placed at given 1-based positions.

    ``symbols[q]`` is the agreed symbol at position ``first + q`` or ``None``
    where the covering reads disagree.
    """

    first: int
    last: int
    symbols: Tuple[Optional[str], ...]

    @property
    def size(self) -> int:
        return self.last - self.first + 1

    @property
    def has_consensus(self) -> bool:
        return None not in self.symbols

    @property
    def value(self) -> Optional[str]:
        return "".join(self.symbols) if self.has_consensus else None

    @property
    def disagreements(self) -> List[int]:
        return [self.first + q for q, c in enumerate(self.symbols) if c is None]


def consensus(placed: Iterable[Tuple[int, BitString]]) -> ConsensusView:
    """Build the consensus view of ``(position, read)`` pairs.

    Positions are expected to cover a contiguous range, which holds whenever
    gaps between consecutive reads are shorter than the read length.
    """
    placed = sorted(placed)
    if not placed:
        raise ValueError("no reads to place")
    L = len(placed[0][1])
    first, last = placed[0][0], placed[-1][0] + L - 1
    seen: List[Optional[str]] = [""] * (last - first + 1)
    for p, r in placed:
        for c, sym in enumerate(r):
            q = p - first + c
            if seen[q] == "":
                seen[q] = sym
            elif seen[q] != sym:
                seen[q] = None
    if "" in seen:
        raise ValueError("reads leave a gap in the covered range")
    return ConsensusView(first, last, tuple(seen))


def w3_oracle(U: Spectrum, t: int) -> Tuple[frozenset, int]:
    """Brute force: consensus strings of the largest agreeing subsets ``V``, ``|V| >= |U| - t``.

    Returns ``(values, size)``; ``values`` is empty when no subset qualifies.
    """
    pos = U.by_position()
    m = len(pos)
    for size in range(m, max(m - t, 1) - 1, -1):
        found = set()
        for keep in itertools.combinations(range(m), size):
            try:
                view = consensus(pos[i] for i in keep)
            except ValueError:
                continue
            if view.has_consensus:
                found.add(view.value)
        if found:
            return frozenset(found), size
    return frozenset(), 0


def w3_oracle_detail(U: Spectrum, t: int) -> List[Tuple[str, int]]:
    """Like :func:`w3_oracle` but returns ``(value, first_position)`` for each maximal subset."""
    pos = U.by_position()
    m = len(pos)
    for size in range(m, max(m - t, 1) - 1, -1):
        found = set()
        for keep in itertools.combinations(range(m), size):
            try:
                view = consensus(pos[i] for i in keep)
            except ValueError:
                continue
            if view.has_consensus:
                found.add((view.value, view.first))
        if found:
            return sorted(found)
    return []


# -- subset search ------------------------------------------------------------

def _segment_options(m: int, alpha: int) -> List[Tuple[Tuple[int, int], int]]:
    """Trim choices ``((left, right), reads_removed)`` for one segment of ``m`` reads.

    Trims that would remove every read collapse to a single ``(-1, -1)`` entry.
    """
    opts = []
    gone = False
    for total in range(alpha + 1):
        for a in range(total + 1):
            b = total - a
            if total >= m:
                gone = True
                continue
            opts.append(((a, b), total))
    opts.sort()
    if gone:
        opts.append(((-1, -1), m))
    return opts


def _trim_tuples(options: Sequence[list], budget: int) -> Iterator[Tuple[Tuple[Tuple[int, int], ...], int]]:
    """All per-segment choices with total removed reads ``<= budget``, lexicographic by tuple."""
    def rec(j, left):
        if j == len(options):
            yield (), 0
            return
        for choice, cost in options[j]:
            if cost <= left:
                for rest, c in rec(j + 1, left - cost):
                    yield (choice,) + rest, cost + c
    yield from rec(0, budget)


def _apply_trims(segments: Sequence[str], trims, L: int) -> List[str]:
    reads = []
    for seg, (a, b) in zip(segments, trims):
        if a < 0:
            continue
        core = seg[a:len(seg) - b]
        reads.extend(core[i:i + L] for i in range(len(core) - L + 1))
    return reads


@dataclass
class ErecSearchState:
    segments: Tuple[str, ...]
    alpha: int
    family_size: int
    tried: int = 0
    rho: Optional[int] = None
    ties: List[str] = field(default_factory=list)

    @property
    def r(self) -> int:
        return len(self.segments)


def erec_search_state(U, t: int) -> ErecSearchState:
    reads, L = _reads(U)
    A0 = stitch(reads, 0, L)
    r = len(A0)
    alpha = t - math.ceil((r - 1) / 2) + 1
    options = [_segment_options(len(y) - L + 1, max(alpha, 0)) for y in A0]
    seen = set()
    for trims, _ in _trim_tuples(options, t):
        seen.add(tuple(sorted(_apply_trims(A0, trims, L))))
    return ErecSearchState(A0, alpha, len(seen))


def reconstruct_erec(U, t: int, s: int, strict: bool = True) -> ReconstructionOutcome:
    """Largest-agreeing-subset reconstruction for a substitution-damaged spectrum.

    Stitches ``U`` along exact ``(L-1)``-overlaps, then tries every way of
    trimming at most ``alpha`` reads from the ends of each chain, in order of
    increasing total trim ``rho``.  The first candidate the lossy decoder
    accepts is returned; other accepted candidates with the same ``rho`` are
    recorded as ties.  With ``strict`` the moderate-``t`` regime is enforced.
    """
    reads, L = _reads(U)
    n = len(reads) + L - 1
    p = ErecParams(n, L, t, s)
    if strict and not p.search_feasible:
        raise ParameterError(
            f"t={t} exceeds log2(n)/log2(log2(n)) = {log_loglog_bound(n):.3f} for n={n}")
    state = erec_search_state(reads, t)
    A0, alpha = state.segments, state.alpha
    if alpha < 0:
        raise ReconstructionError("too-many-segments", {"r": state.r, "t": t})
    options = [_segment_options(len(y) - L + 1, alpha) for y in A0]
    by_rho: Dict[int, list] = {}
    for trims, cost in _trim_tuples(options, t):
        by_rho.setdefault(cost, []).append(trims)
    winner = None
    for rho in range(t + 1):
        tested = set()
        for trims in by_rho.get(rho, ()):
            V = tuple(sorted(_apply_trims(A0, trims, L)))
            if V in tested or not V:
                continue
            tested.add(V)
            state.tried += 1
            try:
                out = reconstruct_lossy(V, t)
            except ReconstructionError:
                continue
            if winner is None:
                winner = (out, trims, V)
                state.rho = rho
            elif out.value != winner[0].value and out.value not in state.ties:
                state.ties.append(out.value)
        if winner is not None:
            break
    if winner is None:
        raise ReconstructionError("no-consensus-subset",
                                  {"r": state.r, "alpha": alpha, "family_size": state.family_size})
    out, trims, V = winner
    details = {
        "r": state.r,
        "alpha": alpha,
        "family_size": state.family_size,
        "rho": state.rho,
        "trims": trims,
        "subset_size": len(V),
        "ties": list(state.ties),
        "candidates_tested": state.tried,
    }
    hi = max(1, min(t + 1, n - len(out.value) + 1))
    return ReconstructionOutcome(out.value, "W3", (1, hi), details)
