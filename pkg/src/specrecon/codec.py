"""One-redundancy-bit encoder into (L, d)-substring distant strings, and its decoder.

Encoding appends a marker to the message, then repeatedly cuts out a window
that is too close to another window (or to the marker's tail), prepending a
short header that lets the decoder put it back.  If the result is shorter
than the target length it is extended block by block with fresh blocks far
from everything already present.  Decoding finds the marker, drops whatever
the extension added, and replays the headers in order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from .enumeration import ENUMERATION_LIMIT, all_strings_chunks, check_limit, min_window_distance
from .lossy import ceil_log2
from .outcome import ParameterError
from .strings import BitString, as_bits, close_window_pairs, hamming_distance, is_substring_distant


class CodecError(ValueError):
    """The input to the decoder is not a codeword under the given parameters."""


# -- building blocks -------------------------------------------------------------

def is_auto_cyclic(u: BitString, d: int) -> bool:
    """True iff ``u`` differs in at least ``d`` places from each of its first ``d`` zero-filled right shifts."""
    if len(u) < d:
        raise ValueError(f"need |u| >= d, got |u|={len(u)}, d={d}")
    return all(hamming_distance(u, "0" * i + u[:len(u) - i]) >= d for i in range(1, d + 1))


def auto_cyclic_length_bound(d: int) -> int:
    return d * ceil_log2(d) + 2 * d


@lru_cache(maxsize=None)
def find_auto_cyclic(d: int) -> BitString:
    """Lexicographically smallest shortest ``d``-auto-cyclic string."""
    if d < 1:
        raise ValueError("d must be >= 1")
    for length in range(d, auto_cyclic_length_bound(d) + 1):
        for bits in itertools.product("01", repeat=length):
            u = "".join(bits)
            if is_auto_cyclic(u, d):
                return u
    raise RuntimeError(f"no {d}-auto-cyclic string within the length bound")


def index_width(size: int) -> int:
    """Bits needed for the values ``0..size``."""
    return max(1, ceil_log2(size + 1))


def enc_dist(w: BitString, w2: BitString, rho: int, width: Optional[int] = None) -> BitString:
    """List the 1-based positions where ``w`` and ``w2`` differ in ``rho`` fixed-width blocks.

    Unused blocks are all zero, which is unambiguous because positions
    start at 1.
    """
    if len(w) != len(w2):
        raise ValueError("length mismatch")
    width = index_width(len(w)) if width is None else width
    diff = [p + 1 for p, (a, b) in enumerate(zip(w, w2)) if a != b]
    if len(diff) > rho:
        raise ValueError(f"distance {len(diff)} exceeds {rho}")
    blocks = [format(p, f"0{width}b") for p in diff] + ["0" * width] * (rho - len(diff))
    return "".join(blocks)


def dec_dist_positions(code: BitString, rho: int, width: int, length: int) -> List[int]:
    if len(code) != rho * width:
        raise CodecError(f"distance code has length {len(code)}, expected {rho * width}")
    out = []
    for b in range(rho):
        p = int(code[b * width:(b + 1) * width], 2) if width else 0
        if p:
            if p > length:
                raise CodecError(f"encoded position {p} exceeds window length {length}")
            out.append(p - 1)
    return out


def dec_dist(w: BitString, code: BitString, rho: int, width: Optional[int] = None) -> BitString:
    width = index_width(len(w)) if width is None else width
    chars = list(w)
    for p in dec_dist_positions(code, rho, width, len(w)):
        chars[p] = "1" if chars[p] == "0" else "0"
    return "".join(chars)


def in_concat_ball(w: BitString, y: BitString, t: int) -> bool:
    """Membership of ``y`` in the radius-``t`` concatenation ball around ``w``.

    ``y`` is cut into ``|w|``-blocks; block 1 is compared with ``w`` and each
    later block with the block before it (the last block only on its visible
    part).  The hop distances must sum to at most ``t``, which is the same
    as ``d_H(Pref_|y|(w + y), y) <= t``.
    """
    k = len(w)
    if k == 0:
        raise ValueError("w must be nonempty")
    prev, total = w, 0
    for start in range(0, len(y), k):
        block = y[start:start + k]
        total += hamming_distance(block, prev[:len(block)])
        if total > t:
            return False
        prev = block
    return True


# -- parameters ------------------------------------------------------------------

@dataclass(frozen=True)
class CodecParams:
    n: int
    d: int
    c: int = 0

    def __post_init__(self):
        if self.d < 1 or self.c < 0 or self.n < 4:
            raise ParameterError("need n >= 4, d >= 1, c >= 0")
        if self.ell - len(self.marker_core) < self.d + 1:
            raise ParameterError("block length too small for the marker")
        if self.L > self.n:
            raise ParameterError(f"window length {self.L} exceeds n={self.n}")

    @property
    def lg(self) -> int:
        return ceil_log2(self.n)

    @property
    def ell(self) -> int:
        return self.lg + (self.d - 1) * ceil_log2(self.lg) + 2 + self.c

    @property
    def L(self) -> int:
        return 2 * self.ell

    @property
    def marker_core(self) -> BitString:
        return find_auto_cyclic(self.d)

    @property
    def pattern(self) -> BitString:
        u = self.marker_core
        return "0" * (self.ell - len(u)) + u

    @property
    def marker(self) -> BitString:
        return "0" + "1" * self.d + self.pattern

    @property
    def message_len(self) -> int:
        return self.n - 1

    @property
    def full_len(self) -> int:
        """Length of the pre-elimination string: message plus marker."""
        return self.n - 1 + len(self.marker)

    # header field widths
    @property
    def w_index(self) -> int:
        return self.lg

    @property
    def w_dist_L(self) -> int:
        return index_width(self.L)

    @property
    def w_dist_ell(self) -> int:
        return index_width(self.ell)

    @property
    def w_off1(self) -> int:
        return index_width(self.ell + self.d)

    def w_rel1(self, off: int) -> int:
        return ceil_log2(self.ell + self.d - off + 1)

    @property
    def w_off2(self) -> int:
        return index_width(len(self.marker_core) + self.d)

    def shrink_margins(self) -> dict:
        """Removed length minus header length for every header kind (worst case); all must be positive."""
        d1 = self.d - 1
        m = {
            "101": self.L - (3 + 2 * self.w_index + d1 * self.w_dist_L),
            "0": self.ell - (1 + self.w_index + d1 * self.w_dist_ell),
        }
        m["100"] = min(self.L - off - (3 + self.w_off1 + self.w_rel1(off) + d1 * self.w_dist_L)
                       for off in range(self.ell + self.d + 1))
        m["11"] = min(self.ell - off - (2 + self.w_off2 + d1 * self.w_dist_ell)
                      for off in range(len(self.marker_core) + self.d + 1))
        return m

    @property
    def shrinks(self) -> bool:
        return all(v > 0 for v in self.shrink_margins().values())

    @classmethod
    def auto(cls, n: int, d: int, max_c: int = 16) -> "CodecParams":
        """Smallest slack ``c`` for which every elimination step provably shrinks the string."""
        for c in range(max_c + 1):
            try:
                p = cls(n, d, c)
            except ParameterError:
                continue
            if p.shrinks:
                return p
        raise ParameterError(f"no slack up to {max_c} makes elimination shrink for n={n}, d={d}")


# -- encoder -----------------------------------------------------------------------

def _bin(v: int, width: int) -> str:
    if v < 0 or (width < v.bit_length()):
        raise AssertionError(f"value {v} does not fit in {width} bits")
    return format(v, f"0{width}b") if width else ""


def _find_case2(x: str, p: CodecParams) -> Optional[int]:
    """Smallest 1-based ``i <= |x| - 2ell + |u|`` whose ell-window is within ``d - 1`` of the pattern."""
    ell, d = p.ell, p.d
    top = len(x) - 2 * ell + len(p.marker_core)
    if top < 1:
        return None
    pat = int(p.pattern, 2)
    for i in range(top):
        if (int(x[i:i + ell], 2) ^ pat).bit_count() < d:
            return i + 1
    return None


def _eliminate_step(x: str, p: CodecParams) -> Optional[str]:
    """One elimination step, or ``None`` if ``x`` is already clean."""
    m, L, ell, d = len(x), p.L, p.ell, p.d
    P = m - ell - d                       # 1-based start of the marker
    pairs = close_window_pairs(x, L, d, first_only=True)
    if pairs:
        i, j = pairs[0]
        dist = enc_dist(x[i - 1:i - 1 + L], x[j - 1:j - 1 + L], d - 1, p.w_dist_L)
        if i < m - L - ell - d:
            header = "101" + _bin(i - 1, p.w_index) + _bin(j - 1, p.w_index) + dist
            R = L
        else:
            off = i - (m - L - ell - d)
            header = "100" + _bin(off, p.w_off1) + _bin(j - i - 1, p.w_rel1(off)) + dist
            R = P - i
    else:
        i = _find_case2(x, p)
        if i is None:
            return None
        dist = enc_dist(x[i - 1:i - 1 + ell], p.pattern, d - 1, p.w_dist_ell)
        if i < m - 2 * ell - d:
            header = "0" + _bin(i - 1, p.w_index) + dist
            R = ell
        else:
            header = "11" + _bin(i - (m - 2 * ell - d), p.w_off2) + dist
            R = P - i
    if not len(header) < R:
        raise ParameterError(
            f"elimination step would not shrink (header {len(header)} >= removed {R}); use a larger slack c")
    return header + x[:i - 1] + x[i - 1 + R:]


def _check_marker_isolated(x: str, p: CodecParams):
    pat = int(p.pattern, 2)
    for i in range(len(x) - p.ell):
        if (int(x[i:i + p.ell], 2) ^ pat).bit_count() < p.d:
            raise AssertionError(f"window at {i + 1} is close to the marker tail after elimination")


def eliminate(w: BitString, p: CodecParams) -> str:
    x = w + p.marker
    while True:
        nxt = _eliminate_step(x, p)
        if nxt is None:
            break
        if not len(nxt) < len(x):
            raise ParameterError("elimination did not shrink; use a larger slack c")
        x = nxt
    if not x.endswith(p.marker):
        raise AssertionError("marker damaged during elimination")
    _check_marker_isolated(x, p)
    return x


class _Extender:
    """Picks extension blocks; the ban on blocks near existing windows is kept incrementally."""

    def __init__(self, x: str, p: CodecParams):
        self.p = p
        self.allowed = np.ones(1 << p.ell, dtype=bool)
        self.masks = np.array([sum(1 << b for b in flips)
                               for r in range(p.d) for flips in itertools.combinations(range(p.ell), r)],
                              dtype=np.int64)
        self.x = ""
        self.seen = 0
        self.extend(x)

    def extend(self, chunk: str):
        self.x += chunk
        ell = self.p.ell
        top = len(self.x) - ell + 1
        if top > self.seen:
            wins = np.array([int(self.x[i:i + ell], 2) for i in range(self.seen, top)], dtype=np.int64)
            self.allowed[(wins[:, None] ^ self.masks[None, :]).ravel()] = False
            self.seen = top

    def _junction_ok(self, y: str) -> bool:
        # ell-windows that start inside x and end inside y
        ell, d, x = self.p.ell, self.p.d, self.x
        for k in range(1, ell):
            if hamming_distance(x[len(x) - k:] + y[:ell - k], y) < d:
                return False
        return True

    def pick(self) -> str:
        """Smallest block ``y`` such that every ell-window of ``x + y`` before ``y`` is at distance >= d from ``y``."""
        ell = self.p.ell
        for v in np.flatnonzero(self.allowed):
            y = format(int(v), f"0{ell}b")
            if self._junction_ok(y):
                return y
        raise RuntimeError("no admissible extension block exists")


def ld_encode(w: BitString, p: CodecParams, verify: bool = False) -> BitString:
    """Encode ``n - 1`` message bits into an ``(L, d)``-substring distant string of length ``n``."""
    as_bits(w)
    if len(w) != p.message_len:
        raise ValueError(f"message must have length {p.message_len}, got {len(w)}")
    x = eliminate(w, p)
    if len(x) >= p.n:
        return x[:p.n]
    ext = _Extender(x, p)
    while len(x) < p.n:
        y = ext.pick()
        x += y
        ext.extend(y)
        if verify and not is_substring_distant(x, p.L, p.d):
            raise AssertionError("extension broke substring distance")
    return x[:p.n]


# -- decoder -----------------------------------------------------------------------

def _restore(rest: str, i: int, R: int, j: int, diff: List[int]) -> str:
    """Reinsert ``R`` symbols at 1-based ``i`` so that ``x[i+k] = x[j+k] xor [k in diff]``."""
    out: List[Optional[str]] = list(rest[:i - 1]) + [None] * R + list(rest[i - 1:])
    flips = set(diff)
    for k in range(R - 1, -1, -1):
        src = out[j - 1 + k] if j - 1 + k < len(out) else None
        if src is None:
            raise CodecError("reinsertion reads an unknown symbol")
        out[i - 1 + k] = src if k not in flips else ("1" if src == "0" else "0")
    return "".join(out)


def _take(s: str, pos: int, width: int) -> Tuple[int, int]:
    if pos + width > len(s):
        raise CodecError("header runs past the end of the string")
    return (int(s[pos:pos + width], 2) if width else 0), pos + width


def _undo_step(x: str, p: CodecParams) -> str:
    L, ell, d, M = p.L, p.ell, p.d, len(p.marker)
    if x.startswith("101"):
        i, q = _take(x, 3, p.w_index)
        j, q = _take(x, q, p.w_index)
        diff = dec_dist_positions(x[q:q + (d - 1) * p.w_dist_L], d - 1, p.w_dist_L, L)
        rest = x[q + (d - 1) * p.w_dist_L:]
        i, j, R = i + 1, j + 1, L
        m = len(rest) + R
        if not (1 <= i < m - L - ell - d and i < j <= m - L + 1):
            raise CodecError(f"header indices out of range: i={i}, j={j}, length {m}")
    elif x.startswith("100"):
        off, q = _take(x, 3, p.w_off1)
        if off > ell + d:
            raise CodecError(f"offset {off} out of range")
        rel, q = _take(x, q, p.w_rel1(off))
        diff = dec_dist_positions(x[q:q + (d - 1) * p.w_dist_L], d - 1, p.w_dist_L, L)
        rest = x[q + (d - 1) * p.w_dist_L:]
        R = L - off
        i = len(rest) - M + 1
        j = i + 1 + rel
        m = len(rest) + R
        if i < 1 or j > m - L + 1:
            raise CodecError("header indices out of range")
    elif x.startswith("0"):
        i, q = _take(x, 1, p.w_index)
        code = x[q:q + (d - 1) * p.w_dist_ell]
        rest = x[q + (d - 1) * p.w_dist_ell:]
        i += 1
        m = len(rest) + ell
        if not 1 <= i < m - 2 * ell - d:
            raise CodecError(f"header index {i} out of range")
        block = dec_dist(p.pattern, code, d - 1, p.w_dist_ell)
        return rest[:i - 1] + block + rest[i - 1:]
    elif x.startswith("11"):
        off, q = _take(x, 2, p.w_off2)
        if off > len(p.marker_core) + d:
            raise CodecError(f"offset {off} out of range")
        code = x[q:q + (d - 1) * p.w_dist_ell]
        rest = x[q + (d - 1) * p.w_dist_ell:]
        R = ell - off
        i = len(rest) - M + 1
        if i < 1:
            raise CodecError("header index out of range")
        block = dec_dist(p.pattern, code, d - 1, p.w_dist_ell)
        return rest[:i - 1] + block[:R] + rest[i - 1:]
    else:
        raise CodecError("malformed header tag")
    if not rest.endswith(p.marker):
        raise CodecError("marker missing after header")
    return _restore(rest, i, R, j, diff)


def _replay(x: str, p: CodecParams) -> str:
    target = p.full_len
    while len(x) < target:
        if not x.endswith(p.marker):
            raise CodecError("marker missing during replay")
        y = _undo_step(x, p)
        if not len(y) > len(x):
            raise CodecError("header did not lengthen the string")
        x = y
    if len(x) != target or not x.endswith(p.marker):
        raise CodecError(f"replay ended at length {len(x)}, expected {target}")
    return x[:p.message_len]


def ld_decode(x: BitString, p: CodecParams) -> BitString:
    """Invert :func:`ld_encode`.

    With the whole marker present the string is cut right after its leftmost
    occurrence.  Otherwise the ways of completing a marker prefix at the end
    of ``x`` are tried from the shortest up, and the first whose replayed
    message re-encodes to ``x`` is returned.  With
    the marker cut short the encoder is not injective (two messages whose
    eliminations differ in length can share a codeword), so the shortest
    completion wins: it belongs to the message that lost the fewest symbols,
    which is by far the common case.
    """
    as_bits(x)
    if len(x) != p.n:
        raise CodecError(f"codeword must have length {p.n}, got {len(x)}")
    v = p.marker
    pos = x.find(v)
    if pos >= 0:
        return _replay(x[:pos + len(v)], p)
    for k in range(1, len(v)):
        if not x.endswith(v[:k]):
            continue
        try:
            w = _replay(x[:len(x) - k] + v, p)
        except CodecError:
            continue
        if ld_encode(w, p) == x:
            return w
    raise CodecError("no marker completion decodes to a preimage of the input")


def decode_candidates(x: BitString, p: CodecParams) -> List[BitString]:
    """Every message whose encoding is ``x`` among the marker-completion candidates."""
    v = p.marker
    out = []
    for k in range(len(v), 0, -1):
        if k == len(v):
            pos = x.find(v)
            if pos < 0:
                continue
            base = x[:pos + len(v)]
        elif x.endswith(v[:k]):
            base = x[:len(x) - k] + v
        else:
            continue
        try:
            w = _replay(base, p)
        except CodecError:
            continue
        if w not in out and ld_encode(w, p) == x:
            out.append(w)
    return out


# -- counting ------------------------------------------------------------------------

def count_distant(n: int, L: int, d: int, limit: int = ENUMERATION_LIMIT) -> int:
    """Exhaustive number of length-``n`` strings that are ``(L, d)``-substring distant."""
    if not 1 <= L <= n:
        raise ValueError(f"need 1 <= L <= n, got L={L}, n={n}")
    if L == n:
        check_limit(n, limit)
        return 1 << n  # a single window is vacuously distant
    return sum(int((min_window_distance(c, n, L) >= d).sum()) for c in all_strings_chunks(n, limit))


def distance_histogram(n: int, L: int, limit: int = ENUMERATION_LIMIT) -> np.ndarray:
    """``h[k]`` = number of strings whose minimum window distance is ``k`` (index ``L+1`` = single window)."""
    h = np.zeros(L + 2, dtype=np.int64)
    for c in all_strings_chunks(n, limit):
        h += np.bincount(min_window_distance(c, n, L), minlength=L + 2)
    return h
