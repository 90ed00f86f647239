"""Read-count estimates, coverage Monte-Carlo, rate sweeps and cardinality bound checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .codec import distance_histogram
from .enumeration import ENUMERATION_LIMIT
from .lossy import LrecParams, count_lrec
from .outcome import ParameterError


@dataclass(frozen=True)
class ReadCountSpec:
    n: int
    L: int
    eps: float
    t: int = 0

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ParameterError(f"failure budget must lie in (0, 1), got {self.eps}")
        if self.t < 0 or not 1 <= self.L <= self.n:
            raise ParameterError("need t >= 0 and 1 <= L <= n")

    @property
    def C(self) -> float:
        return required_reads(self.n, self.eps, self.t)[0]

    @property
    def M(self) -> int:
        return required_reads(self.n, self.eps, self.t)[1]


def required_reads(n: int, eps: float, t: int = 0) -> Tuple[float, int]:
    """Coverage factor ``C = ln n + ln(1/eps)/(t+1)`` (natural logs) and read count ``M = ceil(C n)``."""
    if not 0 < eps < 1:
        raise ParameterError(f"failure budget must lie in (0, 1), got {eps}")
    if n < 1 or t < 0:
        raise ParameterError("need n >= 1 and t >= 0")
    C = math.log(n) + math.log(1 / eps) / (t + 1)
    return C, math.ceil(C * n)


def monte_carlo_coverage(n: int, L: int, M: int, t: int, trials: int, seed: int = 0) -> float:
    """Fraction of trials where more than ``t`` window positions are never drawn among ``M`` uniform reads."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    m = n - L + 1
    if m < 1:
        raise ValueError("L exceeds n")
    rng = np.random.default_rng(seed)
    fails = 0
    for _ in range(trials):
        if M == 0:
            missed = m
        else:
            hit = np.zeros(m, dtype=bool)
            hit[rng.integers(0, m, size=M)] = True
            missed = m - int(hit.sum())
        fails += missed > t
    return fails / trials


def monte_carlo_threshold(eps: float, trials: int, sigmas: float = 3.0) -> float:
    return eps + sigmas * math.sqrt(eps * (1 - eps) / trials)


@dataclass(frozen=True)
class RateSweepConfig:
    """Schedules ``t = ceil(b log2 n)`` and ``L = ceil(a log2 n) + floor(t/3) + 1``."""

    a: float
    b: float
    ns: Sequence[int] = tuple(range(10, 19))
    distances: Sequence[int] = (1, 2)
    limit: int = ENUMERATION_LIMIT

    def __post_init__(self):
        if not self.b < 3:
            raise ParameterError("need b < 3")
        if not self.a > 1 + self.b / 3:
            raise ParameterError("need a > 1 + b/3")

    def schedule(self, n: int) -> Tuple[int, int]:
        t = math.ceil(self.b * math.log2(n))
        L = math.ceil(self.a * math.log2(n)) + t // 3 + 1
        return L, t


@dataclass
class RateRow:
    n: int
    L: int
    t: int
    lrec_count: Optional[int]
    distant_counts: dict
    vacuous: bool = False

    def rate(self, count: Optional[int]) -> Optional[float]:
        if count is None or count == 0:
            return None
        return math.log2(count) / self.n

    def as_dict(self) -> dict:
        return {
            "n": self.n, "L": self.L, "t": self.t, "vacuous": self.vacuous,
            "lrec_count": self.lrec_count, "lrec_rate": self.rate(self.lrec_count),
            "distant": {str(d): {"count": c, "rate": self.rate(c)} for d, c in self.distant_counts.items()},
        }


@dataclass
class RateSweepReport:
    rows: List[RateRow] = field(default_factory=list)
    notices: List[str] = field(default_factory=list)

    def trend(self, key: str = "lrec") -> Optional[bool]:
        """Whether the rates in the sweep are non-decreasing; informational only."""
        if key == "lrec":
            rates = [r.rate(r.lrec_count) for r in self.rows]
        else:
            rates = [r.rate(r.distant_counts.get(int(key))) for r in self.rows]
        rates = [x for x in rates if x is not None]
        if len(rates) < 2:
            return None
        return all(b >= a - 1e-12 for a, b in zip(rates, rates[1:]))


def rate_sweep(config: RateSweepConfig) -> RateSweepReport:
    """Exhaustive family sizes along the ``(L, t)`` schedule.

    Rows with ``L > n`` are vacuous: every string qualifies.  Rows beyond the
    enumeration limit are skipped with a notice, as are lossy counts whose
    parameters are not admissible.
    """
    rep = RateSweepReport()
    for n in config.ns:
        L, t = config.schedule(n)
        if n > config.limit:
            rep.notices.append(f"n={n} skipped: above the enumeration limit {config.limit}")
            continue
        if L > n:
            rep.rows.append(RateRow(n, L, t, 2 ** n, {d: 2 ** n for d in config.distances}, vacuous=True))
            continue
        lrec = count_lrec(n, L, t, config.limit) if LrecParams.admissible(n, L, t) else None
        if lrec is None:
            rep.notices.append(f"n={n}: (L={L}, t={t}) not admissible for the lossy family")
        hist = distance_histogram(n, L, config.limit)
        dist = {d: int(hist[d:].sum()) for d in config.distances}
        rep.rows.append(RateRow(n, L, t, lrec, dist))
    return rep


def union_bound(n: int, L: int, d: int) -> int:
    """Upper bound ``n^2 2^(n-L) L^(d-1)`` on the strings that are not ``(L, d)``-substring distant."""
    return n * n * 2 ** (n - L) * L ** (d - 1)


@dataclass
class BoundRow:
    n: int
    L: int
    d: int
    distant: int
    bad: int
    bound: int

    @property
    def bound_holds(self) -> bool:
        return self.bad <= self.bound

    @property
    def half_applies(self) -> bool:
        return self.bound <= 2 ** (self.n - 1)

    @property
    def half_holds(self) -> bool:
        return self.distant >= 2 ** (self.n - 1)


def cardinality_rows(n: int, limit: int = ENUMERATION_LIMIT) -> List[BoundRow]:
    """Exact distant-string counts for every ``(L, d)`` with ``1 <= d <= L <= n``."""
    rows = []
    for L in range(1, n + 1):
        hist = distance_histogram(n, L, limit)
        for d in range(1, L + 1):
            distant = int(hist[d:].sum())
            rows.append(BoundRow(n, L, d, distant, 2 ** n - distant, union_bound(n, L, d)))
    return rows


def min_admissible_length(n: int, t: int) -> int:
    """Smallest ``L`` for which ``t`` losses are admissible at length ``n``."""
    for L in range(1, n + 1):
        if LrecParams.admissible(n, L, t):
            return L
    raise ParameterError(f"no admissible L for n={n}, t={t}")

