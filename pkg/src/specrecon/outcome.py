from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple


class ParameterError(ValueError):
    """Parameters outside the range where a construction or algorithm is defined."""


class ReconstructionError(RuntimeError):
    """A reconstruction algorithm could not produce a value.

    This means the input violated the algorithm's precondition (the string
    was outside the constrained family, or the spectrum had more damage than
    budgeted).  ``reason`` is a short machine-readable tag.
    """

    def __init__(self, reason: str, details: Optional[dict] = None):
        self.reason = reason
        self.details = dict(details or {})
        super().__init__(f"{reason}: {self.details}" if self.details else reason)


class StitchCycleError(ReconstructionError):
    def __init__(self, details: Optional[dict] = None):
        super().__init__("stitch-cycle", details)


@dataclass(frozen=True)
class ReconstructionOutcome:
    """A reconstructed string together with what it is known to represent.

    ``semantics`` names the target: ``"W1"`` (longest substring covered by a
    lossy spectrum), ``"W2"`` (per-position majority) or ``"W3"`` (consensus
    of the largest agreeing read subset).  ``start_bounds`` brackets the
    1-based position in the original string where ``value`` begins.
    """

    value: str
    semantics: str
    start_bounds: Tuple[int, int]
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.semantics not in ("W1", "W2", "W3"):
            raise ValueError(f"unknown semantics {self.semantics!r}")
        lo, hi = self.start_bounds
        if not 1 <= lo <= hi:
            raise ValueError(f"bad start bounds {self.start_bounds}")

    def __str__(self):
        return self.value
