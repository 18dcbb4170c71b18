"""Privacy-bucket handling for per-country editor counts.

Upstream publishes small per-country editor counts as ranges ("100..999")
to protect contributors.  We collapse a range to the geometric mean of
its bounds - the multiplicative midpoint, which suits the roughly
log-spaced buckets - and keep the bounds so analyses can re-run against
either extreme.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import ParseError

_EXACT_RE = re.compile(r"^\d+$")
_RANGE_RE = re.compile(r"^(\d+)\.\.(\d+)$")


@dataclass(frozen=True)
class BucketedCount:
    raw_label: str
    estimate: float
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not self.lo <= self.estimate <= self.hi:
            raise ValueError(f"estimate {self.estimate} outside [{self.lo}, {self.hi}]")


def bucket_estimate(raw_label: str) -> BucketedCount:
    """Parse "n" or "lo..hi" into a point estimate.

    Exact labels pass through; ranges (which require 1 <= lo <= hi)
    become sqrt(lo*hi).
    """
    label = raw_label.strip()
    if _EXACT_RE.match(label):
        value = int(label)
        return BucketedCount(raw_label=label, estimate=float(value), lo=value, hi=value)
    m = _RANGE_RE.match(label)
    if not m:
        raise ParseError(f"malformed bucket label: {raw_label!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo < 1:
        raise ParseError(f"bucket lower bound must be >= 1: {raw_label!r}")
    if lo > hi:
        raise ParseError(f"bucket bounds out of order: {raw_label!r}")
    return BucketedCount(raw_label=label, estimate=math.sqrt(lo * hi), lo=lo, hi=hi)
