"""Pure numerical building blocks.

Every function here is deterministic, side-effect free and reentrant.
Missing or undefined quantities are reported as ``None`` ("absent"),
never coerced to zero: a wiki with no data is not a wiki at zero risk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Sequence


class EmptyDistributionError(ValueError):
    """All magnitudes were zero (or the input was empty)."""


class EmptyCohortError(ValueError):
    """A percentile was requested against an empty cohort."""


class DegenerateFitError(ValueError):
    """Regression input has fewer than two points or zero x-variance."""


class LogBase(str, Enum):
    NATURAL = "natural"
    TWO = "two"


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Normalized categorical distribution; zero-mass keys are never stored."""

    entries: Mapping[str, float]

    def __post_init__(self) -> None:
        if not self.entries:
            raise EmptyDistributionError("a probability distribution needs support")
        total = 0.0
        for key, p in self.entries.items():
            if not (0.0 < p <= 1.0):
                raise ValueError(f"probability for {key!r} outside (0, 1]: {p}")
            total += p
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "entries", dict(self.entries))

    @property
    def support_size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class EntropyValue:
    """Shannon entropy of a distribution.

    ``nats`` always holds the natural-log entropy; ``base`` records the
    reporting base chosen by the caller (``scaled`` converts).  For any
    distribution 0 <= nats <= ln(support_size).
    """

    nats: float
    support_size: int
    base: LogBase = LogBase.NATURAL

    def __post_init__(self) -> None:
        if self.nats < 0:
            raise ValueError("entropy cannot be negative")
        if self.support_size < 1:
            raise ValueError("entropy needs non-empty support")
        if self.nats > math.log(self.support_size) + 1e-9:
            raise ValueError("entropy exceeds the uniform bound for its support")

    @property
    def scaled(self) -> float:
        """The entropy in the recorded base (bits when base is two)."""
        if self.base is LogBase.TWO:
            return self.nats / math.log(2.0)
        return self.nats


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float
    n_points: int

    def __post_init__(self) -> None:
        if self.n_points < 2:
            raise ValueError("a fit needs at least two points")
        if not (0.0 <= self.r_squared <= 1.0):
            raise ValueError(f"r_squared outside [0, 1]: {self.r_squared}")


@dataclass(frozen=True)
class DemocraticScore:
    """Index-weighted mean over the covered probability mass.

    ``score`` is None when no country of the distribution appears in the
    index (coverage zero); ``coverage`` is the probability mass the
    index could speak for.
    """

    score: Optional[float]
    coverage: float


def normalize(counts: Mapping[str, float]) -> ProbabilityDistribution:
    """Turn non-negative magnitudes into probabilities p_k = m_k / sum(m).

    Zero-magnitude keys are dropped so the stored support is exactly the
    positive-mass keys.  Raises EmptyDistributionError when there is no
    positive mass at all.
    """
    total = 0.0
    for key, magnitude in counts.items():
        if magnitude < 0 or not math.isfinite(magnitude):
            raise ValueError(f"bad magnitude for {key!r}: {magnitude}")
        total += magnitude
    if total <= 0.0:
        raise EmptyDistributionError("all magnitudes are zero")
    entries = {}
    for key, magnitude in counts.items():
        p = magnitude / total
        if p > 0.0:  # a magnitude can underflow to zero mass against a huge total
            entries[key] = p
    return ProbabilityDistribution(entries)


def shannon_entropy(dist: ProbabilityDistribution, base: LogBase = LogBase.NATURAL) -> EntropyValue:
    """Shannon entropy S = -sum(p_k * ln p_k), with 0*ln(0) == 0.

    The zero-mass convention is vacuous here because normalized
    distributions never store zero-mass keys.  Tiny negative rounding
    residue for point masses is clamped to exactly 0.
    """
    s = -sum(p * math.log(p) for p in dist.entries.values())
    if s < 0.0:
        s = 0.0
    return EntropyValue(nats=s, support_size=dist.support_size, base=base)


def ratio(numerator: float, denominator: float) -> Optional[float]:
    """numerator/denominator, or None when the denominator is zero.

    An undefined ratio is missing data, not zero risk.
    """
    if numerator < 0 or denominator < 0:
        raise ValueError("ratio arguments must be non-negative")
    if denominator == 0:
        return None
    return numerator / denominator


def editing_depth(
    edits: float, articles: float, total_pages: float, stub_ratio: float
) -> Optional[float]:
    """Collaboration-intensity proxy for content quality.

    depth = (edits/articles) * ((total_pages - articles)/articles) * (1 - stub_ratio)

    Returns None for a wiki with zero articles.  ``stub_ratio`` must lie
    in [0, 1]; an all-stub wiki has depth zero by construction.
    """
    if articles < 0 or edits < 0:
        raise ValueError("counts must be non-negative")
    if total_pages < articles:
        raise ValueError("total_pages must be >= articles")
    if not 0.0 <= stub_ratio <= 1.0:
        raise ValueError(f"stub_ratio outside [0, 1]: {stub_ratio}")
    if articles == 0:
        return None
    return (edits / articles) * ((total_pages - articles) / articles) * (1.0 - stub_ratio)


def democratic_quality_score(
    dist: ProbabilityDistribution, index: Mapping[str, float]
) -> DemocraticScore:
    """Weight a country distribution by a per-country democratic index.

    Only countries present in both the distribution and the index
    contribute; the weighted mean is renormalized over that covered
    mass so index gaps do not read as zero-quality countries.
    """
    for country, score in index.items():
        if not 0.0 <= score <= 1.0:
            raise ValueError(f"index score for {country!r} outside [0, 1]: {score}")
    covered = [(p, index[c]) for c, p in dist.entries.items() if c in index]
    coverage = sum(p for p, _ in covered)
    if coverage <= 0.0:
        return DemocraticScore(score=None, coverage=0.0)
    weighted = sum(p * d for p, d in covered) / coverage
    return DemocraticScore(score=weighted, coverage=coverage)


def percentile_rank(value: float, cohort: Sequence[float]) -> float:
    """Midrank percentile of ``value`` within ``cohort``, in [0, 1].

    Ties share a rank: the result is the mean of the strictly-below and
    at-or-below counts over the cohort size, so a singleton cohort ranks
    at 0.5 and permuting the cohort changes nothing.
    """
    if not cohort:
        raise EmptyCohortError("percentile rank needs a non-empty cohort")
    below = sum(1 for v in cohort if v < value)
    at_or_below = sum(1 for v in cohort if v <= value)
    return (below + at_or_below) / 2.0 / len(cohort)


def linear_fit(points: Sequence[tuple[float, float]]) -> LinearFit:
    """Ordinary least squares through ``points``.

    slope = cov(x, y) / var(x); intercept = mean(y) - slope * mean(x).
    r_squared is 1 - SS_res/SS_tot, defined as 1.0 when y is constant
    (the fit reproduces it exactly).  Raises DegenerateFitError when all
    x coincide.
    """
    n = len(points)
    if n < 2:
        raise DegenerateFitError("need at least two points")
    mean_x = sum(x for x, _ in points) / n
    mean_y = sum(y for _, y in points) / n
    var_x = sum((x - mean_x) ** 2 for x, _ in points)
    if var_x == 0.0:
        raise DegenerateFitError("zero variance in x")
    cov_xy = sum((x - mean_x) * (y - mean_y) for x, y in points)
    slope = cov_xy / var_x
    intercept = mean_y - slope * mean_x
    ss_tot = sum((y - mean_y) ** 2 for _, y in points)
    if ss_tot == 0.0:
        r_squared = 1.0
    else:
        ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in points)
        r_squared = 1.0 - ss_res / ss_tot
    r_squared = min(1.0, max(0.0, r_squared))
    return LinearFit(slope=slope, intercept=intercept, r_squared=r_squared, n_points=n)
