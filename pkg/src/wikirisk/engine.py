"""Risk engine: indicators, cross-wiki percentiles, category scores, scatter.

Scores are rank-based: each indicator value becomes a midrank percentile
within the observed cohort, oriented by the indicator's risk polarity,
and a category's score is the arithmetic mean of its available
indicators' risk percentiles.  Raw values stay attached so nothing is
hidden behind the composite.  Everything here is pure; identical inputs
produce identical (byte-identical, once canonicalized) outputs.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

from . import canonical, metrics
from .metrics import EmptyCohortError, EmptyDistributionError, LinearFit, LogBase
from .model import (
    CategoryRiskScore,
    IndicatorDefinition,
    IndicatorValue,
    MonthRange,
    Provenance,
    RiskCategory,
    RiskPolarity,
    Subject,
    ValueKind,
    WikiId,
    WikiSnapshot,
    format_timestamp,
    taxonomy,
)
from .ingestion.mediawiki import ELEVATED_GROUPS

MATRIX_METHOD_VERSION = 1
DEFAULT_MIN_ARTICLES = 500_000


class KindMismatchError(ValueError):
    """Snapshot data shape contradicts the indicator's declared value kind."""


class InsufficientDataError(ValueError):
    """Fewer qualifying wikis than the operation needs."""


@dataclass(frozen=True)
class ScatterPoint:
    """One wiki in the edit/view geographic-diversity plane."""

    wiki: str
    edit_entropy: float
    view_entropy: float
    articles: int

    def __post_init__(self) -> None:
        if self.edit_entropy < 0 or self.view_entropy < 0:
            raise ValueError("entropies are non-negative")


@dataclass(frozen=True)
class ScatterResult:
    points: tuple[ScatterPoint, ...]
    fit: LinearFit
    min_articles: int
    window: MonthRange
    computed_at: dt.datetime


@dataclass(frozen=True)
class RiskMatrix:
    """wikis x 8 taxonomy leaves; absent cells stay None, never zero."""

    window: MonthRange
    cohort: tuple[str, ...]
    cells: Mapping[str, Mapping[RiskCategory, Optional[CategoryRiskScore]]]
    computed_at: dt.datetime
    method_version: int = MATRIX_METHOD_VERSION

    def __post_init__(self) -> None:
        for wiki, row in self.cells.items():
            for category, cell in row.items():
                if cell is not None and cell.cohort != self.cohort:
                    raise ValueError(f"cell cohort for {wiki}/{category.value} differs from matrix cohort")


@dataclass
class EngineContext:
    """Cross-snapshot inputs an indicator computation may need."""

    democracy_index: Optional[Mapping[str, float]] = None
    entropy_base: LogBase = LogBase.NATURAL
    elevated_groups: Sequence[str] = field(default_factory=lambda: list(ELEVATED_GROUPS))


def _sum_distributions(snapshot: WikiSnapshot, subject: Subject) -> Optional[dict[str, float]]:
    """Country-wise sum of every distribution of ``subject`` across the window months."""
    dists = snapshot.distributions_for(subject)
    if not dists:
        return None
    totals: dict[str, float] = {}
    for dist in dists:
        for country, magnitude in dist.entries.items():
            totals[country] = totals.get(country, 0.0) + magnitude
    return totals


def _entropy_of(counts: Optional[Mapping[str, float]], ctx: EngineContext):
    if counts is None:
        return None
    try:
        dist = metrics.normalize(counts)
    except EmptyDistributionError:
        return None
    entropy = metrics.shannon_entropy(dist, base=ctx.entropy_base)
    return entropy.nats, {"support_size": float(entropy.support_size)}


def _provider_value(snapshot: WikiSnapshot, provider: str, key: str) -> Optional[float]:
    table = snapshot.external_scores.get(provider)
    if table is None or key not in table:
        return None
    return float(table[key])


def _democracy_score(snapshot: WikiSnapshot, subject: Subject, ctx: EngineContext):
    if ctx.democracy_index is None:
        return None
    counts = _sum_distributions(snapshot, subject)
    if counts is None:
        return None
    try:
        dist = metrics.normalize(counts)
    except EmptyDistributionError:
        return None
    result = metrics.democratic_quality_score(dist, ctx.democracy_index)
    if result.score is None:
        return None
    return result.score, {"coverage": result.coverage}


def _elevated_total(snapshot: WikiSnapshot, ctx: EngineContext) -> Optional[float]:
    if snapshot.group_counts is None:
        return None
    return float(sum(snapshot.group_counts.get(g, 0) for g in ctx.elevated_groups))


def _compute_articles(s: WikiSnapshot, ctx: EngineContext):
    return float(s.site_stats.articles)


def _compute_editors(s: WikiSnapshot, ctx: EngineContext):
    return float(s.site_stats.editors)


def _compute_active_editors(s: WikiSnapshot, ctx: EngineContext):
    return float(s.site_stats.active_editors)


def _compute_elevated(s: WikiSnapshot, ctx: EngineContext):
    return _elevated_total(s, ctx)


def _compute_active_elevated_ratio(s: WikiSnapshot, ctx: EngineContext):
    elevated = _elevated_total(s, ctx)
    if elevated is None:
        return None
    return metrics.ratio(elevated, s.site_stats.active_editors)


def _compute_abusefilter_rules(s: WikiSnapshot, ctx: EngineContext):
    g = s.governance_stats
    if g is None or g.abusefilter_rules is None:
        return None
    return float(g.abusefilter_rules)


def _compute_blocked_ratio(s: WikiSnapshot, ctx: EngineContext):
    g = s.governance_stats
    if g is None or g.blocked_accounts is None or g.total_accounts is None:
        return None
    return metrics.ratio(g.blocked_accounts, g.total_accounts)


def _compute_deletion_ratio(s: WikiSnapshot, ctx: EngineContext):
    g = s.governance_stats
    if g is None or g.deletion_requests is None:
        return None
    return metrics.ratio(g.deletion_requests, s.site_stats.articles)


def _compute_steward_requests(s: WikiSnapshot, ctx: EngineContext):
    g = s.governance_stats
    if g is None or g.steward_requests is None:
        return None
    return float(g.steward_requests)


def _compute_stub_ratio(s: WikiSnapshot, ctx: EngineContext):
    if s.site_stats.stub_articles is None:
        return None
    return metrics.ratio(s.site_stats.stub_articles, s.site_stats.articles)


def _compute_editing_depth(s: WikiSnapshot, ctx: EngineContext):
    stats = s.site_stats
    # Missing stub tracking degrades to an uncorrected depth, not an absent one.
    stub_ratio = 0.0
    if stats.stub_articles is not None and stats.articles > 0:
        stub_ratio = min(1.0, stats.stub_articles / stats.articles)
    return metrics.editing_depth(stats.edits, stats.articles, stats.total_pages, stub_ratio)


_COMPUTE: dict[str, Callable[[WikiSnapshot, EngineContext], object]] = {
    "articles_count": _compute_articles,
    "editors_count": _compute_editors,
    "active_editors_count": _compute_active_editors,
    "elevated_rights_editors": _compute_elevated,
    "active_elevated_ratio": _compute_active_elevated_ratio,
    "abusefilter_rules": _compute_abusefilter_rules,
    "patrolling_tools": lambda s, ctx: _provider_value(s, "curated", "patrolling_tools"),
    "blocked_account_ratio": _compute_blocked_ratio,
    "deletion_request_ratio": _compute_deletion_ratio,
    "steward_requests": _compute_steward_requests,
    "stewards_with_language": lambda s, ctx: _provider_value(s, "curated", "stewards_with_language"),
    "edits_by_country_entropy": lambda s, ctx: _entropy_of(_sum_distributions(s, Subject.EDITS), ctx),
    "views_by_country_entropy": lambda s, ctx: _entropy_of(_sum_distributions(s, Subject.VIEWS), ctx),
    "active_editors_by_country_entropy": lambda s, ctx: _entropy_of(
        _sum_distributions(s, Subject.ACTIVE_EDITORS), ctx
    ),
    "source_reliability_score": lambda s, ctx: _provider_value(s, "source_reliability", "mean_reliability"),
    "stub_ratio": _compute_stub_ratio,
    "editing_depth": _compute_editing_depth,
    "article_quality_score": lambda s, ctx: _provider_value(s, "quality_model", "mean_quality"),
    "controversiality_score": lambda s, ctx: _provider_value(s, "controversiality", "mean_controversiality"),
    "media_referral_entropy": lambda s, ctx: _entropy_of(
        dict(s.external_scores.get("media_referrals", {})) or None, ctx
    ),
    "democracy_weighted_views": lambda s, ctx: _democracy_score(s, Subject.VIEWS, ctx),
    "democracy_weighted_edits": lambda s, ctx: _democracy_score(s, Subject.EDITS, ctx),
}


def compute_indicator(
    defn: IndicatorDefinition,
    snapshot: WikiSnapshot,
    ctx: Optional[EngineContext] = None,
) -> Optional[IndicatorValue]:
    """Compute one indicator for one snapshot; None when inputs are missing."""
    ctx = ctx or EngineContext()
    if defn.id not in _COMPUTE:
        raise KeyError(f"no computation registered for indicator {defn.id!r}")
    for source in defn.required_sources:
        if not snapshot.has_source(source):
            return None
    raw = _COMPUTE[defn.id](snapshot, ctx)
    if raw is None:
        return None
    detail: Mapping[str, float] = {}
    if isinstance(raw, tuple):
        value, detail = raw
    else:
        value = raw
    provenance = Provenance(
        snapshots=(snapshot.snapshot_id,),
        method_version=defn.method_version,
        computed_at=snapshot.captured_at,
    )
    try:
        return IndicatorValue(
            indicator_id=defn.id,
            wiki=snapshot.wiki,
            window=snapshot.window,
            kind=defn.value_kind,
            value=value,  # type: ignore[arg-type]
            provenance=provenance,
            detail=detail,
        )
    except ValueError as exc:
        raise KindMismatchError(f"{defn.id}: {exc}") from exc


def risk_percentile(
    defn: IndicatorDefinition, value: float, cohort_values: Sequence[float]
) -> float:
    """Midrank percentile oriented so that larger always means riskier."""
    if not cohort_values:
        raise EmptyCohortError(f"{defn.id}: empty cohort")
    p = metrics.percentile_rank(value, cohort_values)
    if defn.risk_polarity is RiskPolarity.HIGHER_IS_RISKIER:
        return p
    return 1.0 - p


def category_score(
    wiki: WikiId,
    category: RiskCategory,
    risks: Mapping[str, float],
    registry: Sequence[IndicatorDefinition],
    cohort: Sequence[str],
) -> Optional[CategoryRiskScore]:
    """Mean risk percentile of the category's available indicators, or None."""
    contributing = tuple(
        (defn.id, risks[defn.id])
        for defn in registry
        if defn.category is category and defn.id in risks
    )
    if not contributing:
        return None
    score = sum(r for _, r in contributing) / len(contributing)
    return CategoryRiskScore(
        wiki=wiki,
        category=category,
        score=score,
        contributing=contributing,
        cohort=tuple(cohort),
    )


@dataclass(frozen=True)
class RankEntry:
    wiki: str
    value: float
    risk_percentile: float


def rank_wikis(
    defn: IndicatorDefinition, values: Mapping[str, float]
) -> list[RankEntry]:
    """Wikis ordered riskiest first; ties break on wiki code so output is stable."""
    if not values:
        raise EmptyCohortError(f"{defn.id}: nothing to rank")
    cohort = list(values.values())
    entries = [
        RankEntry(wiki=wiki, value=value, risk_percentile=risk_percentile(defn, value, cohort))
        for wiki, value in values.items()
    ]
    entries.sort(key=lambda e: (-e.risk_percentile, e.wiki))
    return entries


def _windows_hull(snapshots: Sequence[WikiSnapshot]) -> MonthRange:
    start = min(s.window.start for s in snapshots)
    end = max(s.window.end for s in snapshots)
    return MonthRange(start, end)


def entropy_scatter(
    snapshots: Sequence[WikiSnapshot],
    min_articles: int = DEFAULT_MIN_ARTICLES,
    ctx: Optional[EngineContext] = None,
) -> ScatterResult:
    """Edit-vs-view geographic diversity for every large-enough wiki.

    Per wiki, magnitudes are summed country-wise across the window
    months before normalizing, so each wiki contributes a single
    entropy per axis.  Qualification needs strictly more than
    ``min_articles`` articles plus both an edit and a view distribution.
    """
    if min_articles < 0:
        raise ValueError("min_articles must be >= 0")
    ctx = ctx or EngineContext()
    by_wiki: dict[str, list[WikiSnapshot]] = {}
    for snapshot in snapshots:
        by_wiki.setdefault(snapshot.wiki.code, []).append(snapshot)

    points: list[ScatterPoint] = []
    for code in sorted(by_wiki):
        group = sorted(by_wiki[code], key=lambda s: s.captured_at)
        articles = group[-1].site_stats.articles
        if articles <= min_articles:
            continue
        edit_counts: dict[str, float] = {}
        view_counts: dict[str, float] = {}
        for snapshot in group:
            for subject, totals in ((Subject.EDITS, edit_counts), (Subject.VIEWS, view_counts)):
                summed = _sum_distributions(snapshot, subject)
                if summed:
                    for country, magnitude in summed.items():
                        totals[country] = totals.get(country, 0.0) + magnitude
        edit_entropy = _entropy_of(edit_counts or None, ctx)
        view_entropy = _entropy_of(view_counts or None, ctx)
        if edit_entropy is None or view_entropy is None:
            continue
        points.append(
            ScatterPoint(
                wiki=code,
                edit_entropy=edit_entropy[0],
                view_entropy=view_entropy[0],
                articles=articles,
            )
        )

    if len(points) < 2:
        raise InsufficientDataError(
            f"only {len(points)} wikis qualify (need 2) at min_articles={min_articles}"
        )
    fit = metrics.linear_fit([(p.edit_entropy, p.view_entropy) for p in points])
    used = [s for code in (p.wiki for p in points) for s in by_wiki[code]]
    return ScatterResult(
        points=tuple(points),
        fit=fit,
        min_articles=min_articles,
        window=_windows_hull(used),
        computed_at=max(s.captured_at for s in used),
    )


def build_risk_matrix(
    snapshots: Sequence[WikiSnapshot],
    registry: Sequence[IndicatorDefinition],
    ctx: Optional[EngineContext] = None,
) -> tuple[RiskMatrix, dict[str, list[IndicatorValue]]]:
    """Compute all indicators, cohort percentiles and category scores.

    Returns the matrix plus the per-wiki indicator values that fed it.
    Missing values are excluded from percentile cohorts rather than
    imputed; input order never affects the result.
    """
    if not snapshots:
        raise InsufficientDataError("need at least one snapshot")
    ctx = ctx or EngineContext()
    by_code: dict[str, WikiSnapshot] = {}
    for snapshot in snapshots:
        if snapshot.wiki.code in by_code:
            raise ValueError(f"duplicate snapshot for wiki {snapshot.wiki.code}")
        by_code[snapshot.wiki.code] = snapshot
    cohort = tuple(sorted(by_code))

    values: dict[str, list[IndicatorValue]] = {code: [] for code in cohort}
    numeric: dict[str, dict[str, float]] = {}
    for defn in registry:
        per_wiki: dict[str, float] = {}
        for code in cohort:
            value = compute_indicator(defn, by_code[code], ctx)
            if value is None:
                continue
            values[code].append(value)
            if defn.value_kind is not ValueKind.DISTRIBUTION:
                per_wiki[code] = float(value.value)  # type: ignore[arg-type]
        numeric[defn.id] = per_wiki

    risks: dict[str, dict[str, float]] = {code: {} for code in cohort}
    for defn in registry:
        per_wiki = numeric[defn.id]
        if not per_wiki:
            continue
        cohort_values = list(per_wiki.values())
        for code, value in per_wiki.items():
            risks[code][defn.id] = risk_percentile(defn, value, cohort_values)

    cells: dict[str, dict[RiskCategory, Optional[CategoryRiskScore]]] = {}
    for code in cohort:
        wiki = by_code[code].wiki
        cells[code] = {
            category: category_score(wiki, category, risks[code], registry, cohort)
            for category in taxonomy()
        }

    matrix = RiskMatrix(
        window=_windows_hull(list(by_code.values())),
        cohort=cohort,
        cells=cells,
        computed_at=max(s.captured_at for s in by_code.values()),
    )
    return matrix, values


# --- canonical export documents -------------------------------------------

EXPORT_SCHEMA_VERSION = 1


def indicator_document(wiki: WikiId, window: MonthRange, values: Sequence[IndicatorValue]) -> dict:
    return {
        "schema_version": EXPORT_SCHEMA_VERSION,
        "wiki": wiki.code,
        "family": wiki.family,
        "window": window.to_dict(),
        "values": [v.to_dict() for v in sorted(values, key=lambda v: v.indicator_id)],
    }


def matrix_document(matrix: RiskMatrix) -> dict:
    rows = []
    for code in matrix.cohort:
        row_cells: dict[str, Optional[dict]] = {}
        for category in taxonomy():
            cell = matrix.cells[code][category]
            if cell is None:
                row_cells[category.value] = None
            else:
                row_cells[category.value] = {
                    "score": cell.score,
                    "contributing": [
                        {"indicator_id": ind, "risk_percentile": risk}
                        for ind, risk in cell.contributing
                    ],
                }
        rows.append({"wiki": code, "cells": row_cells})
    return {
        "schema_version": EXPORT_SCHEMA_VERSION,
        "window": matrix.window.to_dict(),
        "cohort": list(matrix.cohort),
        "categories": [c.value for c in taxonomy()],
        "method_version": matrix.method_version,
        "computed_at": format_timestamp(matrix.computed_at),
        "rows": rows,
    }


def scatter_document(result: ScatterResult) -> dict:
    return {
        "schema_version": EXPORT_SCHEMA_VERSION,
        "window": result.window.to_dict(),
        "min_articles": result.min_articles,
        "computed_at": format_timestamp(result.computed_at),
        "points": [
            {
                "wiki": p.wiki,
                "edit_entropy": p.edit_entropy,
                "view_entropy": p.view_entropy,
                "articles": p.articles,
            }
            for p in result.points
        ],
        "fit": {
            "slope": result.fit.slope,
            "intercept": result.fit.intercept,
            "r_squared": result.fit.r_squared,
            "n_points": result.fit.n_points,
        },
    }


def rankings_document(
    defn: IndicatorDefinition, window: MonthRange, entries: Sequence[RankEntry]
) -> dict:
    return {
        "schema_version": EXPORT_SCHEMA_VERSION,
        "indicator_id": defn.id,
        "window": window.to_dict(),
        "entries": [
            {"wiki": e.wiki, "value": e.value, "risk_percentile": e.risk_percentile}
            for e in entries
        ],
    }


def document_bytes(document: Mapping) -> bytes:
    return canonical.dump_bytes(document)
