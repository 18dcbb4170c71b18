"""Snapshot orchestration: run every fetcher for one wiki and one window.

Partial source failures degrade to warnings; only an unfetchable
site-statistics backbone aborts the snapshot.  Snapshots of different
wikis may run concurrently, snapshots of the same wiki are serialized.
"""

from __future__ import annotations

import threading
from typing import Iterable, Mapping, Optional

from ..model import CountryDistribution, MonthRange, WikiId, WikiSnapshot
from .analytics import ALL_ACTIVITY, fetch_editors_by_country, fetch_views_by_country
from .errors import IngestionError, NetworkError, NoDataError, ParseError, SnapshotFailure, UnknownWikiError
from .mediawiki import (
    ELEVATED_GROUPS,
    fetch_governance_stats,
    fetch_site_statistics,
    fetch_user_group_counts,
)
from .transport import HttpClient

_wiki_locks: dict[str, threading.Lock] = {}
_wiki_locks_guard = threading.Lock()


def _lock_for(wiki: WikiId) -> threading.Lock:
    with _wiki_locks_guard:
        lock = _wiki_locks.get(wiki.id)
        if lock is None:
            lock = threading.Lock()
            _wiki_locks[wiki.id] = lock
        return lock


def snapshot_wiki(
    client: HttpClient,
    wiki: WikiId,
    window: MonthRange,
    *,
    groups: Iterable[str] = ELEVATED_GROUPS,
    activity_level: str = ALL_ACTIVITY,
    external_scores: Optional[Mapping[str, Mapping[str, float]]] = None,
) -> WikiSnapshot:
    """Capture one WikiSnapshot, degrading gracefully on partial failures."""
    with _lock_for(wiki):
        return _snapshot_locked(client, wiki, window, groups, activity_level, external_scores)


def _snapshot_locked(
    client: HttpClient,
    wiki: WikiId,
    window: MonthRange,
    groups: Iterable[str],
    activity_level: str,
    external_scores: Optional[Mapping[str, Mapping[str, float]]],
) -> WikiSnapshot:
    warnings: list[str] = []

    try:
        site_stats = fetch_site_statistics(client, wiki)
    except (NetworkError, ParseError, UnknownWikiError) as exc:
        raise SnapshotFailure(f"{wiki.id}: site statistics unfetchable: {exc}") from exc

    group_counts: Optional[dict[str, int]] = None
    try:
        group_counts = fetch_user_group_counts(client, wiki, groups)
    except IngestionError as exc:
        warnings.append(f"user groups unavailable: {exc}")

    governance = None
    try:
        governance, governance_warnings = fetch_governance_stats(
            client, wiki, total_accounts=site_stats.editors
        )
        warnings.extend(governance_warnings)
    except IngestionError as exc:
        warnings.append(f"governance stats unavailable: {exc}")

    distributions: list[CountryDistribution] = []
    for month in window.months():
        try:
            distributions.append(fetch_views_by_country(client, wiki, month))
        except NoDataError:
            warnings.append(f"views by country: no data for {month}")
        except IngestionError as exc:
            warnings.append(f"views by country failed for {month}: {exc}")
        try:
            distributions.append(fetch_editors_by_country(client, wiki, month, activity_level))
        except NoDataError:
            warnings.append(f"editors by country: no data for {month}")
        except IngestionError as exc:
            warnings.append(f"editors by country failed for {month}: {exc}")

    return WikiSnapshot(
        wiki=wiki,
        window=window,
        captured_at=client.clock.utcnow(),
        site_stats=site_stats,
        group_counts=group_counts,
        governance_stats=governance,
        distributions=tuple(distributions),
        external_scores=dict(external_scores or {}),
        warnings=tuple(warnings),
        fixture_origin=False,
    )
