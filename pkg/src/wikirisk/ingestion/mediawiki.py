"""MediaWiki Action API fetchers: site statistics, user groups, governance counts.

All queries go through ``formatversion=2`` JSON and follow API
continuation, so paginated listings (user groups, blocks) are counted
in full.
"""

from __future__ import annotations

from typing import Any, Iterable, Iterator, Mapping, Optional

from ..model import GovernanceStats, SiteStats, WikiId
from .errors import NetworkError, NotRecordedError, ParseError, UnknownWikiError
from .transport import HttpClient

PAGE_LIMIT = 500

# Elevated-rights groups counted as patrolling capacity.
ELEVATED_GROUPS = ("bureaucrat", "checkuser", "oversight", "rollbacker", "sysop")


class ApiErrorResponse(ParseError):
    """The Action API answered with an error object (e.g. module not installed)."""

    def __init__(self, wiki: str, code: str, info: str) -> None:
        super().__init__(f"{wiki}: API error {code}: {info}")
        self.code = code


def action_api_url(wiki: WikiId) -> str:
    return f"https://{wiki.code}.{wiki.family}.org/w/api.php"


def _query(client: HttpClient, wiki: WikiId, params: Mapping[str, str]) -> Iterator[dict[str, Any]]:
    """Yield each page of an Action API query, following continuation."""
    base = {"action": "query", "format": "json", "formatversion": "2"}
    merged: dict[str, str] = {**base, **params}
    while True:
        try:
            payload = client.get_json(action_api_url(wiki), merged)
        except NotRecordedError as exc:
            raise UnknownWikiError(f"no data source for wiki {wiki.id}") from exc
        if not isinstance(payload, dict):
            raise ParseError(f"{wiki.id}: query payload is not an object")
        if "error" in payload:
            info = payload["error"]
            raise ApiErrorResponse(wiki.id, str(info.get("code")), str(info.get("info")))
        yield payload
        cont = payload.get("continue")
        if not cont:
            return
        merged = {**base, **params, **{k: str(v) for k, v in cont.items()}}


def fetch_site_statistics(client: HttpClient, wiki: WikiId) -> SiteStats:
    """Site-level counts from meta=siteinfo.

    ``stub_articles`` stays absent: the statistics endpoint has no stub
    notion; stub counts only ever arrive via fixture snapshots.
    """
    page = next(_query(client, wiki, {"meta": "siteinfo", "siprop": "statistics"}))
    try:
        stats = page["query"]["statistics"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{wiki.id}: siteinfo payload lacks query.statistics") from exc
    values: dict[str, int] = {}
    for field, source_key in (
        ("articles", "articles"),
        ("total_pages", "pages"),
        ("edits", "edits"),
        ("editors", "users"),
        ("active_editors", "activeusers"),
    ):
        if source_key not in stats:
            raise ParseError(f"{wiki.id}: siteinfo statistics missing field {source_key!r}")
        raw = stats[source_key]
        if not isinstance(raw, int) or isinstance(raw, bool) or raw < 0:
            raise ParseError(f"{wiki.id}: siteinfo field {source_key!r} is not a count: {raw!r}")
        values[field] = raw
    return SiteStats(**values)


def fetch_user_group_counts(
    client: HttpClient, wiki: WikiId, groups: Iterable[str]
) -> dict[str, int]:
    """Count members of each requested user group; a group the wiki lacks counts 0."""
    group_list = list(groups)
    if not group_list:
        raise ValueError("at least one group name is required")
    counts: dict[str, int] = {}
    for group in group_list:
        total = 0
        pages = _query(
            client,
            wiki,
            {"list": "allusers", "augroup": group, "aulimit": str(PAGE_LIMIT)},
        )
        for page in pages:
            try:
                users = page["query"]["allusers"]
            except (KeyError, TypeError) as exc:
                raise ParseError(f"{wiki.id}: allusers payload malformed for group {group}") from exc
            if not isinstance(users, list):
                raise ParseError(f"{wiki.id}: allusers for {group} is not a list")
            total += len(users)
        counts[group] = total
    return counts


def _count_enabled_abusefilters(client: HttpClient, wiki: WikiId) -> int:
    total = 0
    pages = _query(
        client, wiki, {"list": "abusefilters", "abfprop": "status", "abflimit": str(PAGE_LIMIT)}
    )
    for page in pages:
        try:
            filters = page["query"]["abusefilters"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{wiki.id}: abusefilters payload malformed") from exc
        total += sum(1 for item in filters if item.get("enabled"))
    return total


def _count_blocked_accounts(client: HttpClient, wiki: WikiId) -> int:
    """Currently blocked registered accounts; IP blocks (userid 0) excluded."""
    total = 0
    pages = _query(
        client, wiki, {"list": "blocks", "bkprop": "user|userid", "bklimit": str(PAGE_LIMIT)}
    )
    for page in pages:
        try:
            blocks = page["query"]["blocks"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{wiki.id}: blocks payload malformed") from exc
        total += sum(1 for item in blocks if item.get("userid", 0))
    return total


def fetch_governance_stats(
    client: HttpClient, wiki: WikiId, total_accounts: Optional[int] = None
) -> tuple[GovernanceStats, list[str]]:
    """Governance counts plus warnings for the sections a wiki cannot report.

    A wiki without the AbuseFilter extension reports *absent* rules, not
    zero rules.  Deletion and steward request counts have no
    machine-readable source and stay absent outside fixtures.
    """
    warnings: list[str] = []
    abusefilter_rules: Optional[int] = None
    blocked_accounts: Optional[int] = None
    try:
        abusefilter_rules = _count_enabled_abusefilters(client, wiki)
    except ApiErrorResponse as exc:
        warnings.append(f"abusefilters unavailable: {exc}")
    try:
        blocked_accounts = _count_blocked_accounts(client, wiki)
    except ApiErrorResponse as exc:
        warnings.append(f"blocks unavailable: {exc}")
    stats = GovernanceStats(
        abusefilter_rules=abusefilter_rules,
        blocked_accounts=blocked_accounts,
        total_accounts=total_accounts,
    )
    return stats, warnings
