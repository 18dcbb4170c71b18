"""Wikimedia analytics REST fetchers: per-country pageviews and editors.

Values in these payloads are either exact numbers or privacy-bucket
labels like "100..999"; both go through :func:`bucket_estimate`, so
downstream code only ever sees real-valued magnitudes.
"""

from __future__ import annotations

from typing import Any

from ..model import CountryDistribution, Month, MonthRange, Subject, WikiId
from .bucket import bucket_estimate
from .errors import NoDataError, ParseError
from .transport import HttpClient

ANALYTICS_HOST = "https://wikimedia.org/api/rest_v1"
ALL_ACTIVITY = "all-activity-levels"


def views_by_country_url(wiki: WikiId, month: Month) -> str:
    project = f"{wiki.code}.{wiki.family}.org"
    return (
        f"{ANALYTICS_HOST}/metrics/pageviews/top-by-country/"
        f"{project}/all-access/{month.year:04d}/{month.month:02d}"
    )


def editors_by_country_url(wiki: WikiId, month: Month, activity_level: str) -> str:
    project = f"{wiki.code}.{wiki.family}.org"
    return (
        f"{ANALYTICS_HOST}/metrics/editors/by-country/"
        f"{project}/{activity_level}/{month.year:04d}/{month.month:02d}"
    )


def _magnitude(raw: Any, url: str) -> float:
    if isinstance(raw, bool):
        raise ParseError(f"{url}: boolean is not a magnitude")
    if isinstance(raw, (int, float)):
        if raw < 0:
            raise ParseError(f"{url}: negative magnitude {raw}")
        return float(raw)
    if isinstance(raw, str):
        return bucket_estimate(raw).estimate
    raise ParseError(f"{url}: unsupported magnitude {raw!r}")


def _country_entries(payload: Any, value_key: str, url: str) -> dict[str, float]:
    try:
        items = payload["items"]
        countries = items[0]["countries"]
    except (KeyError, IndexError, TypeError) as exc:
        raise ParseError(f"{url}: payload lacks items[0].countries") from exc
    if not countries:
        raise NoDataError(f"{url}: no per-country data for this month")
    entries: dict[str, float] = {}
    for row in countries:
        try:
            code = str(row["country"])
            raw = row[value_key]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{url}: country row malformed: {row!r}") from exc
        if code in entries:
            raise ParseError(f"{url}: duplicate country code {code}")
        entries[code] = _magnitude(raw, url)
    return entries


def _fetch(client: HttpClient, url: str) -> Any:
    response = client.get(url)
    if response.status == 404:
        raise NoDataError(f"{url}: month outside data availability")
    if response.status >= 400:
        raise ParseError(f"{url}: unexpected status {response.status}")
    return response.json()


def fetch_views_by_country(client: HttpClient, wiki: WikiId, month: Month) -> CountryDistribution:
    url = views_by_country_url(wiki, month)
    payload = _fetch(client, url)
    entries = _country_entries(payload, "views", url)
    return CountryDistribution(subject=Subject.VIEWS, window=MonthRange.single(month), entries=entries)


def fetch_editors_by_country(
    client: HttpClient, wiki: WikiId, month: Month, activity_level: str = ALL_ACTIVITY
) -> CountryDistribution:
    url = editors_by_country_url(wiki, month, activity_level)
    payload = _fetch(client, url)
    entries = _country_entries(payload, "editors", url)
    return CountryDistribution(
        subject=Subject.ACTIVE_EDITORS, window=MonthRange.single(month), entries=entries
    )
