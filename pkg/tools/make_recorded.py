#!/usr/bin/env python3
"""Regenerate the recorded-payload replay corpus under tests/data/recorded/.

Each HTTP exchange is one directory holding request.json, response.body
and response.status, replayed by the stub transport in tests.  The
corpus covers two wikis ("ja": full-size, paginated listings; "war":
small wiki whose AbuseFilter module is unavailable) across the
2021-02..2021-05 window, with per-country editor counts in the
privacy-bucket label form ("100..999") the editor fetcher must expand.
"""

from __future__ import annotations

import json
import shutil
from pathlib import Path
from urllib.parse import urlencode

import sys

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from wikirisk.ingestion.analytics import editors_by_country_url, views_by_country_url
from wikirisk.ingestion.mediawiki import action_api_url
from wikirisk.model import Month, WikiId

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "recorded"
MONTHS = [Month(2021, 2), Month(2021, 3), Month(2021, 4)]
BASE = {"action": "query", "format": "json", "formatversion": "2"}

counter = 0


def record(wiki_dir: Path, url: str, payload, status: int = 200) -> None:
    global counter
    counter += 1
    triple = wiki_dir / f"{counter:03d}"
    triple.mkdir(parents=True)
    body = payload if isinstance(payload, (bytes, bytearray)) else json.dumps(payload).encode()
    (triple / "request.json").write_text(json.dumps({"method": "GET", "url": url}, indent=1) + "\n")
    (triple / "response.body").write_bytes(body)
    (triple / "response.status").write_text(f"{status}\n")


def api_url(wiki: WikiId, params: dict[str, str]) -> str:
    merged = {**BASE, **params}
    return f"{action_api_url(wiki)}?{urlencode(sorted(merged.items()))}"


def record_allusers(wiki_dir: Path, wiki: WikiId, group: str, pages: list[int]) -> None:
    """Paginated allusers listing; `pages` gives per-page user counts."""
    start = 0
    for i, page_size in enumerate(pages):
        params = {"list": "allusers", "augroup": group, "aulimit": "500"}
        if i > 0:
            params.update({"aufrom": f"User{start:05d}", "continue": "-||"})
        users = [
            {"userid": 1000 + start + j, "name": f"User{start + j:05d}"} for j in range(page_size)
        ]
        payload: dict = {"batchcomplete": True, "query": {"allusers": users}}
        start += page_size
        if i < len(pages) - 1:
            payload["continue"] = {"aufrom": f"User{start:05d}", "continue": "-||"}
        record(wiki_dir, api_url(wiki, params), payload)


def record_blocks(wiki_dir: Path, wiki: WikiId, pages: list[list[tuple[str, int]]]) -> None:
    """Paginated block listing; entries are (user, userid), userid 0 = IP block."""
    for i, page in enumerate(pages):
        params = {"list": "blocks", "bkprop": "user|userid", "bklimit": "500"}
        if i > 0:
            params.update({"bkcontinue": f"page{i}", "continue": "-||"})
        blocks = [{"user": user, "userid": userid} for user, userid in page]
        payload: dict = {"batchcomplete": True, "query": {"blocks": blocks}}
        if i < len(pages) - 1:
            payload["continue"] = {"bkcontinue": f"page{i + 1}", "continue": "-||"}
        record(wiki_dir, api_url(wiki, params), payload)


def record_ja(root: Path) -> None:
    wiki = WikiId("ja")
    wiki_dir = root / "ja"

    record(
        wiki_dir,
        api_url(wiki, {"meta": "siteinfo", "siprop": "statistics"}),
        {
            "batchcomplete": True,
            "query": {
                "statistics": {
                    "pages": 3_804_218,
                    "articles": 1_268_455,
                    "edits": 81_463_910,
                    "images": 92_114,
                    "users": 1_703_266,
                    "activeusers": 14_321,
                    "admins": 40,
                    "jobs": 0,
                }
            },
        },
    )

    # 112 sysops across three pages, per the miser-mode page sizes upstream serves.
    record_allusers(wiki_dir, wiki, "sysop", [50, 50, 12])
    record_allusers(wiki_dir, wiki, "bureaucrat", [8])
    record_allusers(wiki_dir, wiki, "checkuser", [5])
    record_allusers(wiki_dir, wiki, "oversight", [4])
    record_allusers(wiki_dir, wiki, "rollbacker", [50, 23])

    filters = [{"id": n, "enabled": n > 7} for n in range(1, 49)]  # 41 enabled, 7 disabled
    record(
        wiki_dir,
        api_url(wiki, {"list": "abusefilters", "abfprop": "status", "abflimit": "500"}),
        {"batchcomplete": True, "query": {"abusefilters": filters}},
    )

    record_blocks(
        wiki_dir,
        wiki,
        [
            [("VandalA", 90001), ("VandalB", 90002), ("203.0.113.7", 0), ("VandalC", 90003),
             ("SpamD", 90004), ("198.51.100.23", 0)],
            [("SpamE", 90005), ("VandalF", 90006), ("192.0.2.99", 0), ("SpamG", 90007)],
        ],
    )

    view_months = {
        Month(2021, 2): [("JP", 901_204_518), ("US", 21_108_774), ("TW", 7_644_210),
                         ("KR", 5_801_332), ("CN", 4_790_556), ("TH", 3_811_480),
                         ("GB", 2_905_512), ("DE", 2_871_044), ("FR", 1_902_218),
                         ("CA", 1_894_310), ("AU", 1_880_226), ("SG", 941_520)],
        Month(2021, 3): [("JP", 930_118_205), ("US", 22_004_118), ("TW", 7_901_554),
                         ("KR", 5_944_810), ("CN", 4_921_004), ("TH", 3_944_216),
                         ("GB", 3_001_822), ("DE", 2_966_410), ("FR", 1_961_008),
                         ("CA", 1_950_334), ("AU", 1_940_112), ("SG", 970_642)],
        Month(2021, 4): [("JP", 988_410_110), ("US", 23_390_450), ("TW", 8_388_102),
                         ("KR", 6_310_448), ("CN", 5_221_916), ("TH", 4_188_024),
                         ("GB", 3_188_456), ("DE", 3_150_208), ("FR", 2_082_114),
                         ("CA", 2_070_552), ("AU", 2_060_190), ("SG", 1_030_744)],
    }
    for month, countries in view_months.items():
        record(
            wiki_dir,
            views_by_country_url(wiki, month),
            {
                "items": [
                    {
                        "project": "ja.wikipedia",
                        "access": "all-access",
                        "year": f"{month.year}",
                        "month": f"{month.month:02d}",
                        "countries": [
                            {"country": code, "views": views, "rank": rank + 1}
                            for rank, (code, views) in enumerate(countries)
                        ],
                    }
                ]
            },
        )

    editor_months = {
        Month(2021, 2): [("JP", "1000..9999"), ("US", "100..999"), ("TW", "10..99"),
                         ("KR", "10..99"), ("CN", "10..99"), ("GB", "10..99"),
                         ("DE", "10..99"), ("HK", "37"), ("BR", 12), ("FR", "1..9"),
                         ("CA", "10..99"), ("AU", "1..9"), ("SG", "1..9"), ("TH", "1..9")],
        Month(2021, 3): [("JP", "1000..9999"), ("US", "100..999"), ("TW", "10..99"),
                         ("KR", "10..99"), ("CN", "10..99"), ("GB", "10..99"),
                         ("DE", "10..99"), ("HK", "41"), ("BR", 14), ("FR", "10..99"),
                         ("CA", "10..99"), ("AU", "1..9"), ("SG", "1..9"), ("TH", "1..9")],
        Month(2021, 4): [("JP", "1000..9999"), ("US", "100..999"), ("TW", "100..999"),
                         ("KR", "10..99"), ("CN", "10..99"), ("GB", "10..99"),
                         ("DE", "10..99"), ("HK", "39"), ("BR", 11), ("FR", "10..99"),
                         ("CA", "10..99"), ("AU", "1..9"), ("SG", "1..9"), ("TH", "1..9")],
    }
    for month, countries in editor_months.items():
        record(
            wiki_dir,
            editors_by_country_url(wiki, month, "all-activity-levels"),
            {
                "items": [
                    {
                        "project": "ja.wikipedia",
                        "activity-level": "all-activity-levels",
                        "year": f"{month.year}",
                        "month": f"{month.month:02d}",
                        "countries": [
                            {"country": code, "editors": editors} for code, editors in countries
                        ],
                    }
                ]
            },
        )


def record_war(root: Path) -> None:
    wiki = WikiId("war")
    wiki_dir = root / "war"

    record(
        wiki_dir,
        api_url(wiki, {"meta": "siteinfo", "siprop": "statistics"}),
        {
            "batchcomplete": True,
            "query": {
                "statistics": {
                    "pages": 3_204_410,
                    "articles": 1_262_118,
                    "edits": 6_221_540,
                    "images": 1_104,
                    "users": 51_208,
                    "activeusers": 82,
                    "admins": 3,
                    "jobs": 0,
                }
            },
        },
    )

    record_allusers(wiki_dir, wiki, "sysop", [3])
    record_allusers(wiki_dir, wiki, "bureaucrat", [1])
    record_allusers(wiki_dir, wiki, "checkuser", [0])
    record_allusers(wiki_dir, wiki, "oversight", [0])
    record_allusers(wiki_dir, wiki, "rollbacker", [2])

    # AbuseFilter is not installed on this wiki: the module is unrecognized.
    record(
        wiki_dir,
        api_url(wiki, {"list": "abusefilters", "abfprop": "status", "abflimit": "500"}),
        {
            "error": {
                "code": "badvalue",
                "info": 'Unrecognized value for parameter "list": abusefilters.',
            },
            "servedby": "mw1312",
        },
    )

    record_blocks(wiki_dir, wiki, [[("SpamA", 70001), ("203.0.113.50", 0), ("SpamB", 70002)]])

    for month, jitter in zip(MONTHS, (0, 31_118, 64_205)):
        record(
            wiki_dir,
            views_by_country_url(wiki, month),
            {
                "items": [
                    {
                        "project": "war.wikipedia",
                        "access": "all-access",
                        "year": f"{month.year}",
                        "month": f"{month.month:02d}",
                        "countries": [
                            {"country": "PH", "views": 1_820_450 + jitter * 9, "rank": 1},
                            {"country": "US", "views": 98_204 + jitter, "rank": 2},
                            {"country": "CA", "views": 24_810 + jitter // 3, "rank": 3},
                            {"country": "SE", "views": 19_377 + jitter // 4, "rank": 4},
                            {"country": "DE", "views": 16_205 + jitter // 5, "rank": 5},
                            {"country": "GB", "views": 15_911 + jitter // 5, "rank": 6},
                        ],
                    }
                ]
            },
        )

    # Editor geography for the smallest month is below the publication
    # threshold upstream: the endpoint 404s and the snapshot records a warning.
    record(
        wiki_dir,
        editors_by_country_url(wiki, Month(2021, 2), "all-activity-levels"),
        {
            "type": "https://mediawiki.org/wiki/HyperSwitch/errors/not_found",
            "title": "Not found.",
            "detail": "The date(s) you used are valid, but we either do not have data for those date(s), or the project you asked for is not loaded yet.",
        },
        status=404,
    )
    for month in MONTHS[1:]:
        record(
            wiki_dir,
            editors_by_country_url(wiki, month, "all-activity-levels"),
            {
                "items": [
                    {
                        "project": "war.wikipedia",
                        "activity-level": "all-activity-levels",
                        "year": f"{month.year}",
                        "month": f"{month.month:02d}",
                        "countries": [
                            {"country": "PH", "editors": "10..99"},
                            {"country": "US", "editors": "10..99"},
                            {"country": "SE", "editors": "1..9"},
                            {"country": "DE", "editors": "1..9"},
                            {"country": "GB", "editors": "1..9"},
                        ],
                    }
                ]
            },
        )


def main() -> None:
    if OUT.exists():
        shutil.rmtree(OUT)
    record_ja(OUT)
    record_war(OUT)
    print(f"wrote {counter} recorded exchanges under {OUT}")


if __name__ == "__main__":
    main()
