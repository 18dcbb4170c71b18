import datetime as dt
import json
import math
import threading
import time

import pytest

from conftest import RECORDED_DIR, FakeClock, ScriptedTransport, response
from wikirisk import canonical
from wikirisk.ingestion import (
    BackoffSchedule,
    FetchPolicy,
    HttpClient,
    ReplayTransport,
    bucket_estimate,
    bundled_fixture_dir,
    fetch_editors_by_country,
    fetch_governance_stats,
    fetch_site_statistics,
    fetch_user_group_counts,
    fetch_views_by_country,
    load_fixture_snapshot,
    snapshot_wiki,
)
from wikirisk.ingestion.analytics import editors_by_country_url, views_by_country_url
from wikirisk.ingestion.errors import (
    NetworkError,
    NoDataError,
    ParseError,
    SchemaVersionMismatch,
    SnapshotFailure,
)
from wikirisk.ingestion.mediawiki import action_api_url
from wikirisk.model import Month, MonthRange, Subject, WikiId

JA = WikiId("ja")
WINDOW = MonthRange.parse("2021-02..2021-05")


def make_client(transport, clock=None, **policy_kwargs):
    policy_kwargs.setdefault("min_request_interval", 0.25)
    policy_kwargs.setdefault("max_retries", 3)
    policy_kwargs.setdefault("backoff", BackoffSchedule(0.5, 2.0))
    policy_kwargs.setdefault("user_agent", "tests")
    return HttpClient(transport, FetchPolicy(**policy_kwargs), clock=clock or FakeClock())


def api_url(wiki, params):
    from urllib.parse import urlencode

    merged = {"action": "query", "format": "json", "formatversion": "2", **params}
    return f"{action_api_url(wiki)}?{urlencode(sorted(merged.items()))}"


class TestBucketEstimate:
    def test_geometric_mean(self):
        bucket = bucket_estimate("1..9")
        assert bucket.estimate == pytest.approx(3.0, abs=1e-12)
        assert (bucket.lo, bucket.hi) == (1, 9)

    def test_privacy_bucket(self):
        assert bucket_estimate("100..999").estimate == pytest.approx(math.sqrt(100 * 999))
        assert bucket_estimate("100..999").estimate == pytest.approx(316.07, abs=0.01)

    def test_exact_passthrough(self):
        bucket = bucket_estimate("5")
        assert bucket.estimate == 5.0
        assert bucket.lo == bucket.hi == 5

    def test_zero_range_rejected(self):
        with pytest.raises(ParseError):
            bucket_estimate("0..0")

    def test_malformed(self):
        for label in ("100-", "..9", "1..", "a..b", "9..1", ""):
            with pytest.raises(ParseError):
                bucket_estimate(label)

    def test_monotone_in_bounds(self):
        labels = ["1..9", "10..99", "100..999", "1000..9999", "10000..99999"]
        estimates = [bucket_estimate(label).estimate for label in labels]
        assert estimates == sorted(estimates)


class TestClientRetries:
    def test_two_503_then_success(self, scripted, fake_clock):
        url = "https://example.org/x"
        scripted.script(url, response(503), response(503), response(200, {"ok": True}))
        client = make_client(scripted, clock=fake_clock)
        result = client.get(url)
        assert result.status == 200
        assert client.telemetry.last_retry_count == 2
        assert client.telemetry.retries == 2
        # exponential backoff: 0.5 then 1.0 (rate-limit pacing sleeps excluded)
        assert [s for s in fake_clock.sleeps if s in (0.5, 1.0)] == [0.5, 1.0]

    def test_gives_up_after_max_retries(self, scripted, fake_clock):
        url = "https://example.org/x"
        scripted.script(url, response(503))
        client = make_client(scripted, clock=fake_clock, max_retries=2)
        with pytest.raises(NetworkError, match="persisted after 2 retries"):
            client.get(url)

    def test_network_errors_retry_then_succeed(self, scripted, fake_clock):
        url = "https://example.org/x"
        scripted.script(url, NetworkError("conn reset"), response(200, {}))
        client = make_client(scripted, clock=fake_clock)
        assert client.get(url).status == 200
        assert client.telemetry.last_retry_count == 1

    def test_retry_after_header_honored_on_429(self, scripted, fake_clock):
        url = "https://example.org/x"
        scripted.script(url, response(429, {}, headers={"retry-after": "7"}), response(200, {}))
        client = make_client(scripted, clock=fake_clock)
        client.get(url)
        assert 7.0 in fake_clock.sleeps

    def test_non_retryable_status_returned(self, scripted, fake_clock):
        url = "https://example.org/x"
        scripted.script(url, response(404, {}))
        client = make_client(scripted, clock=fake_clock)
        assert client.get(url).status == 404
        assert client.telemetry.last_retry_count == 0


class TestRateLimit:
    def test_spacing_enforced_via_injected_clock(self, scripted, fake_clock):
        url = "https://example.org/x"
        scripted.script(url, response(200, {}))
        client = make_client(scripted, clock=fake_clock, min_request_interval=0.25)
        times = []
        for _ in range(4):
            client.get(url)
            times.append(fake_clock.monotonic())
        gaps = [b - a for a, b in zip(times, times[1:])]
        assert all(gap >= 0.25 - 1e-9 for gap in gaps)
        assert client.telemetry.rate_limit_waits == 3

    def test_hosts_throttled_independently(self, scripted, fake_clock):
        scripted.script("https://a.example/x", response(200, {}))
        scripted.script("https://b.example/x", response(200, {}))
        client = make_client(scripted, clock=fake_clock, min_request_interval=10.0)
        client.get("https://a.example/x")
        client.get("https://b.example/x")
        assert fake_clock.sleeps == []  # different hosts: no spacing wait

    def test_max_in_flight_bounded(self):
        # Real threads against a slow transport; the bound is per host.
        in_flight = {"now": 0, "max": 0}
        gate = threading.Lock()

        class SlowTransport:
            def send(self, method, url, headers, timeout):
                with gate:
                    in_flight["now"] += 1
                    in_flight["max"] = max(in_flight["max"], in_flight["now"])
                time.sleep(0.02)
                with gate:
                    in_flight["now"] -= 1
                return response(200, {})

        client = HttpClient(
            SlowTransport(),
            FetchPolicy(max_in_flight=2, min_request_interval=0.0, user_agent="tests"),
        )
        threads = [
            threading.Thread(target=client.get, args=("https://example.org/x",)) for _ in range(8)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert in_flight["max"] <= 2
        assert client.telemetry.requests == 8


class TestSiteStatistics:
    PAYLOAD = {
        "batchcomplete": True,
        "query": {
            "statistics": {
                "pages": 1_500_000,
                "articles": 500_123,
                "edits": 900_000_000,
                "users": 2_000_000,
                "activeusers": 4_800,
            }
        },
    }

    def test_fields_mapped(self, scripted):
        url = api_url(JA, {"meta": "siteinfo", "siprop": "statistics"})
        scripted.script(url, response(200, self.PAYLOAD))
        stats = fetch_site_statistics(make_client(scripted), JA)
        assert stats.articles == 500_123
        assert stats.total_pages == 1_500_000
        assert stats.edits == 900_000_000
        assert stats.editors == 2_000_000
        assert stats.active_editors == 4_800
        assert stats.stub_articles is None

    def test_missing_field_names_it(self, scripted):
        payload = {"query": {"statistics": {k: v for k, v in self.PAYLOAD["query"]["statistics"].items()
                                            if k != "activeusers"}}}
        url = api_url(JA, {"meta": "siteinfo", "siprop": "statistics"})
        scripted.script(url, response(200, payload))
        with pytest.raises(ParseError, match="activeusers"):
            fetch_site_statistics(make_client(scripted), JA)

    def test_retries_then_succeeds(self, scripted, fake_clock):
        url = api_url(JA, {"meta": "siteinfo", "siprop": "statistics"})
        scripted.script(url, response(503), response(503), response(200, self.PAYLOAD))
        client = make_client(scripted, clock=fake_clock)
        stats = fetch_site_statistics(client, JA)
        assert stats.articles == 500_123
        assert client.telemetry.last_retry_count == 2


class TestUserGroupCounts:
    def test_paginated_count(self, replay_client):
        counts = fetch_user_group_counts(replay_client, JA, ["sysop"])
        assert counts == {"sysop": 112}

    def test_missing_group_is_zero(self, scripted):
        url = api_url(JA, {"list": "allusers", "augroup": "scribe", "aulimit": "500"})
        scripted.script(url, response(200, {"query": {"allusers": []}}))
        counts = fetch_user_group_counts(make_client(scripted), JA, ["scribe"])
        assert counts == {"scribe": 0}

    def test_empty_groups_rejected(self, scripted):
        with pytest.raises(ValueError):
            fetch_user_group_counts(make_client(scripted), JA, [])


class TestGovernance:
    def test_enabled_filters_counted(self, replay_client):
        stats, warnings = fetch_governance_stats(replay_client, JA, total_accounts=1_703_266)
        assert stats.abusefilter_rules == 41
        assert warnings == []

    def test_blocked_registered_accounts_counted(self, replay_client):
        stats, _ = fetch_governance_stats(replay_client, JA, total_accounts=1_703_266)
        assert stats.blocked_accounts == 7  # 10 blocks, 3 of them IP blocks
        assert stats.total_accounts == 1_703_266

    def test_blocked_ratio_downstream(self, scripted):
        url_f = api_url(JA, {"list": "abusefilters", "abfprop": "status", "abflimit": "500"})
        url_b = api_url(JA, {"list": "blocks", "bkprop": "user|userid", "bklimit": "500"})
        scripted.script(url_f, response(200, {"query": {"abusefilters": []}}))
        blocks = [{"user": f"u{i}", "userid": i + 1} for i in range(230)]
        scripted.script(url_b, response(200, {"query": {"blocks": blocks}}))
        stats, _ = fetch_governance_stats(make_client(scripted), JA, total_accounts=10_000)
        from wikirisk.metrics import ratio

        assert ratio(stats.blocked_accounts, stats.total_accounts) == pytest.approx(0.023)

    def test_wiki_without_abusefilter(self, replay_client):
        stats, warnings = fetch_governance_stats(replay_client, WikiId("war"), total_accounts=51_208)
        assert stats.abusefilter_rules is None
        assert any("abusefilters" in w for w in warnings)


class TestAnalyticsFetchers:
    def test_views_distribution(self, replay_client):
        dist = fetch_views_by_country(replay_client, JA, Month(2021, 2))
        assert dist.subject is Subject.VIEWS
        assert dist.entries["JP"] == 901_204_518
        # dominance: ja views are extraordinarily concentrated
        from wikirisk.metrics import normalize, shannon_entropy

        assert shannon_entropy(normalize(dict(dist.entries))).nats < 0.5

    def test_bucket_labels_expanded(self, replay_client):
        dist = fetch_editors_by_country(replay_client, JA, Month(2021, 2))
        assert dist.subject is Subject.ACTIVE_EDITORS
        assert dist.entries["JP"] == pytest.approx(math.sqrt(1000 * 9999))
        assert dist.entries["HK"] == 37.0
        assert dist.entries["BR"] == 12.0

    def test_no_data_month(self, replay_client):
        with pytest.raises(NoDataError):
            fetch_editors_by_country(replay_client, WikiId("war"), Month(2021, 2))

    def test_empty_country_list_is_no_data(self, scripted):
        url = views_by_country_url(JA, Month(2021, 2))
        scripted.script(url, response(200, {"items": [{"countries": []}]}))
        with pytest.raises(NoDataError):
            fetch_views_by_country(make_client(scripted), JA, Month(2021, 2))

    def test_duplicate_country_rejected(self, scripted):
        url = views_by_country_url(JA, Month(2021, 2))
        payload = {"items": [{"countries": [
            {"country": "JP", "views": 10}, {"country": "JP", "views": 20},
        ]}]}
        scripted.script(url, response(200, payload))
        with pytest.raises(ParseError, match="duplicate"):
            fetch_views_by_country(make_client(scripted), JA, Month(2021, 2))

    def test_malformed_bucket_label(self, scripted):
        url = editors_by_country_url(JA, Month(2021, 2), "all-activity-levels")
        payload = {"items": [{"countries": [{"country": "JP", "editors": "100-"}]}]}
        scripted.script(url, response(200, payload))
        with pytest.raises(ParseError):
            fetch_editors_by_country(make_client(scripted), JA, Month(2021, 2))


class TestFixtureLoading:
    def test_bundled_ja_fixture(self):
        path = bundled_fixture_dir() / "ja.wikipedia.2021-02..2021-05.snapshot.json"
        snapshot = load_fixture_snapshot(path)
        assert snapshot.fixture_origin is True
        assert snapshot.site_stats.articles > 500_000
        assert snapshot.wiki == JA

    def test_schema_version_mismatch(self, tmp_path):
        path = bundled_fixture_dir() / "ja.wikipedia.2021-02..2021-05.snapshot.json"
        data = json.loads(path.read_text())
        data["schema_version"] = 0
        bad = tmp_path / "bad.snapshot.json"
        bad.write_text(json.dumps(data))
        with pytest.raises(SchemaVersionMismatch):
            load_fixture_snapshot(bad)

    def test_truncated_file(self, tmp_path):
        path = bundled_fixture_dir() / "ja.wikipedia.2021-02..2021-05.snapshot.json"
        bad = tmp_path / "trunc.snapshot.json"
        bad.write_bytes(path.read_bytes()[: 200])
        with pytest.raises(ParseError):
            load_fixture_snapshot(bad)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_fixture_snapshot(tmp_path / "nope.snapshot.json")


class TestSnapshotOrchestration:
    def test_full_snapshot_from_replay(self, replay_client):
        snapshot = snapshot_wiki(replay_client, JA, WINDOW)
        assert snapshot.fixture_origin is False
        assert snapshot.site_stats.articles == 1_268_455
        assert snapshot.group_counts == {
            "bureaucrat": 8, "checkuser": 5, "oversight": 4, "rollbacker": 73, "sysop": 112,
        }
        assert len(snapshot.distributions_for(Subject.VIEWS)) == 3
        assert len(snapshot.distributions_for(Subject.ACTIVE_EDITORS)) == 3
        assert snapshot.warnings == ()

    def test_partial_data_becomes_warning(self, replay_client):
        snapshot = snapshot_wiki(replay_client, WikiId("war"), WINDOW)
        assert len(snapshot.distributions_for(Subject.ACTIVE_EDITORS)) == 2
        assert any("no data for 2021-02" in w for w in snapshot.warnings)
        assert snapshot.governance_stats.abusefilter_rules is None

    def test_site_stats_failure_is_hard(self, scripted, fake_clock):
        url = api_url(JA, {"meta": "siteinfo", "siprop": "statistics"})
        scripted.script(url, response(404, {}))
        client = make_client(scripted, clock=fake_clock)
        with pytest.raises(SnapshotFailure):
            snapshot_wiki(client, JA, WINDOW)

    def test_replay_is_deterministic(self, fake_clock):
        def run():
            transport = ReplayTransport(RECORDED_DIR)
            client = HttpClient(
                transport,
                FetchPolicy(min_request_interval=0.0, user_agent="tests"),
                clock=FakeClock(),
            )
            snapshot = snapshot_wiki(client, JA, WINDOW)
            return canonical.dump_bytes(snapshot.to_dict())

        assert run() == run()
