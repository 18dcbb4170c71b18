"""Acceptance suite: one test per release criterion.

Each test prints a PASS line (visible with ``pytest -s`` or in verbose
test names) and enforces the criterion's tolerance and runtime bound.
"""

import datetime as dt
import json
import math
import random
import time

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient
from jsonschema import validate

from conftest import GOLDEN_DIR, RECORDED_DIR, WINDOW_LABEL, FakeClock, ScriptedTransport, response
from test_api import (
    ERROR_SCHEMA,
    INDICATORS_DOC_SCHEMA,
    MATRIX_SCHEMA,
    RANKINGS_SCHEMA,
    SCATTER_SCHEMA,
    SERIES_SCHEMA,
    TAXONOMY_SCHEMA,
    WIKIS_SCHEMA,
)
from test_cli import run_pipeline, store_manifest
from wikirisk import canonical, engine, metrics
from wikirisk.api import create_app
from wikirisk.cli import cli
from wikirisk.engine import EngineContext, entropy_scatter
from wikirisk.ingestion import FetchPolicy, HttpClient, ReplayTransport, snapshot_wiki
from wikirisk.ingestion.fixtures import bundled_fixture_dir, list_fixture_snapshots, load_fixture_snapshot
from wikirisk.ingestion.policy import BackoffSchedule
from wikirisk.model import (
    CountryDistribution,
    MonthRange,
    RiskPolarity,
    SiteStats,
    Subject,
    WikiId,
    WikiSnapshot,
    default_registry,
)
from wikirisk.storage import DocumentStore, StoreKey, StoreKind

UTC = dt.timezone.utc
WINDOW = MonthRange.parse(WINDOW_LABEL)


def report(criterion: str) -> None:
    print(f"ACCEPTANCE PASS: {criterion}")


def test_entropy_oracle_equivalence():
    """1,000 random distributions match the direct -sum(p ln p) oracle within 1e-12."""
    started = time.monotonic()
    rng = random.Random(1001)
    for case in range(1000):
        support = rng.randint(1, 200)
        counts = {f"k{i}": rng.uniform(1e-6, 1e6) for i in range(support)}
        dist = metrics.normalize(counts)
        oracle = -sum(p * math.log(p) for p in dist.entries.values() if p > 0)
        assert abs(metrics.shannon_entropy(dist).nats - oracle) <= 1e-12, case
    for n in (1, 2, 3, 7, 50, 200):
        uniform = metrics.normalize({f"k{i}": 1.0 for i in range(n)})
        assert abs(metrics.shannon_entropy(uniform).nats - math.log(n)) <= 1e-12, n
    elapsed = time.monotonic() - started
    assert elapsed < 5.0, f"took {elapsed:.2f}s"
    report(f"entropy oracle equivalence (1000 cases, {elapsed:.2f}s)")


def test_entropy_bounds_and_merge_monotonicity():
    """Bounds and merge monotonicity hold over 10,000 random distributions."""
    rng = random.Random(2002)
    bounds_cases = merge_cases = 0
    while bounds_cases + merge_cases < 10_000:
        support = rng.randint(1, 40)
        counts = {f"k{i}": rng.uniform(0.0, 100.0) for i in range(support)}
        if not any(v > 0 for v in counts.values()):
            counts["k0"] = 1.0
        dist = metrics.normalize(counts)
        s = metrics.shannon_entropy(dist).nats
        assert 0.0 <= s <= math.log(dist.support_size) + 1e-9
        bounds_cases += 1
        if dist.support_size >= 2:
            keys = list(dist.entries)
            a, b = rng.sample(keys, 2)
            merged = dict(dist.entries)
            merged[a] = merged[a] + merged.pop(b)
            merged_s = metrics.shannon_entropy(metrics.normalize(merged)).nats
            assert merged_s <= s + 1e-9
            merge_cases += 1
    report(f"entropy bounds + merge monotonicity ({bounds_cases + merge_cases} cases)")


def test_figure_ordinal_reproduction():
    """Bundled cohort reproduces the published geographic-diversity orderings."""
    started = time.monotonic()
    snapshots = [load_fixture_snapshot(p) for p in list_fixture_snapshots(bundled_fixture_dir())]
    result = entropy_scatter(snapshots, min_articles=500_000)
    view = {p.wiki: p.view_entropy for p in result.points}
    edit = {p.wiki: p.edit_entropy for p in result.points}

    def median(values):
        ordered = sorted(values)
        mid = len(ordered) // 2
        return ordered[mid] if len(ordered) % 2 else (ordered[mid - 1] + ordered[mid]) / 2

    view_median, edit_median = median(view.values()), median(edit.values())
    # (a) strictly minimal view entropy for ja
    assert all(view["ja"] < v for w, v in view.items() if w != "ja")
    # (b) en, es, ar above the cohort median on both axes
    for code in ("en", "es", "ar"):
        assert edit[code] > edit_median, code
        assert view[code] > view_median, code
    # (c) ceb and war: high edit diversity, low view diversity
    for code in ("ceb", "war"):
        assert edit[code] > edit_median, code
        assert view[code] < view_median, code
    # (d) arz: views strictly more diverse than edits
    assert view["arz"] > edit["arz"]
    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"took {elapsed:.2f}s"
    report(f"figure ordinal reproduction ({len(result.points)} wikis, {elapsed:.2f}s)")


def test_regression_against_normal_equations():
    """linear_fit equals closed-form normal equations within 1e-9 on 100 random sets."""
    rng = random.Random(3003)
    checked = 0
    while checked < 100:
        n = rng.randint(2, 60)
        points = [(rng.uniform(-100, 100), rng.uniform(-100, 100)) for _ in range(n)]
        xs = [x for x, _ in points]
        if max(xs) - min(xs) < 1e-3:
            continue
        sx = sum(xs)
        sy = sum(y for _, y in points)
        sxx = sum(x * x for x in xs)
        sxy = sum(x * y for x, y in points)
        denom = n * sxx - sx * sx
        slope = (n * sxy - sx * sy) / denom
        intercept = (sy - slope * sx) / n
        fit = metrics.linear_fit(points)
        assert abs(fit.slope - slope) <= 1e-9
        assert abs(fit.intercept - intercept) <= 1e-9
        checked += 1
    snapshots = [load_fixture_snapshot(p) for p in list_fixture_snapshots(bundled_fixture_dir())]
    fixture_fit = entropy_scatter(snapshots).fit
    assert fixture_fit.slope > 0
    report(f"regression normal-equation equivalence (100 sets; fixture slope {fixture_fit.slope:.3f} > 0)")


def test_ingestion_replay_and_scheduling_contracts():
    """Replay is byte-identical to goldens; pacing and backoff run on the injected clock."""
    for code in ("ja", "war"):
        clock = FakeClock()
        client = HttpClient(
            ReplayTransport(RECORDED_DIR),
            FetchPolicy(min_request_interval=0.1, max_retries=2, user_agent="tests"),
            clock=clock,
        )
        snapshot = snapshot_wiki(client, WikiId(code), WINDOW)
        produced = canonical.dump_bytes(snapshot.to_dict())
        golden = (GOLDEN_DIR / "live" / f"{code}.wikipedia.{WINDOW_LABEL}.json").read_bytes()
        assert produced == golden, f"{code} snapshot drifted from golden bytes"

    # backoff: two 503s then success, delays from the schedule, no real sleeping
    wall_started = time.monotonic()
    scripted = ScriptedTransport()
    url = "https://example.org/flaky"
    scripted.script(url, response(503), response(503), response(200, {}))
    clock = FakeClock()
    client = HttpClient(
        scripted,
        FetchPolicy(min_request_interval=0.25, max_retries=3,
                    backoff=BackoffSchedule(0.5, 2.0), user_agent="tests"),
        clock=clock,
    )
    client.get(url)
    assert client.telemetry.last_retry_count == 2
    backoff_sleeps = [s for s in clock.sleeps if s in (0.5, 1.0)]
    assert backoff_sleeps == [0.5, 1.0]

    # pacing: consecutive requests to one host are spaced by the interval
    scripted.script("https://example.org/paced", response(200, {}))
    marks = []
    for _ in range(3):
        client.get("https://example.org/paced")
        marks.append(clock.monotonic())
    gaps = [b - a for a, b in zip(marks, marks[1:])]
    assert all(gap >= 0.25 - 1e-9 for gap in gaps)
    assert time.monotonic() - wall_started < 2.0, "scheduling tests must not really sleep"
    report("ingestion replay bytes + injected-clock scheduling contracts")


def test_risk_engine_property_suites():
    """Percentile bounds, polarity monotonicity, permutation and scale invariance: 10,000 cases."""
    started = time.monotonic()
    rng = random.Random(4004)
    registry = default_registry()
    higher = next(d for d in registry if d.risk_polarity is RiskPolarity.HIGHER_IS_RISKIER)
    lower = next(d for d in registry if d.risk_polarity is RiskPolarity.LOWER_IS_RISKIER)
    cases = 0

    for _ in range(3000):  # bounds
        cohort = [rng.uniform(-1e3, 1e3) for _ in range(rng.randint(1, 25))]
        value = rng.choice(cohort) if rng.random() < 0.5 else rng.uniform(-1e3, 1e3)
        for defn in (higher, lower):
            risk = engine.risk_percentile(defn, value, cohort)
            assert 0.0 <= risk <= 1.0
        cases += 1

    for _ in range(3000):  # polarity monotonicity
        cohort = [rng.uniform(0, 100) for _ in range(rng.randint(1, 25))]
        a, b = sorted((rng.uniform(0, 100), rng.uniform(0, 100)))
        assert engine.risk_percentile(higher, a, cohort) <= engine.risk_percentile(higher, b, cohort) + 1e-12
        assert engine.risk_percentile(lower, a, cohort) >= engine.risk_percentile(lower, b, cohort) - 1e-12
        cases += 1

    for _ in range(3000):  # cohort permutation invariance
        cohort = [rng.uniform(0, 100) for _ in range(rng.randint(1, 25))]
        value = rng.choice(cohort)
        shuffled = list(cohort)
        rng.shuffle(shuffled)
        assert engine.risk_percentile(higher, value, cohort) == pytest.approx(
            engine.risk_percentile(higher, value, shuffled), abs=1e-15
        )
        cases += 1

    def scatter_points(scale_views, scale_edits):
        snapshots = []
        for code, shares in (("aa", [6.0, 3.0, 1.0]), ("bb", [8.0, 1.5, 0.5])):
            entries_v = {"US": shares[0] * scale_views, "GB": shares[1] * scale_views,
                         "FR": shares[2] * scale_views}
            entries_e = {"US": shares[2] * scale_edits, "GB": shares[1] * scale_edits,
                         "FR": shares[0] * scale_edits}
            months = list(WINDOW.months())
            dists = [CountryDistribution(Subject.VIEWS, MonthRange.single(m), entries_v) for m in months]
            dists += [CountryDistribution(Subject.EDITS, MonthRange.single(m), entries_e) for m in months]
            snapshots.append(WikiSnapshot(
                wiki=WikiId(code), window=WINDOW,
                captured_at=dt.datetime(2021, 5, 2, tzinfo=UTC),
                site_stats=SiteStats(600_000, 900_000, 1_000_000, 10_000, 500),
                distributions=tuple(dists),
            ))
        return entropy_scatter(snapshots).points

    base_points = scatter_points(1.0, 1.0)
    for _ in range(1000):  # scale invariance of scatter points
        lam_v = math.exp(rng.uniform(-6, 6))
        lam_e = math.exp(rng.uniform(-6, 6))
        for base, scaled in zip(base_points, scatter_points(lam_v, lam_e)):
            assert math.isclose(base.edit_entropy, scaled.edit_entropy, rel_tol=1e-12, abs_tol=1e-12)
            assert math.isclose(base.view_entropy, scaled.view_entropy, rel_tol=1e-12, abs_tol=1e-12)
        cases += 1

    elapsed = time.monotonic() - started
    assert cases == 10_000
    assert elapsed < 30.0, f"took {elapsed:.2f}s"
    report(f"risk-engine property suites (10000 cases, {elapsed:.2f}s)")


def test_end_to_end_golden_run(tmp_path):
    """Fixture ingest -> compute -> scatter is byte-identical to goldens and idempotent."""
    store = tmp_path / "store"
    scatter_out = tmp_path / "scatter"
    run_pipeline(store, scatter_out)

    golden_manifest = json.loads((GOLDEN_DIR / "e2e_store_manifest.json").read_text())
    assert store_manifest(store) == golden_manifest
    for name, path in (
        ("matrix.json", next(store.glob("matrix/*/*/1.json"))),
        ("scatter.json", next(store.glob("scatter/*/*/1.json"))),
        ("ja.indicators.json", store / "indicators" / "ja.wikipedia" / WINDOW_LABEL / "1.json"),
        ("scatter.csv", scatter_out / "scatter.csv"),
        ("fit.json", scatter_out / "fit.json"),
    ):
        assert path.read_bytes() == (GOLDEN_DIR / "e2e" / name).read_bytes(), name

    run_pipeline(store)  # rerun: identical puts, no conflicts, store unchanged
    assert store_manifest(store) == golden_manifest
    report("end-to-end golden run, idempotent rerun")


def test_storage_crash_consistency(tmp_path):
    """No fault point can make get() observe a partial document."""

    class Crash(RuntimeError):
        pass

    fault_points = ["begin", "doc-tmp-written", "sha-tmp-written", "sha-visible"]
    document = {
        "schema_version": 1, "wiki": "ja", "family": "wikipedia",
        "window": WINDOW.to_dict(), "captured_at": "2021-05-02T04:10:00Z",
        "site_stats": {"articles": 1, "total_pages": 2, "edits": 3, "editors": 4,
                       "active_editors": 1},
        "group_counts": None, "governance_stats": None, "distributions": [],
        "external_scores": {}, "warnings": [], "fixture_origin": True,
    }
    for i, point in enumerate(fault_points):
        root = tmp_path / f"faulted-{i}"

        def hook(label, point=point):
            if label == point:
                raise Crash(label)

        store = DocumentStore(root, fault_hook=hook)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", WINDOW)
        with pytest.raises(Crash):
            store.put(key, document)
        after = DocumentStore(root)
        assert after.get(key) is None  # full prior state, never a torn document
        after.put(key, document)
        assert after.get(key) == canonical.loads(canonical.dump_bytes(document))
    report(f"storage crash consistency ({len(fault_points)} fault points)")


def test_api_contract_sweep(tmp_path):
    """Every endpoint returns schema-valid bodies; unknown wiki 404s; zero store writes."""
    store_dir = tmp_path / "store"
    run_pipeline(store_dir)
    store = DocumentStore(store_dir)
    writes_before = store.write_calls
    app = create_app(store)
    with TestClient(app) as client:
        checks = [
            ("/api/v1/taxonomy", 200, TAXONOMY_SCHEMA),
            ("/api/v1/wikis", 200, WIKIS_SCHEMA),
            (f"/api/v1/wikis/ja/indicators?window={WINDOW_LABEL}", 200, INDICATORS_DOC_SCHEMA),
            ("/api/v1/wikis/ja/series/views_by_country_entropy", 200, SERIES_SCHEMA),
            (f"/api/v1/matrix?window={WINDOW_LABEL}", 200, MATRIX_SCHEMA),
            (f"/api/v1/rankings/blocked_account_ratio?window={WINDOW_LABEL}", 200, RANKINGS_SCHEMA),
            (f"/api/v1/scatter?window={WINDOW_LABEL}", 200, SCATTER_SCHEMA),
            (f"/api/v1/scatter?window={WINDOW_LABEL}&min_articles=3000000", 200, SCATTER_SCHEMA),
            ("/api/v1/wikis/zz/indicators", 404, ERROR_SCHEMA),
            ("/api/v1/wikis/ja/series/bogus_indicator", 404, ERROR_SCHEMA),
            (f"/api/v1/scatter?window={WINDOW_LABEL}&min_articles=0", 422, ERROR_SCHEMA),
            (f"/api/v1/scatter?window={WINDOW_LABEL}&min_articles={10**12}", 409, ERROR_SCHEMA),
        ]
        for path, expected_status, schema in checks:
            resp = client.get(path)
            assert resp.status_code == expected_status, path
            validate(resp.json(), schema)
            assert resp.headers["x-api-version"] == "1"
        unknown = client.get("/api/v1/wikis/zz/indicators")
        assert unknown.json()["code"] == "unknown_wiki"
    assert store.write_calls == writes_before, "endpoint sweep must not write to the store"
    report(f"API contract sweep ({len(checks)} checks, 0 writes)")
