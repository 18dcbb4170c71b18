import datetime as dt

import pytest

from wikirisk import canonical
from wikirisk.model import MonthRange, WikiId
from wikirisk.storage import (
    ConflictError,
    DocumentStore,
    IntegrityError,
    Receipt,
    SchemaViolationError,
    StoreKey,
    StoreKind,
    cohort_id,
)

W1 = MonthRange.parse("2021-02..2021-05")
W2 = MonthRange.parse("2021-05..2021-08")
W3 = MonthRange.parse("2021-08..2021-11")


def snapshot_doc(window=W1, captured="2021-05-02T04:10:00Z", wiki="ja"):
    return {
        "schema_version": 1,
        "wiki": wiki,
        "family": "wikipedia",
        "window": window.to_dict(),
        "captured_at": captured,
        "site_stats": {"articles": 10, "total_pages": 20, "edits": 30, "editors": 4,
                       "active_editors": 2},
        "group_counts": None,
        "governance_stats": None,
        "distributions": [],
        "external_scores": {},
        "warnings": [],
        "fixture_origin": True,
    }


def indicators_doc(window=W1, wiki="ja", value=1.5, indicator="articles_count"):
    return {
        "schema_version": 1,
        "wiki": wiki,
        "family": "wikipedia",
        "window": window.to_dict(),
        "values": [
            {
                "indicator_id": indicator,
                "wiki": wiki,
                "family": "wikipedia",
                "window": window.to_dict(),
                "kind": "count",
                "value": value,
                "provenance": {"snapshots": [], "method_version": 1,
                               "computed_at": "2021-05-02T04:10:00Z"},
            }
        ],
    }


class TestStoreKey:
    def test_canonical_round_trip(self):
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1, 2)
        assert StoreKey.parse(key.canonical()) == key
        assert key.canonical() == "snapshot/ja.wikipedia/2021-02..2021-05/2"

    def test_bad_subject_rejected(self):
        with pytest.raises(ValueError):
            StoreKey(StoreKind.SNAPSHOT, "ja wikipedia", W1)

    def test_cohort_id_deterministic(self):
        a = cohort_id(["ja.wikipedia", "en.wikipedia"])
        b = cohort_id(["en.wikipedia", "ja.wikipedia"])
        assert a == b and a.startswith("cohort-") and len(a) == len("cohort-") + 12


class TestPutGet:
    def test_round_trip(self, tmp_path):
        store = DocumentStore(tmp_path)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1)
        doc = snapshot_doc()
        store.put(key, doc)
        assert store.get(key) == canonical.loads(canonical.dump_bytes(doc))

    def test_missing_key_absent(self, tmp_path):
        store = DocumentStore(tmp_path)
        assert store.get(StoreKey(StoreKind.SNAPSHOT, "xx.wikipedia", W1)) is None

    def test_idempotent_identical_put(self, tmp_path):
        store = DocumentStore(tmp_path)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1)
        r1 = store.put(key, snapshot_doc())
        r2 = store.put(key, snapshot_doc())
        assert r1 == r2 == Receipt(key=key, sha256=r1.sha256)

    def test_conflicting_content_rejected(self, tmp_path):
        store = DocumentStore(tmp_path)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1)
        store.put(key, snapshot_doc())
        altered = snapshot_doc()
        altered["site_stats"]["articles"] = 11
        with pytest.raises(ConflictError):
            store.put(key, altered)

    def test_fixture_origin_preserved(self, tmp_path):
        store = DocumentStore(tmp_path)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1)
        store.put(key, snapshot_doc())
        assert store.get(key)["fixture_origin"] is True

    def test_corruption_surfaces_as_integrity_error(self, tmp_path):
        store = DocumentStore(tmp_path)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1)
        store.put(key, snapshot_doc())
        path = store._doc_path(key)
        path.write_bytes(path.read_bytes().replace(b'"articles":10', b'"articles":99'))
        with pytest.raises(IntegrityError):
            store.get(key)

    def test_schema_violation(self, tmp_path):
        store = DocumentStore(tmp_path)
        key = StoreKey(StoreKind.MATRIX, "cohort-abc", W1)
        with pytest.raises(SchemaViolationError):
            store.put(key, {"schema_version": 1, "window": W1.to_dict()})

    def test_window_mismatch_rejected(self, tmp_path):
        store = DocumentStore(tmp_path)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W2)
        with pytest.raises(SchemaViolationError, match="window"):
            store.put(key, snapshot_doc(window=W1))


class TestCapturedAtMonotone:
    def test_later_window_needs_later_capture(self, tmp_path):
        store = DocumentStore(tmp_path)
        store.put(StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1),
                  snapshot_doc(W1, "2021-05-02T00:00:00Z"))
        with pytest.raises(SchemaViolationError, match="monotone"):
            store.put(StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W2),
                      snapshot_doc(W2, "2021-05-01T00:00:00Z"))
        store.put(StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W2),
                  snapshot_doc(W2, "2021-08-02T00:00:00Z"))

    def test_other_wikis_unconstrained(self, tmp_path):
        store = DocumentStore(tmp_path)
        store.put(StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1),
                  snapshot_doc(W1, "2021-05-02T00:00:00Z"))
        store.put(StoreKey(StoreKind.SNAPSHOT, "en.wikipedia", W2),
                  snapshot_doc(W2, "2021-05-01T00:00:00Z", wiki="en"))


class TestSeries:
    def test_three_windows_ascending(self, tmp_path):
        store = DocumentStore(tmp_path)
        for window, value in ((W3, 3.0), (W1, 1.0), (W2, 2.0)):
            store.put(StoreKey(StoreKind.INDICATORS, "ja.wikipedia", window),
                      indicators_doc(window, value=value))
        series = store.series(WikiId("ja"), "articles_count")
        assert [(w.label(), v) for w, v in series] == [
            ("2021-02..2021-05", 1.0), ("2021-05..2021-08", 2.0), ("2021-08..2021-11", 3.0),
        ]

    def test_gap_preserved(self, tmp_path):
        store = DocumentStore(tmp_path)
        for window, value in ((W1, 1.0), (W3, 3.0)):
            store.put(StoreKey(StoreKind.INDICATORS, "ja.wikipedia", window),
                      indicators_doc(window, value=value))
        series = store.series(WikiId("ja"), "articles_count")
        assert len(series) == 2
        assert series[0][0].label() == "2021-02..2021-05"
        assert series[1][0].label() == "2021-08..2021-11"

    def test_empty_store(self, tmp_path):
        assert DocumentStore(tmp_path).series(WikiId("ja"), "articles_count") == []

    def test_range_filter_contains(self, tmp_path):
        store = DocumentStore(tmp_path)
        for window, value in ((W1, 1.0), (W2, 2.0), (W3, 3.0)):
            store.put(StoreKey(StoreKind.INDICATORS, "ja.wikipedia", window),
                      indicators_doc(window, value=value))
        span = MonthRange.parse("2021-02..2021-08")
        series = store.series(WikiId("ja"), "articles_count", span)
        assert [v for _, v in series] == [1.0, 2.0]

    def test_missing_indicator_skipped(self, tmp_path):
        store = DocumentStore(tmp_path)
        store.put(StoreKey(StoreKind.INDICATORS, "ja.wikipedia", W1), indicators_doc(W1))
        assert store.series(WikiId("ja"), "does_not_exist") == []


class _Crash(RuntimeError):
    pass


FAULT_POINTS = ["begin", "doc-tmp-written", "sha-tmp-written", "sha-visible", "done"]


class TestCrashConsistency:
    @pytest.mark.parametrize("fault_point", FAULT_POINTS[:-1])
    def test_interrupted_put_leaves_prior_state(self, tmp_path, fault_point):
        def hook(label):
            if label == fault_point:
                raise _Crash(label)

        store = DocumentStore(tmp_path, fault_hook=hook)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1)
        with pytest.raises(_Crash):
            store.put(key, snapshot_doc())
        clean = DocumentStore(tmp_path)
        assert clean.get(key) is None  # prior state: nothing stored, never a partial doc

    @pytest.mark.parametrize("fault_point", FAULT_POINTS[:-1])
    def test_retry_after_crash_succeeds(self, tmp_path, fault_point):
        fired = {"done": False}

        def hook(label):
            if label == fault_point and not fired["done"]:
                fired["done"] = True
                raise _Crash(label)

        store = DocumentStore(tmp_path, fault_hook=hook)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1)
        with pytest.raises(_Crash):
            store.put(key, snapshot_doc())
        store.put(key, snapshot_doc())
        assert DocumentStore(tmp_path).get(key)["wiki"] == "ja"

    def test_completed_put_survives(self, tmp_path):
        store = DocumentStore(tmp_path, fault_hook=lambda label: None)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1)
        store.put(key, snapshot_doc())
        assert DocumentStore(tmp_path).get(key) is not None


class TestWriteCounter:
    def test_counts_every_put(self, tmp_path):
        store = DocumentStore(tmp_path)
        key = StoreKey(StoreKind.SNAPSHOT, "ja.wikipedia", W1)
        assert store.write_calls == 0
        store.put(key, snapshot_doc())
        store.put(key, snapshot_doc())
        assert store.write_calls == 2
        store.get(key)
        store.list_keys()
        assert store.write_calls == 2
