#!/usr/bin/env python3
"""Freeze golden outputs under tests/data/golden/.

Two golden sets:

* live/  - snapshots parsed from the recorded replay corpus; the replay
  test must reproduce these bytes exactly.
* e2e/ + e2e_store_manifest.json - documents and the store content hash
  manifest produced by the fixture ingest -> compute -> scatter pipeline.

Regenerate only when an intentional format or pipeline change is made;
review the diff like any other behavior change.
"""

from __future__ import annotations

import datetime as dt
import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))
sys.path.insert(0, str(REPO / "tests"))

from click.testing import CliRunner

from wikirisk import canonical
from wikirisk.cli import cli
from wikirisk.ingestion import FetchPolicy, HttpClient, ReplayTransport, snapshot_wiki
from wikirisk.model import MonthRange, WikiId

GOLDEN = REPO / "tests" / "data" / "golden"
RECORDED = REPO / "tests" / "data" / "recorded"
WINDOW = "2021-02..2021-05"


class FrozenClock:
    """Mirror of the test FakeClock: advancing monotonic, fixed wall time."""

    def __init__(self) -> None:
        self.now = 1000.0

    def monotonic(self) -> float:
        return self.now

    def sleep(self, seconds: float) -> None:
        self.now += seconds

    def utcnow(self) -> dt.datetime:
        return dt.datetime(2021, 5, 2, 6, 0, 0, tzinfo=dt.timezone.utc)


def golden_live() -> None:
    out = GOLDEN / "live"
    out.mkdir(parents=True, exist_ok=True)
    transport = ReplayTransport(RECORDED)
    client = HttpClient(
        transport,
        FetchPolicy(min_request_interval=0.1, max_retries=2, user_agent="tests"),
        clock=FrozenClock(),
    )
    for code in ("ja", "war"):
        snapshot = snapshot_wiki(client, WikiId(code), MonthRange.parse(WINDOW))
        path = out / f"{code}.wikipedia.{WINDOW}.json"
        path.write_bytes(canonical.dump_bytes(snapshot.to_dict()))
        print(f"wrote {path}")


def golden_e2e() -> None:
    out = GOLDEN / "e2e"
    out.mkdir(parents=True, exist_ok=True)
    runner = CliRunner()
    with tempfile.TemporaryDirectory() as tmp:
        store = Path(tmp) / "store"
        scatter_out = Path(tmp) / "scatter"
        for args in (
            ["--store", str(store), "ingest", "--window", WINDOW, "--fixtures", "bundled"],
            ["--store", str(store), "compute", "--window", WINDOW],
            ["--store", str(store), "scatter", "--window", WINDOW, "--out", str(scatter_out)],
        ):
            result = runner.invoke(cli, args, catch_exceptions=False)
            if result.exit_code != 0:
                raise SystemExit(f"pipeline step failed: {args}\n{result.output}")

        manifest = {
            str(path.relative_to(store)): canonical.sha256_hex(path.read_bytes())
            for path in sorted(store.rglob("*"))
            if path.is_file()
        }
        (GOLDEN / "e2e_store_manifest.json").write_text(
            json.dumps(manifest, indent=1, sort_keys=True) + "\n"
        )
        print(f"manifest: {len(manifest)} store files")

        copies = {
            "matrix.json": next(store.glob("matrix/*/*/1.json")),
            "scatter.json": next(store.glob("scatter/*/*/1.json")),
            "ja.indicators.json": store / "indicators" / "ja.wikipedia" / WINDOW / "1.json",
            "scatter.csv": scatter_out / "scatter.csv",
            "fit.json": scatter_out / "fit.json",
        }
        for name, source in copies.items():
            shutil.copyfile(source, out / name)
            print(f"wrote {out / name}")


def main() -> None:
    golden_live()
    golden_e2e()


if __name__ == "__main__":
    main()
