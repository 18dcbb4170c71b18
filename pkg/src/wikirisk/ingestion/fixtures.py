"""Fixture, curated-data and index file loading for offline runs."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Mapping

from ..model import SNAPSHOT_SCHEMA_VERSION, WikiSnapshot
from .errors import ParseError, SchemaVersionMismatch

SNAPSHOT_SUFFIX = ".snapshot.json"


def bundled_data_dir() -> Path:
    """Directory of the data files shipped with the package."""
    return Path(str(resources.files("wikirisk") / "data"))


def bundled_fixture_dir() -> Path:
    return bundled_data_dir() / "fixtures" / "snapshots"


def load_fixture_snapshot(path: Path | str) -> WikiSnapshot:
    """Read one snapshot fixture file; the result is marked fixture_origin."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    try:
        data = json.loads(path.read_text("utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: snapshot document must be an object")
    version = data.get("schema_version")
    if version != SNAPSHOT_SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"{path}: schema_version {version!r}, expected {SNAPSHOT_SCHEMA_VERSION}"
        )
    data = dict(data)
    data["fixture_origin"] = True
    try:
        return WikiSnapshot.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def list_fixture_snapshots(directory: Path | str) -> list[Path]:
    return sorted(Path(directory).glob(f"*{SNAPSHOT_SUFFIX}"))


def load_curated_data(path: Path | str) -> dict[str, dict[str, float]]:
    """Operator-curated per-wiki counts (patrolling tools, steward coverage).

    File shape: {wiki code: {"patrolling_tools": n, "stewards_with_language": m,
    "note": "..."}}; the provenance note is kept out of the score table.
    """
    raw = json.loads(Path(path).read_text("utf-8"))
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: curated data must be an object")
    out: dict[str, dict[str, float]] = {}
    for wiki, entry in raw.items():
        if not isinstance(entry, dict):
            raise ParseError(f"{path}: entry for {wiki!r} must be an object")
        table = {
            key: float(value)
            for key, value in entry.items()
            if key != "note" and isinstance(value, (int, float))
        }
        out[str(wiki)] = table
    return out


def load_democracy_index(path: Path | str) -> dict[str, float]:
    """Per-country democratic-quality scores in [0, 1]."""
    raw = json.loads(Path(path).read_text("utf-8"))
    scores: Mapping[str, object]
    if isinstance(raw, dict) and "scores" in raw:
        scores = raw["scores"]
    elif isinstance(raw, dict):
        scores = raw
    else:
        raise ParseError(f"{path}: democracy index must be an object")
    out: dict[str, float] = {}
    for country, value in scores.items():
        score = float(value)  # type: ignore[arg-type]
        if not 0.0 <= score <= 1.0:
            raise ParseError(f"{path}: score for {country} outside [0, 1]: {score}")
        out[str(country)] = score
    return out
