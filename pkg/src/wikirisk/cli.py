"""Operator command line: ingest, compute, scatter, export, serve.

Exit codes: 0 success, 1 operational failure, 2 usage error.  Every
command is deterministic given the store contents and flags (fixture
mode performs no network access at all).
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field, fields as dataclass_fields
from pathlib import Path
from typing import Optional

import click

from . import engine
from .canonical import dump_bytes, format_real
from .engine import EngineContext, InsufficientDataError
from .ingestion import (
    FetchPolicy,
    HttpClient,
    IngestionError,
    RequestsTransport,
    bundled_data_dir,
    bundled_fixture_dir,
    list_fixture_snapshots,
    load_curated_data,
    load_democracy_index,
    load_fixture_snapshot,
    snapshot_wiki,
)
from .ingestion.policy import BackoffSchedule, DEFAULT_USER_AGENT
from .metrics import DegenerateFitError
from .model import MonthRange, WikiId, WikiSnapshot, default_registry
from .storage import ConflictError, DocumentStore, StoreKey, StoreKind, cohort_id


@dataclass
class FetchConfig:
    max_in_flight: int = 2
    min_request_interval: float = 0.5
    max_retries: int = 3
    backoff_initial: float = 0.5
    backoff_multiplier: float = 2.0
    timeout: float = 30.0


@dataclass
class ServeConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    cors_origin: str = "*"


@dataclass
class Config:
    store_root: str = "./store"
    user_agent: str = DEFAULT_USER_AGENT
    family: str = "wikipedia"
    cohort: list[str] = field(default_factory=list)
    democracy_index_path: Optional[str] = None
    curated_data_path: Optional[str] = None
    min_articles: int = engine.DEFAULT_MIN_ARTICLES
    fetch: FetchConfig = field(default_factory=FetchConfig)
    serve: ServeConfig = field(default_factory=ServeConfig)

    def fetch_policy(self) -> FetchPolicy:
        return FetchPolicy(
            max_in_flight=self.fetch.max_in_flight,
            min_request_interval=self.fetch.min_request_interval,
            max_retries=self.fetch.max_retries,
            backoff=BackoffSchedule(self.fetch.backoff_initial, self.fetch.backoff_multiplier),
            timeout=self.fetch.timeout,
            user_agent=self.user_agent,
        )


def _apply_section(target, data: dict, section: str) -> None:
    known = {f.name for f in dataclass_fields(target)}
    for key, value in data.items():
        if key not in known:
            raise ValueError(f"unknown config key: {section}{key}")
        setattr(target, key, value)


def load_config(path: Optional[str]) -> Config:
    """JSON config with OBSERVATORY_* environment overrides; unknown keys fail fast."""
    config = Config()
    if path is not None:
        data = json.loads(Path(path).read_text("utf-8"))
        if not isinstance(data, dict):
            raise ValueError("config must be a JSON object")
        nested = {"fetch": config.fetch, "serve": config.serve}
        flat = {k: v for k, v in data.items() if k not in nested}
        _apply_section(config, flat, "")
        for name, target in nested.items():
            section = data.get(name)
            if section is not None:
                if not isinstance(section, dict):
                    raise ValueError(f"config section {name!r} must be an object")
                _apply_section(target, section, f"{name}.")
    _apply_env_overrides(config)
    return config


def _apply_env_overrides(config: Config) -> None:
    prefix = "OBSERVATORY_"
    top = {f.name: f for f in dataclass_fields(Config)}
    for env_key, raw in sorted(os.environ.items()):
        if not env_key.startswith(prefix):
            continue
        key = env_key[len(prefix):].lower()
        if key.startswith("fetch_"):
            _set_typed(config.fetch, key[len("fetch_"):], raw, env_key)
        elif key.startswith("serve_"):
            _set_typed(config.serve, key[len("serve_"):], raw, env_key)
        elif key in top:
            _set_typed(config, key, raw, env_key)
        else:
            raise ValueError(f"unknown config override: {env_key}")


def _set_typed(target, name: str, raw: str, env_key: str) -> None:
    known = {f.name: f.type for f in dataclass_fields(target)}
    if name not in known:
        raise ValueError(f"unknown config override: {env_key}")
    current = getattr(target, name)
    if isinstance(current, bool):
        value: object = raw.lower() in ("1", "true", "yes")
    elif isinstance(current, int):
        value = int(raw)
    elif isinstance(current, float):
        value = float(raw)
    elif isinstance(current, list):
        value = [item.strip() for item in raw.split(",") if item.strip()]
    else:
        value = raw
    setattr(target, name, value)


class AppState:
    def __init__(self, config: Config, verbose: bool) -> None:
        self.config = config
        self.verbose = verbose
        self.store = DocumentStore(config.store_root)

    def log(self, message: str) -> None:
        if self.verbose:
            click.echo(message, err=True)


def _parse_window(text: str) -> MonthRange:
    try:
        return MonthRange.parse(text)
    except ValueError as exc:
        raise click.UsageError(f"bad --window: {exc}")


def _engine_context(config: Config) -> EngineContext:
    index = None
    index_path = config.democracy_index_path or str(bundled_data_dir() / "democracy_index.json")
    if Path(index_path).exists():
        index = load_democracy_index(index_path)
    return EngineContext(democracy_index=index)


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON config file.")
@click.option("--store", "store_root", type=click.Path(file_okay=False), default=None,
              help="Store root directory (overrides config).")
@click.option("--verbose", is_flag=True, default=False, help="Log progress to stderr.")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], store_root: Optional[str], verbose: bool) -> None:
    """Knowledge integrity risk observatory."""
    try:
        config = load_config(config_path)
    except (ValueError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"config error: {exc}")
    if store_root is not None:
        config.store_root = store_root
    ctx.obj = AppState(config, verbose)


@cli.command()
@click.option("--window", "window_text", required=True, help='Month window, e.g. "2021-02..2021-05" or "2021-04".')
@click.option("--fixtures", "fixtures_dir", default=None,
              help='Snapshot fixture directory, or "bundled" for the shipped corpus; no network is touched.')
@click.option("--wikis", "wikis_csv", default=None, help="Comma-separated wiki codes (default: config cohort).")
@click.pass_obj
def ingest(state: AppState, window_text: str, fixtures_dir: Optional[str], wikis_csv: Optional[str]) -> None:
    """Capture one snapshot per wiki into the store."""
    window = _parse_window(window_text)
    wikis = [w.strip() for w in wikis_csv.split(",")] if wikis_csv else list(state.config.cohort)
    failures: list[tuple[str, str]] = []
    stored = 0

    if fixtures_dir is not None:
        directory = bundled_fixture_dir() if fixtures_dir == "bundled" else Path(fixtures_dir)
        snapshots: dict[str, WikiSnapshot] = {}
        for path in list_fixture_snapshots(directory):
            try:
                snapshot = load_fixture_snapshot(path)
            except (IngestionError, FileNotFoundError) as exc:
                failures.append((path.name, str(exc)))
                continue
            if snapshot.window.label() != window.label():
                continue
            snapshots[snapshot.wiki.code] = snapshot
        targets = wikis or sorted(snapshots)
        for code in targets:
            snapshot = snapshots.get(code)
            if snapshot is None:
                failures.append((code, f"no fixture snapshot for window {window.label()}"))
                continue
            stored += _store_snapshot(state, snapshot, failures)
    else:
        if not wikis:
            raise click.UsageError("live ingest needs --wikis or a cohort in the config")
        client = HttpClient(RequestsTransport(), state.config.fetch_policy())
        curated_path = state.config.curated_data_path or str(bundled_data_dir() / "curated_data.json")
        curated = load_curated_data(curated_path) if Path(curated_path).exists() else {}
        for code in wikis:
            wiki = WikiId(code, state.config.family)
            external = {"curated": curated[code]} if code in curated else None
            try:
                snapshot = snapshot_wiki(client, wiki, window, external_scores=external)
            except IngestionError as exc:
                failures.append((code, str(exc)))
                continue
            stored += _store_snapshot(state, snapshot, failures)

    click.echo(f"stored {stored} snapshot(s) for {window.label()}")
    if failures:
        click.echo("failures:", err=True)
        for name, reason in failures:
            click.echo(f"  {name}: {reason}", err=True)
        raise SystemExit(1)


def _store_snapshot(state: AppState, snapshot: WikiSnapshot, failures: list[tuple[str, str]]) -> int:
    key = StoreKey(StoreKind.SNAPSHOT, snapshot.wiki.id, snapshot.window)
    try:
        state.store.put(key, snapshot.to_dict())
    except ConflictError as exc:
        failures.append((snapshot.wiki.code, f"conflicts with stored snapshot: {exc}"))
        return 0
    state.log(f"stored {key}")
    return 1


@cli.command()
@click.option("--window", "window_text", required=True)
@click.option("--min-articles", "min_articles", type=int, default=None,
              help="Scatter qualification threshold (default from config).")
@click.pass_obj
def compute(state: AppState, window_text: str, min_articles: Optional[int]) -> None:
    """Compute indicators, the risk matrix and the diversity scatter for a window."""
    window = _parse_window(window_text)
    threshold = min_articles if min_articles is not None else state.config.min_articles
    snapshots = _load_snapshots(state.store, window)
    if not snapshots:
        raise click.ClickException(f"no snapshots stored for {window.label()}")
    registry = default_registry()
    ctx = _engine_context(state.config)

    matrix, values = engine.build_risk_matrix(snapshots, registry, ctx)
    for code, wiki_values in values.items():
        wiki = next(s.wiki for s in snapshots if s.wiki.code == code)
        key = StoreKey(StoreKind.INDICATORS, wiki.id, window)
        state.store.put(key, engine.indicator_document(wiki, window, wiki_values))
    matrix_key = StoreKey(
        StoreKind.MATRIX, cohort_id([s.wiki.id for s in snapshots]), window, matrix.method_version
    )
    state.store.put(matrix_key, engine.matrix_document(matrix))

    scatter_note = ""
    try:
        scatter = engine.entropy_scatter(snapshots, min_articles=threshold, ctx=ctx)
    except (InsufficientDataError, DegenerateFitError) as exc:
        scatter_note = f"; scatter skipped ({exc})"
    else:
        scatter_key = StoreKey(
            StoreKind.SCATTER, cohort_id([s.wiki.id for s in snapshots]), window
        )
        state.store.put(scatter_key, engine.scatter_document(scatter))

    click.echo(
        f"computed {len(values)} indicator document(s) and matrix "
        f"({len(matrix.cohort)} wikis x 8 categories) for {window.label()}{scatter_note}"
    )


def _load_snapshots(store: DocumentStore, window: MonthRange) -> list[WikiSnapshot]:
    snapshots = []
    for key in store.list_keys(kind=StoreKind.SNAPSHOT):
        if key.window.label() != window.label():
            continue
        document = store.get(key)
        if document is not None:
            snapshots.append(WikiSnapshot.from_dict(document))
    return snapshots


@cli.command()
@click.option("--window", "window_text", required=True)
@click.option("--min-articles", "min_articles", type=int, default=None)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.pass_obj
def scatter(state: AppState, window_text: str, min_articles: Optional[int], out_dir: str) -> None:
    """Write scatter.csv and fit.json for external plotting."""
    window = _parse_window(window_text)
    threshold = min_articles if min_articles is not None else state.config.min_articles
    snapshots = _load_snapshots(state.store, window)
    if not snapshots:
        raise click.ClickException(f"no snapshots stored for {window.label()}")
    try:
        result = engine.entropy_scatter(snapshots, min_articles=threshold, ctx=_engine_context(state.config))
    except (InsufficientDataError, DegenerateFitError) as exc:
        raise click.ClickException(str(exc))

    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        _write_scatter_files(out, result)
    except OSError as exc:
        raise click.ClickException(f"cannot write to {out_dir}: {exc}")
    click.echo(f"wrote {out / 'scatter.csv'} and {out / 'fit.json'} ({len(result.points)} wikis)")


def _write_scatter_files(out: Path, result: engine.ScatterResult) -> None:
    lines = ["wiki,edit_entropy,view_entropy"]
    for point in result.points:
        lines.append(f"{point.wiki},{format_real(point.edit_entropy)},{format_real(point.view_entropy)}")
    (out / "scatter.csv").write_text("\n".join(lines) + "\n")
    fit_doc = {
        "slope": result.fit.slope,
        "intercept": result.fit.intercept,
        "r_squared": result.fit.r_squared,
        "n_points": result.fit.n_points,
        "parameters": {"min_articles": result.min_articles, "window": result.window.label()},
    }
    (out / "fit.json").write_bytes(dump_bytes(fit_doc) + b"\n")


@cli.command()
@click.option("--window", "window_text", required=True)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.pass_obj
def export(state: AppState, window_text: str, out_dir: str) -> None:
    """Dump every stored document for a window as canonical JSON files."""
    window = _parse_window(window_text)
    out = Path(out_dir)
    written = 0
    try:
        out.mkdir(parents=True, exist_ok=True)
        for key in state.store.list_keys():
            if key.window.label() != window.label():
                continue
            data = state.store.get_bytes(key)
            if data is None:
                continue
            name = f"{key.kind.value}-{key.subject}-{key.window.label()}-v{key.method_version}.json"
            (out / name).write_bytes(data + b"\n")
            written += 1
    except OSError as exc:
        raise click.ClickException(f"cannot write to {out_dir}: {exc}")
    if written == 0:
        raise click.ClickException(f"nothing stored for {window.label()}")
    click.echo(f"exported {written} document(s) to {out_dir}")


@cli.command()
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.pass_obj
def serve(state: AppState, host: Optional[str], port: Optional[int]) -> None:
    """Serve the read-only API over HTTP."""
    import signal as signal_module
    import threading

    from .api import serve as run_server

    if threading.current_thread() is threading.main_thread():
        # The server re-raises a captured SIGTERM after draining; a drained
        # shutdown is a success, so turn that re-raise into exit 0.
        signal_module.signal(signal_module.SIGTERM, lambda *_: sys.exit(0))

    cfg = state.config.serve
    try:
        run_server(
            state.config.store_root,
            host=host if host is not None else cfg.host,
            port=port if port is not None else cfg.port,
            cors_origin=cfg.cors_origin,
        )
    except OSError as exc:
        raise click.ClickException(f"cannot bind: {exc}")


def main() -> None:
    cli(auto_envvar_prefix=None)


if __name__ == "__main__":
    main()
