"""Read-only HTTP facade over the document store.

The service never writes: ingestion and computation happen through the
CLI, and every endpoint serves stored documents (or pure functions of
them).  All bodies are canonical JSON so repeated calls over an
unchanged store return identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import canonical, engine
from .engine import EngineContext, InsufficientDataError
from .metrics import DegenerateFitError, EmptyCohortError
from .model import (
    IndicatorDefinition,
    MonthRange,
    WikiId,
    WikiSnapshot,
    default_registry,
    taxonomy,
)
from .storage import DocumentStore, StoreKey, StoreKind

API_VERSION = "1"


@dataclass(frozen=True)
class ApiError(Exception):
    """Error payload carried by every non-2xx response."""

    status: int
    code: str
    message: str

    def body(self) -> bytes:
        return canonical.dump_bytes({"code": self.code, "message": self.message})


def _json_response(document, status: int = 200) -> Response:
    return Response(content=canonical.dump_bytes(document), status_code=status, media_type="application/json")


def _error_response(error: ApiError) -> Response:
    return Response(content=error.body(), status_code=error.status, media_type="application/json")


def create_app(
    store: DocumentStore,
    registry: Optional[list[IndicatorDefinition]] = None,
    cors_origin: str = "*",
) -> FastAPI:
    registry = registry if registry is not None else default_registry()
    registry_by_id = {defn.id: defn for defn in registry}
    app = FastAPI(title="knowledge integrity risk observatory", openapi_url=None)

    # -- plumbing -------------------------------------------------------------

    @app.middleware("http")
    async def stamp_headers(request: Request, call_next):
        response = await call_next(request)
        response.headers["x-api-version"] = API_VERSION
        response.headers["access-control-allow-origin"] = cors_origin
        return response

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return _error_response(exc)

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_error(request: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else "http_error"
        return _error_response(ApiError(exc.status_code, code, str(exc.detail)))

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return _error_response(ApiError(422, "invalid_parameter", str(exc.errors())))

    # -- helpers ---------------------------------------------------------------

    def snapshot_subjects() -> list[str]:
        return sorted({key.subject for key in store.list_keys(kind=StoreKind.SNAPSHOT)})

    def resolve_wiki(code: str) -> WikiId:
        for subject in snapshot_subjects():
            wiki = WikiId.parse(subject)
            if wiki.code == code:
                return wiki
        raise ApiError(404, "unknown_wiki", f"no data for wiki {code!r}")

    def parse_window(raw: Optional[str]) -> Optional[MonthRange]:
        if raw is None:
            return None
        try:
            return MonthRange.parse(raw)
        except ValueError as exc:
            raise ApiError(422, "invalid_parameter", f"bad window: {exc}")

    def latest_window(kind: StoreKind, subject: Optional[str] = None) -> MonthRange:
        keys = store.list_keys(kind=kind, subject=subject)
        if not keys:
            raise ApiError(404, "not_computed", f"no {kind.value} documents stored")
        return max(keys, key=lambda k: k.window.start).window

    def load_snapshots(window: MonthRange):
        from .model import WikiSnapshot

        snapshots = []
        for key in store.list_keys(kind=StoreKind.SNAPSHOT):
            if key.window.label() != window.label():
                continue
            document = store.get(key)
            if document is not None:
                snapshots.append(WikiSnapshot.from_dict(document))
        return snapshots

    def pagination(limit: Optional[str], offset: Optional[str]) -> tuple[int, int]:
        try:
            limit_n = int(limit) if limit is not None else 100
            offset_n = int(offset) if offset is not None else 0
        except ValueError:
            raise ApiError(422, "invalid_parameter", "limit and offset must be integers")
        if limit_n < 1 or offset_n < 0:
            raise ApiError(422, "invalid_parameter", "limit must be >= 1 and offset >= 0")
        return limit_n, offset_n

    # -- endpoints ---------------------------------------------------------------

    @app.get("/api/v1/health")
    async def health():
        return _json_response(
            {"status": "ok", "documents": len(store.list_keys()), "api_version": API_VERSION}
        )

    @app.get("/api/v1/taxonomy")
    async def get_taxonomy():
        return _json_response(
            {
                "categories": [
                    {"id": leaf.value, "origin": leaf.origin.value, "subgroup": leaf.subgroup.value}
                    for leaf in taxonomy()
                ]
            }
        )

    @app.get("/api/v1/indicators")
    async def get_indicators():
        return _json_response({"indicators": [defn.to_dict() for defn in registry]})

    @app.get("/api/v1/wikis")
    async def get_wikis(limit: Optional[str] = None, offset: Optional[str] = None):
        limit_n, offset_n = pagination(limit, offset)
        wikis = []
        for subject in snapshot_subjects():
            wiki = WikiId.parse(subject)
            windows = [
                key.window.label() for key in store.list_keys(kind=StoreKind.SNAPSHOT, subject=subject)
            ]
            wikis.append({"code": wiki.code, "family": wiki.family, "windows": windows})
        page = wikis[offset_n : offset_n + limit_n]
        return _json_response(
            {"wikis": page, "total": len(wikis), "limit": limit_n, "offset": offset_n}
        )

    @app.get("/api/v1/wikis/{code}/indicators")
    async def get_wiki_indicators(code: str, window: Optional[str] = None):
        wiki = resolve_wiki(code)
        window_range = parse_window(window) or latest_window(StoreKind.INDICATORS, wiki.id)
        key = StoreKey(StoreKind.INDICATORS, wiki.id, window_range)
        data = store.get_bytes(key)
        if data is None:
            raise ApiError(
                404, "not_computed", f"no indicators stored for {wiki.id} at {window_range.label()}"
            )
        return Response(content=data, media_type="application/json")

    @app.get("/api/v1/wikis/{code}/series/{indicator_id}")
    async def get_series(
        code: str,
        indicator_id: str,
        from_: Optional[str] = Query(None, alias="from"),
        to: Optional[str] = None,
    ):
        wiki = resolve_wiki(code)
        if indicator_id not in registry_by_id:
            raise ApiError(404, "unknown_indicator", f"no indicator {indicator_id!r}")
        window_range: Optional[MonthRange] = None
        if from_ is not None or to is not None:
            if from_ is None or to is None:
                raise ApiError(422, "invalid_parameter", "from and to must be given together")
            try:
                window_range = MonthRange(
                    MonthRange.parse(from_).start, MonthRange.parse(to).end
                )
            except ValueError as exc:
                raise ApiError(422, "invalid_parameter", f"bad range: {exc}")
        points = store.series(wiki, indicator_id, window_range)
        return _json_response(
            {
                "wiki": wiki.code,
                "family": wiki.family,
                "indicator_id": indicator_id,
                "points": [{"window": w.to_dict(), "value": v} for w, v in points],
            }
        )

    @app.get("/api/v1/matrix")
    async def get_matrix(window: Optional[str] = None):
        window_range = parse_window(window) or latest_window(StoreKind.MATRIX)
        for key in store.list_keys(kind=StoreKind.MATRIX):
            if key.window.label() == window_range.label():
                data = store.get_bytes(key)
                if data is not None:
                    return Response(content=data, media_type="application/json")
        raise ApiError(404, "not_computed", f"no matrix stored for {window_range.label()}")

    @app.get("/api/v1/rankings/{indicator_id}")
    async def get_rankings(indicator_id: str, window: Optional[str] = None):
        defn = registry_by_id.get(indicator_id)
        if defn is None:
            raise ApiError(404, "unknown_indicator", f"no indicator {indicator_id!r}")
        window_range = parse_window(window) or latest_window(StoreKind.INDICATORS)
        values: dict[str, float] = {}
        for key in store.list_keys(kind=StoreKind.INDICATORS):
            if key.window.label() != window_range.label():
                continue
            document = store.get(key)
            if document is None:
                continue
            for value in document.get("values", []):
                if value.get("indicator_id") == indicator_id and isinstance(
                    value.get("value"), (int, float)
                ):
                    values[str(value["wiki"])] = float(value["value"])
        try:
            entries = engine.rank_wikis(defn, values)
        except EmptyCohortError:
            raise ApiError(409, "insufficient_data", f"no values for {indicator_id} at {window_range.label()}")
        return _json_response(engine.rankings_document(defn, window_range, entries))

    @app.get("/api/v1/scatter")
    async def get_scatter(window: Optional[str] = None, min_articles: Optional[str] = None):
        if min_articles is None:
            threshold = engine.DEFAULT_MIN_ARTICLES
        else:
            try:
                threshold = int(min_articles)
            except ValueError:
                raise ApiError(422, "invalid_parameter", "min_articles must be an integer")
        if threshold <= 0:
            raise ApiError(422, "invalid_parameter", "min_articles must be positive")
        window_range = parse_window(window) or latest_window(StoreKind.SNAPSHOT)

        if threshold == engine.DEFAULT_MIN_ARTICLES:
            for key in store.list_keys(kind=StoreKind.SCATTER):
                if key.window.label() == window_range.label():
                    data = store.get_bytes(key)
                    if data is not None:
                        return Response(content=data, media_type="application/json")

        snapshots = load_snapshots(window_range)
        if not snapshots:
            raise ApiError(404, "not_computed", f"no snapshots stored for {window_range.label()}")
        try:
            result = engine.entropy_scatter(snapshots, min_articles=threshold, ctx=EngineContext())
        except InsufficientDataError as exc:
            raise ApiError(409, "insufficient_data", str(exc))
        except DegenerateFitError as exc:
            raise ApiError(409, "degenerate_fit", str(exc))
        return _json_response(engine.scatter_document(result))

    return app


def serve(
    store_root: str,
    host: str = "127.0.0.1",
    port: int = 8080,
    cors_origin: str = "*",
) -> None:
    """Run the API under uvicorn; BindError surfaces as OSError."""
    import uvicorn

    app = create_app(DocumentStore(store_root), cors_origin=cors_origin)
    uvicorn.run(app, host=host, port=port, log_level="info")
