"""Raw-fact ingestion: HTTP fetchers, replay transport, fixtures."""

from ..model import SourceKind  # noqa: F401  (re-export: source kinds travel with fetchers)
from .bucket import BucketedCount, bucket_estimate
from .errors import (
    IngestionError,
    NetworkError,
    NoDataError,
    NotRecordedError,
    ParseError,
    SchemaVersionMismatch,
    SnapshotFailure,
    UnknownWikiError,
)
from .fixtures import (
    bundled_data_dir,
    bundled_fixture_dir,
    list_fixture_snapshots,
    load_curated_data,
    load_democracy_index,
    load_fixture_snapshot,
)
from .mediawiki import (
    ELEVATED_GROUPS,
    fetch_governance_stats,
    fetch_site_statistics,
    fetch_user_group_counts,
)
from .analytics import fetch_editors_by_country, fetch_views_by_country
from .policy import BackoffSchedule, Clock, FetchPolicy, SystemClock
from .snapshot import snapshot_wiki
from .transport import HttpClient, HttpResponse, ReplayTransport, RequestsTransport, Telemetry

__all__ = [
    "BackoffSchedule",
    "BucketedCount",
    "Clock",
    "ELEVATED_GROUPS",
    "FetchPolicy",
    "HttpClient",
    "HttpResponse",
    "IngestionError",
    "NetworkError",
    "NoDataError",
    "NotRecordedError",
    "ParseError",
    "ReplayTransport",
    "RequestsTransport",
    "SchemaVersionMismatch",
    "SnapshotFailure",
    "SourceKind",
    "SystemClock",
    "Telemetry",
    "UnknownWikiError",
    "bucket_estimate",
    "bundled_data_dir",
    "bundled_fixture_dir",
    "fetch_editors_by_country",
    "fetch_governance_stats",
    "fetch_site_statistics",
    "fetch_user_group_counts",
    "fetch_views_by_country",
    "list_fixture_snapshots",
    "load_curated_data",
    "load_democracy_index",
    "load_fixture_snapshot",
    "snapshot_wiki",
]
