"""Ingestion failure taxonomy.

NetworkError is the only retryable class; everything else describes a
payload or request problem that retrying cannot fix.
"""

from __future__ import annotations


class IngestionError(Exception):
    """Base class for everything raised by the ingestion layer."""


class NetworkError(IngestionError):
    """Transport failure or retryable upstream status; safe to retry."""


class ParseError(IngestionError):
    """The payload did not have the shape the fetcher contracts expect."""


class UnknownWikiError(IngestionError):
    """The wiki could not be resolved to any data source."""


class NoDataError(IngestionError):
    """The source has no data for the requested month."""


class SchemaVersionMismatch(IngestionError):
    """A fixture or stored document declares an unsupported schema version."""


class SnapshotFailure(IngestionError):
    """Hard snapshot failure: the site-statistics backbone itself was unfetchable."""


class NotRecordedError(IngestionError):
    """Replay transport has no recorded response for the request."""
