"""Durable document store: one canonical-JSON file per key plus a checksum sidecar.

Layout: {root}/{kind}/{wiki-or-cohort}/{window}/{method_version}.json
(+ .sha256).  Keys are immutable: re-putting identical content is a
no-op, differing content is a conflict, so longitudinal claims stay
auditable.  Writes go tmp-file-then-rename with the sidecar renamed
first, which keeps every interruption point at either "no document" or
"full document with matching checksum".
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Iterator, Optional

from . import canonical
from .model import MonthRange, WikiId, parse_timestamp


class StorageError(Exception):
    pass


class ConflictError(StorageError):
    """Same key, different content; stored documents are immutable."""


class SchemaViolationError(StorageError):
    """Document does not satisfy the key kind's schema."""


class IntegrityError(StorageError):
    """Stored bytes do not match their checksum sidecar."""


class StoreKind(str, Enum):
    SNAPSHOT = "snapshot"
    INDICATORS = "indicators"
    MATRIX = "matrix"
    SCATTER = "scatter"


_SUBJECT_OK = r"abcdefghijklmnopqrstuvwxyz0123456789.-"


@dataclass(frozen=True)
class StoreKey:
    kind: StoreKind
    subject: str  # wiki id ("ja.wikipedia") or cohort id ("cohort-<hex>")
    window: MonthRange
    method_version: int = 1

    def __post_init__(self) -> None:
        if not self.subject or any(c not in _SUBJECT_OK for c in self.subject):
            raise ValueError(f"bad store subject: {self.subject!r}")
        if self.method_version < 1:
            raise ValueError("method_version must be >= 1")

    def canonical(self) -> str:
        return f"{self.kind.value}/{self.subject}/{self.window.label()}/{self.method_version}"

    @classmethod
    def parse(cls, text: str) -> "StoreKey":
        kind, subject, window, version = text.split("/")
        return cls(StoreKind(kind), subject, MonthRange.parse(window), int(version))

    def __str__(self) -> str:
        return self.canonical()


@dataclass(frozen=True)
class Receipt:
    key: StoreKey
    sha256: str


def cohort_id(wiki_ids: list[str]) -> str:
    """Deterministic short id for a set of wikis."""
    digest = canonical.sha256_hex(canonical.dump_bytes(sorted(wiki_ids)))
    return f"cohort-{digest[:12]}"


_REQUIRED_TOP_KEYS = {
    StoreKind.SNAPSHOT: {"schema_version", "wiki", "window", "captured_at", "site_stats"},
    StoreKind.INDICATORS: {"schema_version", "wiki", "window", "values"},
    StoreKind.MATRIX: {"schema_version", "window", "cohort", "rows"},
    StoreKind.SCATTER: {"schema_version", "window", "points", "fit"},
}


class DocumentStore:
    """Single-writer-per-key, many-reader document store on a directory tree.

    ``fault_hook`` is a test seam: it is invoked with a label at every
    write step and may raise to simulate a crash at that point.
    """

    def __init__(self, root: Path | str, fault_hook: Optional[Callable[[str], None]] = None) -> None:
        self.root = Path(root)
        self._fault_hook = fault_hook
        self.write_calls = 0

    # -- paths ---------------------------------------------------------------

    def _doc_path(self, key: StoreKey) -> Path:
        return self.root / key.kind.value / key.subject / key.window.label() / f"{key.method_version}.json"

    def _sha_path(self, key: StoreKey) -> Path:
        return self._doc_path(key).with_suffix(".sha256")

    def _fault(self, label: str) -> None:
        if self._fault_hook is not None:
            self._fault_hook(label)

    # -- validation ------------------------------------------------------------

    def _validate(self, key: StoreKey, document: dict) -> None:
        if not isinstance(document, dict):
            raise SchemaViolationError("document must be a JSON object")
        missing = _REQUIRED_TOP_KEYS[key.kind] - document.keys()
        if missing:
            raise SchemaViolationError(
                f"{key.kind.value} document missing keys: {', '.join(sorted(missing))}"
            )
        doc_window = document.get("window")
        if MonthRange.from_dict(doc_window).label() != key.window.label():
            raise SchemaViolationError("document window does not match key window")
        if key.kind is StoreKind.SNAPSHOT:
            wiki = f"{document['wiki']}.{document.get('family', 'wikipedia')}"
            if wiki != key.subject:
                raise SchemaViolationError(f"snapshot wiki {wiki} does not match key subject {key.subject}")
            self._check_captured_at_monotone(key, document)

    def _check_captured_at_monotone(self, key: StoreKey, document: dict) -> None:
        """captured_at must increase with window order for one wiki."""
        new_ts = parse_timestamp(str(document["captured_at"]))
        new_start = key.window.start
        for other in self.list_keys(kind=StoreKind.SNAPSHOT, subject=key.subject):
            if other.window.label() == key.window.label():
                continue
            stored = self.get(other)
            if stored is None:
                continue
            other_ts = parse_timestamp(str(stored["captured_at"]))
            if other.window.start < new_start and not other_ts < new_ts:
                raise SchemaViolationError(
                    f"captured_at not monotone: {other} at {stored['captured_at']} "
                    f"precedes window but not capture time"
                )
            if other.window.start > new_start and not other_ts > new_ts:
                raise SchemaViolationError(
                    f"captured_at not monotone: {other} at {stored['captured_at']} "
                    f"follows window but not capture time"
                )

    # -- operations ------------------------------------------------------------

    def put(self, key: StoreKey, document: dict) -> Receipt:
        """Atomic, idempotent write; differing content for an existing key conflicts."""
        self.write_calls += 1
        self._validate(key, document)
        data = canonical.dump_bytes(document)
        digest = canonical.sha256_hex(data)
        doc_path = self._doc_path(key)
        sha_path = self._sha_path(key)

        if doc_path.exists():
            existing = doc_path.read_bytes()
            if existing == data:
                return Receipt(key=key, sha256=digest)
            raise ConflictError(f"{key}: differing content for existing key")

        doc_path.parent.mkdir(parents=True, exist_ok=True)
        doc_tmp = doc_path.with_name(doc_path.name + f".tmp{os.getpid()}")
        sha_tmp = sha_path.with_name(sha_path.name + f".tmp{os.getpid()}")
        try:
            self._fault("begin")
            doc_tmp.write_bytes(data)
            self._fault("doc-tmp-written")
            sha_tmp.write_text(digest + "\n")
            self._fault("sha-tmp-written")
            # Sidecar becomes visible first: a document file, once visible,
            # always has its checksum beside it.
            os.replace(sha_tmp, sha_path)
            self._fault("sha-visible")
            os.replace(doc_tmp, doc_path)
            self._fault("done")
        finally:
            for leftover in (doc_tmp, sha_tmp):
                if leftover.exists():
                    leftover.unlink()
        return Receipt(key=key, sha256=digest)

    def get(self, key: StoreKey) -> Optional[dict]:
        data = self.get_bytes(key)
        if data is None:
            return None
        return canonical.loads(data)

    def get_bytes(self, key: StoreKey) -> Optional[bytes]:
        """Stored canonical bytes, checksum-verified; None for a missing key."""
        doc_path = self._doc_path(key)
        if not doc_path.exists():
            return None
        data = doc_path.read_bytes()
        sha_path = self._sha_path(key)
        if not sha_path.exists():
            raise IntegrityError(f"{key}: checksum sidecar missing")
        expected = sha_path.read_text().strip()
        actual = canonical.sha256_hex(data)
        if actual != expected:
            raise IntegrityError(f"{key}: checksum mismatch ({actual} != {expected})")
        return data

    def exists(self, key: StoreKey) -> bool:
        return self._doc_path(key).exists()

    def list_keys(
        self, kind: Optional[StoreKind] = None, subject: Optional[str] = None
    ) -> list[StoreKey]:
        kinds = [kind] if kind else list(StoreKind)
        keys: list[StoreKey] = []
        for k in kinds:
            kind_dir = self.root / k.value
            if not kind_dir.is_dir():
                continue
            subjects = [subject] if subject else sorted(p.name for p in kind_dir.iterdir() if p.is_dir())
            for subj in subjects:
                subj_dir = kind_dir / subj
                if not subj_dir.is_dir():
                    continue
                for window_dir in sorted(subj_dir.iterdir()):
                    if not window_dir.is_dir():
                        continue
                    window = MonthRange.parse(window_dir.name)
                    for doc in sorted(window_dir.glob("*.json")):
                        keys.append(StoreKey(k, subj, window, int(doc.stem)))
        keys.sort(key=lambda key: (key.kind.value, key.subject, key.window.start, key.method_version))
        return keys

    def series(
        self,
        wiki: WikiId,
        indicator_id: str,
        window_range: Optional[MonthRange] = None,
    ) -> list[tuple[MonthRange, float]]:
        """Per-window values of one indicator, ascending; gaps stay gaps."""
        points: list[tuple[MonthRange, float]] = []
        for key in self.list_keys(kind=StoreKind.INDICATORS, subject=wiki.id):
            if window_range is not None and not window_range.contains(key.window):
                continue
            document = self.get(key)
            if document is None:
                continue
            for value in document.get("values", []):
                if value.get("indicator_id") == indicator_id and isinstance(
                    value.get("value"), (int, float)
                ):
                    points.append((key.window, float(value["value"])))
                    break
        points.sort(key=lambda p: p[0].start)
        return points
