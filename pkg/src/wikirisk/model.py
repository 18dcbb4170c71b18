"""Shared domain types for the observatory.

Everything in here is an immutable in-memory value: the two-level risk
taxonomy, the indicator registry, and the containers for raw per-wiki
facts.  No I/O happens in this module; JSON encodings live with the
storage and API layers.
"""

from __future__ import annotations

import datetime as dt
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Mapping, Optional, Sequence


class Origin(str, Enum):
    INTERNAL = "internal"
    EXTERNAL = "external"


class Subgroup(str, Enum):
    COMMUNITY = "community"
    CONTENT = "content"
    NONE = "none"


class RiskCategory(str, Enum):
    """Leaf of the risk taxonomy.

    Declaration order is the canonical presentation order: the three
    internal community leaves, the three internal content leaves, then
    the two external leaves.  Origin and subgroup are derived from the
    leaf identity and can never be stored inconsistently.
    """

    COMMUNITY_CAPACITY = "community_capacity"
    COMMUNITY_GOVERNANCE = "community_governance"
    COMMUNITY_DEMOGRAPHICS = "community_demographics"
    CONTENT_VERIFIABILITY = "content_verifiability"
    CONTENT_QUALITY = "content_quality"
    CONTENT_CONTROVERSIALITY = "content_controversiality"
    MEDIA = "media"
    GEOPOLITICS = "geopolitics"

    @property
    def origin(self) -> Origin:
        if self in (RiskCategory.MEDIA, RiskCategory.GEOPOLITICS):
            return Origin.EXTERNAL
        return Origin.INTERNAL

    @property
    def subgroup(self) -> Subgroup:
        if self.origin is Origin.EXTERNAL:
            return Subgroup.NONE
        if self in (
            RiskCategory.COMMUNITY_CAPACITY,
            RiskCategory.COMMUNITY_GOVERNANCE,
            RiskCategory.COMMUNITY_DEMOGRAPHICS,
        ):
            return Subgroup.COMMUNITY
        return Subgroup.CONTENT


def taxonomy() -> list[RiskCategory]:
    """All 8 taxonomy leaves in canonical order."""
    return list(RiskCategory)


class SourceKind(str, Enum):
    """Upstream data source a raw snapshot section comes from."""

    SITE_INFO = "site_info"
    USER_GROUPS = "user_groups"
    ABUSE_FILTERS = "abuse_filters"
    BLOCKS = "blocks"
    PAGEVIEWS_BY_COUNTRY = "pageviews_by_country"
    EDITORS_BY_COUNTRY = "editors_by_country"
    EXTERNAL_PROVIDER = "external_provider"
    MEDIA_REFERRALS = "media_referrals"


class ValueKind(str, Enum):
    COUNT = "count"
    RATIO = "ratio"
    DISTRIBUTION = "distribution"
    ENTROPY = "entropy"
    SCORE = "score"


class RiskPolarity(str, Enum):
    HIGHER_IS_RISKIER = "higher_is_riskier"
    LOWER_IS_RISKIER = "lower_is_riskier"


class Subject(str, Enum):
    """What a per-country magnitude counts."""

    EDITS = "edits"
    VIEWS = "views"
    ACTIVE_EDITORS = "active_editors"


_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")


@dataclass(frozen=True, order=True)
class Month:
    year: int
    month: int

    def __post_init__(self) -> None:
        if not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")
        if self.year < 1:
            raise ValueError(f"year out of range: {self.year}")

    @classmethod
    def parse(cls, text: str) -> "Month":
        m = _MONTH_RE.match(text)
        if not m:
            raise ValueError(f"not a YYYY-MM month: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def plus(self, months: int) -> "Month":
        idx = self.year * 12 + (self.month - 1) + months
        return Month(idx // 12, idx % 12 + 1)

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"


@dataclass(frozen=True)
class MonthRange:
    """Half-open month interval [start, end)."""

    start: Month
    end: Month

    def __post_init__(self) -> None:
        if not self.start < self.end:
            raise ValueError(f"empty month range: {self.start}..{self.end}")

    @classmethod
    def single(cls, month: Month) -> "MonthRange":
        return cls(month, month.plus(1))

    @classmethod
    def parse(cls, text: str) -> "MonthRange":
        """Parse "YYYY-MM..YYYY-MM"; a bare "YYYY-MM" means that one month."""
        if ".." in text:
            start_s, end_s = text.split("..", 1)
            return cls(Month.parse(start_s), Month.parse(end_s))
        return cls.single(Month.parse(text))

    def months(self) -> Iterator[Month]:
        cur = self.start
        while cur < self.end:
            yield cur
            cur = cur.plus(1)

    def __len__(self) -> int:
        return (self.end.year * 12 + self.end.month) - (self.start.year * 12 + self.start.month)

    def contains(self, other: "MonthRange") -> bool:
        return self.start <= other.start and other.end <= self.end

    def label(self) -> str:
        return f"{self.start}..{self.end}"

    def __str__(self) -> str:
        return self.label()

    def to_dict(self) -> dict[str, str]:
        return {"start": str(self.start), "end": str(self.end)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "MonthRange":
        return cls(Month.parse(str(data["start"])), Month.parse(str(data["end"])))


@dataclass(frozen=True, order=True)
class WikiId:
    """A wiki is a language code plus a project family, e.g. ("ja", "wikipedia").

    Codes are stored exactly as the source APIs report them; no ISO 639-1
    validation is applied (codes like "ceb" and "war" are three letters,
    "simple" is a word).
    """

    code: str
    family: str = "wikipedia"

    def __post_init__(self) -> None:
        if not re.fullmatch(r"[a-z][a-z0-9-]*", self.code):
            raise ValueError(f"bad wiki code: {self.code!r}")
        if not re.fullmatch(r"[a-z]+", self.family):
            raise ValueError(f"bad project family: {self.family!r}")

    @property
    def id(self) -> str:
        return f"{self.code}.{self.family}"

    @classmethod
    def parse(cls, text: str) -> "WikiId":
        code, _, family = text.partition(".")
        return cls(code, family or "wikipedia")

    def __str__(self) -> str:
        return self.id


_COUNTRY_RE = re.compile(r"^[A-Z]{2}$")


@dataclass(frozen=True)
class CountryDistribution:
    """Per-country magnitudes (edits, views or active editors) for one month window.

    Magnitudes are reals because privacy-bucketed upstream values arrive
    as fractional estimates.  Keys are uppercase ISO-3166-1 alpha-2
    codes; duplicates are impossible once parsed into the mapping.
    """

    subject: Subject
    window: MonthRange
    entries: Mapping[str, float]

    def __post_init__(self) -> None:
        for code, magnitude in self.entries.items():
            if not _COUNTRY_RE.match(code):
                raise ValueError(f"bad country code: {code!r}")
            if not (isinstance(magnitude, (int, float)) and math.isfinite(magnitude)):
                raise ValueError(f"non-finite magnitude for {code}")
            if magnitude < 0:
                raise ValueError(f"negative magnitude for {code}: {magnitude}")
        object.__setattr__(self, "entries", dict(sorted(self.entries.items())))

    def is_empty(self) -> bool:
        return not any(v > 0 for v in self.entries.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject.value,
            "window": self.window.to_dict(),
            "entries": dict(self.entries),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "CountryDistribution":
        return cls(
            subject=Subject(data["subject"]),
            window=MonthRange.from_dict(data["window"]),
            entries={str(k): float(v) for k, v in data["entries"].items()},
        )


def _require_count(value: Any, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {value!r}")
    return value


@dataclass(frozen=True)
class SiteStats:
    """Raw site-level counts from the wiki's statistics endpoint."""

    articles: int
    total_pages: int
    edits: int
    editors: int
    active_editors: int
    stub_articles: Optional[int] = None

    def __post_init__(self) -> None:
        for name in ("articles", "total_pages", "edits", "editors", "active_editors"):
            _require_count(getattr(self, name), name)
        if self.stub_articles is not None:
            _require_count(self.stub_articles, "stub_articles")
        if self.articles > self.total_pages:
            raise ValueError("articles exceed total pages")
        if self.active_editors > self.editors:
            raise ValueError("active editors exceed editors")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "articles": self.articles,
            "total_pages": self.total_pages,
            "edits": self.edits,
            "editors": self.editors,
            "active_editors": self.active_editors,
        }
        if self.stub_articles is not None:
            out["stub_articles"] = self.stub_articles
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SiteStats":
        return cls(
            articles=int(data["articles"]),
            total_pages=int(data["total_pages"]),
            edits=int(data["edits"]),
            editors=int(data["editors"]),
            active_editors=int(data["active_editors"]),
            stub_articles=int(data["stub_articles"]) if "stub_articles" in data else None,
        )


@dataclass(frozen=True)
class GovernanceStats:
    """Community-governance counts; fields a wiki cannot report stay absent."""

    abusefilter_rules: Optional[int] = None
    blocked_accounts: Optional[int] = None
    total_accounts: Optional[int] = None
    deletion_requests: Optional[int] = None
    steward_requests: Optional[int] = None

    def __post_init__(self) -> None:
        for name in (
            "abusefilter_rules",
            "blocked_accounts",
            "total_accounts",
            "deletion_requests",
            "steward_requests",
        ):
            value = getattr(self, name)
            if value is not None:
                _require_count(value, name)
        if (
            self.blocked_accounts is not None
            and self.total_accounts is not None
            and self.blocked_accounts > self.total_accounts
        ):
            raise ValueError("blocked accounts exceed total accounts")

    def to_dict(self) -> dict[str, Any]:
        return {
            name: getattr(self, name)
            for name in (
                "abusefilter_rules",
                "blocked_accounts",
                "total_accounts",
                "deletion_requests",
                "steward_requests",
            )
            if getattr(self, name) is not None
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "GovernanceStats":
        kwargs = {
            name: int(data[name])
            for name in (
                "abusefilter_rules",
                "blocked_accounts",
                "total_accounts",
                "deletion_requests",
                "steward_requests",
            )
            if name in data
        }
        return cls(**kwargs)


_TS_FMT = "%Y-%m-%dT%H:%M:%SZ"


def format_timestamp(ts: dt.datetime) -> str:
    if ts.tzinfo is None:
        raise ValueError("timestamp must be timezone-aware UTC")
    return ts.astimezone(dt.timezone.utc).strftime(_TS_FMT)


def parse_timestamp(text: str) -> dt.datetime:
    return dt.datetime.strptime(text, _TS_FMT).replace(tzinfo=dt.timezone.utc)


SNAPSHOT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class WikiSnapshot:
    """All raw ingested facts for one wiki over one capture window.

    ``group_counts`` and ``governance_stats`` are ``None`` when the
    corresponding source was never reached (distinct from a wiki that
    reports zero).  ``external_scores`` maps a provider id to an opaque
    score table (string key to real value).
    """

    wiki: WikiId
    window: MonthRange
    captured_at: dt.datetime
    site_stats: SiteStats
    group_counts: Optional[Mapping[str, int]] = None
    governance_stats: Optional[GovernanceStats] = None
    distributions: tuple[CountryDistribution, ...] = ()
    external_scores: Mapping[str, Mapping[str, float]] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()
    fixture_origin: bool = False

    def __post_init__(self) -> None:
        if self.captured_at.tzinfo is None:
            raise ValueError("captured_at must be timezone-aware UTC")
        if self.group_counts is not None:
            for group, count in self.group_counts.items():
                _require_count(count, f"group_counts[{group}]")
        for dist in self.distributions:
            if not self.window.contains(dist.window):
                raise ValueError(
                    f"distribution window {dist.window} outside snapshot window {self.window}"
                )
        object.__setattr__(self, "distributions", tuple(self.distributions))
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @property
    def snapshot_id(self) -> str:
        return f"{self.wiki.id}/{self.window.label()}"

    def distributions_for(self, subject: Subject) -> list[CountryDistribution]:
        return [d for d in self.distributions if d.subject is subject]

    def has_source(self, kind: SourceKind) -> bool:
        """Whether the snapshot carries data from the given source."""
        if kind is SourceKind.SITE_INFO:
            return True
        if kind is SourceKind.USER_GROUPS:
            return self.group_counts is not None
        if kind is SourceKind.ABUSE_FILTERS:
            return self.governance_stats is not None and self.governance_stats.abusefilter_rules is not None
        if kind is SourceKind.BLOCKS:
            return self.governance_stats is not None and self.governance_stats.blocked_accounts is not None
        if kind is SourceKind.PAGEVIEWS_BY_COUNTRY:
            return bool(self.distributions_for(Subject.VIEWS))
        if kind is SourceKind.EDITORS_BY_COUNTRY:
            return bool(self.distributions_for(Subject.EDITS)) or bool(
                self.distributions_for(Subject.ACTIVE_EDITORS)
            )
        if kind is SourceKind.EXTERNAL_PROVIDER:
            return bool(self.external_scores)
        if kind is SourceKind.MEDIA_REFERRALS:
            return "media_referrals" in self.external_scores
        raise AssertionError(f"unhandled source kind {kind}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SNAPSHOT_SCHEMA_VERSION,
            "wiki": self.wiki.code,
            "family": self.wiki.family,
            "window": self.window.to_dict(),
            "captured_at": format_timestamp(self.captured_at),
            "site_stats": self.site_stats.to_dict(),
            "group_counts": dict(sorted(self.group_counts.items())) if self.group_counts is not None else None,
            "governance_stats": self.governance_stats.to_dict() if self.governance_stats is not None else None,
            "distributions": [d.to_dict() for d in self.distributions],
            "external_scores": {
                provider: dict(sorted(table.items()))
                for provider, table in sorted(self.external_scores.items())
            },
            "warnings": list(self.warnings),
            "fixture_origin": self.fixture_origin,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "WikiSnapshot":
        version = data.get("schema_version")
        if version != SNAPSHOT_SCHEMA_VERSION:
            raise ValueError(f"unsupported snapshot schema_version: {version!r}")
        group_counts = data.get("group_counts")
        governance = data.get("governance_stats")
        return cls(
            wiki=WikiId(str(data["wiki"]), str(data.get("family", "wikipedia"))),
            window=MonthRange.from_dict(data["window"]),
            captured_at=parse_timestamp(str(data["captured_at"])),
            site_stats=SiteStats.from_dict(data["site_stats"]),
            group_counts={str(k): int(v) for k, v in group_counts.items()} if group_counts is not None else None,
            governance_stats=GovernanceStats.from_dict(governance) if governance is not None else None,
            distributions=tuple(CountryDistribution.from_dict(d) for d in data.get("distributions", [])),
            external_scores={
                str(p): {str(k): float(v) for k, v in table.items()}
                for p, table in data.get("external_scores", {}).items()
            },
            warnings=tuple(str(w) for w in data.get("warnings", [])),
            fixture_origin=bool(data.get("fixture_origin", False)),
        )


# Sources that yield a categorical distribution (country codes or referrer names).
_DISTRIBUTION_SOURCES = frozenset(
    {SourceKind.PAGEVIEWS_BY_COUNTRY, SourceKind.EDITORS_BY_COUNTRY, SourceKind.MEDIA_REFERRALS}
)


@dataclass(frozen=True)
class IndicatorDefinition:
    """Registry entry describing one indicator: identity, placement, and needs."""

    id: str
    display_name: str
    category: RiskCategory
    value_kind: ValueKind
    risk_polarity: RiskPolarity
    required_sources: frozenset[SourceKind]
    method_version: int = 1
    description: str = ""

    def __post_init__(self) -> None:
        if not re.fullmatch(r"[a-z][a-z0-9_]*", self.id):
            raise ValueError(f"bad indicator id: {self.id!r}")
        if self.value_kind in (ValueKind.ENTROPY, ValueKind.DISTRIBUTION):
            if not (self.required_sources & _DISTRIBUTION_SOURCES):
                raise ValueError(
                    f"indicator {self.id}: {self.value_kind.value} indicators need a distribution source"
                )
        if self.method_version < 1:
            raise ValueError("method_version must be >= 1")

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "display_name": self.display_name,
            "category": self.category.value,
            "value_kind": self.value_kind.value,
            "risk_polarity": self.risk_polarity.value,
            "required_sources": sorted(s.value for s in self.required_sources),
            "method_version": self.method_version,
            "description": self.description,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "IndicatorDefinition":
        return cls(
            id=str(data["id"]),
            display_name=str(data["display_name"]),
            category=RiskCategory(data["category"]),
            value_kind=ValueKind(data["value_kind"]),
            risk_polarity=RiskPolarity(data["risk_polarity"]),
            required_sources=frozenset(SourceKind(s) for s in data["required_sources"]),
            method_version=int(data.get("method_version", 1)),
            description=str(data.get("description", "")),
        )


def validate_registry(definitions: Sequence[IndicatorDefinition]) -> None:
    seen: set[str] = set()
    for defn in definitions:
        if defn.id in seen:
            raise ValueError(f"duplicate indicator id: {defn.id}")
        seen.add(defn.id)


def default_registry() -> list[IndicatorDefinition]:
    """The built-in indicator catalog.

    Every taxonomy leaf carries at least one indicator.  Entries backed
    by a pluggable external score provider (quality models, controversy
    measures, source-reliability classifiers, operator-curated counts)
    require ``SourceKind.EXTERNAL_PROVIDER``; they read provider tables
    from the snapshot rather than recomputing third-party algorithms.
    """
    C = RiskCategory
    V = ValueKind
    P = RiskPolarity
    S = SourceKind
    defs = [
        # Community capacity: exposure vs patrolling resources.
        IndicatorDefinition(
            "articles_count", "Articles", C.COMMUNITY_CAPACITY, V.COUNT, P.HIGHER_IS_RISKIER,
            frozenset({S.SITE_INFO}),
            description="Content surface to patrol: number of content pages.",
        ),
        IndicatorDefinition(
            "editors_count", "Registered editors", C.COMMUNITY_CAPACITY, V.COUNT, P.LOWER_IS_RISKIER,
            frozenset({S.SITE_INFO}),
            description="Registered user accounts.",
        ),
        IndicatorDefinition(
            "active_editors_count", "Active editors", C.COMMUNITY_CAPACITY, V.COUNT, P.LOWER_IS_RISKIER,
            frozenset({S.SITE_INFO}),
            description="Editors active in the trailing 30 days (source API definition).",
        ),
        IndicatorDefinition(
            "elevated_rights_editors", "Elevated-rights editors", C.COMMUNITY_CAPACITY, V.COUNT,
            P.LOWER_IS_RISKIER, frozenset({S.USER_GROUPS}),
            description="Holders of admin, bureaucrat, checkuser, oversight or rollbacker rights "
            "(membership counts summed; multi-group holders count once per group).",
        ),
        IndicatorDefinition(
            "active_elevated_ratio", "Elevated rights per active editor", C.COMMUNITY_CAPACITY,
            V.RATIO, P.LOWER_IS_RISKIER, frozenset({S.SITE_INFO, S.USER_GROUPS}),
            description="Elevated-rights holders divided by active editors.",
        ),
        IndicatorDefinition(
            "abusefilter_rules", "AbuseFilter rules", C.COMMUNITY_CAPACITY, V.COUNT,
            P.LOWER_IS_RISKIER, frozenset({S.ABUSE_FILTERS}),
            description="Enabled AbuseFilter rules.",
        ),
        IndicatorDefinition(
            "patrolling_tools", "Specialized patrolling tools", C.COMMUNITY_CAPACITY, V.COUNT,
            P.LOWER_IS_RISKIER, frozenset({S.EXTERNAL_PROVIDER}),
            description="Operator-curated count of patrolling bots, scripts and apps for the wiki.",
        ),
        # Community governance.
        IndicatorDefinition(
            "blocked_account_ratio", "Blocked account ratio", C.COMMUNITY_GOVERNANCE, V.RATIO,
            P.HIGHER_IS_RISKIER, frozenset({S.SITE_INFO, S.BLOCKS}),
            description="Currently blocked registered accounts over total accounts.",
        ),
        IndicatorDefinition(
            "deletion_request_ratio", "Deletion request ratio", C.COMMUNITY_GOVERNANCE, V.RATIO,
            P.HIGHER_IS_RISKIER, frozenset({S.SITE_INFO}),
            description="Open article deletion requests over articles; absent where not tracked.",
        ),
        IndicatorDefinition(
            "steward_requests", "Steward noticeboard requests", C.COMMUNITY_GOVERNANCE, V.COUNT,
            P.HIGHER_IS_RISKIER, frozenset({S.SITE_INFO}),
            description="Requests escalated to global stewards; absent where not tracked.",
        ),
        IndicatorDefinition(
            "stewards_with_language", "Stewards knowing the language", C.COMMUNITY_GOVERNANCE,
            V.COUNT, P.LOWER_IS_RISKIER, frozenset({S.EXTERNAL_PROVIDER}),
            description="Operator-curated count of global stewards able to work in the language.",
        ),
        # Community demographics: geographic diversity.
        IndicatorDefinition(
            "edits_by_country_entropy", "Edit geographic diversity", C.COMMUNITY_DEMOGRAPHICS,
            V.ENTROPY, P.LOWER_IS_RISKIER, frozenset({S.EDITORS_BY_COUNTRY}),
            description="Shannon entropy (nats) of the distribution of edits by country; "
            "low values mean editing concentrated in few countries.",
        ),
        IndicatorDefinition(
            "views_by_country_entropy", "View geographic diversity", C.COMMUNITY_DEMOGRAPHICS,
            V.ENTROPY, P.LOWER_IS_RISKIER, frozenset({S.PAGEVIEWS_BY_COUNTRY}),
            description="Shannon entropy (nats) of the distribution of pageviews by country.",
        ),
        IndicatorDefinition(
            "active_editors_by_country_entropy", "Active-editor geographic diversity",
            C.COMMUNITY_DEMOGRAPHICS, V.ENTROPY, P.LOWER_IS_RISKIER,
            frozenset({S.EDITORS_BY_COUNTRY}),
            description="Shannon entropy (nats) of bucket-estimated active editors by country.",
        ),
        # Content verifiability.
        IndicatorDefinition(
            "source_reliability_score", "Source reliability", C.CONTENT_VERIFIABILITY, V.SCORE,
            P.LOWER_IS_RISKIER, frozenset({S.EXTERNAL_PROVIDER}),
            description="Provider-supplied mean reliability of cited sources, 0..1.",
        ),
        # Content quality.
        IndicatorDefinition(
            "stub_ratio", "Stub article ratio", C.CONTENT_QUALITY, V.RATIO, P.HIGHER_IS_RISKIER,
            frozenset({S.SITE_INFO}),
            description="Stub-tagged articles over articles; absent without stub tracking.",
        ),
        IndicatorDefinition(
            "editing_depth", "Editing depth", C.CONTENT_QUALITY, V.SCORE, P.LOWER_IS_RISKIER,
            frozenset({S.SITE_INFO}),
            description="(edits/articles) * (non-articles/articles) * (1 - stub ratio); "
            "the customary collaboration-intensity proxy.",
        ),
        IndicatorDefinition(
            "article_quality_score", "Model-scored article quality", C.CONTENT_QUALITY, V.SCORE,
            P.LOWER_IS_RISKIER, frozenset({S.EXTERNAL_PROVIDER}),
            description="Provider-supplied mean machine quality score, 0..1.",
        ),
        # Content controversiality.
        IndicatorDefinition(
            "controversiality_score", "Controversiality", C.CONTENT_CONTROVERSIALITY, V.SCORE,
            P.HIGHER_IS_RISKIER, frozenset({S.EXTERNAL_PROVIDER}),
            description="Provider-supplied mean controversiality of articles, 0..1.",
        ),
        # Media (external).
        IndicatorDefinition(
            "media_referral_entropy", "Referral traffic diversity", C.MEDIA, V.ENTROPY,
            P.LOWER_IS_RISKIER, frozenset({S.MEDIA_REFERRALS}),
            description="Shannon entropy (nats) of incoming traffic by referrer class; "
            "concentration in one platform is a coordination risk signal.",
        ),
        # Geopolitics (external).
        IndicatorDefinition(
            "democracy_weighted_views", "Democratic quality of readership", C.GEOPOLITICS, V.SCORE,
            P.LOWER_IS_RISKIER, frozenset({S.PAGEVIEWS_BY_COUNTRY}),
            description="View distribution weighted by a per-country democratic index, 0..1.",
        ),
        IndicatorDefinition(
            "democracy_weighted_edits", "Democratic quality of editorship", C.GEOPOLITICS, V.SCORE,
            P.LOWER_IS_RISKIER, frozenset({S.EDITORS_BY_COUNTRY}),
            description="Edit distribution weighted by a per-country democratic index, 0..1.",
        ),
    ]
    validate_registry(defs)
    return defs


@dataclass(frozen=True)
class Provenance:
    """Where a computed value came from."""

    snapshots: tuple[str, ...]
    method_version: int
    computed_at: dt.datetime

    def to_dict(self) -> dict[str, Any]:
        return {
            "snapshots": list(self.snapshots),
            "method_version": self.method_version,
            "computed_at": format_timestamp(self.computed_at),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "Provenance":
        return cls(
            snapshots=tuple(str(s) for s in data["snapshots"]),
            method_version=int(data["method_version"]),
            computed_at=parse_timestamp(str(data["computed_at"])),
        )


@dataclass(frozen=True)
class IndicatorValue:
    """One computed indicator for one wiki and window, with provenance.

    ``value`` is a float for count/ratio/entropy/score kinds and a
    mapping for distribution kinds.  ``detail`` carries kind-specific
    extras (entropy support size, democracy-score coverage).
    """

    indicator_id: str
    wiki: WikiId
    window: MonthRange
    kind: ValueKind
    value: float | Mapping[str, float]
    provenance: Provenance
    detail: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind is ValueKind.DISTRIBUTION:
            if not isinstance(self.value, Mapping):
                raise ValueError("distribution indicators need a mapping value")
        else:
            if not isinstance(self.value, (int, float)) or isinstance(self.value, bool):
                raise ValueError(f"{self.kind.value} indicators need a numeric value")
            if not math.isfinite(self.value):
                raise ValueError("indicator values must be finite")
            if self.kind is ValueKind.ENTROPY and self.value < 0:
                raise ValueError("entropy must be non-negative")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "indicator_id": self.indicator_id,
            "wiki": self.wiki.code,
            "family": self.wiki.family,
            "window": self.window.to_dict(),
            "kind": self.kind.value,
            "value": dict(self.value) if isinstance(self.value, Mapping) else self.value,
            "provenance": self.provenance.to_dict(),
        }
        if self.detail:
            out["detail"] = dict(sorted(self.detail.items()))
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "IndicatorValue":
        kind = ValueKind(data["kind"])
        raw = data["value"]
        value: float | Mapping[str, float]
        if kind is ValueKind.DISTRIBUTION:
            value = {str(k): float(v) for k, v in raw.items()}
        else:
            value = float(raw)
        return cls(
            indicator_id=str(data["indicator_id"]),
            wiki=WikiId(str(data["wiki"]), str(data.get("family", "wikipedia"))),
            window=MonthRange.from_dict(data["window"]),
            kind=kind,
            value=value,
            provenance=Provenance.from_dict(data["provenance"]),
            detail={str(k): float(v) for k, v in data.get("detail", {}).items()},
        )


@dataclass(frozen=True)
class CategoryRiskScore:
    """Mean risk percentile of one taxonomy leaf's available indicators.

    A leaf with no available indicator is represented as *no score at
    all* (an absent matrix cell), never as zero.
    """

    wiki: WikiId
    category: RiskCategory
    score: float
    contributing: tuple[tuple[str, float], ...]
    cohort: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.contributing:
            raise ValueError("a risk score needs at least one contributing indicator")
        for _, risk in self.contributing:
            if not 0.0 <= risk <= 1.0:
                raise ValueError("risk percentiles must lie in [0, 1]")
        mean = sum(r for _, r in self.contributing) / len(self.contributing)
        if abs(mean - self.score) > 1e-9:
            raise ValueError("score must equal the mean of contributing risk percentiles")

    def to_dict(self) -> dict[str, Any]:
        return {
            "wiki": self.wiki.code,
            "category": self.category.value,
            "score": self.score,
            "contributing": [
                {"indicator_id": ind, "risk_percentile": risk} for ind, risk in self.contributing
            ],
            "cohort": list(self.cohort),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], family: str = "wikipedia") -> "CategoryRiskScore":
        return cls(
            wiki=WikiId(str(data["wiki"]), family),
            category=RiskCategory(data["category"]),
            score=float(data["score"]),
            contributing=tuple(
                (str(c["indicator_id"]), float(c["risk_percentile"])) for c in data["contributing"]
            ),
            cohort=tuple(str(w) for w in data["cohort"]),
        )
