"""wikirisk: a cross-wiki knowledge integrity risk observatory.

Ingests public per-wiki statistics, computes a taxonomy-organized
indicator set, scores and ranks wikis per risk category, persists
longitudinal snapshots, and serves results over a read-only HTTP API.
"""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    CategoryRiskScore,
    CountryDistribution,
    GovernanceStats,
    IndicatorDefinition,
    IndicatorValue,
    Month,
    MonthRange,
    RiskCategory,
    RiskPolarity,
    SiteStats,
    SourceKind,
    Subject,
    ValueKind,
    WikiId,
    WikiSnapshot,
    default_registry,
    taxonomy,
)
