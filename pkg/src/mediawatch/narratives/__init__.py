"""Narrative discovery: surprise detection over (keyword, location) pairs,
lifecycle tracking, and language change-point detection."""

from mediawatch.narratives.stats import jensen_shannon, poisson_tail
from mediawatch.narratives.tracker import (
    STATUS_ACTIVE,
    STATUS_CLOSED,
    STATUS_DORMANT,
    Narrative,
    NarrativeTracker,
    PairKey,
    StepResult,
    SurpriseParams,
    daily_pair_counts,
    detect_change_points,
    detect_narratives,
    doc_pairs,
)

__all__ = [
    "STATUS_ACTIVE",
    "STATUS_CLOSED",
    "STATUS_DORMANT",
    "Narrative",
    "NarrativeTracker",
    "PairKey",
    "StepResult",
    "SurpriseParams",
    "daily_pair_counts",
    "detect_change_points",
    "detect_narratives",
    "doc_pairs",
    "jensen_shannon",
    "poisson_tail",
]
