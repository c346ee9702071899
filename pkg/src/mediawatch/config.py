"""Runtime configuration: every tunable threshold in one place.

Defaults match the documented pipeline behaviour; a JSON config file
(CLI flag --config) can override any subset of fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

# The ten languages handled by default (BCP-47-style codes).
DEFAULT_LANGUAGES = (
    "en", "fr", "es", "pt", "ru", "ar", "fa", "zh-Hans", "zh-Hant", "id",
)


class ConfigError(ValueError):
    """Malformed configuration value."""


@dataclass
class Config:
    # relevance routing
    t_low: float = 0.2
    t_high: float = 0.8
    feature_dim: int = 1 << 20

    # language detection
    languages: tuple[str, ...] = DEFAULT_LANGUAGES
    langdetect_threshold: float = 0.15

    # dedup
    shingle_width: int = 3
    sketch_k: int = 64
    dedup_sketch_threshold: float = 0.6
    dedup_triplet_threshold: float = 0.5
    dedup_window_days: int = 7

    # narratives
    window_days: int = 28
    p_threshold: float = 0.01
    c_min: int = 3
    lambda_floor: float = 0.1
    jsd_window: int = 3
    jsd_threshold: float = 0.2
    dormant_after_days: int = 14
    close_after_days: int = 60

    # knowledge graph
    adjacency_km: float = 500.0

    # search
    max_page_size: int = 500

    # resource artifacts; CLI flags override these
    lexicon_path: str | None = None
    blacklist_path: str | None = None
    gazetteer_path: str | None = None
    glossary_path: str | None = None
    model_path: str | None = None
    translate_endpoint: str | None = None

    def __post_init__(self) -> None:
        if not (0.0 <= self.t_low < self.t_high <= 1.0):
            raise ConfigError(
                f"thresholds must satisfy 0 <= t_low < t_high <= 1, "
                f"got ({self.t_low}, {self.t_high})"
            )
        if self.shingle_width not in (3, 4):
            raise ConfigError(f"shingle_width must be 3 or 4, got {self.shingle_width}")
        if self.feature_dim & (self.feature_dim - 1):
            raise ConfigError(f"feature_dim must be a power of two, got {self.feature_dim}")
        if not (0.0 < self.p_threshold < 1.0):
            raise ConfigError(f"p_threshold must be in (0,1), got {self.p_threshold}")
        for name in ("window_days", "c_min", "lambda_floor", "jsd_window",
                     "sketch_k", "dedup_window_days"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")

    @classmethod
    def load(cls, path: str | Path) -> "Config":
        """Load a JSON config file; unknown keys are rejected."""
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "languages" in raw:
            raw["languages"] = tuple(raw["languages"])
        return cls(**raw)
