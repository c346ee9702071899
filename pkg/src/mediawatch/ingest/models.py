"""Article and document records flowing through the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

# Document lifecycle. pending may move to any terminal-ish state; triage is
# the only state an analyst decision can move out of.
STATUS_PENDING = "pending"
STATUS_PUBLISHED = "published"
STATUS_TRIAGE = "triage"
STATUS_SUPPRESSED = "suppressed"

ALLOWED_TRANSITIONS: dict[str, frozenset[str]] = {
    STATUS_PENDING: frozenset({STATUS_PUBLISHED, STATUS_TRIAGE, STATUS_SUPPRESSED}),
    STATUS_TRIAGE: frozenset({STATUS_PUBLISHED, STATUS_SUPPRESSED}),
    STATUS_PUBLISHED: frozenset(),
    STATUS_SUPPRESSED: frozenset(),
}


class InvalidTransition(ValueError):
    pass


def check_transition(old: str, new: str) -> None:
    if new not in ALLOWED_TRANSITIONS.get(old, frozenset()):
        raise InvalidTransition(f"cannot move document from {old!r} to {new!r}")


def parse_timestamp(value: str | datetime | None) -> datetime | None:
    """Parse an ISO-8601 or RFC-822 timestamp; naive times are taken as UTC."""
    if value is None:
        return None
    if isinstance(value, datetime):
        dt = value
    else:
        dt = _parse_datetime_string(value)
        if dt is None:
            return None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def _parse_datetime_string(value: str) -> datetime | None:
    value = value.strip()
    if not value:
        return None
    try:
        return datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        pass
    # RFC 822 dates as used by RSS pubDate
    from email.utils import parsedate_to_datetime

    try:
        return parsedate_to_datetime(value)
    except (TypeError, ValueError):
        return None


@dataclass
class RawArticle:
    """An article as fetched, before any processing.

    published_at falls back to fetch time when the feed date is missing or
    unparseable; published_at_inferred records that fallback.
    """

    source_feed: str
    url: str
    title: str
    body: str
    published_at: datetime
    publisher_country: str = "unknown"
    published_at_inferred: bool = False

    def __post_init__(self) -> None:
        if not (self.title.strip() or self.body.strip()):
            raise ValueError("article must have a non-empty title or body")

    def to_dict(self) -> dict[str, Any]:
        return {
            "source_feed": self.source_feed,
            "url": self.url,
            "title": self.title,
            "body": self.body,
            "published_at": self.published_at.isoformat(),
            "publisher_country": self.publisher_country,
            "published_at_inferred": self.published_at_inferred,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RawArticle":
        return cls(
            source_feed=d["source_feed"],
            url=d["url"],
            title=d.get("title", ""),
            body=d.get("body", ""),
            published_at=parse_timestamp(d["published_at"]),
            publisher_country=d.get("publisher_country", "unknown"),
            published_at_inferred=d.get("published_at_inferred", False),
        )


@dataclass
class Document:
    """Normalized article plus everything downstream stages attach to it.

    doc_id is a deterministic 128-bit hash of the normalized raw content, so
    byte-identical articles always collapse to the same id.
    """

    doc_id: str
    raw: RawArticle
    lang: str
    working_title: str
    working_body: str
    fetched_at: datetime
    status: str = STATUS_PENDING
    relevance: float | None = None
    keyword_mentions: list = field(default_factory=list)
    geo_mentions: list = field(default_factory=list)
    entity_mentions: list = field(default_factory=list)
    counts: list = field(default_factory=list)
    cluster_id: str | None = None
    flags: list[str] = field(default_factory=list)

    @property
    def published_at(self) -> datetime:
        return self.raw.published_at

    def working_text(self) -> str:
        return f"{self.working_title}\n{self.working_body}"

    def field_text(self, name: str) -> str:
        if name == "title":
            return self.working_title
        if name == "body":
            return self.working_body
        raise KeyError(name)

    def transition(self, new_status: str) -> None:
        check_transition(self.status, new_status)
        self.status = new_status

    def to_dict(self) -> dict[str, Any]:
        from dataclasses import asdict

        return {
            "doc_id": self.doc_id,
            "raw": self.raw.to_dict(),
            "lang": self.lang,
            "working_title": self.working_title,
            "working_body": self.working_body,
            "fetched_at": self.fetched_at.isoformat(),
            "status": self.status,
            "relevance": self.relevance,
            "keyword_mentions": [asdict(m) for m in self.keyword_mentions],
            "geo_mentions": [asdict(m) for m in self.geo_mentions],
            "entity_mentions": [asdict(m) for m in self.entity_mentions],
            "counts": [asdict(c) for c in self.counts],
            "cluster_id": self.cluster_id,
            "flags": self.flags,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Document":
        from mediawatch.geo.gazetteer import GeoMention
        from mediawatch.text.counts import CasualtyCount
        from mediawatch.text.entities import EntityMention
        from mediawatch.text.lexicon import KeywordMention

        return cls(
            doc_id=d["doc_id"],
            raw=RawArticle.from_dict(d["raw"]),
            lang=d["lang"],
            working_title=d["working_title"],
            working_body=d["working_body"],
            fetched_at=parse_timestamp(d["fetched_at"]),
            status=d["status"],
            relevance=d.get("relevance"),
            keyword_mentions=[
                _restore(KeywordMention, m) for m in d.get("keyword_mentions", [])
            ],
            geo_mentions=[_restore(GeoMention, m) for m in d.get("geo_mentions", [])],
            entity_mentions=[
                _restore(EntityMention, m) for m in d.get("entity_mentions", [])
            ],
            counts=[_restore(CasualtyCount, c) for c in d.get("counts", [])],
            cluster_id=d.get("cluster_id"),
            flags=list(d.get("flags", [])),
        )


def _restore(cls, m: dict) -> Any:
    # JSON turns span tuples into lists; put them back.
    m = dict(m)
    if isinstance(m.get("span"), list):
        m["span"] = tuple(m["span"])
    return cls(**m)
