"""Feed acquisition: RSS/Atom endpoints and local jsonl drops.

A FeedFetcher keeps a per-feed seen-set (hash of url + title) so repeated
polls of a static feed yield each item exactly once across calls. The seen
state is a plain dict of sets, serializable by the store so restarts do not
re-ingest.
"""

from __future__ import annotations

import hashlib
import html
import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from mediawatch.ingest.models import RawArticle, parse_timestamp

_TAG_RE = re.compile(r"<[^>]+>")
_ITEM_RE = re.compile(r"<item[\s>].*?</item>|<entry[\s>].*?</entry>", re.DOTALL)


class FetchError(RuntimeError):
    """Source unreachable or unreadable; safe to retry later."""


@dataclass
class FeedConfig:
    feed_id: str
    url: str
    kind: str  # "rss" | "jsonl_drop"
    publisher_country: str = "unknown"
    poll_interval_s: int = 300

    def __post_init__(self) -> None:
        if self.kind not in ("rss", "jsonl_drop"):
            raise ValueError(f"unknown feed kind {self.kind!r}")
        if self.poll_interval_s < 1:
            raise ValueError("poll_interval_s must be >= 1")


def load_feed_configs(path: str | Path) -> list[FeedConfig]:
    """Load a JSON array of feed configs; feed ids must be unique."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    configs = [FeedConfig(**entry) for entry in raw]
    ids = [c.feed_id for c in configs]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate feed_id in feed configuration")
    return configs


@dataclass
class FetchResult:
    articles: list[RawArticle]
    skipped: int = 0  # malformed items dropped


class FeedFetcher:
    def __init__(self, seen: dict[str, set[str]] | None = None) -> None:
        self.seen: dict[str, set[str]] = seen if seen is not None else {}

    # --- seen-set persistence -------------------------------------------

    def seen_state(self) -> dict[str, list[str]]:
        return {fid: sorted(s) for fid, s in self.seen.items()}

    @classmethod
    def from_seen_state(cls, state: dict[str, list[str]]) -> "FeedFetcher":
        return cls({fid: set(hashes) for fid, hashes in state.items()})

    # --- fetching --------------------------------------------------------

    def fetch(self, cfg: FeedConfig, now: datetime | None = None) -> FetchResult:
        now = now or datetime.now(timezone.utc)
        if cfg.kind == "rss":
            raw_items, skipped = _read_rss(cfg.url)
        else:
            raw_items, skipped = _read_jsonl(cfg.url)

        seen = self.seen.setdefault(cfg.feed_id, set())
        articles: list[RawArticle] = []
        for item in raw_items:
            key = _seen_key(item.get("url", ""), item.get("title", ""))
            if key in seen:
                continue
            try:
                articles.append(_to_article(item, cfg, now))
            except ValueError:
                skipped += 1
                continue
            seen.add(key)
        return FetchResult(articles=articles, skipped=skipped)


def fetch_feed(cfg: FeedConfig, fetcher: FeedFetcher | None = None) -> list[RawArticle]:
    return (fetcher or FeedFetcher()).fetch(cfg).articles


def _seen_key(url: str, title: str) -> str:
    return hashlib.blake2b(f"{url}\n{title}".encode("utf-8"), digest_size=16).hexdigest()


def _to_article(item: dict[str, Any], cfg: FeedConfig, now: datetime) -> RawArticle:
    published = parse_timestamp(item.get("published_at"))
    inferred = published is None
    return RawArticle(
        source_feed=cfg.feed_id,
        url=item.get("url", ""),
        title=item.get("title", ""),
        body=item.get("body", ""),
        published_at=published or now,
        publisher_country=item.get("publisher_country", cfg.publisher_country),
        published_at_inferred=inferred or item.get("published_at_inferred", False),
    )


# --- RSS / Atom ----------------------------------------------------------


def _read_source(url: str) -> str:
    if url.startswith(("http://", "https://")):
        import requests

        try:
            resp = requests.get(url, timeout=15)
            resp.raise_for_status()
            return resp.text
        except Exception as exc:
            raise FetchError(f"cannot fetch {url}: {exc}") from exc
    path = Path(url)
    if not path.exists():
        raise FetchError(f"feed source not found: {url}")
    return path.read_text(encoding="utf-8")


def _read_rss(url: str) -> tuple[list[dict[str, Any]], int]:
    text = _read_source(url)
    try:
        root = ET.fromstring(text)
    except ET.ParseError:
        return _recover_items(text)
    items = []
    skipped = 0
    for node in _iter_item_nodes(root):
        parsed = _parse_item_node(node)
        if parsed is None:
            skipped += 1
        else:
            items.append(parsed)
    return items, skipped


def _recover_items(text: str) -> tuple[list[dict[str, Any]], int]:
    # Document-level XML is broken; salvage whatever per-item fragments parse.
    items = []
    skipped = 0
    for frag in _ITEM_RE.findall(text):
        try:
            node = ET.fromstring(frag)
        except ET.ParseError:
            skipped += 1
            continue
        parsed = _parse_item_node(node)
        if parsed is None:
            skipped += 1
        else:
            items.append(parsed)
    return items, skipped


def _localname(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _iter_item_nodes(root: ET.Element):
    for node in root.iter():
        if _localname(node.tag) in ("item", "entry"):
            yield node


def _parse_item_node(node: ET.Element) -> dict[str, Any] | None:
    fields: dict[str, Any] = {}
    for child in node:
        name = _localname(child.tag)
        text = (child.text or "").strip()
        if name == "title":
            fields["title"] = _strip_markup(text)
        elif name == "link":
            # Atom links use href; RSS puts the URL in the text
            fields["url"] = child.get("href") or text
        elif name in ("description", "summary", "content"):
            fields.setdefault("body", _strip_markup(text))
        elif name in ("pubDate", "published", "updated", "date"):
            fields.setdefault("published_at", text)
    if not fields.get("title") and not fields.get("body"):
        return None
    return fields


def _strip_markup(text: str) -> str:
    return _TAG_RE.sub(" ", html.unescape(text)).strip()


# --- jsonl drops ---------------------------------------------------------


def _read_jsonl(url: str) -> tuple[list[dict[str, Any]], int]:
    path = Path(url)
    if not path.exists():
        raise FetchError(f"jsonl drop not found: {url}")
    items = []
    skipped = 0
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                skipped += 1
                continue
            if not isinstance(record, dict):
                skipped += 1
                continue
            items.append(record)
    return items, skipped
