"""Text normalization and Document construction."""

from __future__ import annotations

import re
import unicodedata
from datetime import datetime, timezone

from mediawatch.hashing import content_hash128
from mediawatch.ingest.models import Document, RawArticle

_WS_RUN = re.compile(r"\s+")


def normalize_text(text: str) -> str:
    """Collapse whitespace runs to single spaces and strip control characters.

    Idempotent: normalizing already-normalized text is a no-op.
    """
    text = "".join(
        ch for ch in text if ch in ("\n", "\t", " ") or unicodedata.category(ch) not in ("Cc", "Cf")
    )
    return _WS_RUN.sub(" ", text).strip()


def doc_id_for(title: str, body: str) -> str:
    """Deterministic 128-bit id over normalized title and body."""
    return content_hash128(normalize_text(title) + "\n" + normalize_text(body))


def normalize(
    article: RawArticle,
    lang: str,
    working: tuple[str, str],
    fetched_at: datetime | None = None,
    flags: list[str] | None = None,
) -> Document:
    """Build a pending Document from a raw article and its working text.

    The doc id is computed over the normalized raw content, so the same
    article fetched twice (or with different surrounding whitespace) gets
    the same id regardless of translation.
    """
    title = normalize_text(article.title)
    body = normalize_text(article.body)
    if not (title or body):
        raise ValueError("cannot normalize an article with empty title and body")
    working_title, working_body = working
    return Document(
        doc_id=content_hash128(title + "\n" + body),
        raw=article,
        lang=lang,
        working_title=normalize_text(working_title),
        working_body=normalize_text(working_body),
        fetched_at=fetched_at or datetime.now(timezone.utc),
        flags=list(flags or []),
    )
