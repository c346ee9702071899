"""Analyst reports: ordered document collations with text highlights and a
self-contained HTML export."""

from __future__ import annotations

import html
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone

from mediawatch.ingest.models import Document

_FIELDS = ("title", "body")


class ReportValidationError(ValueError):
    """Carries every offending doc_id / span, not just the first."""

    def __init__(self, offenders: list[str]):
        super().__init__("invalid report: " + "; ".join(offenders))
        self.offenders = offenders


@dataclass(frozen=True)
class Highlight:
    doc_id: str
    field: str
    span: tuple[int, int]


@dataclass
class Report:
    report_id: str
    title: str
    doc_ids: list[str]
    highlights: list[Highlight]
    author: str
    created_at: datetime

    def to_dict(self) -> dict:
        return {
            "report_id": self.report_id,
            "title": self.title,
            "doc_ids": list(self.doc_ids),
            "highlights": [
                {"doc_id": h.doc_id, "field": h.field, "span": list(h.span)}
                for h in self.highlights
            ],
            "author": self.author,
            "created_at": self.created_at.isoformat(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            report_id=d["report_id"],
            title=d["title"],
            doc_ids=list(d["doc_ids"]),
            highlights=[
                Highlight(h["doc_id"], h["field"], tuple(h["span"]))
                for h in d.get("highlights", [])
            ],
            author=d.get("author", ""),
            created_at=_ts(d.get("created_at")),
        )


def _ts(value) -> datetime:
    if value:
        return datetime.fromisoformat(value)
    return datetime.now(timezone.utc)


def validate_report(doc_ids, highlights, docs: dict[str, Document]) -> list[str]:
    """Every problem found, as human-readable offender strings."""
    offenders = []
    known = set(doc_ids)
    for doc_id in doc_ids:
        if doc_id not in docs:
            offenders.append(f"unknown doc_id {doc_id}")
    for h in highlights:
        if h.doc_id not in known:
            offenders.append(f"highlight references doc {h.doc_id} not in report")
            continue
        if h.doc_id not in docs:
            continue  # already reported as unknown
        if h.field not in _FIELDS:
            offenders.append(f"highlight field {h.field!r} on doc {h.doc_id}")
            continue
        text = docs[h.doc_id].field_text(h.field)
        start, end = h.span
        if not (0 <= start < end <= len(text)):
            offenders.append(
                f"highlight span {h.span} outside {h.field} of doc {h.doc_id}"
            )
    return offenders


def create_report(
    title: str,
    doc_ids,
    highlights,
    author: str,
    docs: dict[str, Document],
) -> Report:
    """Validate and build a report; spans must land inside their fields."""
    hl = [h if isinstance(h, Highlight) else Highlight(h[0], h[1], tuple(h[2])) for h in highlights]
    offenders = validate_report(doc_ids, hl, docs)
    if offenders:
        raise ReportValidationError(offenders)
    return Report(
        report_id=uuid.uuid4().hex,
        title=title,
        doc_ids=list(doc_ids),
        highlights=hl,
        author=author,
        created_at=datetime.now(timezone.utc),
    )


def _mark_spans(text: str, spans: list[tuple[int, int]]) -> str:
    """HTML-escape text with <mark> around each span; overlaps merge."""
    if not spans:
        return html.escape(text)
    merged: list[list[int]] = []
    for start, end in sorted(spans):
        if merged and start <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], end)
        else:
            merged.append([start, end])
    parts = []
    cursor = 0
    for start, end in merged:
        parts.append(html.escape(text[cursor:start]))
        parts.append("<mark>" + html.escape(text[start:end]) + "</mark>")
        cursor = end
    parts.append(html.escape(text[cursor:]))
    return "".join(parts)


def render_html(report: Report, docs: dict[str, Document]) -> str:
    """Self-contained single-file export of the report."""
    by_doc: dict[str, dict[str, list[tuple[int, int]]]] = {}
    for h in report.highlights:
        by_doc.setdefault(h.doc_id, {}).setdefault(h.field, []).append(h.span)

    sections = []
    for doc_id in report.doc_ids:
        doc = docs[doc_id]
        spans = by_doc.get(doc_id, {})
        title_html = _mark_spans(doc.working_title, spans.get("title", []))
        body_html = _mark_spans(doc.working_body, spans.get("body", []))
        meta = html.escape(
            f"{doc.raw.source_feed} | {doc.published_at.isoformat()} | {doc.status}"
        )
        sections.append(
            f"<article><h2>{title_html}</h2>"
            f"<p class='meta'>{meta}</p>"
            f"<p>{body_html}</p></article>"
        )

    return (
        "<!doctype html><html><head><meta charset='utf-8'>"
        f"<title>{html.escape(report.title)}</title>"
        "<style>body{font-family:sans-serif;max-width:48rem;margin:2rem auto;}"
        "mark{background:#ffe28a;}article{border-top:1px solid #ccc;padding:1rem 0;}"
        ".meta{color:#666;font-size:0.85rem;}</style></head><body>"
        f"<h1>{html.escape(report.title)}</h1>"
        f"<p class='meta'>by {html.escape(report.author)} at "
        f"{html.escape(report.created_at.isoformat())}</p>"
        + "".join(sections)
        + "</body></html>"
    )
