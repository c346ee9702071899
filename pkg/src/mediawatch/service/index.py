"""In-memory faceted search over the document store.

The index is rebuilt from segment files at startup rather than persisted,
which keeps the on-disk format to plain document records. Geographic
postings credit every ancestor, so a search for a country finds documents
that only mention one of its districts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from datetime import date, datetime, timezone

from mediawatch.geo.gazetteer import Gazetteer, ancestors, distance_km
from mediawatch.ingest.models import (
    STATUS_PUBLISHED,
    STATUS_SUPPRESSED,
    STATUS_TRIAGE,
    Document,
)
from mediawatch.text.lexicon import Lexicon
from mediawatch.text.tokenize import lower_tokens

VALID_STATUSES = frozenset({STATUS_PUBLISHED, STATUS_TRIAGE, STATUS_SUPPRESSED})
# suppressed documents stay searchable for audit, but only on request
DEFAULT_STATUSES = frozenset({STATUS_PUBLISHED, STATUS_TRIAGE})

FACET_TOP_N = 20


@dataclass(frozen=True)
class Query:
    text_terms: tuple[str, ...] = ()
    keyword_ids: tuple[str, ...] = ()
    geo_id: int | None = None
    date_from: date | None = None
    date_to: date | None = None
    status_filter: frozenset[str] = DEFAULT_STATUSES
    page: int = 1
    page_size: int = 50

    def __post_init__(self) -> None:
        if self.page < 1:
            raise ValueError("page must be >= 1")
        if not 1 <= self.page_size <= 500:
            raise ValueError("page_size must be in 1..500")
        if self.date_from and self.date_to and self.date_from > self.date_to:
            raise ValueError("date_from must not be after date_to")
        bad = set(self.status_filter) - VALID_STATUSES
        if bad:
            raise ValueError(f"unknown statuses: {sorted(bad)}")


@dataclass
class SearchResult:
    total: int
    docs: list[dict]
    facets: dict
    map_counts: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "docs": self.docs,
            "facets": self.facets,
            "map_counts": {str(k): v for k, v in sorted(self.map_counts.items())},
        }


def doc_summary(doc: Document) -> dict:
    return {
        "doc_id": doc.doc_id,
        "title": doc.working_title,
        "lang": doc.lang,
        "status": doc.status,
        "relevance": doc.relevance,
        "published_at": doc.published_at.isoformat(),
        "source_feed": doc.raw.source_feed,
        "url": doc.raw.url,
        "publisher_country": doc.raw.publisher_country,
        "cluster_id": doc.cluster_id,
        "keywords": sorted({m.canonical_id for m in doc.keyword_mentions}),
        "locations": sorted(
            {m.resolved for m in doc.geo_mentions if m.resolved is not None}
        ),
        "flags": list(doc.flags),
    }


class SearchIndex:
    """Readable snapshot of every indexed document; one writer at a time."""

    def __init__(self, gaz: Gazetteer, lexicon: Lexicon):
        self.gaz = gaz
        self.lexicon = lexicon
        self._docs: dict[str, Document] = {}
        self._tokens: dict[str, set[str]] = {}
        self._keywords: dict[str, set[str]] = {}
        self._geo: dict[int, set[str]] = {}
        self._credited: dict[str, frozenset[int]] = {}

    def __len__(self) -> int:
        return len(self._docs)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def get(self, doc_id: str) -> Document:
        return self._docs[doc_id]

    def documents(self) -> list[Document]:
        return list(self._docs.values())

    def index_document(self, doc: Document) -> None:
        """Add or replace one document; atomic at document granularity."""
        if doc.doc_id in self._docs:
            self._remove(doc.doc_id)
        self._docs[doc.doc_id] = doc
        for tok in set(lower_tokens(doc.working_text())):
            self._tokens.setdefault(tok, set()).add(doc.doc_id)
        for cid in {m.canonical_id for m in doc.keyword_mentions}:
            self._keywords.setdefault(cid, set()).add(doc.doc_id)
        credited: set[int] = set()
        for m in doc.geo_mentions:
            if m.resolved is None or m.resolved not in self.gaz:
                continue
            credited.add(m.resolved)
            credited.update(ancestors(m.resolved, self.gaz))
        for gid in credited:
            self._geo.setdefault(gid, set()).add(doc.doc_id)
        self._credited[doc.doc_id] = frozenset(credited)

    def _remove(self, doc_id: str) -> None:
        doc = self._docs.pop(doc_id)
        for tok in set(lower_tokens(doc.working_text())):
            self._tokens.get(tok, set()).discard(doc_id)
        for cid in {m.canonical_id for m in doc.keyword_mentions}:
            self._keywords.get(cid, set()).discard(doc_id)
        for gid in self._credited.pop(doc_id, frozenset()):
            self._geo.get(gid, set()).discard(doc_id)

    # queries

    def _match_ids(self, q: Query) -> list[str]:
        cand: set[str] | None = None
        for term in q.text_terms:
            posting = self._tokens.get(term.lower(), set())
            cand = posting.copy() if cand is None else cand & posting
            if not cand:
                return []
        for cid in q.keyword_ids:
            posting = self._keywords.get(cid, set())
            cand = posting.copy() if cand is None else cand & posting
            if not cand:
                return []
        if q.geo_id is not None:
            posting = self._geo.get(q.geo_id, set())
            cand = posting.copy() if cand is None else cand & posting
        if cand is None:
            cand = set(self._docs)
        out = []
        for doc_id in cand:
            doc = self._docs[doc_id]
            if doc.status not in q.status_filter:
                continue
            day = _pub_date(doc)
            if q.date_from and day < q.date_from:
                continue
            if q.date_to and day > q.date_to:
                continue
            out.append(doc_id)
        out.sort(key=lambda d: (self._docs[d].published_at, d), reverse=True)
        return out

    def search(self, q: Query) -> SearchResult:
        """Conjunction of all filters; newest first; facets over the whole
        match set rather than the returned page."""
        matched = self._match_ids(q)
        start = (q.page - 1) * q.page_size
        page = [doc_summary(self._docs[d]) for d in matched[start : start + q.page_size]]

        by_date: Counter[str] = Counter()
        by_keyword: Counter[str] = Counter()
        by_location: Counter[int] = Counter()
        by_category: Counter[str] = Counter()
        map_counts: Counter[int] = Counter()
        for doc_id in matched:
            doc = self._docs[doc_id]
            by_date[_pub_date(doc).isoformat()] += 1
            kws = {m.canonical_id for m in doc.keyword_mentions}
            for cid in kws:
                by_keyword[cid] += 1
            cats = set()
            for cid in kws:
                entry = self.lexicon.entries.get(cid)
                if entry is not None:
                    cats.add(entry.semantic_type)
            for cat in cats:
                by_category[cat] += 1
            direct = {m.resolved for m in doc.geo_mentions if m.resolved is not None}
            for gid in direct:
                by_location[gid] += 1
            for gid in self._credited.get(doc_id, frozenset()):
                map_counts[gid] += 1

        facets = {
            "by_date": dict(sorted(by_date.items())),
            "by_keyword": [
                {"id": cid, "label": self._keyword_label(cid), "count": c}
                for cid, c in _top(by_keyword)
            ],
            "by_location": [
                {"geo_id": gid, "label": self._geo_label(gid), "count": c}
                for gid, c in _top(by_location)
            ],
            "by_category": [
                {"category": cat, "count": c} for cat, c in _top(by_category)
            ],
        }
        return SearchResult(
            total=len(matched), docs=page, facets=facets, map_counts=dict(map_counts)
        )

    def knowledge_graph(self, q: Query, top_n: int = 10, adjacency_km: float = 500.0) -> dict:
        """Typed bubbles over the match set, location pairs linked when
        geographically adjacent (shared parent or close by great circle)."""
        matched = self._match_ids(q)
        kw: Counter[str] = Counter()
        loc: Counter[int] = Counter()
        people: Counter[str] = Counter()
        orgs: Counter[str] = Counter()
        for doc_id in matched:
            doc = self._docs[doc_id]
            for cid in {m.canonical_id for m in doc.keyword_mentions}:
                kw[cid] += 1
            for gid in {m.resolved for m in doc.geo_mentions if m.resolved is not None}:
                loc[gid] += 1
            for name in {m.name for m in doc.entity_mentions if m.kind == "person"}:
                people[name] += 1
            for name in {m.name for m in doc.entity_mentions if m.kind == "organization"}:
                orgs[name] += 1

        nodes = []
        for cid, count in _top(kw, top_n):
            nodes.append(
                {"id": f"kw:{cid}", "type": "keyword",
                 "label": self._keyword_label(cid), "weight": count}
            )
        loc_ids = [gid for gid, _ in _top(loc, top_n)]
        for gid, count in _top(loc, top_n):
            nodes.append(
                {"id": f"geo:{gid}", "type": "location",
                 "label": self._geo_label(gid), "weight": count}
            )
        for name, count in _top(people, top_n):
            nodes.append(
                {"id": f"person:{name}", "type": "person", "label": name, "weight": count}
            )
        for name, count in _top(orgs, top_n):
            nodes.append(
                {"id": f"org:{name}", "type": "organization", "label": name, "weight": count}
            )

        edges = []
        for i, a in enumerate(loc_ids):
            for b in loc_ids[i + 1 :]:
                if self._adjacent(a, b, adjacency_km):
                    edges.append({"source": f"geo:{a}", "target": f"geo:{b}", "kind": "adjacent"})
        return {"nodes": nodes, "edges": edges}

    def _adjacent(self, a: int, b: int, km: float) -> bool:
        ea, eb = self.gaz.get(a), self.gaz.get(b)
        if ea.parent_id is not None and ea.parent_id == eb.parent_id:
            return True
        # a parent and its own child also count as adjacent
        if ea.parent_id == eb.geo_id or eb.parent_id == ea.geo_id:
            return True
        return distance_km(ea, eb) < km

    def _keyword_label(self, cid: str) -> str:
        entry = self.lexicon.entries.get(cid)
        return entry.preferred_name if entry is not None else cid

    def _geo_label(self, gid: int) -> str:
        return self.gaz.get(gid).name if gid in self.gaz else str(gid)


def _pub_date(doc: Document) -> date:
    return doc.published_at.astimezone(timezone.utc).date()


def _top(counter: Counter, n: int = FACET_TOP_N):
    return sorted(counter.items(), key=lambda kv: (-kv[1], str(kv[0])))[:n]
