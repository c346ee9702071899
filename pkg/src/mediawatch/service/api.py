"""HTTP API over the store, index, clusters, narratives, and reports.

All state lives in an AppState bundle created by the caller, so tests can
assemble a fixture-backed app without touching the filesystem layout the
CLI uses. Mutations (triage, report creation) serialize through one write
lock; reads are lock-free against snapshot-consistent in-memory state.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from datetime import date

from fastapi import Body, FastAPI, HTTPException
from fastapi import Query as QueryParam
from fastapi.responses import HTMLResponse

from mediawatch.config import Config
from mediawatch.dedup.clusters import ClusterIndex
from mediawatch.geo.gazetteer import Gazetteer, ancestors
from mediawatch.ingest.models import (
    STATUS_PUBLISHED,
    STATUS_SUPPRESSED,
    STATUS_TRIAGE,
    InvalidTransition,
)
from mediawatch.narratives.tracker import NarrativeTracker
from mediawatch.service.index import DEFAULT_STATUSES, Query, SearchIndex
from mediawatch.service.reports import (
    Highlight,
    Report,
    ReportValidationError,
    create_report,
    render_html,
)
from mediawatch.service.store import Store
from mediawatch.text.lexicon import Lexicon

_DECISIONS = {"publish": STATUS_PUBLISHED, "suppress": STATUS_SUPPRESSED}


@dataclass
class AppState:
    store: Store
    index: SearchIndex
    clusters: ClusterIndex
    tracker: NarrativeTracker
    gaz: Gazetteer
    lexicon: Lexicon
    config: Config = field(default_factory=Config)
    reports: dict[str, Report] = field(default_factory=dict)
    write_lock: threading.Lock = field(default_factory=threading.Lock)


def _parse_query(
    q: str | None,
    keyword: list[str],
    geo: int | None,
    date_from: str | None,
    date_to: str | None,
    status: list[str],
    page: int,
    page_size: int,
) -> Query:
    statuses = [s for chunk in status for s in chunk.split(",") if s]
    try:
        return Query(
            text_terms=tuple((q or "").split()),
            keyword_ids=tuple(keyword),
            geo_id=geo,
            date_from=date.fromisoformat(date_from) if date_from else None,
            date_to=date.fromisoformat(date_to) if date_to else None,
            status_filter=frozenset(statuses) if statuses else DEFAULT_STATUSES,
            page=page,
            page_size=page_size,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def build_app(state: AppState, console_dir: str | None = None) -> FastAPI:
    """API app; with console_dir, also serve the analyst console from it.

    The static mount is registered after the API routes, so /api/* always
    resolves to the service and everything else falls through to the
    console files (index.html at /).
    """
    app = FastAPI(title="mediawatch", docs_url=None, redoc_url=None)

    @app.get("/api/search")
    def search(
        q: str | None = None,
        keyword: list[str] = QueryParam(default=[]),
        geo: int | None = None,
        date_from: str | None = QueryParam(default=None, alias="from"),
        date_to: str | None = QueryParam(default=None, alias="to"),
        status: list[str] = QueryParam(default=[]),
        page: int = 1,
        page_size: int = 50,
    ):
        query = _parse_query(q, keyword, geo, date_from, date_to, status, page, page_size)
        return state.index.search(query).to_dict()

    @app.get("/api/graph")
    def graph(
        q: str | None = None,
        keyword: list[str] = QueryParam(default=[]),
        geo: int | None = None,
        date_from: str | None = QueryParam(default=None, alias="from"),
        date_to: str | None = QueryParam(default=None, alias="to"),
        status: list[str] = QueryParam(default=[]),
        top_n: int = 10,
    ):
        query = _parse_query(q, keyword, geo, date_from, date_to, status, 1, 50)
        if top_n < 1:
            raise HTTPException(status_code=400, detail="top_n must be >= 1")
        return state.index.knowledge_graph(
            query, top_n=top_n, adjacency_km=state.config.adjacency_km
        )

    @app.get("/api/documents/{doc_id}")
    def get_document(doc_id: str):
        if doc_id not in state.index:
            raise HTTPException(status_code=404, detail="unknown document")
        doc = state.index.get(doc_id)
        payload = doc.to_dict()
        if doc.doc_id in state.clusters:
            payload["cluster_id"] = state.clusters.cluster_of(doc.doc_id)
        return payload

    @app.get("/api/clusters/{cluster_id}")
    def get_cluster(cluster_id: str):
        try:
            cluster = state.clusters.get_cluster(cluster_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown cluster")
        return {
            "cluster_id": cluster.cluster_id,
            "member_ids": sorted(cluster.member_ids),
            "exemplar_id": cluster.exemplar_id,
            "count_history": [
                {
                    "doc_id": doc_id,
                    "category": count.category,
                    "value": count.value,
                    "span": list(count.span),
                }
                for doc_id, count in cluster.count_history
            ],
        }

    @app.post("/api/triage/{doc_id}")
    def triage(doc_id: str, payload: dict = Body(...)):
        decision = payload.get("decision")
        actor = payload.get("actor", "")
        if decision not in _DECISIONS:
            raise HTTPException(status_code=400, detail="decision must be publish or suppress")
        with state.write_lock:
            if doc_id not in state.index:
                raise HTTPException(status_code=404, detail="unknown document")
            doc = state.index.get(doc_id)
            if doc.status != STATUS_TRIAGE:
                raise HTTPException(
                    status_code=409,
                    detail=f"document is {doc.status}, not triage",
                )
            try:
                doc.transition(_DECISIONS[decision])
            except InvalidTransition as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            state.store.put_document(doc)
            state.store.append_audit(
                actor, "triage", {"doc_id": doc_id, "decision": decision}
            )
            state.index.index_document(doc)
        return doc.to_dict()

    @app.get("/api/narratives")
    def narratives(date_param: str | None = QueryParam(default=None, alias="date")):
        records = state.tracker.records()
        if date_param is None:
            return records
        try:
            date.fromisoformat(date_param)
        except ValueError:
            raise HTTPException(status_code=400, detail="bad date")
        return [r for r in records if date_param in r["daily_counts"]]

    @app.get("/api/narratives/{narrative_id}")
    def narrative(narrative_id: str):
        try:
            return state.tracker.get(narrative_id).to_dict()
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown narrative")

    @app.post("/api/reports")
    def post_report(payload: dict = Body(...)):
        highlights = []
        for h in payload.get("highlights", []):
            if isinstance(h, dict):
                highlights.append(Highlight(h["doc_id"], h["field"], tuple(h["span"])))
            else:
                highlights.append(Highlight(h[0], h[1], tuple(h[2])))
        docs = {d.doc_id: d for d in state.index.documents()}
        with state.write_lock:
            try:
                report = create_report(
                    title=payload.get("title", ""),
                    doc_ids=list(payload.get("doc_ids", [])),
                    highlights=highlights,
                    author=payload.get("author", ""),
                    docs=docs,
                )
            except ReportValidationError as exc:
                raise HTTPException(status_code=400, detail=exc.offenders)
            state.reports[report.report_id] = report
            state.store.put_report(report.to_dict())
        return report.to_dict()

    @app.get("/api/reports/{report_id}")
    def get_report(report_id: str):
        report = state.reports.get(report_id)
        if report is None:
            raise HTTPException(status_code=404, detail="unknown report")
        return report.to_dict()

    @app.get("/api/reports/{report_id}/export")
    def export_report(report_id: str):
        report = state.reports.get(report_id)
        if report is None:
            raise HTTPException(status_code=404, detail="unknown report")
        docs = {d.doc_id: d for d in state.index.documents()}
        missing = [d for d in report.doc_ids if d not in docs]
        if missing:
            raise HTTPException(status_code=409, detail=f"missing documents: {missing}")
        return HTMLResponse(render_html(report, docs))

    @app.get("/api/geo/{geo_id}")
    def get_geo(geo_id: int):
        if geo_id not in state.gaz:
            raise HTTPException(status_code=404, detail="unknown geo entity")
        ent = state.gaz.get(geo_id)
        chain = ancestors(geo_id, state.gaz)
        return {
            "geo_id": ent.geo_id,
            "name": ent.name,
            "alt_names": list(ent.alt_names),
            "lat": ent.lat,
            "lon": ent.lon,
            "feature": ent.feature,
            "country_code": ent.country_code,
            "population": ent.population,
            "parent_id": ent.parent_id,
            "ancestors": [
                {"geo_id": g, "name": state.gaz.get(g).name} for g in chain
            ],
            "children": [
                {"geo_id": g, "name": state.gaz.get(g).name}
                for g in sorted(state.gaz.children(geo_id))
            ],
        }

    if console_dir is not None:
        from starlette.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=console_dir, html=True), name="console")

    return app
