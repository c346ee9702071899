"""Persistence, search, HTTP API, reports, and figures."""

from mediawatch.service.api import AppState, build_app
from mediawatch.service.figures import render_narrative_figure, render_volume_figure
from mediawatch.service.index import (
    DEFAULT_STATUSES,
    Query,
    SearchIndex,
    SearchResult,
    doc_summary,
)
from mediawatch.service.reports import (
    Highlight,
    Report,
    ReportValidationError,
    create_report,
    render_html,
    validate_report,
)
from mediawatch.service.store import Store

__all__ = [
    "AppState",
    "DEFAULT_STATUSES",
    "Highlight",
    "Query",
    "Report",
    "ReportValidationError",
    "SearchIndex",
    "SearchResult",
    "Store",
    "build_app",
    "create_report",
    "doc_summary",
    "render_html",
    "render_narrative_figure",
    "render_volume_figure",
    "validate_report",
]
