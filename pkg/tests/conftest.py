"""Shared fixtures: canned lexicon/gazetteer resources and article factories."""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path

import pytest

from mediawatch.config import Config
from mediawatch.geo.gazetteer import load_gazetteer
from mediawatch.ingest.models import RawArticle
from mediawatch.ingest.normalize import normalize
from mediawatch.pipeline import Pipeline
from mediawatch.text.lexicon import Lexicon, load_blacklist

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    return Lexicon.load(FIXTURES / "lexicon.tsv")


@pytest.fixture(scope="session")
def blacklist() -> set[str]:
    return load_blacklist(FIXTURES / "blacklist.txt")


@pytest.fixture(scope="session")
def gaz():
    return load_gazetteer(FIXTURES / "gazetteer.tsv")


def article(
    title: str,
    body: str,
    ts: str = "2026-03-02T08:00:00+00:00",
    feed: str = "wire",
    url: str = "https://wire.example.org/a/1",
    country: str = "unknown",
) -> RawArticle:
    return RawArticle(
        source_feed=feed,
        url=url,
        title=title,
        body=body,
        published_at=datetime.fromisoformat(ts),
        publisher_country=country,
    )


def document(
    title: str,
    body: str,
    ts: str = "2026-03-02T08:00:00+00:00",
    lang: str = "en",
    country: str = "unknown",
    fetched: str | None = None,
):
    raw = article(title, body, ts=ts, country=country)
    fetched_at = (
        datetime.fromisoformat(fetched) if fetched else datetime.fromisoformat(ts)
    )
    return normalize(raw, lang, (title, body), fetched_at=fetched_at)


@pytest.fixture
def make_article():
    return article


@pytest.fixture
def make_document():
    return document


@pytest.fixture
def make_pipeline(lexicon, blacklist, gaz, tmp_path):
    """Factory for a full pipeline over a temp store."""
    from mediawatch.service.store import Store

    def build(model=None, store: bool = True, config: Config | None = None, **kw):
        return Pipeline(
            config=config or Config(**kw),
            lexicon=lexicon,
            blacklist=frozenset(blacklist),
            gaz=gaz,
            model=model,
            store=Store(tmp_path / "store") if store else None,
        )

    return build
