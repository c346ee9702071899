"""Feed acquisition: RSS, Atom, broken-XML salvage, jsonl drops, seen state."""

import json
from datetime import datetime, timezone

import pytest

from mediawatch.ingest.feeds import (
    FeedConfig,
    FeedFetcher,
    FetchError,
    fetch_feed,
    load_feed_configs,
)


def rss_cfg(fixtures_dir, **kw):
    return FeedConfig(feed_id="wire-rss", url=str(fixtures_dir / "feed.rss"), kind="rss", **kw)


def test_rss_fixture_yields_three_articles(fixtures_dir):
    articles = fetch_feed(rss_cfg(fixtures_dir, publisher_country="JP"))
    assert len(articles) == 3
    titles = [a.title for a in articles]
    assert any("cholera" in t.lower() for t in titles)
    first = articles[0]
    assert first.source_feed == "wire-rss"
    assert first.publisher_country == "JP"
    assert first.published_at == datetime(2026, 3, 2, 8, 30, tzinfo=timezone.utc)
    assert not first.published_at_inferred


def test_atom_fixture_yields_two_articles(fixtures_dir):
    cfg = FeedConfig(feed_id="atom", url=str(fixtures_dir / "feed.atom"), kind="rss")
    articles = fetch_feed(cfg)
    assert len(articles) == 2
    assert all(a.url.startswith("https://") for a in articles)
    assert all(a.body for a in articles)


def test_seen_state_suppresses_repeat_items(fixtures_dir):
    fetcher = FeedFetcher()
    cfg = rss_cfg(fixtures_dir)
    assert len(fetcher.fetch(cfg).articles) == 3
    assert len(fetcher.fetch(cfg).articles) == 0
    # round-trip through the serializable form
    revived = FeedFetcher.from_seen_state(fetcher.seen_state())
    assert len(revived.fetch(cfg).articles) == 0


def test_broken_document_salvages_intact_items(tmp_path, fixtures_dir):
    text = (fixtures_dir / "feed.rss").read_text(encoding="utf-8")
    # truncate the document so it no longer parses as a whole
    broken = text.replace("</rss>", "")
    assert "</rss>" not in broken
    path = tmp_path / "broken.rss"
    path.write_text(broken + "<item><title>half", encoding="utf-8")
    cfg = FeedConfig(feed_id="b", url=str(path), kind="rss")
    result = FeedFetcher().fetch(cfg)
    assert len(result.articles) == 3


def test_markup_and_entities_stripped(tmp_path):
    path = tmp_path / "f.rss"
    path.write_text(
        "<rss><channel><item><title>A &amp; B</title>"
        "<description>&lt;p&gt;ten &lt;b&gt;cases&lt;/b&gt;&lt;/p&gt;</description>"
        "<link>http://x</link></item></channel></rss>",
        encoding="utf-8",
    )
    cfg = FeedConfig(feed_id="m", url=str(path), kind="rss")
    (a,) = FeedFetcher().fetch(cfg).articles
    assert a.title == "A & B"
    assert "ten" in a.body and "cases" in a.body
    assert "<" not in a.body


def test_jsonl_drop_reads_records_and_counts_bad_lines(tmp_path):
    drop = tmp_path / "drop.jsonl"
    rows = [
        {"title": "Cholera in port city", "body": "Twelve cases.", "url": "u1",
         "published_at": "2026-03-01T00:00:00Z"},
        {"title": "No date article", "body": "text", "url": "u2"},
    ]
    lines = [json.dumps(r) for r in rows] + ["{not json", '"not a dict"']
    drop.write_text("\n".join(lines) + "\n", encoding="utf-8")
    cfg = FeedConfig(feed_id="drop", url=str(drop), kind="jsonl_drop")
    result = FeedFetcher().fetch(cfg)
    assert len(result.articles) == 2
    assert result.skipped == 2
    undated = result.articles[1]
    assert undated.published_at_inferred
    assert undated.published_at.tzinfo is not None


def test_missing_source_raises_fetch_error(tmp_path):
    cfg = FeedConfig(feed_id="gone", url=str(tmp_path / "nope.rss"), kind="rss")
    with pytest.raises(FetchError):
        FeedFetcher().fetch(cfg)


def test_feed_config_validation():
    with pytest.raises(ValueError):
        FeedConfig(feed_id="x", url="u", kind="carrier-pigeon")


def test_load_feed_configs_rejects_duplicate_ids(tmp_path):
    path = tmp_path / "feeds.json"
    path.write_text(
        json.dumps([
            {"feed_id": "a", "url": "u1", "kind": "rss"},
            {"feed_id": "a", "url": "u2", "kind": "rss"},
        ]),
        encoding="utf-8",
    )
    with pytest.raises(ValueError):
        load_feed_configs(path)
