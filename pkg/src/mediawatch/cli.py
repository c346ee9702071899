"""Operator command line.

Subcommands: ingest (poll feeds into the store), train (fit the relevance
model from labeled examples), replay (run a corpus file through the full
pipeline plus the daily narrative batch), serve (HTTP API), query (search
from the shell), and report (write narrative records as JSONL with PNG
figures alongside).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from datetime import date, datetime, timezone
from pathlib import Path

from mediawatch.config import Config, ConfigError
from mediawatch.ingest.feeds import FeedFetcher, FetchError, load_feed_configs
from mediawatch.ingest.models import RawArticle
from mediawatch.ingest.translate import RemoteTranslationClient, StubTranslationClient
from mediawatch.pipeline import Pipeline
from mediawatch.service.api import AppState, build_app
from mediawatch.service.figures import render_narrative_figure, render_volume_figure
from mediawatch.service.index import DEFAULT_STATUSES, Query
from mediawatch.service.reports import Report
from mediawatch.service.store import Store
from mediawatch.text.lexicon import Lexicon, load_blacklist
from mediawatch.text.relevance import RelevanceModel, TrainingError, train_relevance
from mediawatch.geo.gazetteer import load_gazetteer

log = logging.getLogger(__name__)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError, TrainingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mediawatch",
        description="desk-scale media surveillance: ingest, tag, dedup, detect",
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="fetch feeds and run the pipeline")
    _resource_flags(p)
    p.add_argument("--feeds", required=True, help="feed config JSON")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--once", action="store_true", default=True, help="single pass (default)")
    mode.add_argument("--daemon", action="store_true", help="poll forever")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train", help="fit the relevance model")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--labels", required=True, help="TSV: label<TAB>title<TAB>body")
    p.add_argument("--out", required=True, help="model output path")
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--seed", type=int, default=13)
    p.add_argument("--reg", type=float, default=1e-4)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("replay", help="run a corpus file plus the daily batch")
    _resource_flags(p)
    p.add_argument("--corpus", required=True, help="JSONL of raw articles")
    p.add_argument("--date", help="batch date YYYY-MM-DD (default: last corpus date)")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="run the HTTP API")
    _resource_flags(p)
    p.add_argument("--addr", default="127.0.0.1:8000", help="host:port")
    p.add_argument(
        "--console",
        help="directory with the built analyst console, served at /",
    )
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("query", help="search the store, one JSON line per hit")
    _resource_flags(p)
    p.add_argument("--q", default="", help="space-separated AND terms")
    p.add_argument("--keyword", action="append", default=[])
    p.add_argument("--geo", type=int)
    p.add_argument("--from", dest="date_from")
    p.add_argument("--to", dest="date_to")
    p.add_argument("--status", action="append", default=[])
    p.add_argument("--page", type=int, default=1)
    p.add_argument("--page-size", type=int, default=50)
    p.add_argument("--facets", action="store_true", help="print the facet object too")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("report", help="write narrative JSONL plus PNG figures")
    _resource_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--date", help="restrict to narratives live on this date")
    p.set_defaults(func=cmd_report)

    return parser


def _resource_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--store", default="store", help="store directory")
    p.add_argument("--lexicon", help="keyword lexicon TSV")
    p.add_argument("--blacklist", help="suppressed surfaces, one per line")
    p.add_argument("--gazetteer", help="gazetteer TSV")
    p.add_argument("--glossary", help="translation glossary TSV")
    p.add_argument("--model", help="relevance model JSON")


def _load_config(args) -> Config:
    if getattr(args, "config", None):
        return Config.load(args.config)
    return Config()


def _build_pipeline(args, config: Config) -> Pipeline:
    lexicon_path = args.lexicon or config.lexicon_path
    gazetteer_path = args.gazetteer or config.gazetteer_path
    if not lexicon_path:
        raise ConfigError("a lexicon is required (--lexicon or config lexicon_path)")
    if not gazetteer_path:
        raise ConfigError("a gazetteer is required (--gazetteer or config gazetteer_path)")
    lexicon = Lexicon.load(lexicon_path)
    gaz = load_gazetteer(gazetteer_path)

    blacklist_path = args.blacklist or config.blacklist_path
    blacklist = load_blacklist(blacklist_path) if blacklist_path else frozenset()

    if config.translate_endpoint:
        translator = RemoteTranslationClient(config.translate_endpoint)
    else:
        glossary_path = args.glossary or config.glossary_path
        translator = StubTranslationClient(glossary_path)

    model_path = args.model or config.model_path
    model = RelevanceModel.load(model_path) if model_path else None

    store = Store(args.store)
    pipeline = Pipeline(
        config=config,
        lexicon=lexicon,
        blacklist=blacklist,
        gaz=gaz,
        translator=translator,
        model=model,
        store=store,
    )
    pipeline.rebuild_from_store()
    return pipeline


def cmd_ingest(args) -> int:
    config = _load_config(args)
    pipeline = _build_pipeline(args, config)
    feeds = load_feed_configs(args.feeds)
    fetcher = FeedFetcher.from_seen_state(
        pipeline.store.load_state("seen", {}) or {}
    )

    def one_pass() -> dict:
        stats = {"fetched": 0, "skipped": 0, "errors": []}
        for feed in feeds:
            try:
                result = fetcher.fetch(feed)
            except FetchError as exc:
                log.warning("feed %s: %s", feed.feed_id, exc)
                stats["errors"].append({"feed_id": feed.feed_id, "error": str(exc)})
                continue
            stats["skipped"] += result.skipped
            for article in result.articles:
                pipeline.process(article)
                stats["fetched"] += 1
        pipeline.store.save_state("seen", fetcher.seen_state())
        return stats

    if args.daemon:
        interval = min(f.poll_interval_s for f in feeds) if feeds else 60
        try:
            while True:
                stats = one_pass()
                print(json.dumps(stats), flush=True)
                time.sleep(interval)
        except KeyboardInterrupt:
            return 0
    else:
        print(json.dumps(one_pass()))
    return 0


def cmd_train(args) -> int:
    config = _load_config(args)
    labeled = []
    with open(args.labels, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) < 3:
                raise TrainingError(f"{args.labels}:{lineno}: expected label<TAB>title<TAB>body")
            label = parts[0].strip().lower() in ("1", "true", "relevant", "yes", "pos")
            labeled.append((parts[1] + "\n" + "\t".join(parts[2:]), label))
    model = train_relevance(
        labeled,
        dim=config.feature_dim,
        epochs=args.epochs,
        reg=args.reg,
        seed=args.seed,
        t_low=config.t_low,
        t_high=config.t_high,
    )
    model.save(args.out)
    nonzero = int((model.weights != 0).sum())
    print(json.dumps({"examples": len(labeled), "nonzero_weights": nonzero, "out": args.out}))
    return 0


def cmd_replay(args) -> int:
    config = _load_config(args)
    pipeline = _build_pipeline(args, config)
    processed = 0
    by_status: dict[str, int] = {}
    last_day: date | None = None
    with open(args.corpus, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                article = RawArticle.from_dict(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                log.warning("%s:%d: skipping article: %s", args.corpus, lineno, exc)
                continue
            doc = pipeline.process(article)
            processed += 1
            by_status[doc.status] = by_status.get(doc.status, 0) + 1
            day = doc.published_at.astimezone(timezone.utc).date()
            last_day = day if last_day is None else max(last_day, day)

    batch_day = date.fromisoformat(args.date) if args.date else last_day
    summary = {"processed": processed, "by_status": by_status}
    if batch_day is not None:
        result = pipeline.daily_batch(batch_day)
        summary["batch_date"] = batch_day.isoformat()
        summary["narratives_opened"] = result.opened
        summary["narratives_updated"] = result.updated
    print(json.dumps(summary))
    return 0


def _build_state(args, config: Config) -> AppState:
    pipeline = _build_pipeline(args, config)
    state = AppState(
        store=pipeline.store,
        index=pipeline.index,
        clusters=pipeline.clusters,
        tracker=pipeline.tracker,
        gaz=pipeline.gaz,
        lexicon=pipeline.lexicon,
        config=config,
    )
    for record in pipeline.store.load_reports().values():
        report = Report.from_dict(record)
        state.reports[report.report_id] = report
    return state


def cmd_serve(args) -> int:
    import uvicorn

    config = _load_config(args)
    console_dir = getattr(args, "console", None)
    if console_dir is not None and not Path(console_dir).is_dir():
        print(f"error: console directory not found: {console_dir}", file=sys.stderr)
        return 2
    state = _build_state(args, config)
    app = build_app(state, console_dir=console_dir)
    host, _, port = args.addr.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
    return 0


def cmd_query(args) -> int:
    config = _load_config(args)
    pipeline = _build_pipeline(args, config)
    statuses = [s for chunk in args.status for s in chunk.split(",") if s]
    try:
        query = Query(
            text_terms=tuple(args.q.split()),
            keyword_ids=tuple(args.keyword),
            geo_id=args.geo,
            date_from=date.fromisoformat(args.date_from) if args.date_from else None,
            date_to=date.fromisoformat(args.date_to) if args.date_to else None,
            status_filter=frozenset(statuses) if statuses else DEFAULT_STATUSES,
            page=args.page,
            page_size=args.page_size,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = pipeline.index.search(query)
    for doc in result.docs:
        print(json.dumps(doc, ensure_ascii=False))
    if args.facets:
        print(json.dumps({"total": result.total, "facets": result.facets}, ensure_ascii=False))
    return 0


def cmd_report(args) -> int:
    config = _load_config(args)
    pipeline = _build_pipeline(args, config)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    records = pipeline.tracker.records()
    if args.date:
        records = [r for r in records if args.date in r["daily_counts"]]

    written = []
    jsonl_path = out_dir / "narratives.jsonl"
    with jsonl_path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    written.append(str(jsonl_path))

    for record in records:
        safe = record["narrative_id"].replace(":", "_").replace("/", "_")
        written.append(str(render_narrative_figure(record, out_dir / f"narrative-{safe}.png")))

    volume: dict[str, int] = {}
    for doc in pipeline.index.documents():
        day = doc.published_at.astimezone(timezone.utc).date().isoformat()
        volume[day] = volume.get(day, 0) + 1
    if volume:
        written.append(str(render_volume_figure(volume, out_dir / "volume.png")))

    print(json.dumps({"narratives": len(records), "files": written}))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
