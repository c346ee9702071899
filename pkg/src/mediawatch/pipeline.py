"""End-to-end document pipeline.

Per article: detect language, obtain English working text, normalize into
a Document, tag keywords / entities / locations, extract counts, score and
route, assign a duplicate cluster, then persist and index. The daily batch
feeds that day's published cluster exemplars to the narrative tracker.

Routing: a scored document publishes at or above t_high, suppresses below
t_low, and goes to the analyst triage queue between the two. A document
whose language could not be identified goes to triage no matter what,
since its working text never reached English. Without a model everything
publishes, flagged as unscored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import date, datetime, timezone

from mediawatch.config import Config
from mediawatch.dedup.clusters import ClusterIndex
from mediawatch.geo.gazetteer import Gazetteer, tag_geo
from mediawatch.ingest.langdetect import LanguageDetector
from mediawatch.ingest.models import (
    STATUS_PUBLISHED,
    STATUS_TRIAGE,
    Document,
    RawArticle,
)
from mediawatch.ingest.normalize import normalize
from mediawatch.ingest.translate import StubTranslationClient, translate_to_working
from mediawatch.narratives.tracker import NarrativeTracker, StepResult, SurpriseParams
from mediawatch.service.index import SearchIndex
from mediawatch.service.store import Store
from mediawatch.text.counts import extract_counts
from mediawatch.text.entities import tag_entities
from mediawatch.text.lexicon import Lexicon, tag_keywords
from mediawatch.text.relevance import RelevanceModel, route, score_relevance

log = logging.getLogger(__name__)

FLAG_UNSCORED = "unscored"
FLAG_UNKNOWN_LANGUAGE = "unknown-language"
FLAG_TRANSLATION_PENDING = "translation-pending"


class Pipeline:
    """Wires every stage over shared state. Single writer."""

    def __init__(
        self,
        config: Config,
        lexicon: Lexicon,
        blacklist: frozenset[str],
        gaz: Gazetteer,
        translator=None,
        model: RelevanceModel | None = None,
        store: Store | None = None,
    ):
        self.config = config
        self.lexicon = lexicon
        self.blacklist = blacklist
        self.gaz = gaz
        self.translator = translator or StubTranslationClient()
        self.model = model
        self.store = store
        self.detector = LanguageDetector(
            languages=config.languages, threshold=config.langdetect_threshold
        )
        self.index = SearchIndex(gaz, lexicon)
        self.clusters = ClusterIndex(
            k=config.sketch_k,
            shingle_width=config.shingle_width,
            theta_sketch=config.dedup_sketch_threshold,
            theta_triplet=config.dedup_triplet_threshold,
            window_days=config.dedup_window_days,
        )
        self.tracker = NarrativeTracker(
            params=SurpriseParams(
                window_days=config.window_days,
                p_threshold=config.p_threshold,
                c_min=config.c_min,
                lambda_floor=config.lambda_floor,
            ),
            jsd_window=config.jsd_window,
            jsd_threshold=config.jsd_threshold,
            dormant_after_days=config.dormant_after_days,
            close_after_days=config.close_after_days,
        )

    def process(self, article: RawArticle, fetched_at: datetime | None = None) -> Document:
        """Run one article through every stage; idempotent per content hash."""
        lang = self.detector.detect(f"{article.title}\n{article.body}")
        working_title, working_body, translation_pending = translate_to_working(
            article, lang, self.translator
        )
        flags = []
        if translation_pending:
            flags.append(FLAG_TRANSLATION_PENDING)
        doc = normalize(article, lang, (working_title, working_body), fetched_at, flags)

        if doc.doc_id in self.index:
            return self.index.get(doc.doc_id)

        doc.keyword_mentions = tag_keywords(doc, self.lexicon, self.blacklist)
        doc.entity_mentions = tag_entities(doc)
        doc.geo_mentions = tag_geo(doc, self.gaz)
        doc.counts = extract_counts(doc.working_text())

        if lang == "und":
            # no reliable English working text: always a human look
            doc.flags.append(FLAG_UNKNOWN_LANGUAGE)
            doc.transition(STATUS_TRIAGE)
        elif self.model is not None:
            doc.relevance = score_relevance(doc, self.model)
            doc.transition(route(doc.relevance, self.config.t_low, self.config.t_high))
        else:
            doc.flags.append(FLAG_UNSCORED)
            doc.transition(STATUS_PUBLISHED)

        doc.cluster_id = self.clusters.add(doc)
        self._refresh_cluster_ids(doc.cluster_id)

        if self.store is not None:
            self.store.put_document(doc)
        self.index.index_document(doc)
        return doc

    def _refresh_cluster_ids(self, cluster_id: str) -> None:
        # a merge can fold an older cluster in; keep member records current
        cluster = self.clusters.get_cluster(cluster_id)
        for member_id in cluster.member_ids:
            if member_id in self.index:
                member = self.index.get(member_id)
                if member.cluster_id != cluster.cluster_id:
                    member.cluster_id = cluster.cluster_id
                    if self.store is not None:
                        self.store.put_document(member)

    def published_exemplars(self, day: date) -> list[Document]:
        """The day's published documents that head their duplicate cluster."""
        out = []
        for doc in self.index.documents():
            if doc.status != STATUS_PUBLISHED:
                continue
            if doc.published_at.astimezone(timezone.utc).date() != day:
                continue
            if doc.doc_id not in self.clusters:
                continue
            cluster = self.clusters.get_cluster(self.clusters.cluster_of(doc.doc_id))
            if cluster.exemplar_id == doc.doc_id:
                out.append(doc)
        out.sort(key=lambda d: (d.published_at, d.doc_id))
        return out

    def daily_batch(self, day: date) -> StepResult:
        """Run narrative discovery over the day's published exemplars."""
        result = self.tracker.step(
            day, self.published_exemplars(day), self.gaz, self.lexicon
        )
        if self.store is not None:
            self.store.save_state("narratives", self.tracker.state_dict())
        return result

    def rebuild_from_store(self) -> int:
        """Recover in-memory state from the segment files after a restart.

        Documents re-cluster in deterministic timestamp order, which makes
        cluster ids reproducible regardless of original arrival order.
        Narrative state restores from its snapshot when present.
        """
        if self.store is None:
            raise ValueError("pipeline has no store to rebuild from")
        docs = list(self.store.load_documents().values())
        docs.sort(key=lambda d: (d.published_at, d.fetched_at, d.doc_id))
        for doc in docs:
            doc.cluster_id = self.clusters.add(doc)
            self.index.index_document(doc)
        for doc in docs:
            current = self.clusters.cluster_of(doc.doc_id)
            if doc.cluster_id != current:
                doc.cluster_id = current

        narrative_state = self.store.load_state("narratives")
        if narrative_state:
            self.tracker = NarrativeTracker.from_state(
                narrative_state,
                jsd_window=self.config.jsd_window,
                jsd_threshold=self.config.jsd_threshold,
                dormant_after_days=self.config.dormant_after_days,
                close_after_days=self.config.close_after_days,
            )
            member_ids = {
                doc_id
                for n in self.tracker.narratives.values()
                for doc_id in n.member_docs
            }
            self.tracker.preload_docs(
                doc for doc in docs if doc.doc_id in member_ids
            )
        return len(docs)
