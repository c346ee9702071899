"""End-to-end pipeline behavior and the operator command line."""

import json
from datetime import date

import pytest
from conftest import FIXTURES, article

from mediawatch.cli import main
from mediawatch.config import Config
from mediawatch.pipeline import Pipeline
from mediawatch.service.index import Query
from mediawatch.service.store import Store
from mediawatch.text.relevance import RelevanceModel, train_relevance

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

BASE_BODY = (
    "Officials confirmed {n} deaths from cholera in the delta region on Monday. "
    "Health teams moved quickly to chlorinate wells, distribute oral rehydration "
    "salts, and trace contacts across the affected villages while hospitals "
    "prepared additional treatment beds for the days ahead."
)

RELEVANT = [
    "Hospitals reported a surge of cholera cases after the floods.",
    "The ministry confirmed an outbreak of avian influenza at two farms.",
    "Measles infections doubled among unvaccinated children last month.",
    "Health officials traced the legionella cluster to a cooling tower.",
    "Dengue fever admissions are climbing across the coastal provinces.",
    "A norovirus outbreak closed the cruise terminal for cleaning.",
    "Quarantine orders followed the ebola case at the border crossing.",
    "Clinics ran short of vaccines as whooping cough spread in schools.",
]
IRRELEVANT = [
    "The city council approved a new budget for road maintenance.",
    "Local football fans celebrated a narrow win in the derby.",
    "A late frost damaged vineyards across the wine region.",
    "The museum opened an exhibition of maritime photography.",
    "Electric scooter rentals expanded to the northern suburbs.",
    "The orchestra announced its summer concert programme.",
    "Retail sales rose slightly ahead of the holiday season.",
    "Engineers finished the bridge inspection two days early.",
]


def spanish_article():
    return article(
        "Brote de enfermedad en la ciudad",
        "Las autoridades sanitarias confirmaron nuevos casos de la enfermedad "
        "en la región y pidieron calma a la población durante la emergencia.",
        ts="2026-03-02T10:00:00+00:00",
    )


class TestProcess:
    def test_english_article_published_and_tagged(self, make_pipeline):
        pipe = make_pipeline()
        doc = pipe.process(
            article(
                "Cholera outbreak in Tokyo",
                "Officials confirmed 12 deaths from cholera across Tokyo wards.",
            )
        )
        assert doc.lang == "en"
        assert doc.status == "published"
        assert "unscored" in doc.flags
        assert doc.relevance is None
        assert {m.canonical_id for m in doc.keyword_mentions} >= {"D0002"}
        assert {m.resolved for m in doc.geo_mentions} == {2}
        assert [(c.category, c.value) for c in doc.counts] == [("deaths", 12)]
        assert doc.cluster_id == doc.doc_id
        assert doc.doc_id in pipe.index
        assert doc.doc_id in Store(pipe.store.root).load_documents()

    def test_unidentifiable_language_goes_to_triage(self, make_pipeline):
        pipe = make_pipeline()
        doc = pipe.process(article("404 505", "606 707 808 909 111 222 333 444"))
        assert doc.lang == "und"
        assert doc.status == "triage"
        assert "unknown-language" in doc.flags

    def test_foreign_article_keeps_text_without_glossary(self, make_pipeline):
        pipe = make_pipeline()
        doc = pipe.process(spanish_article())
        assert doc.lang == "es"
        assert doc.status == "published"
        assert "translation-pending" not in doc.flags
        assert doc.working_title == "Brote de enfermedad en la ciudad"

    def test_translator_failure_flags_pending(self, lexicon, gaz):
        class DownTranslator:
            def detect(self, text):
                raise RuntimeError("offline")

            def translate(self, text, src, dst):
                raise RuntimeError("offline")

        pipe = Pipeline(
            config=Config(),
            lexicon=lexicon,
            blacklist=frozenset(),
            gaz=gaz,
            translator=DownTranslator(),
        )
        doc = pipe.process(spanish_article())
        assert "translation-pending" in doc.flags
        assert doc.working_title == "Brote de enfermedad en la ciudad"
        assert doc.status == "published"

    def test_reprocessing_same_content_is_idempotent(self, make_pipeline):
        pipe = make_pipeline()
        raw = article("Cholera update", "Cases held steady across the region today.")
        first = pipe.process(raw)
        again = pipe.process(
            article("Cholera update", "Cases held steady across the region today.")
        )
        assert again is first
        assert len(pipe.index) == 1

    def test_near_duplicates_share_a_cluster_everywhere(self, make_pipeline):
        pipe = make_pipeline()
        a = pipe.process(
            article("Cholera deaths in delta", BASE_BODY.format(n=12),
                    ts="2026-03-02T08:00:00+00:00")
        )
        b = pipe.process(
            article("Cholera deaths in delta", BASE_BODY.format(n=15),
                    ts="2026-03-02T11:00:00+00:00")
        )
        cid = pipe.clusters.cluster_of(a.doc_id)
        assert cid == pipe.clusters.cluster_of(b.doc_id) == min(a.doc_id, b.doc_id)
        # in-memory and stored records both carry the final cluster id
        assert a.cluster_id == b.cluster_id == cid
        stored = Store(pipe.store.root).load_documents()
        assert stored[a.doc_id].cluster_id == stored[b.doc_id].cluster_id == cid

    def test_scored_routing_matches_thresholds(self, make_pipeline):
        data = [(t, True) for t in RELEVANT] + [(t, False) for t in IRRELEVANT]
        model = train_relevance(data, dim=1 << 16, epochs=8, seed=13)
        pipe = make_pipeline(model=model)

        doc_hot = pipe.process(
            article(
                "Cholera outbreak",
                "Hospitals reported a surge of cholera cases after the floods, "
                "and health officials warned that infections could keep rising.",
            )
        )
        doc_cold = pipe.process(
            article(
                "Road budget",
                "The city council approved another round of road maintenance "
                "funding, with the work scheduled to begin after the holidays.",
            )
        )
        for doc in (doc_hot, doc_cold):
            assert doc.relevance is not None
            assert "unscored" not in doc.flags
            if doc.relevance >= 0.8:
                assert doc.status == "published"
            elif doc.relevance < 0.2:
                assert doc.status == "suppressed"
            else:
                assert doc.status == "triage"
        assert doc_hot.relevance > doc_cold.relevance


class TestDailyBatch:
    def surge(self, pipe, day_ts: str, n: int = 3):
        bodies = [
            "Ward {i} clinics logged cholera admissions in Tokyo as crews "
            "disinfected water points near the {i} market.",
            "Cholera reached shelter {i} in Tokyo where volunteers handed out "
            "clean water and soap to families.",
            "Tokyo lab {i} confirmed cholera in samples from the eastern "
            "district wells after routine testing.",
        ]
        return [
            pipe.process(
                article(f"Cholera in Tokyo {i}", bodies[i % 3].format(i=i), ts=day_ts)
            )
            for i in range(n)
        ]

    def test_exemplars_exclude_duplicates_and_triage(self, make_pipeline):
        pipe = make_pipeline()
        a = pipe.process(
            article("Cholera deaths in delta", BASE_BODY.format(n=12),
                    ts="2026-03-02T08:00:00+00:00")
        )
        pipe.process(
            article("Cholera deaths in delta", BASE_BODY.format(n=15),
                    ts="2026-03-02T11:00:00+00:00")
        )
        pipe.process(article("321 654", "987 321 654 987 321 654", ts="2026-03-02T09:00:00+00:00"))
        other = pipe.process(
            article("Measles in London", "Measles was confirmed in London schools.",
                    ts="2026-03-02T10:00:00+00:00")
        )
        exemplars = pipe.published_exemplars(date(2026, 3, 2))
        assert [d.doc_id for d in exemplars] == [a.doc_id, other.doc_id]

    def test_batch_opens_narratives_and_snapshots(self, make_pipeline):
        pipe = make_pipeline(window_days=7)
        self.surge(pipe, "2026-03-02T09:00:00+00:00")
        result = pipe.daily_batch(date(2026, 3, 2))
        assert set(result.opened) == {"D0002:1:2026-03-02", "D0002:2:2026-03-02"}
        snapshot = Store(pipe.store.root).load_state("narratives")
        assert snapshot is not None
        assert {n["narrative_id"] for n in snapshot["narratives"]} == set(result.opened)


class TestRebuild:
    def test_restart_restores_equivalent_state(self, make_pipeline):
        pipe = make_pipeline(window_days=7)
        day = date(2026, 3, 2)
        pipe.process(
            article("Cholera deaths in delta", BASE_BODY.format(n=12),
                    ts="2026-03-02T08:00:00+00:00")
        )
        pipe.process(
            article("Cholera deaths in delta", BASE_BODY.format(n=15),
                    ts="2026-03-02T11:00:00+00:00")
        )
        TestDailyBatch().surge(pipe, "2026-03-02T09:30:00+00:00")
        pipe.process(article("777 888", "999 000 111 222 333 444 555"))
        pipe.daily_batch(day)
        pipe.store.close()

        fresh = make_pipeline(window_days=7)
        restored = fresh.rebuild_from_store()
        assert restored == len(pipe.index)

        wide = Query(status_filter=frozenset({"published", "triage", "suppressed"}))
        assert fresh.index.search(wide).total == pipe.index.search(wide).total
        assert fresh.index.search(wide).map_counts == pipe.index.search(wide).map_counts
        for doc in pipe.index.documents():
            assert fresh.clusters.cluster_of(doc.doc_id) == pipe.clusters.cluster_of(doc.doc_id)
            assert fresh.index.get(doc.doc_id).cluster_id == doc.cluster_id
        assert fresh.tracker.records() == pipe.tracker.records()
        assert [d.doc_id for d in fresh.published_exemplars(day)] == [
            d.doc_id for d in pipe.published_exemplars(day)
        ]

    def test_rebuild_requires_a_store(self, make_pipeline):
        with pytest.raises(ValueError):
            make_pipeline(store=False).rebuild_from_store()


@pytest.fixture
def cli_paths(tmp_path):
    return {
        "store": str(tmp_path / "store"),
        "lexicon": str(FIXTURES / "lexicon.tsv"),
        "gazetteer": str(FIXTURES / "gazetteer.tsv"),
    }


def run_cli(capsys, *argv) -> tuple[int, str]:
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def resource_args(cli_paths):
    return [
        "--store", cli_paths["store"],
        "--lexicon", cli_paths["lexicon"],
        "--gazetteer", cli_paths["gazetteer"],
    ]


class TestCli:
    def write_corpus(self, tmp_path):
        corpus = tmp_path / "corpus.jsonl"
        day = "2026-03-02"
        entries = [
            article("Cholera in Tokyo 0",
                    "Ward 0 clinics logged cholera admissions in Tokyo as crews "
                    "disinfected water points near the market.",
                    ts=f"{day}T09:00:00+00:00"),
            article("Cholera in Tokyo 1",
                    "Cholera reached shelter 1 in Tokyo where volunteers handed "
                    "out clean water and soap to families.",
                    ts=f"{day}T09:10:00+00:00"),
            article("Cholera in Tokyo 2",
                    "Tokyo lab 2 confirmed cholera in samples from the eastern "
                    "district wells after routine testing.",
                    ts=f"{day}T09:20:00+00:00"),
            article("Cholera deaths in delta", BASE_BODY.format(n=12),
                    ts=f"{day}T08:00:00+00:00"),
            article("Cholera deaths in delta", BASE_BODY.format(n=15),
                    ts=f"{day}T11:00:00+00:00"),
            article("Dengue in Paris",
                    "Dengue fever cases spread through Paris suburbs this week.",
                    ts=f"{day}T10:00:00+00:00"),
        ]
        with corpus.open("w", encoding="utf-8") as fh:
            for raw in entries:
                fh.write(json.dumps(raw.to_dict()) + "\n")
            fh.write("not json\n")
        return corpus

    def test_train_writes_loadable_model(self, tmp_path, capsys):
        labels = tmp_path / "labels.tsv"
        with labels.open("w", encoding="utf-8") as fh:
            fh.write("# label\ttitle\tbody\n")
            for text in RELEVANT:
                fh.write(f"1\tAlert\t{text}\n")
            for text in IRRELEVANT:
                fh.write(f"0\tNote\t{text}\n")
        out = tmp_path / "model.json"

        rc, stdout = run_cli(capsys, "train", "--labels", str(labels), "--out", str(out))
        assert rc == 0
        summary = json.loads(stdout)
        assert summary["examples"] == 16
        assert summary["nonzero_weights"] > 0
        model = RelevanceModel.load(out)
        assert model.t_low == 0.2 and model.t_high == 0.8

    def test_train_rejects_single_class(self, tmp_path, capsys):
        labels = tmp_path / "labels.tsv"
        labels.write_text("1\tAlert\tcholera cases rose\n", encoding="utf-8")
        rc = main(["train", "--labels", str(labels), "--out", str(tmp_path / "m.json")])
        assert rc == 2

    def test_replay_query_report_share_a_store(self, tmp_path, capsys, cli_paths):
        corpus = self.write_corpus(tmp_path)

        rc, stdout = run_cli(
            capsys, "replay", *resource_args(cli_paths),
            "--corpus", str(corpus), "--config", self.narrative_config(tmp_path),
        )
        assert rc == 0
        summary = json.loads(stdout)
        assert summary["processed"] == 6
        assert summary["by_status"] == {"published": 6}
        assert summary["batch_date"] == "2026-03-02"
        assert "D0002:2:2026-03-02" in summary["narratives_opened"]

        rc, stdout = run_cli(
            capsys, "query", *resource_args(cli_paths), "--q", "cholera", "--facets"
        )
        assert rc == 0
        lines = [json.loads(line) for line in stdout.strip().splitlines()]
        hits, facet_line = lines[:-1], lines[-1]
        assert facet_line["total"] == 5
        assert len(hits) == 5
        assert all("doc_id" in h for h in hits)

        out_dir = tmp_path / "report"
        rc, stdout = run_cli(
            capsys, "report", *resource_args(cli_paths), "--out", str(out_dir)
        )
        assert rc == 0
        summary = json.loads(stdout)
        assert summary["narratives"] == 2
        records = [
            json.loads(line)
            for line in (out_dir / "narratives.jsonl").read_text().splitlines()
        ]
        assert {r["narrative_id"] for r in records} == {
            "D0002:1:2026-03-02", "D0002:2:2026-03-02"
        }
        pngs = sorted(p.name for p in out_dir.glob("*.png"))
        assert pngs == [
            "narrative-D0002_1_2026-03-02.png",
            "narrative-D0002_2_2026-03-02.png",
            "volume.png",
        ]
        for png in out_dir.glob("*.png"):
            assert png.read_bytes().startswith(PNG_MAGIC)

    def narrative_config(self, tmp_path) -> str:
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"window_days": 7}), encoding="utf-8")
        return str(path)

    def test_ingest_once_with_seen_state(self, tmp_path, capsys, cli_paths):
        drop = tmp_path / "drop.jsonl"
        with drop.open("w", encoding="utf-8") as fh:
            fh.write(json.dumps({
                "url": "https://ex.org/a", "title": "Cholera in Tokyo",
                "body": "Cholera cases were confirmed across Tokyo wards.",
                "published_at": "2026-03-02T08:00:00+00:00",
            }) + "\n")
            fh.write(json.dumps({
                "url": "https://ex.org/b", "title": "Measles in London",
                "body": "Measles was confirmed in London schools this week.",
                "published_at": "2026-03-02T09:00:00+00:00",
            }) + "\n")
        feeds = tmp_path / "feeds.json"
        feeds.write_text(json.dumps([{
            "feed_id": "drop", "url": str(drop), "kind": "jsonl_drop",
            "publisher_country": "JP",
        }]), encoding="utf-8")

        rc, stdout = run_cli(
            capsys, "ingest", *resource_args(cli_paths), "--feeds", str(feeds)
        )
        assert rc == 0
        assert json.loads(stdout)["fetched"] == 2
        docs = Store(cli_paths["store"]).load_documents()
        assert len(docs) == 2
        assert {d.raw.publisher_country for d in docs.values()} == {"JP"}

        # a second pass sees nothing new
        rc, stdout = run_cli(
            capsys, "ingest", *resource_args(cli_paths), "--feeds", str(feeds)
        )
        assert rc == 0
        assert json.loads(stdout)["fetched"] == 0

    def test_missing_lexicon_is_a_clean_error(self, tmp_path, capsys, cli_paths):
        rc = main([
            "query", "--store", cli_paths["store"],
            "--gazetteer", cli_paths["gazetteer"],
        ])
        captured = capsys.readouterr()
        assert rc == 2
        assert "lexicon" in captured.err

    def test_unknown_config_key_is_a_clean_error(self, tmp_path, capsys, cli_paths):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"mystery_knob": 1}), encoding="utf-8")
        rc = main([
            "query", *resource_args(cli_paths), "--config", str(bad),
        ])
        captured = capsys.readouterr()
        assert rc == 2
        assert "mystery_knob" in captured.err
