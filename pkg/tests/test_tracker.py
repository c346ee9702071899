"""Narrative discovery, change points, and lifecycle tracking."""

import json
from datetime import date, timedelta

import pytest
from conftest import document

from mediawatch.geo.gazetteer import GeoMention, tag_geo
from mediawatch.narratives.tracker import (
    NarrativeTracker,
    PairKey,
    SurpriseParams,
    daily_pair_counts,
    detect_change_points,
    detect_narratives,
    doc_pairs,
)
from mediawatch.text.lexicon import tag_keywords


@pytest.fixture
def tagged(lexicon, gaz):
    def build(title, body, ts="2026-03-02T08:00:00+00:00", country="unknown"):
        doc = document(title, body, ts=ts, country=country)
        doc.keyword_mentions = tag_keywords(doc, lexicon)
        doc.geo_mentions = tag_geo(doc, gaz)
        return doc

    return build


class TestDocPairs:
    def test_location_credits_ancestors(self, tagged, gaz, lexicon):
        doc = tagged("Cholera alert", "Cholera was confirmed in Shinjuku on Monday.")
        pairs = doc_pairs(doc, gaz, lexicon)
        assert pairs == {
            PairKey("D0002", 3),
            PairKey("D0002", 2),
            PairKey("D0002", 1),
        }

    def test_generic_keywords_never_pair(self, tagged, gaz, lexicon):
        doc = tagged("Outbreak feared", "An outbreak was reported in Tokyo.")
        assert doc_pairs(doc, gaz, lexicon) == set()

    def test_no_locations_means_no_pairs(self, tagged, gaz, lexicon):
        doc = tagged("Cholera alert", "Cholera cases continue to rise.")
        assert doc_pairs(doc, gaz, lexicon) == set()

    def test_unresolved_and_unknown_locations_skipped(self, tagged, gaz, lexicon):
        doc = tagged("Cholera alert", "Cholera cases continue to rise.")
        doc.geo_mentions = [
            GeoMention(surface="Atlantis", span=(0, 8), resolved=None, method="unresolved"),
            GeoMention(surface="Ghost", span=(9, 14), resolved=999, method="unique"),
        ]
        assert doc_pairs(doc, gaz, lexicon) == set()


class TestDailyPairCounts:
    def test_each_document_counts_once(self, tagged, gaz, lexicon):
        docs = [
            tagged("Cholera in Tokyo", "Cholera spread through Tokyo wards overnight."),
            tagged("Tokyo outbreak", "Officials confirmed cholera in Tokyo hospitals."),
            # repeats the keyword twice but still counts once
            tagged("Cholera alert", "Cholera, more cholera, reported across Tokyo."),
            tagged("Dengue in Paris", "Dengue cases appeared in Paris this week."),
        ]
        counts = daily_pair_counts(docs, gaz, lexicon)
        assert counts[PairKey("D0002", 2)] == 3
        assert counts[PairKey("D0002", 1)] == 3
        assert counts[PairKey("D0005", 11)] == 1
        assert counts[PairKey("D0005", 10)] == 1

    def test_empty_input(self, gaz, lexicon):
        assert daily_pair_counts([], gaz, lexicon) == {}


class TestDetectNarratives:
    PARAMS = SurpriseParams(window_days=7, p_threshold=0.01, c_min=3, lambda_floor=0.1)
    P = PairKey("D0002", 2)

    def test_quiet_history_flags_surge(self):
        flagged = detect_narratives({self.P: 5}, [{}] * 7, self.PARAMS)
        assert flagged == [self.P]

    def test_below_minimum_count_never_flags(self):
        assert detect_narratives({self.P: 2}, [{}] * 7, self.PARAMS) == []

    def test_tracked_pairs_are_suppressed(self):
        flagged = detect_narratives(
            {self.P: 5}, [{}] * 7, self.PARAMS, active=frozenset({self.P})
        )
        assert flagged == []

    def test_busy_baseline_absorbs_small_rise(self):
        history = [{self.P: 5}] * 7
        assert detect_narratives({self.P: 6}, history, self.PARAMS) == []
        assert detect_narratives({self.P: 20}, history, self.PARAMS) == [self.P]

    def test_baseline_uses_only_trailing_window(self):
        history = [{self.P: 9}, {self.P: 9}, {}, {}, {}]
        narrow = SurpriseParams(window_days=3, p_threshold=0.01, c_min=3, lambda_floor=0.1)
        wide = SurpriseParams(window_days=5, p_threshold=0.01, c_min=3, lambda_floor=0.1)
        assert detect_narratives({self.P: 4}, history, narrow) == [self.P]
        assert detect_narratives({self.P: 4}, history, wide) == []

    def test_output_sorted_by_pair(self):
        a, b = PairKey("D0005", 11), PairKey("D0002", 2)
        flagged = detect_narratives({a: 5, b: 5}, [{}] * 7, self.PARAMS)
        assert flagged == sorted([a, b])

    def test_empty_history_rejected(self):
        with pytest.raises(ValueError):
            detect_narratives({self.P: 5}, [], self.PARAMS)

    def test_param_validation(self):
        with pytest.raises(ValueError):
            SurpriseParams(window_days=0)
        with pytest.raises(ValueError):
            SurpriseParams(p_threshold=1.0)
        with pytest.raises(ValueError):
            SurpriseParams(lambda_floor=0.0)


PHASE_A = (
    "Cholera cases rise along the river delta. Health teams chlorinate wells "
    "and distribute rehydration salts to affected villages."
)
PHASE_B = (
    "Hospitals report shortages of intravenous fluids. Aid convoys struggle "
    "through flooded roads while families flee the contaminated district."
)


def _phase_docs(start: date, texts: list[str]) -> dict[date, list]:
    out = {}
    for i, text in enumerate(texts):
        day = start + timedelta(days=i)
        out[day] = [document(f"Bulletin {i}", f"{text} {text}", ts=f"{day.isoformat()}T08:00:00+00:00")]
    return out


class TestChangePoints:
    def test_vocabulary_shift_is_located(self):
        start = date(2026, 3, 1)
        texts = [PHASE_A] * 10 + [PHASE_B] * 10
        docs = _phase_docs(start, texts)
        found = detect_change_points(docs, start, start + timedelta(days=19))
        assert len(found) == 1
        shift = start + timedelta(days=10)
        assert abs((found[0] - shift).days) <= 2

    def test_stable_language_has_no_change_points(self):
        start = date(2026, 3, 1)
        docs = _phase_docs(start, [PHASE_A] * 14)
        assert detect_change_points(docs, start, start + timedelta(days=13)) == []

    def test_short_span_reports_nothing(self):
        start = date(2026, 3, 1)
        docs = _phase_docs(start, [PHASE_A] * 3 + [PHASE_B] * 2)
        assert detect_change_points(docs, start, start + timedelta(days=4)) == []


class TestTrackerLifecycle:
    PARAMS = SurpriseParams(window_days=7, p_threshold=0.01, c_min=3, lambda_floor=0.1)

    def surge(self, tagged, day: date, n: int, tag: str = "") -> list:
        ts = f"{day.isoformat()}T09:00:00+00:00"
        return [
            tagged(
                f"Cholera in Tokyo {tag}{i}",
                f"Ward {tag}{i} reported cholera cases across Tokyo today.",
                ts=ts,
            )
            for i in range(n)
        ]

    def fresh(self):
        return NarrativeTracker(
            params=self.PARAMS, dormant_after_days=3, close_after_days=6
        )

    def test_open_update_dormant_close_reopen(self, tagged, gaz, lexicon):
        tracker = self.fresh()
        day0 = date(2026, 3, 2)

        result = tracker.step(day0, self.surge(tagged, day0, 3), gaz, lexicon)
        assert result.day == day0
        assert result.updated == []
        assert set(result.opened) == {
            "D0002:1:2026-03-02",
            "D0002:2:2026-03-02",
        }
        city = tracker.get("D0002:2:2026-03-02")
        assert city.status == "active"
        assert city.daily_counts == {day0: 3}
        assert len(city.member_docs) == 3
        assert city.summary

        # quiet days: dormant after 3 zeros
        for i in (1, 2, 3):
            result = tracker.step(day0 + timedelta(days=i), [], gaz, lexicon)
            assert result.opened == []
            assert set(result.updated) == set(tracker.narratives)
        assert city.status == "dormant"
        assert city.trailing_zero_days() == 3

        # revival surge reactivates rather than opening a twin
        day4 = day0 + timedelta(days=4)
        result = tracker.step(day4, self.surge(tagged, day4, 3, tag="r"), gaz, lexicon)
        assert result.opened == []
        assert city.status == "active"
        assert city.daily_counts[day4] == 3
        assert len(city.member_docs) == 6

        # a long silence closes the narrative for good
        for i in range(5, 11):
            tracker.step(day0 + timedelta(days=i), [], gaz, lexicon)
        assert city.status == "closed"
        assert city.last_day() == day0 + timedelta(days=10)

        # the pair is free again: a new surge opens a distinct narrative
        day11 = day0 + timedelta(days=11)
        result = tracker.step(day11, self.surge(tagged, day11, 4, tag="n"), gaz, lexicon)
        assert "D0002:2:2026-03-13" in result.opened
        assert city.status == "closed"
        assert city.last_day() == day0 + timedelta(days=10)
        assert tracker.get("D0002:2:2026-03-13").opened_on == day11

    def test_skipped_days_are_zero_filled(self, tagged, gaz, lexicon):
        tracker = self.fresh()
        day0 = date(2026, 3, 2)
        tracker.step(day0, self.surge(tagged, day0, 3), gaz, lexicon)
        tracker.step(day0 + timedelta(days=3), [], gaz, lexicon)
        n = tracker.get("D0002:2:2026-03-02")
        assert n.daily_counts == {
            day0: 3,
            day0 + timedelta(days=1): 0,
            day0 + timedelta(days=2): 0,
            day0 + timedelta(days=3): 0,
        }
        assert [d for d, _ in tracker.history] == [
            day0 + timedelta(days=i) for i in range(4)
        ]

    def test_unknown_narrative_raises(self):
        with pytest.raises(KeyError):
            self.fresh().get("D9999:1:2026-01-01")

    def test_state_round_trip_preserves_behavior(self, tagged, gaz, lexicon):
        day0 = date(2026, 3, 2)
        docs0 = self.surge(tagged, day0, 3)

        a = NarrativeTracker(params=self.PARAMS)
        a.step(day0, docs0, gaz, lexicon)
        a.step(day0 + timedelta(days=1), [], gaz, lexicon)

        state = json.loads(json.dumps(a.state_dict()))
        b = NarrativeTracker.from_state(state)
        assert b.params == a.params
        assert b.records() == a.records()
        assert b.active_pairs() == a.active_pairs()
        assert list(b.history) == list(a.history)

        b.preload_docs(docs0)
        day2 = day0 + timedelta(days=2)
        docs2 = self.surge(tagged, day2, 2, tag="x")
        ra = a.step(day2, docs2, gaz, lexicon)
        rb = b.step(day2, docs2, gaz, lexicon)
        assert ra == rb
        assert a.records() == b.records()
