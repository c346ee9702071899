"""Daily narrative discovery and tracking.

A narrative is a (non-generic keyword, location) pair whose daily count of
distinct exemplar documents became statistically surprising against its own
trailing baseline. Once opened it accumulates a contiguous zero-filled time
series, member documents, an extractive summary, and change points where
the language of the coverage shifts.

Duplicates never inflate a narrative: callers feed only published cluster
exemplars. Locations credit their ancestors, so a district report counts
for its city and country as well.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from datetime import date, timedelta

from mediawatch.geo.gazetteer import Gazetteer, ancestors
from mediawatch.narratives.stats import jensen_shannon, poisson_tail
from mediawatch.text.summarize import load_stopwords, summarize
from mediawatch.text.tokenize import lower_tokens

STATUS_ACTIVE = "active"
STATUS_DORMANT = "dormant"
STATUS_CLOSED = "closed"


@dataclass(frozen=True, order=True)
class PairKey:
    keyword: str
    location: int


@dataclass(frozen=True)
class SurpriseParams:
    window_days: int = 28
    p_threshold: float = 0.01
    c_min: int = 3
    lambda_floor: float = 0.1

    def __post_init__(self) -> None:
        if self.window_days < 1 or self.c_min < 1:
            raise ValueError("window_days and c_min must be positive")
        if not 0.0 < self.p_threshold < 1.0:
            raise ValueError("p_threshold must be in (0, 1)")
        if self.lambda_floor <= 0.0:
            raise ValueError("lambda_floor must be positive")


@dataclass
class Narrative:
    narrative_id: str
    key: PairKey
    opened_on: date
    daily_counts: dict[date, int]
    member_docs: list[str]
    status: str = STATUS_ACTIVE
    change_points: list[date] = field(default_factory=list)
    summary: list[str] = field(default_factory=list)

    def last_day(self) -> date:
        return max(self.daily_counts)

    def trailing_zero_days(self) -> int:
        run = 0
        for d in sorted(self.daily_counts, reverse=True):
            if self.daily_counts[d] != 0:
                break
            run += 1
        return run

    def to_dict(self) -> dict:
        return {
            "narrative_id": self.narrative_id,
            "key": {"keyword": self.key.keyword, "location": self.key.location},
            "opened_on": self.opened_on.isoformat(),
            "status": self.status,
            "daily_counts": {d.isoformat(): c for d, c in sorted(self.daily_counts.items())},
            "member_docs": list(self.member_docs),
            "change_points": [d.isoformat() for d in self.change_points],
            "summary": list(self.summary),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Narrative":
        return cls(
            narrative_id=d["narrative_id"],
            key=PairKey(d["key"]["keyword"], d["key"]["location"]),
            opened_on=date.fromisoformat(d["opened_on"]),
            daily_counts={date.fromisoformat(k): v for k, v in d["daily_counts"].items()},
            member_docs=list(d["member_docs"]),
            status=d["status"],
            change_points=[date.fromisoformat(x) for x in d["change_points"]],
            summary=list(d["summary"]),
        )


def doc_pairs(doc, gaz: Gazetteer, lexicon) -> set[PairKey]:
    """All (non-generic keyword, credited location) pairs for one document."""
    keywords = {
        m.canonical_id
        for m in doc.keyword_mentions
        if not lexicon.is_generic(m.canonical_id)
    }
    if not keywords:
        return set()
    locations: set[int] = set()
    for m in doc.geo_mentions:
        if m.resolved is None or m.resolved not in gaz:
            continue
        locations.add(m.resolved)
        locations.update(ancestors(m.resolved, gaz))
    return {PairKey(k, loc) for k in keywords for loc in locations}


def daily_pair_counts(docs, gaz: Gazetteer, lexicon) -> dict[PairKey, int]:
    """Count, per pair, the number of distinct documents mentioning it.

    Each document contributes at most 1 to any pair. Callers pass only the
    day's published cluster exemplars, so reworded republications of one
    story cannot pile onto a trend.
    """
    counts: Counter[PairKey] = Counter()
    for doc in docs:
        for pair in doc_pairs(doc, gaz, lexicon):
            counts[pair] += 1
    return dict(counts)


def detect_narratives(
    today: dict[PairKey, int],
    history,
    params: SurpriseParams,
    active: frozenset[PairKey] | set[PairKey] = frozenset(),
) -> list[PairKey]:
    """Pairs whose count today is surprising and not already tracked.

    history is the trailing sequence of daily count maps, oldest first; the
    baseline rate is the pair's mean over the last window_days of it (days
    the pair is absent count zero), floored at lambda_floor so never-seen
    pairs still get a finite rate. Flag when the count clears c_min and the
    Poisson tail probability falls under p_threshold.
    """
    window = list(history)[-params.window_days :]
    if not window:
        raise ValueError("history must cover at least one day")
    flagged = []
    for pair in sorted(today):
        count = today[pair]
        if count < params.c_min or pair in active:
            continue
        mean = sum(day.get(pair, 0) for day in window) / len(window)
        lam = max(params.lambda_floor, mean)
        if poisson_tail(count, lam) < params.p_threshold:
            flagged.append(pair)
    return flagged


def _content_counts(docs) -> Counter[str]:
    stop = load_stopwords()
    counts: Counter[str] = Counter()
    for doc in docs:
        for tok in lower_tokens(doc.working_text()):
            if tok not in stop:
                counts[tok] += 1
    return counts


def detect_change_points(
    docs_by_day: dict[date, list],
    start: date,
    end: date,
    w: int = 3,
    theta: float = 0.2,
) -> list[date]:
    """Dates where narrative language shifts.

    For each date d with w full days on both sides inside [start, end],
    compare the content-word distributions of [d-w, d) and [d, d+w) by
    Jensen-Shannon divergence with add-one smoothing. A date is reported
    when its divergence exceeds theta and is a strict local maximum among
    the candidate dates. Spans shorter than 2w days report nothing.
    """
    span = (end - start).days + 1
    if span < 2 * w:
        return []
    per_day = {
        d: _content_counts(docs_by_day.get(d, ())) for d in _date_range(start, end)
    }

    def window_counts(first: date, days: int) -> Counter[str]:
        total: Counter[str] = Counter()
        for i in range(days):
            total.update(per_day[first + timedelta(days=i)])
        return total

    candidates = [
        start + timedelta(days=i) for i in range(w, span - w + 1)
    ]
    scores = {
        d: jensen_shannon(
            window_counts(d - timedelta(days=w), w), window_counts(d, w)
        )
        for d in candidates
    }
    out = []
    for i, d in enumerate(candidates):
        if scores[d] <= theta:
            continue
        left = scores[candidates[i - 1]] if i > 0 else float("-inf")
        right = scores[candidates[i + 1]] if i < len(candidates) - 1 else float("-inf")
        if scores[d] > left and scores[d] > right:
            out.append(d)
    return out


def _date_range(start: date, end: date):
    d = start
    while d <= end:
        yield d
        d += timedelta(days=1)


@dataclass
class StepResult:
    day: date
    opened: list[str]
    updated: list[str]


class NarrativeTracker:
    """Single-writer daily batch: update live narratives, then look for new
    ones, so a pair reviving an existing narrative never opens a second."""

    def __init__(
        self,
        params: SurpriseParams | None = None,
        jsd_window: int = 3,
        jsd_threshold: float = 0.2,
        dormant_after_days: int = 14,
        close_after_days: int = 60,
    ):
        self.params = params or SurpriseParams()
        self.jsd_window = jsd_window
        self.jsd_threshold = jsd_threshold
        self.dormant_after_days = dormant_after_days
        self.close_after_days = close_after_days
        self.narratives: dict[str, Narrative] = {}
        self.history: deque[tuple[date, dict[PairKey, int]]] = deque(
            maxlen=self.params.window_days
        )
        self._daily_members: dict[str, dict[date, list[str]]] = {}
        self._doc_cache: dict[str, object] = {}

    def active_pairs(self) -> set[PairKey]:
        return {
            n.key
            for n in self.narratives.values()
            if n.status in (STATUS_ACTIVE, STATUS_DORMANT)
        }

    def get(self, narrative_id: str) -> Narrative:
        return self.narratives[narrative_id]

    def records(self) -> list[dict]:
        return [
            self.narratives[nid].to_dict() for nid in sorted(self.narratives)
        ]

    def step(self, day: date, docs, gaz: Gazetteer, lexicon) -> StepResult:
        """Process one day of published exemplar documents."""
        pair_sets = {doc.doc_id: doc_pairs(doc, gaz, lexicon) for doc in docs}
        by_id = {doc.doc_id: doc for doc in docs}
        counts: Counter[PairKey] = Counter()
        for pairs in pair_sets.values():
            for pair in pairs:
                counts[pair] += 1

        updated = []
        for nid in sorted(self.narratives):
            n = self.narratives[nid]
            if n.status == STATUS_CLOSED:
                continue
            todays = [
                by_id[d] for d, pairs in pair_sets.items() if n.key in pairs
            ]
            self._update(n, day, counts.get(n.key, 0), todays)
            updated.append(nid)

        history_maps = [h for _, h in self.history] or [{}]
        flagged = detect_narratives(
            dict(counts), history_maps, self.params, self.active_pairs()
        )
        opened = []
        for pair in flagged:
            todays = [
                by_id[d] for d, pairs in pair_sets.items() if pair in pairs
            ]
            opened.append(self._open(pair, day, counts[pair], todays))

        for nid in updated + opened:
            self._refresh_change_points(self.narratives[nid])

        self._push_history(day, dict(counts))
        return StepResult(day=day, opened=opened, updated=updated)

    def _open(self, pair: PairKey, day: date, count: int, todays) -> str:
        nid = f"{pair.keyword}:{pair.location}:{day.isoformat()}"
        member_ids = sorted(d.doc_id for d in todays)
        for doc in todays:
            self._doc_cache[doc.doc_id] = doc
        n = Narrative(
            narrative_id=nid,
            key=pair,
            opened_on=day,
            daily_counts={day: count},
            member_docs=member_ids,
            status=STATUS_ACTIVE,
        )
        n.summary = self._summary(n)
        self.narratives[nid] = n
        self._daily_members[nid] = {day: member_ids}
        return nid

    def _update(self, n: Narrative, day: date, count: int, todays) -> None:
        last = n.last_day()
        gap = last + timedelta(days=1)
        while gap < day:
            n.daily_counts[gap] = 0
            gap += timedelta(days=1)
        n.daily_counts[day] = count

        if todays:
            known = set(n.member_docs)
            new_ids = sorted(
                d.doc_id for d in todays if d.doc_id not in known
            )
            n.member_docs.extend(new_ids)
            for doc in todays:
                self._doc_cache[doc.doc_id] = doc
            self._daily_members.setdefault(n.narrative_id, {})[day] = sorted(
                d.doc_id for d in todays
            )
            n.summary = self._summary(n)

        if count > 0:
            n.status = STATUS_ACTIVE
        else:
            zeros = n.trailing_zero_days()
            if zeros >= self.close_after_days:
                n.status = STATUS_CLOSED
            elif zeros >= self.dormant_after_days:
                n.status = STATUS_DORMANT

    def _summary(self, n: Narrative) -> list[str]:
        docs = [
            self._doc_cache[d] for d in n.member_docs if d in self._doc_cache
        ]
        if not docs:
            return list(n.summary)
        return summarize(docs, [n.key.keyword], 3)

    def _refresh_change_points(self, n: Narrative) -> None:
        members = self._daily_members.get(n.narrative_id, {})
        docs_by_day = {
            d: [self._doc_cache[i] for i in ids if i in self._doc_cache]
            for d, ids in members.items()
        }
        n.change_points = detect_change_points(
            docs_by_day,
            n.opened_on,
            n.last_day(),
            w=self.jsd_window,
            theta=self.jsd_threshold,
        )

    def _push_history(self, day: date, counts: dict[PairKey, int]) -> None:
        if self.history:
            last_day = self.history[-1][0]
            gap = last_day + timedelta(days=1)
            while gap < day:
                self.history.append((gap, {}))
                gap += timedelta(days=1)
        self.history.append((day, counts))

    # durability: everything except cached document bodies

    def state_dict(self) -> dict:
        return {
            "params": {
                "window_days": self.params.window_days,
                "p_threshold": self.params.p_threshold,
                "c_min": self.params.c_min,
                "lambda_floor": self.params.lambda_floor,
            },
            "narratives": [n.to_dict() for n in self.narratives.values()],
            "history": [
                [d.isoformat(), [[k.keyword, k.location, c] for k, c in counts.items()]]
                for d, counts in self.history
            ],
            "daily_members": {
                nid: {d.isoformat(): ids for d, ids in days.items()}
                for nid, days in self._daily_members.items()
            },
        }

    @classmethod
    def from_state(cls, state: dict, **kwargs) -> "NarrativeTracker":
        params = SurpriseParams(**state.get("params", {}))
        tracker = cls(params=params, **kwargs)
        for rec in state.get("narratives", []):
            n = Narrative.from_dict(rec)
            tracker.narratives[n.narrative_id] = n
        for day_iso, rows in state.get("history", []):
            counts = {PairKey(k, loc): c for k, loc, c in rows}
            tracker.history.append((date.fromisoformat(day_iso), counts))
        for nid, days in state.get("daily_members", {}).items():
            tracker._daily_members[nid] = {
                date.fromisoformat(d): list(ids) for d, ids in days.items()
            }
        return tracker

    def preload_docs(self, docs) -> None:
        """Refill the member-document cache after a restore."""
        for doc in docs:
            self._doc_cache[doc.doc_id] = doc
